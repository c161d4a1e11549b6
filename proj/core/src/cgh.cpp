#include "hvc/cgh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hvc/rng.hpp"

namespace hvc {

void CghParams::validate(std::size_t share_width, std::size_t share_height) const {
    if (pad_factor < 2) {
        throw std::invalid_argument("cgh: pad_factor must be at least 2");
    }
    if (!(carrier_cycles > 0.0 && carrier_cycles < 0.5)) {
        throw std::invalid_argument("cgh: carrier_cycles must lie in (0, 0.5)");
    }
    if (share_width == 0 || share_height == 0) {
        throw std::invalid_argument("cgh: empty share");
    }
    const double extent = static_cast<double>(
        carrier_axis == CarrierAxis::horizontal ? share_width : share_height);
    const double length = static_cast<double>(pad_factor) * extent;
    const double offset = std::round(carrier_cycles * length);
    if (!(offset > extent / 2.0) || offset + extent / 2.0 > length / 2.0) {
        throw std::invalid_argument(
            "cgh: carrier " + std::to_string(carrier_cycles) + " with pad factor " +
            std::to_string(pad_factor) + " does not separate the reconstruction orders");
    }
}

std::ptrdiff_t Hologram::order_offset() const noexcept {
    const auto length = params.carrier_axis == CarrierAxis::horizontal ? width() : height();
    return static_cast<std::ptrdiff_t>(std::lround(params.carrier_cycles * static_cast<double>(length)));
}

ComplexField share_to_object_field(const BinaryImage& share, const CghParams& params) {
    if (share.empty()) {
        throw std::invalid_argument("share_to_object_field: empty share");
    }
    params.validate(share.width(), share.height());

    ComplexField object(share.width(), share.height());
    SplitMix64 rng(params.diffuser_seed);
    for (std::size_t r = 0; r < share.height(); ++r) {
        for (std::size_t c = 0; c < share.width(); ++c) {
            const double transmittance = share(r, c) != 0 ? 0.0 : 1.0;
            if (params.diffuser == Diffuser::random_phase) {
                const double theta = 2.0 * std::numbers::pi * rng.unit();
                object(r, c) = std::polar(transmittance, theta);
            } else {
                object(r, c) = Complex(transmittance, 0.0);
            }
        }
    }
    return zero_pad_center(object, share.width() * params.pad_factor,
                           share.height() * params.pad_factor);
}

Hologram burch_encode(const ComplexField& object, const CghParams& params) {
    if (params.pad_factor == 0 || object.empty() || object.width() % params.pad_factor != 0 ||
        object.height() % params.pad_factor != 0) {
        throw std::invalid_argument("burch_encode: object size is not a multiple of pad_factor");
    }
    Hologram hologram;
    hologram.params = params;
    hologram.share_width = object.width() / params.pad_factor;
    hologram.share_height = object.height() / params.pad_factor;
    params.validate(hologram.share_width, hologram.share_height);

    const ComplexField spectrum = dft2_centered(object);
    double peak = 0.0;
    for (const auto& v : spectrum) {
        peak = std::max(peak, std::abs(v));
    }
    hologram.spectrum_max = peak;

    const std::size_t w = object.width();
    const std::size_t h = object.height();
    hologram.values = RealGrid(w, h, 0.5);
    if (peak == 0.0) {
        return hologram;
    }

    const bool horizontal = params.carrier_axis == CarrierAxis::horizontal;
    const double omega = 2.0 * std::numbers::pi * params.carrier_cycles;
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const auto t = horizontal ? static_cast<double>(c) - static_cast<double>(w / 2)
                                      : static_cast<double>(r) - static_cast<double>(h / 2);
            const Complex o = spectrum(r, c);
            const double amplitude = std::abs(o) / peak;
            const double value = 0.5 * (1.0 + amplitude * std::cos(omega * t - std::arg(o)));
            hologram.values(r, c) = std::clamp(value, 0.0, 1.0);
        }
    }
    return hologram;
}

Hologram encode_share(const BinaryImage& share, const CghParams& params) {
    return burch_encode(share_to_object_field(share, params), params);
}

Hologram quantize_hologram(const Hologram& hologram, unsigned bits) {
    if (bits != 8 && bits != 16) {
        throw std::invalid_argument("quantize_hologram: bits must be 8 or 16");
    }
    const double levels = static_cast<double>((1u << bits) - 1u);
    Hologram out = hologram;
    for (auto& v : out.values) {
        v = std::round(v * levels) / levels;
    }
    return out;
}

}  // namespace hvc
