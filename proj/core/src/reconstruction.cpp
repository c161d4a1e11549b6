#include "hvc/reconstruction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <stdexcept>

namespace hvc {

namespace {

struct Offset {
    std::ptrdiff_t row = 0;
    std::ptrdiff_t col = 0;
};

Offset plus_offset(const Hologram& hologram) {
    const auto s = hologram.order_offset();
    return hologram.params.carrier_axis == CarrierAxis::horizontal ? Offset{0, s} : Offset{s, 0};
}

bool compatible(const Hologram& a, const Hologram& b) {
    return a.width() == b.width() && a.height() == b.height() &&
           a.share_width == b.share_width && a.share_height == b.share_height &&
           a.params.pad_factor == b.params.pad_factor &&
           a.params.carrier_cycles == b.params.carrier_cycles &&
           a.params.carrier_axis == b.params.carrier_axis;
}

}  // namespace

ComplexField reconstruct_field(const Hologram& hologram) {
    return idft2_centered(to_complex(hologram.values));
}

RealGrid extract_order(const ComplexField& field, const Hologram& hologram, Order which) {
    const Offset offset = plus_offset(hologram);
    const std::size_t ww = hologram.share_width;
    const std::size_t wh = hologram.share_height;
    if (which == Order::plus) {
        return intensity(crop_center(field, ww, wh, offset.row, offset.col));
    }

    // Point reflection through the replay-plane center, so that sample j of
    // the minus window is the Hermitian partner of sample j of the plus window.
    // A plain reversal of the crop would be one sample off for even sizes.
    const auto center_r = static_cast<std::ptrdiff_t>(field.height() / 2) - offset.row;
    const auto center_c = static_cast<std::ptrdiff_t>(field.width() / 2) - offset.col;
    const auto half_r = static_cast<std::ptrdiff_t>(wh / 2);
    const auto half_c = static_cast<std::ptrdiff_t>(ww / 2);
    const auto first_r = center_r + half_r - static_cast<std::ptrdiff_t>(wh) + 1;
    const auto first_c = center_c + half_c - static_cast<std::ptrdiff_t>(ww) + 1;
    if (ww == 0 || wh == 0 || first_r < 0 || first_c < 0 ||
        center_r + half_r >= static_cast<std::ptrdiff_t>(field.height()) ||
        center_c + half_c >= static_cast<std::ptrdiff_t>(field.width())) {
        throw std::invalid_argument("extract_order: minus-order window outside the field");
    }
    RealGrid out(ww, wh);
    for (std::size_t r = 0; r < wh; ++r) {
        for (std::size_t c = 0; c < ww; ++c) {
            const auto src_r = static_cast<std::size_t>(center_r + half_r - static_cast<std::ptrdiff_t>(r));
            const auto src_c = static_cast<std::size_t>(center_c + half_c - static_cast<std::ptrdiff_t>(c));
            out(r, c) = std::norm(field(src_r, src_c));
        }
    }
    return out;
}

ReconstructionResult replay(const Hologram& hologram) {
    ReconstructionResult result;
    result.full_field = reconstruct_field(hologram);
    result.plus_order = extract_order(result.full_field, hologram, Order::plus);
    result.minus_order = extract_order(result.full_field, hologram, Order::minus);
    result.dc_peak =
        std::norm(result.full_field(result.full_field.height() / 2, result.full_field.width() / 2));
    return result;
}

RealGrid normalize_intensity(const RealGrid& window, Normalization method) {
    RealGrid out = window;
    if (window.empty()) {
        return out;
    }
    const double peak = *std::ranges::max_element(window);
    if (peak <= 0.0) {
        std::ranges::fill(out, 0.0);
        return out;
    }
    double scale = peak;
    if (method == Normalization::percentile99) {
        std::vector<double> sorted(window.begin(), window.end());
        std::ranges::sort(sorted);
        const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(sorted.size())));
        const double p99 = sorted[std::max<std::size_t>(rank, 1) - 1];
        if (p99 > 0.0) {
            scale = p99;
        }
    }
    for (auto& v : out) {
        v = std::min(v / scale, 1.0);
    }
    return out;
}

RealGrid superpose(std::span<const RealGrid> windows, Combine mode) {
    if (windows.size() < 2) {
        throw std::invalid_argument("superpose: need at least two windows");
    }
    for (const auto& w : windows) {
        if (!w.same_shape(windows.front())) {
            throw std::invalid_argument("superpose: window dimensions differ");
        }
    }
    RealGrid out = windows.front();
    for (const auto& w : windows.subspan(1)) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double v = w.values()[i];
            auto& acc = out.values()[i];
            acc = mode == Combine::product ? acc * v : std::min(acc, v);
        }
    }
    return out;
}

double otsu_threshold(const RealGrid& image) {
    std::array<double, 256> histogram{};
    for (const double v : image) {
        const double clamped = std::clamp(v, 0.0, 1.0);
        const auto bin = std::min<std::size_t>(255, static_cast<std::size_t>(clamped * 256.0));
        histogram[bin] += 1.0;
    }
    const double total = static_cast<double>(image.size());
    double sum_all = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
        sum_all += static_cast<double>(i) * histogram[i];
    }

    double weight_low = 0.0;
    double sum_low = 0.0;
    double best = 0.0;
    std::size_t best_bin = 256;
    for (std::size_t k = 0; k < 255; ++k) {
        weight_low += histogram[k];
        sum_low += static_cast<double>(k) * histogram[k];
        const double weight_high = total - weight_low;
        if (weight_low == 0.0 || weight_high == 0.0) {
            continue;
        }
        const double mean_low = sum_low / weight_low;
        const double mean_high = (sum_all - sum_low) / weight_high;
        const double between = weight_low * weight_high * (mean_low - mean_high) * (mean_low - mean_high);
        if (between > best) {
            best = between;
            best_bin = k;
        }
    }
    // Single-level images have no split; fall back to mid-gray.
    return best_bin == 256 ? 0.5 : static_cast<double>(best_bin + 1) / 256.0;
}

BinaryImage binarize(const RealGrid& image, Binarization method) {
    const double threshold =
        method.method == Binarization::Method::otsu ? otsu_threshold(image) : method.threshold;
    std::vector<std::uint8_t> pixels(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        pixels[i] = image.values()[i] < threshold ? 1 : 0;
    }
    return BinaryImage(image.width(), image.height(), std::move(pixels));
}

Decryption decrypt(std::span<const Hologram> holograms, const DecryptOptions& options) {
    if (holograms.size() < 2) {
        throw std::invalid_argument("decrypt: need at least two holograms");
    }
    for (const auto& h : holograms) {
        if (!compatible(h, holograms.front())) {
            throw std::invalid_argument("decrypt: hologram headers are inconsistent");
        }
    }

    std::vector<std::future<RealGrid>> jobs;
    jobs.reserve(holograms.size());
    for (const auto& h : holograms) {
        jobs.push_back(std::async(std::launch::async, [&h, &options] {
            const ComplexField field = reconstruct_field(h);
            return normalize_intensity(extract_order(field, h, options.order), options.normalization);
        }));
    }

    Decryption result;
    for (auto& job : jobs) {
        result.reconstructions.push_back(job.get());
    }
    result.superposed = superpose(result.reconstructions, options.combine);
    result.decrypted = binarize(result.superposed, options.binarization);
    return result;
}

}  // namespace hvc
