#pragma once

#include <cstddef>
#include <cstdint>

#include "hvc/binary_image.hpp"
#include "hvc/grid.hpp"
#include "hvc/numerics.hpp"

namespace hvc {

enum class CarrierAxis : std::uint8_t { horizontal = 0, vertical = 1 };
enum class Diffuser : std::uint8_t { off = 0, random_phase = 1 };

struct CghParams {
    std::size_t pad_factor = 4;
    double carrier_cycles = 0.25;  // cycles per hologram sample
    CarrierAxis carrier_axis = CarrierAxis::horizontal;
    Diffuser diffuser = Diffuser::off;
    std::uint64_t diffuser_seed = 0;

    // Throws std::invalid_argument unless the carrier separates the +/-1
    // orders from the zero order and keeps them inside the replay plane for a
    // share of the given size.
    void validate(std::size_t share_width, std::size_t share_height) const;

    friend bool operator==(const CghParams&, const CghParams&) = default;
};

// Amplitude transmittance hologram, values in [0, 1].
struct Hologram {
    RealGrid values;
    CghParams params;
    std::size_t share_width = 0;
    std::size_t share_height = 0;
    double spectrum_max = 0.0;

    std::size_t width() const noexcept { return values.width(); }
    std::size_t height() const noexcept { return values.height(); }

    // Carrier offset in replay-plane samples along the carrier axis.
    std::ptrdiff_t order_offset() const noexcept;

    friend bool operator==(const Hologram&, const Hologram&) = default;
};

// Share transmittance (white = 1, black = 0), optional random-phase diffuser,
// zero padded by pad_factor about the center.
ComplexField share_to_object_field(const BinaryImage& share, const CghParams& params);

// Burch amplitude encoding of the object spectrum O:
//   H = 1/2 [1 + |O|/max|O| * cos(2 pi c t - arg O)]
// with t the centered sample index along the carrier axis.
// The object must be pad_factor times the share size along each axis.
Hologram burch_encode(const ComplexField& object, const CghParams& params);

Hologram encode_share(const BinaryImage& share, const CghParams& params);

Hologram quantize_hologram(const Hologram& hologram, unsigned bits);

}  // namespace hvc
