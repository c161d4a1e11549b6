#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hvc/binary_image.hpp"
#include "hvc/cgh.hpp"
#include "hvc/grid.hpp"
#include "hvc/numerics.hpp"

namespace hvc {

enum class Order { plus, minus };
enum class Normalization { max, percentile99 };
enum class Combine { product, min };

struct Binarization {
    enum class Method { fixed, otsu };
    Method method = Method::fixed;
    double threshold = 0.25;  // used by Method::fixed

    static Binarization fixed(double t) { return {Method::fixed, t}; }
    static Binarization otsu() { return {Method::otsu, 0.0}; }
};

// Numerical replay: the inverse centered DFT of the (real) hologram. The bias
// gives a delta at the center, the object sits at +order_offset() along the
// carrier axis and its conjugate twin, mirrored, at -order_offset().
ComplexField reconstruct_field(const Hologram& hologram);

// Share-sized intensity window around the chosen order. The minus window is
// flipped in both axes so both orders share pixel coordinates.
RealGrid extract_order(const ComplexField& field, const Hologram& hologram, Order which);

struct ReconstructionResult {
    ComplexField full_field;
    RealGrid plus_order;
    RealGrid minus_order;
    double dc_peak = 0.0;  // intensity at the replay-plane center
};

ReconstructionResult replay(const Hologram& hologram);

// Scales a nonnegative window into [0, 1]. percentile99 divides by the
// nearest-rank 99th percentile and clips; it falls back to the maximum when
// that percentile is zero. All-zero input stays all zero.
RealGrid normalize_intensity(const RealGrid& window, Normalization method);

// Product models stacked transparencies multiplying their transmittances.
RealGrid superpose(std::span<const RealGrid> windows, Combine mode);

// Otsu threshold from a 256-bin histogram of [0, 1] values.
double otsu_threshold(const RealGrid& image);

// A pixel is black (1) where its intensity is below the threshold.
BinaryImage binarize(const RealGrid& image, Binarization method);

struct DecryptOptions {
    Order order = Order::plus;
    Normalization normalization = Normalization::max;
    Combine combine = Combine::product;
    Binarization binarization;
};

struct Decryption {
    std::vector<RealGrid> reconstructions;  // normalized order windows
    RealGrid superposed;
    BinaryImage decrypted;
};

// Full replay-side pipeline. Needs at least two holograms with matching
// headers; throws std::invalid_argument otherwise.
Decryption decrypt(std::span<const Hologram> holograms, const DecryptOptions& options);

}  // namespace hvc
