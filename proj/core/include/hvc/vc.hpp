#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hvc/binary_image.hpp"
#include "hvc/grid.hpp"

namespace hvc {

enum class Color : std::uint8_t { white = 0, black = 1 };

// Basis-matrix visual cryptography scheme. Row i of s0 (s1) describes the
// sub-pixels share i receives for a white (black) secret pixel; each row is
// reshaped row-major into a block_rows x block_cols block.
class VcScheme {
public:
    VcScheme(std::string name, std::size_t block_rows, std::size_t block_cols,
             Grid<std::uint8_t> s0, Grid<std::uint8_t> s1);

    // Standard (2,2) construction with 2x2 sub-pixel blocks.
    static VcScheme ns_2x2();

    const std::string& name() const noexcept { return name_; }
    std::size_t shares() const noexcept { return s0_.height(); }
    std::size_t expansion() const noexcept { return s0_.width(); }
    std::size_t block_rows() const noexcept { return block_rows_; }
    std::size_t block_cols() const noexcept { return block_cols_; }

    const Grid<std::uint8_t>& basis(Color color) const noexcept {
        return color == Color::black ? s1_ : s0_;
    }

    // Hamming weight of the OR over all rows of the chosen basis matrix.
    std::size_t stacked_weight(Color color) const noexcept;
    std::size_t row_weight(Color color, std::size_t row) const;

    friend bool operator==(const VcScheme&, const VcScheme&) = default;

private:
    std::string name_;
    std::size_t block_rows_;
    std::size_t block_cols_;
    Grid<std::uint8_t> s0_;
    Grid<std::uint8_t> s1_;
};

// Looks up a built-in scheme; throws std::invalid_argument for unknown names.
VcScheme builtin_scheme(const std::string& name);

struct ShareSet {
    std::vector<BinaryImage> shares;
    VcScheme scheme;
    std::uint64_t seed;
};

// Uniform random permutation of {0..m-1} (Fisher-Yates from the identity).
std::vector<std::size_t> random_permutation(std::size_t m, std::uint64_t seed,
                                            std::uint64_t stream);

// Sub-pixel blocks for one secret pixel. Column j of the permuted basis is
// column permutation[j] of the original.
std::vector<BinaryImage> expand_pixel(Color color, const VcScheme& scheme,
                                      std::span<const std::size_t> permutation);

// Every secret pixel (row, col) draws its permutation from stream
// row * width + col of `seed`, so the result is a pure function of the inputs.
ShareSet generate_shares(const BinaryImage& secret, const VcScheme& scheme, std::uint64_t seed);

// Film overlay: a pixel is black if it is black in any share.
BinaryImage stack_shares(std::span<const BinaryImage> shares);

struct ContrastReport {
    std::optional<double> white_mean;  // mean black fraction over white-secret blocks
    std::optional<double> black_mean;  // mean black fraction over black-secret blocks
    std::optional<double> contrast;    // black_mean - white_mean
};

ContrastReport measure_contrast(const BinaryImage& stacked, const BinaryImage& secret,
                                const VcScheme& scheme);

// Bit j of a block mask is the j-th sub-pixel in row-major order.
std::uint64_t block_mask(const BinaryImage& block);

struct PatternHistogram {
    std::map<std::uint64_t, std::size_t> counts;
    std::size_t trials = 0;
    std::size_t support_size = 0;  // patterns reachable by column permutations
    double chi_square = 0.0;
    std::size_t degrees_of_freedom = 0;
    double critical_value = 0.0;   // chi-square quantile at p = 0.01
    bool passes = true;
};

PatternHistogram share_pattern_histogram(const VcScheme& scheme, Color color,
                                         std::size_t share_index, std::size_t trials,
                                         std::uint64_t seed);

// Upper 1% point of the chi-square distribution with `dof` degrees of freedom.
double chi_square_critical_p01(std::size_t dof);

}  // namespace hvc
