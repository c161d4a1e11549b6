#include "hvc/vc.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <numeric>
#include <stdexcept>

#include "hvc/rng.hpp"

namespace hvc {

namespace {

bool is_permutation_of_indices(std::span<const std::size_t> permutation, std::size_t m) {
    if (permutation.size() != m) {
        return false;
    }
    std::vector<bool> seen(m, false);
    for (const auto p : permutation) {
        if (p >= m || seen[p]) {
            return false;
        }
        seen[p] = true;
    }
    return true;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    k = std::min(k, n - k);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

}  // namespace

VcScheme::VcScheme(std::string name, std::size_t block_rows, std::size_t block_cols,
                   Grid<std::uint8_t> s0, Grid<std::uint8_t> s1)
    : name_(std::move(name)),
      block_rows_(block_rows),
      block_cols_(block_cols),
      s0_(std::move(s0)),
      s1_(std::move(s1)) {
    if (!s0_.same_shape(s1_)) {
        throw std::invalid_argument("VcScheme: s0 and s1 must have the same dimensions");
    }
    if (s0_.height() == 0 || s0_.width() == 0) {
        throw std::invalid_argument("VcScheme: empty basis matrices");
    }
    if (block_rows_ * block_cols_ != s0_.width()) {
        throw std::invalid_argument("VcScheme: pixel expansion must equal block_rows * block_cols");
    }
    if (s0_.width() > 64) {
        throw std::invalid_argument("VcScheme: pixel expansion above 64 is not supported");
    }
    auto non_binary = [](std::uint8_t v) { return v > 1; };
    if (std::ranges::any_of(s0_, non_binary) || std::ranges::any_of(s1_, non_binary)) {
        throw std::invalid_argument("VcScheme: basis matrices must be 0/1");
    }
    if (stacked_weight(Color::black) <= stacked_weight(Color::white)) {
        throw std::invalid_argument("VcScheme: stacked weight of s1 must exceed that of s0");
    }
}

VcScheme VcScheme::ns_2x2() {
    Grid<std::uint8_t> s0(4, 2, {1, 1, 0, 0,
                                 1, 1, 0, 0});
    Grid<std::uint8_t> s1(4, 2, {1, 1, 0, 0,
                                 0, 0, 1, 1});
    return VcScheme("ns-2x2", 2, 2, std::move(s0), std::move(s1));
}

std::size_t VcScheme::stacked_weight(Color color) const noexcept {
    const auto& basis_matrix = basis(color);
    std::size_t weight = 0;
    for (std::size_t col = 0; col < basis_matrix.width(); ++col) {
        for (std::size_t row = 0; row < basis_matrix.height(); ++row) {
            if (basis_matrix(row, col) != 0) {
                ++weight;
                break;
            }
        }
    }
    return weight;
}

std::size_t VcScheme::row_weight(Color color, std::size_t row) const {
    if (row >= shares()) {
        throw std::invalid_argument("VcScheme: share index out of range");
    }
    const auto& basis_matrix = basis(color);
    std::size_t weight = 0;
    for (std::size_t col = 0; col < basis_matrix.width(); ++col) {
        weight += basis_matrix(row, col);
    }
    return weight;
}

VcScheme builtin_scheme(const std::string& name) {
    if (name == "ns-2x2") {
        return VcScheme::ns_2x2();
    }
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::vector<std::size_t> random_permutation(std::size_t m, std::uint64_t seed,
                                            std::uint64_t stream) {
    std::vector<std::size_t> permutation(m);
    std::iota(permutation.begin(), permutation.end(), std::size_t{0});
    auto rng = SplitMix64::stream(seed, stream);
    for (std::size_t i = m; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(permutation[i - 1], permutation[j]);
    }
    return permutation;
}

std::vector<BinaryImage> expand_pixel(Color color, const VcScheme& scheme,
                                      std::span<const std::size_t> permutation) {
    const std::size_t m = scheme.expansion();
    if (!is_permutation_of_indices(permutation, m)) {
        throw std::invalid_argument("expand_pixel: permutation is not a bijection on 0..m-1");
    }
    const auto& basis_matrix = scheme.basis(color);
    std::vector<BinaryImage> blocks;
    blocks.reserve(scheme.shares());
    for (std::size_t share = 0; share < scheme.shares(); ++share) {
        BinaryImage block(scheme.block_cols(), scheme.block_rows());
        for (std::size_t j = 0; j < m; ++j) {
            block.set(j / scheme.block_cols(), j % scheme.block_cols(),
                      basis_matrix(share, permutation[j]) != 0);
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

ShareSet generate_shares(const BinaryImage& secret, const VcScheme& scheme, std::uint64_t seed) {
    if (secret.empty()) {
        throw std::invalid_argument("generate_shares: empty secret");
    }
    const std::size_t r = scheme.block_rows();
    const std::size_t c = scheme.block_cols();
    const std::size_t m = scheme.expansion();
    std::vector<BinaryImage> shares(scheme.shares(),
                                    BinaryImage(secret.width() * c, secret.height() * r));

    for (std::size_t row = 0; row < secret.height(); ++row) {
        for (std::size_t col = 0; col < secret.width(); ++col) {
            const auto color = secret(row, col) != 0 ? Color::black : Color::white;
            const auto permutation = random_permutation(m, seed, row * secret.width() + col);
            const auto& basis_matrix = scheme.basis(color);
            for (std::size_t s = 0; s < shares.size(); ++s) {
                for (std::size_t j = 0; j < m; ++j) {
                    shares[s].set(row * r + j / c, col * c + j % c,
                                  basis_matrix(s, permutation[j]) != 0);
                }
            }
        }
    }
    return ShareSet{std::move(shares), scheme, seed};
}

BinaryImage stack_shares(std::span<const BinaryImage> shares) {
    if (shares.size() < 2) {
        throw std::invalid_argument("stack_shares: need at least two shares");
    }
    const auto& first = shares.front();
    for (const auto& share : shares) {
        if (!share.same_shape(first)) {
            throw std::invalid_argument("stack_shares: share dimensions differ");
        }
    }
    std::vector<std::uint8_t> stacked(first.pixels().begin(), first.pixels().end());
    for (const auto& share : shares.subspan(1)) {
        const auto pixels = share.pixels();
        for (std::size_t i = 0; i < stacked.size(); ++i) {
            stacked[i] |= pixels[i];
        }
    }
    return BinaryImage(first.width(), first.height(), std::move(stacked));
}

ContrastReport measure_contrast(const BinaryImage& stacked, const BinaryImage& secret,
                                const VcScheme& scheme) {
    const std::size_t r = scheme.block_rows();
    const std::size_t c = scheme.block_cols();
    if (stacked.width() != secret.width() * c || stacked.height() != secret.height() * r) {
        throw std::invalid_argument("measure_contrast: stacked image is not the secret scaled by the block size");
    }
    double sum[2] = {0.0, 0.0};
    std::size_t blocks[2] = {0, 0};
    const double m = static_cast<double>(r * c);
    for (std::size_t row = 0; row < secret.height(); ++row) {
        for (std::size_t col = 0; col < secret.width(); ++col) {
            std::size_t weight = 0;
            for (std::size_t dr = 0; dr < r; ++dr) {
                for (std::size_t dc = 0; dc < c; ++dc) {
                    weight += stacked(row * r + dr, col * c + dc);
                }
            }
            const auto k = secret(row, col);
            sum[k] += static_cast<double>(weight) / m;
            ++blocks[k];
        }
    }
    ContrastReport report;
    if (blocks[0] > 0) {
        report.white_mean = sum[0] / static_cast<double>(blocks[0]);
    }
    if (blocks[1] > 0) {
        report.black_mean = sum[1] / static_cast<double>(blocks[1]);
    }
    if (report.white_mean && report.black_mean) {
        report.contrast = *report.black_mean - *report.white_mean;
    }
    return report;
}

std::uint64_t block_mask(const BinaryImage& block) {
    if (block.size() > 64) {
        throw std::invalid_argument("block_mask: block larger than 64 sub-pixels");
    }
    std::uint64_t mask = 0;
    const auto pixels = block.pixels();
    for (std::size_t j = 0; j < pixels.size(); ++j) {
        if (pixels[j] != 0) {
            mask |= std::uint64_t{1} << j;
        }
    }
    return mask;
}

double chi_square_critical_p01(std::size_t dof) {
    if (dof == 0) {
        return 0.0;
    }
    const boost::math::chi_squared distribution(static_cast<double>(dof));
    return boost::math::quantile(boost::math::complement(distribution, 0.01));
}

PatternHistogram share_pattern_histogram(const VcScheme& scheme, Color color,
                                         std::size_t share_index, std::size_t trials,
                                         std::uint64_t seed) {
    if (share_index >= scheme.shares()) {
        throw std::invalid_argument("share_pattern_histogram: share index out of range");
    }
    if (trials == 0) {
        throw std::invalid_argument("share_pattern_histogram: trials must be at least 1");
    }
    const std::size_t m = scheme.expansion();
    PatternHistogram histogram;
    histogram.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto permutation = random_permutation(m, seed, t);
        const auto blocks = expand_pixel(color, scheme, permutation);
        ++histogram.counts[block_mask(blocks[share_index])];
    }

    // Every arrangement of the row's ones is reached by the same number of
    // permutations, so the reachable support is uniform with C(m, weight) cells.
    histogram.support_size = binomial(m, scheme.row_weight(color, share_index));
    const double expected =
        static_cast<double>(trials) / static_cast<double>(histogram.support_size);
    double chi_square = 0.0;
    for (const auto& [mask, count] : histogram.counts) {
        const double diff = static_cast<double>(count) - expected;
        chi_square += diff * diff / expected;
    }
    // Unobserved cells each contribute (0 - E)^2 / E.
    const std::size_t unseen = histogram.support_size - histogram.counts.size();
    chi_square += static_cast<double>(unseen) * expected;
    histogram.chi_square = chi_square;
    histogram.degrees_of_freedom = histogram.support_size - 1;
    histogram.critical_value = chi_square_critical_p01(histogram.degrees_of_freedom);
    histogram.passes =
        histogram.degrees_of_freedom == 0 || histogram.chi_square < histogram.critical_value;
    return histogram;
}

}  // namespace hvc
