#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "hvc/reconstruction.hpp"
#include "hvc/vc.hpp"

namespace hvc {
namespace {

using testing::random_binary;

Hologram pure_carrier(std::size_t share_size, CarrierAxis axis = CarrierAxis::horizontal) {
    CghParams p;
    p.carrier_axis = axis;
    const std::size_t n = share_size * p.pad_factor;
    ComplexField delta(n, n);
    delta(n / 2, n / 2) = 1.0;
    return burch_encode(delta, p);
}

double max_relative_diff(const RealGrid& a, const RealGrid& b) {
    const double scale = std::max(*std::ranges::max_element(a), *std::ranges::max_element(b));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    return worst / scale;
}

TEST(ReconstructField, BiasOnlyIsCenteredDelta) {
    Hologram h;
    h.values = RealGrid(64, 64, 0.5);
    h.share_width = h.share_height = 16;
    const auto field = reconstruct_field(h);
    const double peak = std::abs(field(32, 32));
    EXPECT_NEAR(peak, 0.5 * 64.0, 1e-12);
    for (std::size_t r = 0; r < 64; ++r) {
        for (std::size_t c = 0; c < 64; ++c) {
            if (r != 32 || c != 32) {
                EXPECT_LE(std::abs(field(r, c)), 1e-12 * peak);
            }
        }
    }
}

TEST(ReconstructField, PureCarrierGivesThreeDeltas) {
    for (const auto axis : {CarrierAxis::horizontal, CarrierAxis::vertical}) {
        const auto h = pure_carrier(16, axis);
        ASSERT_EQ(h.order_offset(), 16);
        const auto field = reconstruct_field(h);
        const bool horizontal = axis == CarrierAxis::horizontal;
        const auto at = [&](long shift) {
            return std::abs(horizontal ? field(32, static_cast<std::size_t>(32 + shift))
                                       : field(static_cast<std::size_t>(32 + shift), 32));
        };
        const double center = at(0);
        EXPECT_NEAR(center / at(16), 2.0, 1e-12);
        EXPECT_NEAR(center / at(-16), 2.0, 1e-12);
        double rest = 0.0;
        for (const auto& v : field) {
            rest += std::norm(v);
        }
        rest -= center * center + at(16) * at(16) + at(-16) * at(-16);
        EXPECT_LE(rest, 1e-20 * center * center);
    }
}

TEST(ExtractOrder, PureCarrierPeakAtWindowCenter) {
    const auto h = pure_carrier(16);
    const auto field = reconstruct_field(h);
    for (const auto order : {Order::plus, Order::minus}) {
        const auto window = extract_order(field, h, order);
        ASSERT_EQ(window.width(), 16u);
        ASSERT_EQ(window.height(), 16u);
        const auto peak = std::ranges::max_element(window) - window.begin();
        EXPECT_EQ(static_cast<std::size_t>(peak), 8u * 16u + 8u);
    }
}

// The hologram is real, so the replay field is Hermitian: the point-reflected
// minus order equals the plus order.
TEST(ExtractOrder, TwinSymmetry) {
    struct Case {
        std::size_t w, h;
        Diffuser diffuser;
        CarrierAxis axis;
    };
    for (const auto& c : {Case{64, 64, Diffuser::off, CarrierAxis::horizontal},
                          Case{15, 13, Diffuser::off, CarrierAxis::horizontal},
                          Case{20, 30, Diffuser::off, CarrierAxis::vertical},
                          Case{32, 32, Diffuser::random_phase, CarrierAxis::horizontal}}) {
        CghParams p;
        p.diffuser = c.diffuser;
        p.carrier_axis = c.axis;
        p.diffuser_seed = 3;
        const auto h = encode_share(random_binary(c.w, c.h, c.w * c.h), p);
        const auto result = replay(h);
        EXPECT_LE(max_relative_diff(result.plus_order, result.minus_order), 1e-9)
            << c.w << "x" << c.h;
    }
}

TEST(ExtractOrder, PlusOrderIsTheUprightShare) {
    for (const auto axis : {CarrierAxis::horizontal, CarrierAxis::vertical}) {
        CghParams p;
        p.carrier_axis = axis;
        const auto share = random_binary(64, 64, 21);
        const auto h = encode_share(share, p);
        const auto field = reconstruct_field(h);
        for (const auto order : {Order::plus, Order::minus}) {
            const auto window = normalize_intensity(extract_order(field, h, order), Normalization::max);
            const auto recovered = binarize(window, Binarization::fixed(0.25));
            EXPECT_GE(pixel_agreement(recovered, share), 0.99);
        }
    }
}

TEST(ReconstructField, OrdersAreSeparated) {
    const auto share = random_binary(32, 32, 5);
    const auto h = encode_share(share, CghParams{});
    const auto field = reconstruct_field(h);
    const std::size_t n = field.width();
    const long s = h.order_offset();
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double e = std::norm(field(r, c));
            total += e;
            const long dr = static_cast<long>(r) - static_cast<long>(n / 2);
            const long dc = static_cast<long>(c) - static_cast<long>(n / 2);
            const bool center = dr == 0 && dc == 0;
            // The twin is point-reflected, so its window is the mirror image.
            const bool plus = dr >= -16 && dr < 16 && dc - s >= -16 && dc - s < 16;
            const bool minus = dr > -16 && dr <= 16 && dc + s > -16 && dc + s <= 16;
            if (!center && !plus && !minus) {
                outside += e;
            }
        }
    }
    EXPECT_LT(outside, 1e-6 * total);
}

TEST(Replay, DcPeakAndWindowShape) {
    const auto h = encode_share(random_binary(16, 8, 1), CghParams{});
    const auto result = replay(h);
    EXPECT_EQ(result.plus_order.width(), 16u);
    EXPECT_EQ(result.plus_order.height(), 8u);
    EXPECT_NEAR(result.dc_peak, 0.25 * static_cast<double>(h.values.size()), 1e-6);
    for (const double v : result.minus_order) {
        EXPECT_GE(v, 0.0);
    }
}

TEST(Normalize, MaxAndDegenerate) {
    const RealGrid constant(3, 2, 4.0);
    for (const double v : normalize_intensity(constant, Normalization::max)) {
        EXPECT_EQ(v, 1.0);
    }
    const RealGrid zero(3, 2, 0.0);
    for (const auto method : {Normalization::max, Normalization::percentile99}) {
        for (const double v : normalize_intensity(zero, method)) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST(Normalize, PercentileResistsHotOutlier) {
    RealGrid window(20, 20, 1.0);
    for (std::size_t i = 0; i < window.size(); i += 2) {
        window.values()[i] = 0.5;
    }
    window(7, 7) = 1000.0;
    const auto by_max = normalize_intensity(window, Normalization::max);
    const auto by_p99 = normalize_intensity(window, Normalization::percentile99);
    EXPECT_LT(by_max(0, 1), 0.01);      // body crushed by the outlier
    EXPECT_EQ(by_p99(0, 1), 1.0);       // body preserved
    EXPECT_EQ(by_p99(0, 0), 0.5);
    EXPECT_EQ(by_p99(7, 7), 1.0);       // outlier clipped
}

TEST(Superpose, IdentityAbsorbingAndMin) {
    const RealGrid a(2, 2, {0.2, 0.5, 0.9, 1.0});
    const std::vector<RealGrid> with_ones{a, RealGrid(2, 2, 1.0)};
    EXPECT_EQ(superpose(with_ones, Combine::product), a);
    const std::vector<RealGrid> with_zeros{a, RealGrid(2, 2, 0.0)};
    for (const double v : superpose(with_zeros, Combine::product)) {
        EXPECT_EQ(v, 0.0);
    }
    const RealGrid b(2, 2, {0.3, 0.4, 0.95, 0.0});
    const std::vector<RealGrid> pair{a, b};
    EXPECT_EQ(superpose(pair, Combine::min), RealGrid(2, 2, {0.2, 0.4, 0.9, 0.0}));
    const std::vector<RealGrid> one{a};
    EXPECT_THROW(superpose(one, Combine::product), std::invalid_argument);
    const std::vector<RealGrid> mismatch{a, RealGrid(1, 4)};
    EXPECT_THROW(superpose(mismatch, Combine::min), std::invalid_argument);
}

TEST(Binarize, FixedThresholdPolarity) {
    const RealGrid ones(4, 4, 1.0);
    EXPECT_EQ(binarize(ones, Binarization::fixed(0.25)).black_count(), 0u);
    const RealGrid image(3, 1, {0.1, 0.25, 0.3});
    EXPECT_EQ(binarize(image, Binarization::fixed(0.25)), BinaryImage(3, 1, {1, 0, 0}));
}

TEST(Binarize, IdempotentOnBinaryValues) {
    const auto img = random_binary(10, 10, 4);
    RealGrid as_real(10, 10);
    for (std::size_t i = 0; i < img.size(); ++i) {
        as_real.values()[i] = img.pixels()[i] != 0 ? 0.0 : 1.0;
    }
    for (const double t : {0.01, 0.25, 0.5, 0.99}) {
        EXPECT_EQ(binarize(as_real, Binarization::fixed(t)), img);
    }
}

TEST(Binarize, OtsuSplitsBimodal) {
    RealGrid image(10, 10);
    for (std::size_t i = 0; i < image.size(); ++i) {
        image.values()[i] = i % 3 == 0 ? 0.1 : 0.8;
    }
    const double t = otsu_threshold(image);
    EXPECT_GT(t, 0.1);
    EXPECT_LE(t, 0.8);
    const auto b = binarize(image, Binarization::otsu());
    EXPECT_EQ(b.black_count(), 34u);
    EXPECT_EQ(otsu_threshold(RealGrid(4, 4, 0.7)), 0.5);
}

TEST(Decrypt, ErrorsAndContrast) {
    const auto scheme = VcScheme::ns_2x2();
    const auto secret = random_binary(16, 16, 9);
    const auto shares = generate_shares(secret, scheme, 1);
    std::vector<Hologram> holograms;
    for (const auto& s : shares.shares) {
        holograms.push_back(encode_share(s, CghParams{}));
    }
    const auto result = decrypt(holograms, DecryptOptions{});
    EXPECT_EQ(result.decrypted, stack_shares(shares.shares));

    double block_mean[2] = {0.0, 0.0};
    std::size_t blocks[2] = {0, 0};
    for (std::size_t r = 0; r < 16; ++r) {
        for (std::size_t c = 0; c < 16; ++c) {
            double sum = 0.0;
            for (std::size_t d = 0; d < 4; ++d) {
                sum += result.superposed(2 * r + d / 2, 2 * c + d % 2);
            }
            block_mean[secret(r, c)] += sum / 4.0;
            ++blocks[secret(r, c)];
        }
    }
    EXPECT_LT(block_mean[1] / blocks[1], block_mean[0] / blocks[0]);

    const std::vector<Hologram> one{holograms.front()};
    EXPECT_THROW(decrypt(one, DecryptOptions{}), std::invalid_argument);
    auto inconsistent = holograms;
    inconsistent[1].params.carrier_cycles = 0.2;
    EXPECT_THROW(decrypt(inconsistent, DecryptOptions{}), std::invalid_argument);
}

}  // namespace
}  // namespace hvc
