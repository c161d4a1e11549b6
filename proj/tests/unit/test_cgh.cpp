#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "hvc/cgh.hpp"

namespace hvc {
namespace {

using testing::random_binary;

TEST(CghParams, DefaultsSeparateOrders) {
    const CghParams defaults;
    EXPECT_EQ(defaults.pad_factor, 4u);
    EXPECT_EQ(defaults.carrier_cycles, 0.25);
    EXPECT_EQ(defaults.carrier_axis, CarrierAxis::horizontal);
    EXPECT_EQ(defaults.diffuser, Diffuser::off);
    EXPECT_NO_THROW(defaults.validate(16, 16));
    EXPECT_NO_THROW(defaults.validate(128, 40));
}

TEST(CghParams, RejectsOverlappingOrBadSettings) {
    CghParams p;
    p.pad_factor = 1;
    EXPECT_THROW(p.validate(16, 16), std::invalid_argument);
    p = CghParams{};
    p.carrier_cycles = 0.5;
    EXPECT_THROW(p.validate(16, 16), std::invalid_argument);
    p.carrier_cycles = 0.0;
    EXPECT_THROW(p.validate(16, 16), std::invalid_argument);
    p.carrier_cycles = 0.1;  // offset 6 <= 8: orders overlap the zero order
    EXPECT_THROW(p.validate(16, 16), std::invalid_argument);
    p.carrier_cycles = 0.4;  // 26 + 8 > 32: order leaves the plane
    EXPECT_THROW(p.validate(16, 16), std::invalid_argument);
    p.carrier_cycles = 0.2;
    EXPECT_NO_THROW(p.validate(16, 16));
    EXPECT_THROW(p.validate(0, 16), std::invalid_argument);
}

TEST(ObjectField, PolarityAndPadding) {
    const BinaryImage share(2, 2, {1, 0, 0, 1});
    const auto field = share_to_object_field(share, CghParams{});
    ASSERT_EQ(field.width(), 8u);
    ASSERT_EQ(field.height(), 8u);
    // 2x2 share centered in 8x8: top-left at (3,3).
    EXPECT_EQ(field(3, 3), Complex(0.0));
    EXPECT_EQ(field(3, 4), Complex(1.0));
    EXPECT_EQ(field(4, 3), Complex(1.0));
    EXPECT_EQ(field(4, 4), Complex(0.0));
    double total = 0.0;
    for (const auto& v : field) {
        EXPECT_EQ(v.imag(), 0.0);
        EXPECT_TRUE(v.real() == 0.0 || v.real() == 1.0);
        total += v.real();
    }
    EXPECT_EQ(total, 2.0);
}

TEST(ObjectField, AllBlackIsZero) {
    const BinaryImage share(4, 4, std::vector<std::uint8_t>(16, 1));
    for (const auto& v : share_to_object_field(share, CghParams{})) {
        EXPECT_EQ(v, Complex(0.0));
    }
}

TEST(ObjectField, DiffuserKeepsModulus) {
    const auto share = random_binary(8, 8, 2);
    CghParams plain;
    CghParams diffused;
    diffused.diffuser = Diffuser::random_phase;
    diffused.diffuser_seed = 11;
    const auto a = share_to_object_field(share, plain);
    const auto b = share_to_object_field(share, diffused);
    bool any_complex = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(std::abs(a.values()[i]), std::abs(b.values()[i]), 1e-15);
        any_complex = any_complex || std::abs(b.values()[i].imag()) > 1e-6;
    }
    EXPECT_TRUE(any_complex);
    EXPECT_EQ(share_to_object_field(share, diffused), b);
    diffused.diffuser_seed = 12;
    EXPECT_NE(share_to_object_field(share, diffused), b);
}

TEST(BurchEncode, ZeroObjectIsBiasOnly) {
    const ComplexField zero(64, 64);
    const auto h = burch_encode(zero, CghParams{});
    EXPECT_EQ(h.spectrum_max, 0.0);
    EXPECT_EQ(h.share_width, 16u);
    EXPECT_EQ(h.share_height, 16u);
    for (const double v : h.values) {
        EXPECT_EQ(v, 0.5);
    }
}

TEST(BurchEncode, CenteredDeltaGivesPureCarrier) {
    for (const auto axis : {CarrierAxis::horizontal, CarrierAxis::vertical}) {
        CghParams p;
        p.carrier_axis = axis;
        ComplexField delta(64, 64);
        delta(32, 32) = 1.0;
        const auto h = burch_encode(delta, p);
        EXPECT_NEAR(h.spectrum_max, 1.0 / 64.0, 1e-15);
        for (std::size_t r = 0; r < 64; ++r) {
            for (std::size_t c = 0; c < 64; ++c) {
                const double t = axis == CarrierAxis::horizontal ? static_cast<double>(c) - 32.0
                                                                 : static_cast<double>(r) - 32.0;
                const double expected = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * 0.25 * t));
                EXPECT_NEAR(h.values(r, c), expected, 1e-12);
            }
        }
    }
}

TEST(BurchEncode, RangeBiasAndDeterminism) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto share = random_binary(32, 32, seed);
        CghParams p;
        p.diffuser = seed % 2 == 0 ? Diffuser::off : Diffuser::random_phase;
        p.diffuser_seed = seed;
        const auto h = encode_share(share, p);
        double sum = 0.0;
        for (const double v : h.values) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
            sum += v;
        }
        const double n = static_cast<double>(h.width());
        EXPECT_NEAR(sum / static_cast<double>(h.values.size()), 0.5, 2.0 / n);
        EXPECT_EQ(encode_share(share, p), h);
    }
}

TEST(BurchEncode, RejectsSizeNotMultipleOfPad) {
    EXPECT_THROW(burch_encode(ComplexField(30, 32), CghParams{}), std::invalid_argument);
    EXPECT_THROW(burch_encode(ComplexField{}, CghParams{}), std::invalid_argument);
}

TEST(Quantize, ArithmeticAndIdempotence) {
    Hologram h;
    h.values = RealGrid(3, 1, {0.5, 0.0, 1.0});
    const auto q8 = quantize_hologram(h, 8);
    EXPECT_DOUBLE_EQ(q8.values(0, 0), 128.0 / 255.0);
    EXPECT_EQ(q8.values(0, 1), 0.0);
    EXPECT_EQ(q8.values(0, 2), 1.0);
    EXPECT_EQ(quantize_hologram(q8, 8), q8);

    const auto real = encode_share(random_binary(16, 16, 1), CghParams{});
    const auto q16 = quantize_hologram(real, 16);
    EXPECT_EQ(quantize_hologram(q16, 16), q16);
    for (std::size_t i = 0; i < real.values.size(); ++i) {
        EXPECT_LE(std::abs(q16.values.values()[i] - real.values.values()[i]), 0.5 / 65535.0 + 1e-15);
    }
    EXPECT_THROW(quantize_hologram(h, 12), std::invalid_argument);
}

}  // namespace
}  // namespace hvc
