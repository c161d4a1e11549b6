#include <benchmark/benchmark.h>

#include <array>
#include <random>

#include "hvc/cgh.hpp"
#include "hvc/numerics.hpp"
#include "hvc/reconstruction.hpp"
#include "hvc/vc.hpp"

namespace {

hvc::BinaryImage random_image(std::size_t size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    hvc::BinaryImage image(size, size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            image.set(r, c, (rng() & 1u) != 0);
        }
    }
    return image;
}

void BM_Dft2Centered(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    hvc::ComplexField field(n, n);
    for (auto& v : field) {
        v = hvc::Complex(normal(rng), normal(rng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(hvc::dft2_centered(field));
    }
}
BENCHMARK(BM_Dft2Centered)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_GenerateShares(benchmark::State& state) {
    const auto secret = random_image(static_cast<std::size_t>(state.range(0)), 2);
    const auto scheme = hvc::VcScheme::ns_2x2();
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hvc::generate_shares(secret, scheme, seed++));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_GenerateShares)->Arg(64)->Arg(256);

void BM_BurchEncode(benchmark::State& state) {
    const auto share = random_image(static_cast<std::size_t>(state.range(0)), 3);
    const hvc::CghParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hvc::encode_share(share, params));
    }
}
BENCHMARK(BM_BurchEncode)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EncryptDecrypt(benchmark::State& state) {
    const auto secret = random_image(static_cast<std::size_t>(state.range(0)), 4);
    const hvc::CghParams params;
    for (auto _ : state) {
        const auto shares = hvc::generate_shares(secret, hvc::VcScheme::ns_2x2(), 5);
        std::array<hvc::Hologram, 2> holograms{hvc::encode_share(shares.shares[0], params),
                                               hvc::encode_share(shares.shares[1], params)};
        benchmark::DoNotOptimize(hvc::decrypt(holograms, hvc::DecryptOptions{}));
    }
}
BENCHMARK(BM_EncryptDecrypt)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
