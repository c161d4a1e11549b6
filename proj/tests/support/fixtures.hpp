#pragma once

#include <unistd.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

#include "hvc/binary_image.hpp"
#include "hvc/numerics.hpp"

namespace hvc::testing {

inline BinaryImage random_binary(std::size_t width, std::size_t height, std::uint64_t seed,
                                 double black_probability = 0.5) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution black(black_probability);
    BinaryImage image(width, height);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            image.set(r, c, black(rng));
        }
    }
    return image;
}

inline ComplexField random_field(std::size_t width, std::size_t height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ComplexField f(width, height);
    for (auto& v : f) {
        v = Complex(normal(rng), normal(rng));
    }
    return f;
}

// 5x7 bitmap glyphs, one string per row, '#' = ink.
inline std::array<std::string_view, 7> glyph(char ch) {
    switch (ch) {
        case 'V': return {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."};
        case 'C': return {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."};
        case 'H': return {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"};
        case 'G': return {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".###."};
        case 'O': return {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."};
        default:  return {".....", ".....", ".....", ".....", ".....", ".....", "....."};
    }
}

// Renders `text` in the 5x7 font scaled by `scale`, centered on a white canvas.
inline BinaryImage text_secret(std::string_view text, std::size_t width, std::size_t height,
                               std::size_t scale) {
    BinaryImage image(width, height);
    const std::size_t advance = 6 * scale;
    const std::size_t text_w = text.size() * advance - scale;
    const std::size_t text_h = 7 * scale;
    const std::size_t left = (width - text_w) / 2;
    const std::size_t top = (height - text_h) / 2;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto rows = glyph(text[i]);
        for (std::size_t gr = 0; gr < 7; ++gr) {
            for (std::size_t gc = 0; gc < 5; ++gc) {
                if (rows[gr][gc] != '#') {
                    continue;
                }
                for (std::size_t dy = 0; dy < scale; ++dy) {
                    for (std::size_t dx = 0; dx < scale; ++dx) {
                        image.set(top + gr * scale + dy, left + i * advance + gc * scale + dx, true);
                    }
                }
            }
        }
    }
    return image;
}

// 64x64 "VC" glyph secret used by the end-to-end checks.
inline BinaryImage glyph_secret_64() { return text_secret("VC", 64, 64, 5); }

class TempDir {
public:
    explicit TempDir(std::string_view tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("hvc-" + std::string(tag) + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ignored;
        std::filesystem::remove_all(path_, ignored);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace hvc::testing
