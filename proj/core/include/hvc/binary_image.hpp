#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hvc/grid.hpp"

namespace hvc {

// Black/white raster. A pixel value of 1 is black (opaque ink), 0 is white
// (transparent). Construction rejects anything other than 0 or 1.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(std::size_t width, std::size_t height);  // all white
    BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

    std::size_t width() const noexcept { return pixels_.width(); }
    std::size_t height() const noexcept { return pixels_.height(); }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    std::uint8_t operator()(std::size_t row, std::size_t col) const noexcept {
        return pixels_(row, col);
    }
    void set(std::size_t row, std::size_t col, bool black) noexcept {
        pixels_(row, col) = black ? 1 : 0;
    }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_.values(); }

    std::size_t black_count() const noexcept;

    bool same_shape(const BinaryImage& other) const noexcept {
        return pixels_.same_shape(other.pixels_);
    }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    Grid<std::uint8_t> pixels_;
};

// Fraction of pixels on which two equally sized images agree.
double pixel_agreement(const BinaryImage& a, const BinaryImage& b);

}  // namespace hvc
