#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvc {

// Row-major 2-D grid. Rows index y (height), columns index x (width).
template <typename T>
class Grid {
public:
    using value_type = T;

    Grid() = default;

    Grid(std::size_t width, std::size_t height, T fill = T{})
        : width_(width), height_(height), data_(width * height, fill) {}

    Grid(std::size_t width, std::size_t height, std::vector<T> values)
        : width_(width), height_(height), data_(std::move(values)) {
        if (data_.size() != width_ * height_) {
            throw std::invalid_argument("grid: value count " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(width_) + "x" +
                                        std::to_string(height_));
        }
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * width_ + col]; }
    const T& operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * width_ + col];
    }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool same_shape(const Grid& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<T> data_;
};

using RealGrid = Grid<double>;

}  // namespace hvc
