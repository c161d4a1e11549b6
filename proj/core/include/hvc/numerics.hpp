#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>

#include "hvc/grid.hpp"

namespace hvc {

using Complex = std::complex<double>;
using ComplexField = Grid<Complex>;

// Centered, unitary 2-D DFTs. Sample (height/2, width/2) (floor division) is
// the origin in both domains and each direction scales by 1/sqrt(width*height),
// so Parseval holds with no extra factors. Any size is supported.
// Non-finite input throws std::invalid_argument.
ComplexField dft2_centered(const ComplexField& field);
ComplexField idft2_centered(const ComplexField& spectrum);

ComplexField to_complex(const RealGrid& real);
RealGrid intensity(const ComplexField& field);
double energy(const ComplexField& field);

// Places `field` so that its center sample lands on the center of a
// new_width x new_height grid of zeros.
template <typename T>
Grid<T> zero_pad_center(const Grid<T>& field, std::size_t new_width, std::size_t new_height) {
    if (new_width < field.width() || new_height < field.height()) {
        throw std::invalid_argument("zero_pad_center: target smaller than source");
    }
    Grid<T> out(new_width, new_height);
    const std::size_t top = new_height / 2 - field.height() / 2;
    const std::size_t left = new_width / 2 - field.width() / 2;
    for (std::size_t r = 0; r < field.height(); ++r) {
        for (std::size_t c = 0; c < field.width(); ++c) {
            out(top + r, left + c) = field(r, c);
        }
    }
    return out;
}

// Window of the given size whose center sample sits at the grid center
// shifted by (row_offset, col_offset). No wraparound.
template <typename T>
Grid<T> crop_center(const Grid<T>& field, std::size_t window_width, std::size_t window_height,
                    std::ptrdiff_t row_offset, std::ptrdiff_t col_offset) {
    const auto top = static_cast<std::ptrdiff_t>(field.height() / 2) + row_offset -
                     static_cast<std::ptrdiff_t>(window_height / 2);
    const auto left = static_cast<std::ptrdiff_t>(field.width() / 2) + col_offset -
                      static_cast<std::ptrdiff_t>(window_width / 2);
    if (window_width == 0 || window_height == 0 || top < 0 || left < 0 ||
        top + static_cast<std::ptrdiff_t>(window_height) >
            static_cast<std::ptrdiff_t>(field.height()) ||
        left + static_cast<std::ptrdiff_t>(window_width) >
            static_cast<std::ptrdiff_t>(field.width())) {
        throw std::invalid_argument("crop_center: window outside the field");
    }
    Grid<T> out(window_width, window_height);
    for (std::size_t r = 0; r < window_height; ++r) {
        for (std::size_t c = 0; c < window_width; ++c) {
            out(r, c) = field(static_cast<std::size_t>(top) + r, static_cast<std::size_t>(left) + c);
        }
    }
    return out;
}

}  // namespace hvc
