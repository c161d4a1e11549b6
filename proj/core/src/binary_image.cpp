#include "hvc/binary_image.hpp"

#include <algorithm>
#include <stdexcept>

namespace hvc {

BinaryImage::BinaryImage(std::size_t width, std::size_t height) : pixels_(width, height, 0) {}

BinaryImage::BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : pixels_(width, height, std::move(pixels)) {
    if (std::ranges::any_of(pixels_, [](std::uint8_t p) { return p > 1; })) {
        throw std::invalid_argument("BinaryImage: pixel values must be 0 or 1");
    }
}

std::size_t BinaryImage::black_count() const noexcept {
    return static_cast<std::size_t>(std::ranges::count(pixels_, std::uint8_t{1}));
}

double pixel_agreement(const BinaryImage& a, const BinaryImage& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("pixel_agreement: image sizes differ");
    }
    if (a.empty()) {
        return 1.0;
    }
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    std::size_t same = 0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        same += pa[i] == pb[i] ? 1 : 0;
    }
    return static_cast<double>(same) / static_cast<double>(pa.size());
}

}  // namespace hvc
