#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "hvc/imageio.hpp"

namespace hvc {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_whitespace_and_comments() {
        while (pos_ < bytes_.size()) {
            const char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t number(const char* what) {
        skip_whitespace_and_comments();
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
            if (++digits > 9) {
                throw FormatError(std::string("pgm: ") + what + " is too large");
            }
            ++pos_;
        }
        if (digits == 0) {
            throw FormatError(std::string("pgm: expected ") + what);
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void raster_separator() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw FormatError("pgm: missing whitespace before raster data");
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

GrayImage decode_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw FormatError("pgm: missing P5 magic");
    }
    HeaderReader header(bytes);
    GrayImage image;
    image.width = header.number("width");
    image.height = header.number("height");
    const std::size_t maxval = header.number("maxval");
    header.raster_separator();
    if (image.width == 0 || image.height == 0) {
        throw FormatError("pgm: zero image dimension");
    }
    if (maxval == 0 || maxval > 65535) {
        throw FormatError("pgm: maxval must be in 1..65535");
    }
    image.maxval = static_cast<std::uint16_t>(maxval);

    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t count = image.width * image.height;
    const std::string_view raster = bytes.substr(header.position());
    if (raster.size() != count * bytes_per_sample) {
        throw FormatError("pgm: raster holds " + std::to_string(raster.size()) + " bytes, expected " +
                          std::to_string(count * bytes_per_sample));
    }
    image.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint16_t v = 0;
        if (bytes_per_sample == 1) {
            v = static_cast<unsigned char>(raster[i]);
        } else {
            v = static_cast<std::uint16_t>((static_cast<unsigned char>(raster[2 * i]) << 8) |
                                           static_cast<unsigned char>(raster[2 * i + 1]));
        }
        if (v > maxval) {
            throw FormatError("pgm: sample exceeds maxval");
        }
        image.samples[i] = v;
    }
    return image;
}

std::string encode_pgm(const GrayImage& image) {
    if (image.width == 0 || image.height == 0 || image.samples.size() != image.width * image.height) {
        throw std::invalid_argument("pgm: image dimensions do not match sample count");
    }
    if (image.maxval == 0) {
        throw std::invalid_argument("pgm: maxval must be positive");
    }
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                      "\n" + std::to_string(image.maxval) + "\n";
    const bool wide = image.maxval > 255;
    out.reserve(out.size() + image.samples.size() * (wide ? 2 : 1));
    for (const auto v : image.samples) {
        if (v > image.maxval) {
            throw std::invalid_argument("pgm: sample exceeds maxval");
        }
        if (wide) {
            out.push_back(static_cast<char>(v >> 8));
        }
        out.push_back(static_cast<char>(v & 0xFF));
    }
    return out;
}

GrayImage read_pgm(const std::filesystem::path& path) {
    return decode_pgm(read_file(path));
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
    write_file_atomic(path, encode_pgm(image));
}

BinaryImage to_binary(const GrayImage& image, bool strict) {
    std::vector<std::uint8_t> pixels(image.samples.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        const auto v = image.samples[i];
        if (strict && v != 0 && v != image.maxval) {
            throw FormatError("pgm: intermediate gray level " + std::to_string(v) +
                              " in a binary image");
        }
        pixels[i] = 2u * v < image.maxval ? 1 : 0;
    }
    return BinaryImage(image.width, image.height, std::move(pixels));
}

GrayImage to_gray(const BinaryImage& image) {
    GrayImage gray{image.width(), image.height(), 255, {}};
    gray.samples.reserve(image.size());
    for (const auto p : image.pixels()) {
        gray.samples.push_back(p != 0 ? 0 : 255);
    }
    return gray;
}

GrayImage to_gray(const RealGrid& image, std::uint16_t maxval) {
    GrayImage gray{image.width(), image.height(), maxval, {}};
    gray.samples.reserve(image.size());
    for (const double v : image) {
        const double clamped = std::clamp(v, 0.0, 1.0);
        gray.samples.push_back(static_cast<std::uint16_t>(std::lround(clamped * maxval)));
    }
    return gray;
}

BinaryImage read_binary_pgm(const std::filesystem::path& path, bool strict) {
    return to_binary(read_pgm(path), strict);
}

void write_pgm(const BinaryImage& image, const std::filesystem::path& path) {
    write_pgm(to_gray(image), path);
}

}  // namespace hvc
