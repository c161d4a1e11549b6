#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hvc/imageio.hpp"

namespace hvc {

namespace {

constexpr std::string_view magic = "HVCF";
// magic + version + 4 dims + carrier + axis + pad + spectrum_max
constexpr std::size_t header_size = 4 + 2 + 4 * 4 + 8 + 1 + 2 + 8;

class Writer {
public:
    void bytes(std::string_view b) { out_.append(b); }
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u32(std::uint32_t v) { put(v, 4); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    std::string take() { return std::move(out_); }
    void reserve(std::size_t n) { out_.reserve(n); }

private:
    void put(std::uint64_t v, int count) {
        for (int i = 0; i < count; ++i) {
            out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
        }
    }
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view in) : in_(in) {}

    std::string_view bytes(std::size_t n) {
        need(n);
        auto s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    double f64() { return std::bit_cast<double>(get(8)); }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) {
            throw FormatError("hvcf: truncated data");
        }
    }
    std::uint64_t get(int count) {
        need(static_cast<std::size_t>(count));
        std::uint64_t v = 0;
        for (int i = 0; i < count; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
        }
        pos_ += static_cast<std::size_t>(count);
        return v;
    }

    std::string_view in_;
    std::size_t pos_ = 0;
};

std::uint32_t checked_u32(std::size_t v, const char* what) {
    if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument(std::string("hvcf: ") + what + " does not fit in u32");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

std::string encode_hologram(const Hologram& hologram) {
    if (hologram.values.size() != hologram.width() * hologram.height() || hologram.values.empty()) {
        throw std::invalid_argument("hvcf: empty hologram");
    }
    if (hologram.params.pad_factor > std::numeric_limits<std::uint16_t>::max()) {
        throw std::invalid_argument("hvcf: pad_factor does not fit in u16");
    }
    Writer w;
    w.reserve(header_size + 8 * hologram.values.size());
    w.bytes(magic);
    w.u16(hvcf_version);
    w.u32(checked_u32(hologram.width(), "width"));
    w.u32(checked_u32(hologram.height(), "height"));
    w.u32(checked_u32(hologram.share_width, "share_width"));
    w.u32(checked_u32(hologram.share_height, "share_height"));
    w.f64(hologram.params.carrier_cycles);
    w.u8(static_cast<std::uint8_t>(hologram.params.carrier_axis));
    w.u16(static_cast<std::uint16_t>(hologram.params.pad_factor));
    w.f64(hologram.spectrum_max);
    for (const double v : hologram.values) {
        w.f64(v);
    }
    return w.take();
}

Hologram decode_hologram(std::string_view bytes) {
    Reader r(bytes);
    if (bytes.size() < magic.size() || r.bytes(magic.size()) != magic) {
        throw FormatError("hvcf: bad magic");
    }
    const auto version = r.u16();
    if (version != hvcf_version) {
        throw FormatError("hvcf: unsupported version " + std::to_string(version));
    }
    Hologram h;
    const std::size_t width = r.u32();
    const std::size_t height = r.u32();
    h.share_width = r.u32();
    h.share_height = r.u32();
    h.params.carrier_cycles = r.f64();
    const auto axis = r.u8();
    if (axis > 1) {
        throw FormatError("hvcf: invalid carrier axis " + std::to_string(axis));
    }
    h.params.carrier_axis = static_cast<CarrierAxis>(axis);
    h.params.pad_factor = r.u16();
    h.spectrum_max = r.f64();

    if (width == 0 || height == 0) {
        throw FormatError("hvcf: zero dimension");
    }
    if (h.share_width == 0 || h.share_height == 0 || h.share_width > width || h.share_height > height) {
        throw FormatError("hvcf: share dimensions inconsistent with hologram size");
    }
    if (!std::isfinite(h.params.carrier_cycles) || !std::isfinite(h.spectrum_max)) {
        throw FormatError("hvcf: non-finite header field");
    }
    const std::size_t count = width * height;
    if (r.remaining() != count * 8) {
        throw FormatError("hvcf: payload holds " + std::to_string(r.remaining()) +
                          " bytes, expected " + std::to_string(count * 8));
    }
    std::vector<double> values(count);
    for (auto& v : values) {
        v = r.f64();
    }
    h.values = RealGrid(width, height, std::move(values));
    return h;
}

void write_hologram(const Hologram& hologram, const std::filesystem::path& path) {
    write_file_atomic(path, encode_hologram(hologram));
}

Hologram read_hologram(const std::filesystem::path& path) {
    return decode_hologram(read_file(path));
}

}  // namespace hvc
