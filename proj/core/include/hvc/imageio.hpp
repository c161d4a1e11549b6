#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hvc/binary_image.hpp"
#include "hvc/cgh.hpp"
#include "hvc/errors.hpp"
#include "hvc/grid.hpp"
#include "hvc/vc.hpp"

namespace hvc {

// ---- files ---------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

// ---- PGM (binary "P5") ---------------------------------------------------

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint16_t maxval = 255;  // 255 or 65535
    std::vector<std::uint16_t> samples;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

GrayImage decode_pgm(std::string_view bytes);
std::string encode_pgm(const GrayImage& image);  // header "P5\n<w> <h>\n<maxval>\n"

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& image, const std::filesystem::path& path);

// 0 is black ink, maxval is white. In strict mode any other sample is a
// FormatError; otherwise samples below maxval/2 count as black.
BinaryImage to_binary(const GrayImage& image, bool strict = true);
GrayImage to_gray(const BinaryImage& image);  // maxval 255
// Values clamped to [0, 1] and scaled by maxval with rounding.
GrayImage to_gray(const RealGrid& image, std::uint16_t maxval);

BinaryImage read_binary_pgm(const std::filesystem::path& path, bool strict = true);
void write_pgm(const BinaryImage& image, const std::filesystem::path& path);

// ---- HVCF hologram container ---------------------------------------------
// "HVCF", u16 version = 1, u32 width, u32 height, u32 share_width,
// u32 share_height, f64 carrier_cycles, u8 carrier_axis, u16 pad_factor,
// f64 spectrum_max, then width*height f64 samples row-major. All little
// endian. Diffuser settings are not part of the container.

inline constexpr std::uint16_t hvcf_version = 1;

std::string encode_hologram(const Hologram& hologram);
Hologram decode_hologram(std::string_view bytes);

void write_hologram(const Hologram& hologram, const std::filesystem::path& path);
Hologram read_hologram(const std::filesystem::path& path);

// ---- run manifest --------------------------------------------------------

struct RunManifest {
    static constexpr int current_version = 1;

    int format_version = current_version;
    VcScheme scheme = VcScheme::ns_2x2();
    std::uint64_t seed = 0;
    CghParams cgh;
    std::optional<unsigned> quantization_bits;
    std::vector<std::string> share_files;
    std::vector<std::string> hologram_files;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

// One key=value per line, LF endings, keys in this fixed order:
//   format_version scheme n m block_rows block_cols s0 s1 seed pad_factor
//   carrier_cycles carrier_axis diffuser diffuser_seed quantization_bits
//   share_files hologram_files
// Matrix rows are joined by ';' and entries by ','. File lists use ','.
std::string encode_manifest(const RunManifest& manifest);
// Strict mode rejects unknown keys. Missing or repeated keys always fail.
RunManifest decode_manifest(std::string_view text, bool strict = true);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path, bool strict = true);

// ---- scheme files --------------------------------------------------------
// Plain text, one key=value per line; '#' starts a comment line.
//   name=<identifier>
//   block_rows=<r>
//   block_cols=<c>
//   s0=<m comma-separated 0/1 entries>   (one line per share, in order)
//   s1=<m comma-separated 0/1 entries>   (one line per share, in order)
// Optional n= and m= lines are checked against the matrices.

VcScheme parse_scheme(std::string_view text);
std::string format_scheme(const VcScheme& scheme);
VcScheme read_scheme_file(const std::filesystem::path& path);

}  // namespace hvc
