#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "hvc/imageio.hpp"
#include "text_fields.hpp"

namespace hvc {

namespace {

constexpr const char* kFormat = "manifest";

constexpr std::array<std::string_view, 17> kKeys = {
    "format_version", "scheme",         "n",
    "m",              "block_rows",     "block_cols",
    "s0",             "s1",             "seed",
    "pad_factor",     "carrier_cycles", "carrier_axis",
    "diffuser",       "diffuser_seed",  "quantization_bits",
    "share_files",    "hologram_files",
};

std::string format_matrix(const Grid<std::uint8_t>& matrix) {
    std::string out;
    for (std::size_t r = 0; r < matrix.height(); ++r) {
        if (r != 0) {
            out.push_back(';');
        }
        out += detail::format_row(matrix, r);
    }
    return out;
}

Grid<std::uint8_t> parse_matrix(std::string_view s, const std::string& key) {
    std::vector<std::vector<std::uint8_t>> rows;
    for (const auto& row : detail::split(s, ';')) {
        rows.push_back(detail::parse_row(row, kFormat, key));
    }
    return detail::rows_to_grid(rows, kFormat, key);
}

std::string join_files(const std::vector<std::string>& files) {
    std::string out;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (files[i].empty() || files[i].find_first_of(",\n\r") != std::string::npos) {
            throw std::invalid_argument("manifest: file name '" + files[i] + "' cannot be stored");
        }
        if (i != 0) {
            out.push_back(',');
        }
        out += files[i];
    }
    return out;
}

std::vector<std::string> parse_files(std::string_view s, const std::string& key) {
    auto files = detail::split(s, ',');
    for (const auto& f : files) {
        if (f.empty()) {
            throw FormatError("manifest: empty entry in " + key);
        }
    }
    return files;
}

}  // namespace

std::string encode_manifest(const RunManifest& manifest) {
    const auto& scheme = manifest.scheme;
    const auto& cgh = manifest.cgh;
    std::string out;
    auto line = [&out](std::string_view key, const std::string& value) {
        out.append(key);
        out.push_back('=');
        out += value;
        out.push_back('\n');
    };
    line("format_version", std::to_string(manifest.format_version));
    line("scheme", scheme.name());
    line("n", std::to_string(scheme.shares()));
    line("m", std::to_string(scheme.expansion()));
    line("block_rows", std::to_string(scheme.block_rows()));
    line("block_cols", std::to_string(scheme.block_cols()));
    line("s0", format_matrix(scheme.basis(Color::white)));
    line("s1", format_matrix(scheme.basis(Color::black)));
    line("seed", std::to_string(manifest.seed));
    line("pad_factor", std::to_string(cgh.pad_factor));
    line("carrier_cycles", detail::format_double(cgh.carrier_cycles));
    line("carrier_axis", cgh.carrier_axis == CarrierAxis::horizontal ? "horizontal" : "vertical");
    line("diffuser", cgh.diffuser == Diffuser::off ? "off" : "random_phase");
    line("diffuser_seed", std::to_string(cgh.diffuser_seed));
    line("quantization_bits",
         manifest.quantization_bits ? std::to_string(*manifest.quantization_bits) : "none");
    line("share_files", join_files(manifest.share_files));
    line("hologram_files", join_files(manifest.hologram_files));
    return out;
}

RunManifest decode_manifest(std::string_view text, bool strict) {
    std::map<std::string, std::string, std::less<>> fields;
    for (auto& kv : detail::parse_key_values(text, kFormat)) {
        const bool known = std::find(kKeys.begin(), kKeys.end(), kv.key) != kKeys.end();
        if (!known) {
            if (strict) {
                throw FormatError("manifest: unknown key '" + kv.key + "'");
            }
            continue;
        }
        if (!fields.emplace(kv.key, std::move(kv.value)).second) {
            throw FormatError("manifest: duplicate key '" + kv.key + "'");
        }
    }
    for (const auto key : kKeys) {
        if (!fields.contains(key)) {
            throw FormatError("manifest: missing key '" + std::string(key) + "'");
        }
    }
    auto get = [&fields](std::string_view key) -> const std::string& { return fields.find(key)->second; };
    auto number = [&get](std::string_view key) {
        return detail::parse_number<std::uint64_t>(get(key), kFormat, std::string(key));
    };

    RunManifest manifest;
    manifest.format_version = static_cast<int>(number("format_version"));
    if (manifest.format_version != RunManifest::current_version) {
        throw FormatError("manifest: unsupported format_version " + get("format_version"));
    }

    auto s0 = parse_matrix(get("s0"), "s0");
    auto s1 = parse_matrix(get("s1"), "s1");
    if (number("n") != s0.height() || number("m") != s0.width()) {
        throw FormatError("manifest: n/m disagree with the basis matrices");
    }
    try {
        manifest.scheme = VcScheme(get("scheme"), number("block_rows"), number("block_cols"),
                                   std::move(s0), std::move(s1));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("manifest: ") + e.what());
    }

    manifest.seed = number("seed");
    manifest.cgh.pad_factor = number("pad_factor");
    manifest.cgh.carrier_cycles =
        detail::parse_number<double>(get("carrier_cycles"), kFormat, "carrier_cycles");

    const auto& axis = get("carrier_axis");
    if (axis == "horizontal") {
        manifest.cgh.carrier_axis = CarrierAxis::horizontal;
    } else if (axis == "vertical") {
        manifest.cgh.carrier_axis = CarrierAxis::vertical;
    } else {
        throw FormatError("manifest: carrier_axis must be horizontal or vertical");
    }
    const auto& diffuser = get("diffuser");
    if (diffuser == "off") {
        manifest.cgh.diffuser = Diffuser::off;
    } else if (diffuser == "random_phase") {
        manifest.cgh.diffuser = Diffuser::random_phase;
    } else {
        throw FormatError("manifest: diffuser must be off or random_phase");
    }
    manifest.cgh.diffuser_seed = number("diffuser_seed");

    const auto& bits = get("quantization_bits");
    if (bits == "8" || bits == "16") {
        manifest.quantization_bits = bits == "8" ? 8u : 16u;
    } else if (bits != "none") {
        throw FormatError("manifest: quantization_bits must be none, 8 or 16");
    }

    manifest.share_files = parse_files(get("share_files"), "share_files");
    manifest.hologram_files = parse_files(get("hologram_files"), "hologram_files");
    return manifest;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    write_file_atomic(path, encode_manifest(manifest));
}

RunManifest read_manifest(const std::filesystem::path& path, bool strict) {
    return decode_manifest(read_file(path), strict);
}

}  // namespace hvc
