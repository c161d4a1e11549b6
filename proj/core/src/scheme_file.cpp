#include <optional>
#include <stdexcept>

#include "hvc/imageio.hpp"
#include "text_fields.hpp"

namespace hvc {

namespace {
constexpr const char* kFormat = "scheme";
}

VcScheme parse_scheme(std::string_view text) {
    std::optional<std::string> name;
    std::optional<std::size_t> rows;
    std::optional<std::size_t> cols;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::vector<std::vector<std::uint8_t>> s0;
    std::vector<std::vector<std::uint8_t>> s1;

    auto set_once = [](auto& slot, auto value, const std::string& key) {
        if (slot) {
            throw FormatError(std::string(kFormat) + ": duplicate key " + key);
        }
        slot = std::move(value);
    };

    for (const auto& kv : detail::parse_key_values(text, kFormat)) {
        if (kv.key == "name") {
            set_once(name, kv.value, kv.key);
        } else if (kv.key == "block_rows") {
            set_once(rows, detail::parse_number<std::size_t>(kv.value, kFormat, kv.key), kv.key);
        } else if (kv.key == "block_cols") {
            set_once(cols, detail::parse_number<std::size_t>(kv.value, kFormat, kv.key), kv.key);
        } else if (kv.key == "n") {
            set_once(n, detail::parse_number<std::size_t>(kv.value, kFormat, kv.key), kv.key);
        } else if (kv.key == "m") {
            set_once(m, detail::parse_number<std::size_t>(kv.value, kFormat, kv.key), kv.key);
        } else if (kv.key == "s0") {
            s0.push_back(detail::parse_row(kv.value, kFormat, kv.key));
        } else if (kv.key == "s1") {
            s1.push_back(detail::parse_row(kv.value, kFormat, kv.key));
        } else {
            throw FormatError(std::string(kFormat) + ": unknown key '" + kv.key + "' on line " +
                              std::to_string(kv.line));
        }
    }
    if (!name || name->empty()) {
        throw FormatError("scheme: missing name");
    }
    if (!rows || !cols) {
        throw FormatError("scheme: missing block_rows/block_cols");
    }
    auto g0 = detail::rows_to_grid(s0, kFormat, "s0");
    auto g1 = detail::rows_to_grid(s1, kFormat, "s1");
    if (n && *n != g0.height()) {
        throw FormatError("scheme: n does not match the number of s0 rows");
    }
    if (m && *m != g0.width()) {
        throw FormatError("scheme: m does not match the s0 row length");
    }
    try {
        return VcScheme(*name, *rows, *cols, std::move(g0), std::move(g1));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

std::string format_scheme(const VcScheme& scheme) {
    std::string out;
    out += "name=" + scheme.name() + "\n";
    out += "n=" + std::to_string(scheme.shares()) + "\n";
    out += "m=" + std::to_string(scheme.expansion()) + "\n";
    out += "block_rows=" + std::to_string(scheme.block_rows()) + "\n";
    out += "block_cols=" + std::to_string(scheme.block_cols()) + "\n";
    for (std::size_t i = 0; i < scheme.shares(); ++i) {
        out += "s0=" + detail::format_row(scheme.basis(Color::white), i) + "\n";
    }
    for (std::size_t i = 0; i < scheme.shares(); ++i) {
        out += "s1=" + detail::format_row(scheme.basis(Color::black), i) + "\n";
    }
    return out;
}

VcScheme read_scheme_file(const std::filesystem::path& path) {
    return parse_scheme(read_file(path));
}

}  // namespace hvc
