#pragma once

// Helpers shared by the key=value text formats (manifest and scheme files).

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hvc/errors.hpp"
#include "hvc/grid.hpp"

namespace hvc::detail {

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

// Splits LF (or CRLF) separated lines; blank lines and '#' comments skipped.
inline std::vector<KeyValue> parse_key_values(std::string_view text, const char* format) {
    std::vector<KeyValue> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw FormatError(std::string(format) + ": line " + std::to_string(line_no) +
                              " is not key=value");
        }
        entries.push_back({std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)), line_no});
    }
    return entries;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    if (s.empty()) {
        return parts;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

template <typename T>
T parse_number(std::string_view s, const char* format, const std::string& key) {
    T value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        throw FormatError(std::string(format) + ": invalid value '" + std::string(s) + "' for " + key);
    }
    return value;
}

// Shortest representation that round-trips exactly.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::string format_row(const Grid<std::uint8_t>& matrix, std::size_t row) {
    std::string out;
    for (std::size_t c = 0; c < matrix.width(); ++c) {
        if (c != 0) {
            out.push_back(',');
        }
        out.push_back(matrix(row, c) != 0 ? '1' : '0');
    }
    return out;
}

inline std::vector<std::uint8_t> parse_row(std::string_view s, const char* format,
                                           const std::string& key) {
    std::vector<std::uint8_t> row;
    for (const auto& entry : split(s, ',')) {
        if (entry != "0" && entry != "1") {
            throw FormatError(std::string(format) + ": " + key + " entries must be 0 or 1");
        }
        row.push_back(entry == "1" ? 1 : 0);
    }
    if (row.empty()) {
        throw FormatError(std::string(format) + ": empty " + key + " row");
    }
    return row;
}

// Rows of equal length stacked into an n x m grid.
inline Grid<std::uint8_t> rows_to_grid(const std::vector<std::vector<std::uint8_t>>& rows,
                                       const char* format, const std::string& key) {
    if (rows.empty()) {
        throw FormatError(std::string(format) + ": missing " + key);
    }
    const std::size_t m = rows.front().size();
    std::vector<std::uint8_t> values;
    for (const auto& row : rows) {
        if (row.size() != m) {
            throw FormatError(std::string(format) + ": " + key + " rows differ in length");
        }
        values.insert(values.end(), row.begin(), row.end());
    }
    return Grid<std::uint8_t>(m, rows.size(), std::move(values));
}

}  // namespace hvc::detail
