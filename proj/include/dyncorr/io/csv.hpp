#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dyncorr/core.hpp"

namespace dyncorr::io {

/// Malformed or unreadable input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double ('.' separator, no locale).
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

inline std::optional<double> parse_number(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw DataError("non-numeric cell '" + std::string(s) + "'");
    }
    return v;
}

/// Column-major numeric table; empty cells are missing.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> columns;

    std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name) return c;
        }
        return std::nullopt;
    }

    /// Column `c` as a complete series; any missing cell is a data error.
    std::vector<double> dense(std::size_t c) const {
        std::vector<double> out;
        out.reserve(rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            const auto& v = columns.at(c)[r];
            if (!v) {
                throw DataError("column '" + header.at(c) + "' has an empty cell at row " +
                                std::to_string(r + 1));
            }
            out.push_back(*v);
        }
        return out;
    }
};

namespace csv_detail {

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

inline std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '"' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

}  // namespace csv_detail

/// Parses comma-separated text with one header row.
inline Table parse_csv(std::istream& in) {
    Table t;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = csv_detail::split(line);
        if (!have_header) {
            for (auto c : cells) t.header.push_back(csv_detail::trim(c));
            t.columns.resize(t.header.size());
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(t.header.size()) + " cells, found " +
                            std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                t.columns[c].push_back(parse_number(cells[c]));
            } catch (const DataError& e) {
                throw DataError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (!have_header) {
        throw DataError("empty CSV input");
    }
    return t;
}

inline Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    return parse_csv(in);
}

/// Writes a table with '\n' line endings; missing cells are left empty.
inline void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        out << (c ? "," : "") << t.header[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out << ',';
            if (const auto& v = t.columns[c][r]) out << format_number(*v);
        }
        out << '\n';
    }
}

inline void write_csv(const std::string& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    write_csv(out, t);
    if (!out) {
        throw DataError("write to '" + path + "' failed");
    }
}

/// Spreads a track over rows t = 1..t_len, leaving rows outside its support empty.
inline std::vector<std::optional<double>> track_column(const CorrelationTrack& track, std::size_t t_len) {
    std::vector<std::optional<double>> col(t_len);
    for (std::size_t j = 0; j < track.size(); ++j) {
        const std::size_t t = track.start_index + j;
        if (t >= 1 && t <= t_len) col[t - 1] = track.values[j];
    }
    return col;
}

/// Rebuilds a track from a column written by track_column: support starts at
/// the first defined row.
inline std::optional<CorrelationTrack> column_track(const std::vector<std::optional<double>>& col) {
    std::size_t first = 0;
    while (first < col.size() && !col[first]) ++first;
    if (first == col.size()) return std::nullopt;
    CorrelationTrack track;
    track.start_index = first + 1;
    track.values.assign(col.begin() + static_cast<std::ptrdiff_t>(first), col.end());
    return track;
}

}  // namespace dyncorr::io
