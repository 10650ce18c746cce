#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "adaptseg/series.hpp"

namespace adaptseg {

/// CSV input that could not be parsed; `line` is 1-based (0 for file-level
/// problems such as an unreadable or empty file).
class CsvParseError : public std::runtime_error {
public:
    CsvParseError(const std::string& message, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Shape of a series file: x,y rows or one y per row (x_i = i).
struct SeriesFormat {
    bool has_x = true;
    char delimiter = ',';
    bool header = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline double parse_number(std::string_view field, std::size_t line) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw CsvParseError("cannot parse number '" + std::string(field) + "'", line);
    }
    return value;
}

}  // namespace detail

/// Reads a series from CSV. Blank lines are skipped; every data row must
/// have exactly the expected number of fields. Accepts scientific notation.
/// Throws CsvParseError (with the line number) on malformed rows, values
/// that are not finite, non-increasing x, or an input with no data points.
inline TimeSeries read_series(std::istream& in, const SeriesFormat& format = {}) {
    std::vector<Point> pts;
    std::string line;
    std::size_t line_no = 0;
    bool skipped_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (format.header && !skipped_header) {
            skipped_header = true;
            continue;
        }
        const std::string_view row = detail::trim(line);
        if (row.empty()) continue;

        double x = 0.0, y = 0.0;
        if (format.has_x) {
            const std::size_t sep = row.find(format.delimiter);
            if (sep == std::string_view::npos) {
                throw CsvParseError("expected two fields separated by '" +
                                        std::string(1, format.delimiter) + "'",
                                    line_no);
            }
            const std::string_view rest = row.substr(sep + 1);
            if (rest.find(format.delimiter) != std::string_view::npos) {
                throw CsvParseError("expected exactly two fields", line_no);
            }
            x = detail::parse_number(row.substr(0, sep), line_no);
            y = detail::parse_number(rest, line_no);
        } else {
            if (row.find(format.delimiter) != std::string_view::npos) {
                throw CsvParseError("expected a single value per row", line_no);
            }
            x = static_cast<double>(pts.size());
            y = detail::parse_number(row, line_no);
        }
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw CsvParseError("values must be finite", line_no);
        }
        if (!pts.empty() && !(x > pts.back().x)) {
            throw CsvParseError("x values must be strictly increasing", line_no);
        }
        pts.push_back({x, y});
    }
    if (pts.empty()) {
        throw CsvParseError("input contains no data points", 0);
    }
    return TimeSeries(std::move(pts));
}

inline TimeSeries read_series_file(const std::string& path, const SeriesFormat& format = {}) {
    std::ifstream in(path);
    if (!in) {
        throw CsvParseError("cannot open '" + path + "'", 0);
    }
    return read_series(in, format);
}

/// Shortest decimal representation that round-trips the exact double.
inline std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline void write_series(std::ostream& out, const TimeSeries& ts, char delimiter = ',') {
    for (const Point& p : ts) {
        out << format_double(p.x) << delimiter << format_double(p.y) << '\n';
    }
}

inline void write_series_file(const std::string& path, const TimeSeries& ts,
                              char delimiter = ',') {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write_series(out, ts, delimiter);
}

}  // namespace adaptseg
