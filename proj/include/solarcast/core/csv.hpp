#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "solarcast/core/errors.hpp"

namespace solarcast {

// Formats a double with 17 significant digits so the decimal text round-trips
// to the identical bit pattern.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(std::string_view s, const std::string& where) {
    double v = 0.0;
    // leading whitespace is not produced by our writers; reject it
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (s == "nan" || s == "NaN" || s.empty())
        return std::numeric_limits<double>::quiet_NaN();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw DataError(where + ": cannot parse number '" + std::string(s) + "'");
    return v;
}

inline long parse_long(std::string_view s, const std::string& where) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DataError(where + ": cannot parse integer '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Minimal CSV table reader: mandatory header row, fixed column schema.
// Errors name the file and 1-based line.
class CsvReader {
public:
    CsvReader(const std::filesystem::path& path,
              const std::vector<std::string>& expected_header)
        : path_(path.string()) {
        std::ifstream in(path);
        if (!in)
            throw DataError("cannot open " + path_);
        std::string line;
        if (!std::getline(in, line))
            throw DataError(path_ + ": empty file, expected header row");
        auto header = split_csv_line(line);
        if (header != expected_header) {
            std::string want;
            for (std::size_t i = 0; i < expected_header.size(); ++i)
                want += (i ? "," : "") + expected_header[i];
            throw DataError(path_ + ":1: bad header '" + line + "', expected '" +
                            want + "'");
        }
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty())
                continue;
            auto fields = split_csv_line(line);
            if (fields.size() != expected_header.size())
                throw DataError(path_ + ":" + std::to_string(lineno) + ": expected " +
                                std::to_string(expected_header.size()) +
                                " fields, got " + std::to_string(fields.size()));
            rows_.push_back(std::move(fields));
            linenos_.push_back(lineno);
        }
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }

    std::string location(std::size_t i) const {
        return path_ + ":" + std::to_string(linenos_[i]);
    }

    double number(std::size_t i, std::size_t col) const {
        return parse_double(rows_[i][col], location(i));
    }

    long integer(std::size_t i, std::size_t col) const {
        return parse_long(rows_[i][col], location(i));
    }

private:
    std::string path_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> linenos_;
};

// Writes a file atomically: stream into "<path>.tmp", then rename.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw DataError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

} // namespace solarcast
