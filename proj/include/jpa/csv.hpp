#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "jpa/errors.hpp"

namespace jpa {

/// Locale-independent shortest-exact decimal for a double (17 significant
/// digits, '.' separator, bit-reproducible).
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Minimal RFC-4180 writer: header row, CRLF line endings, quoting only when
/// a field contains a separator, quote or newline.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& names) { write_row_strings(names); }

    CsvWriter& field(double v) {
        fields_.push_back(format_double(v));
        return *this;
    }
    CsvWriter& field(int v) {
        fields_.push_back(std::to_string(v));
        return *this;
    }
    CsvWriter& field(bool v) {
        fields_.push_back(v ? "1" : "0");
        return *this;
    }
    CsvWriter& field(const std::string& v) {
        fields_.push_back(v);
        return *this;
    }
    void end_row() {
        write_row_strings(fields_);
        fields_.clear();
    }

private:
    static std::string quote_if_needed(const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }
    void write_row_strings(const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os_ << ',';
            os_ << quote_if_needed(row[i]);
        }
        os_ << "\r\n";
    }

    std::ostream& os_;
    std::vector<std::string> fields_;
};

inline std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw domain_error("cannot open output file: " + path);
    return os;
}

} // namespace jpa
