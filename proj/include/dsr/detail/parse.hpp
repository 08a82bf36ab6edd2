#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "dsr/errors.hpp"

namespace dsr::detail {

struct Line {
    int number = 0; // 1-based
    std::string text;
};

// All lines of the stream, keeping numbers; trailing \r is stripped.
inline std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> out;
    std::string s;
    int n = 0;
    while (std::getline(in, s)) {
        ++n;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        out.push_back({n, s});
    }
    return out;
}

inline bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> parts;
    std::string w;
    while (iss >> w) parts.push_back(w);
    return parts;
}

inline long long parse_ll(const std::string& tok, int line_no) {
    try {
        size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line_no) + ": expected an integer, got '" + tok + "'");
    }
}

inline int parse_int(const std::string& tok, int line_no) {
    long long v = parse_ll(tok, line_no);
    if (v < -2147483648LL || v > 2147483647LL)
        throw parse_error("line " + std::to_string(line_no) + ": integer out of range: '" + tok + "'");
    return static_cast<int>(v);
}

} // namespace dsr::detail
