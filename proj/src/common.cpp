#include "camtraj/common.hpp"

#include <cstdio>
#include <cstdlib>

namespace camtraj {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    std::string s(buf);
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        auto last = s.find_last_not_of('0');
        if (last == dot) last -= 1;  // "1." -> "1"
        s.erase(last + 1);
    }
    if (s == "-0") s = "0";
    return s;
}

std::string format_sig9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return std::string(buf);
}

double parse_number(const std::string& token) {
    if (token.empty()) throw ParseError("empty number");
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        throw ParseError("malformed number '" + token + "'");
    return v;
}

}  // namespace camtraj
