#pragma once

#include <boost/rational.hpp>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "hypdyn/errors.hpp"

namespace hypdyn {

// Exact scalar used wherever bit-for-bit agreement with the combinatorial
// oracles is required. All built-in inputs have small numerators and
// denominators, far from the int64 range.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

// Parses "3", "-1/4", "0.25", "-0.5" into an exact rational.
inline Rational rational_from_string(std::string_view s) {
    auto fail = [&] { throw ParseError("not a rational literal: '" + std::string(s) + "'"); };
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) fail();

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
        if (s.empty()) fail();
    }

    long long num = 0, den = 1;
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        num = num * 10 + (s[i] - '0');
        any_digit = true;
    }
    if (i < s.size() && s[i] == '/') {
        ++i;
        long long d = 0;
        bool dd = false;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            d = d * 10 + (s[i] - '0');
            dd = true;
        }
        if (!any_digit || !dd || d == 0 || i != s.size()) fail();
        den = d;
    } else if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            num = num * 10 + (s[i] - '0');
            den *= 10;
            any_digit = true;
        }
        if (!any_digit || i != s.size()) fail();
    } else if (!any_digit || i != s.size()) {
        fail();
    }
    Rational r(num, den);
    return neg ? -r : r;
}

inline std::string to_string(const Rational& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

}  // namespace hypdyn
