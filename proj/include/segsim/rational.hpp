#pragma once

// Exact rational scalars for payoff parameters given as decimal strings.
// Comparisons made with these never suffer rounding, so knife-edge ties
// (indifference, weak equilibria) are decided exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace segsim {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "[+-]digits[.digits][(e|E)[+-]digits]" into an exact rational.
inline Rational parse_decimal(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    BigInt digits = 0;
    long frac_len = 0;
    bool any_digit = false;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits = digits * 10 + (text[i] - '0');
        any_digit = true;
        ++i;
    }
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits = digits * 10 + (text[i] - '0');
            ++frac_len;
            any_digit = true;
            ++i;
        }
    }
    long exp10 = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            exp_neg = text[i] == '-';
            ++i;
        }
        bool exp_digit = false;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exp10 = exp10 * 10 + (text[i] - '0');
            exp_digit = true;
            ++i;
        }
        if (!exp_digit) throw std::invalid_argument("bad decimal literal: " + text);
        if (exp_neg) exp10 = -exp10;
    }
    if (!any_digit || i != n) throw std::invalid_argument("bad decimal literal: " + text);

    Rational value(digits);
    long shift = exp10 - frac_len;
    if (shift > 0) {
        BigInt scale = 1;
        for (long k = 0; k < shift; ++k) scale *= 10;
        value *= Rational(scale);
    } else if (shift < 0) {
        BigInt scale = 1;
        for (long k = 0; k < -shift; ++k) scale *= 10;
        value /= Rational(scale);
    }
    if (negative) value = -value;
    return value;
}

// Renders q as a finite decimal string when the reduced denominator is
// 2^a * 5^b; returns false otherwise.
inline bool to_decimal_string(const Rational& q, std::string& out) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    long twos = 0, fives = 0;
    BigInt d = den;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return false;
    // Scale so the denominator becomes 10^k.
    long k = twos > fives ? twos : fives;
    for (long i = fives; i < twos; ++i) num *= 5;
    for (long i = twos; i < fives; ++i) num *= 2;
    bool neg = num < 0;
    if (neg) num = -num;
    std::string s = num.str();
    if (k == 0) {
        out = (neg ? "-" : "") + s;
        return true;
    }
    if (static_cast<long>(s.size()) <= k) s.insert(0, k + 1 - s.size(), '0');
    s.insert(s.size() - k, ".");
    out = (neg ? "-" : "") + s;
    return true;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Smallest integer n with q <= n.
inline long ceil_to_long(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;  // truncates toward zero
    if (quot * den < num) quot += 1;
    return quot.convert_to<long>();
}

}  // namespace segsim
