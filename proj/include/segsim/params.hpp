#pragma once

// Model parameters: two group sizes, two in-group coordination weights,
// one cross-group distaste weight. gamma values live in (1/2, 1); delta is
// any positive number; groups need at least two members.

#include "segsim/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace segsim {

struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A payoff weight. `exact` is set when the value came from a decimal
// literal, in which case all comparisons involving it can be exact.
struct PayoffValue {
    double value = 0.0;
    std::optional<Rational> exact;

    static PayoffValue from_double(double v) { return {v, std::nullopt}; }
    static PayoffValue from_decimal(const std::string& text) {
        Rational q = parse_decimal(text);
        return {to_double(q), std::move(q)};
    }
    static PayoffValue from_rational(Rational q) {
        double v = to_double(q);
        return {v, std::move(q)};
    }
    // The value as an exact rational; doubles are themselves rationals, so
    // this is lossless either way.
    Rational as_rational() const { return exact ? *exact : Rational(value); }
};

struct Params {
    int n_a = 0;
    int n_b = 0;
    PayoffValue gamma_a, gamma_b, delta;

    int total() const { return n_a + n_b; }
    bool all_exact() const {
        return gamma_a.exact && gamma_b.exact && delta.exact;
    }
};

inline void validate_params(const Params& p) {
    if (p.n_a < 2 || p.n_b < 2) throw ParamError("group size < 2");
    auto check_gamma = [](const PayoffValue& g) {
        if (g.exact) {
            if (*g.exact <= Rational(1, 2) || *g.exact >= 1)
                throw ParamError("gamma out of (1/2,1)");
        } else if (!(g.value > 0.5 && g.value < 1.0)) {
            throw ParamError("gamma out of (1/2,1)");
        }
    };
    check_gamma(p.gamma_a);
    check_gamma(p.gamma_b);
    if (p.delta.exact ? (*p.delta.exact <= 0) : !(p.delta.value > 0.0))
        throw ParamError("delta non-positive");
}

inline Params make_params(int n_a, int n_b, double gamma_a, double gamma_b,
                          double delta) {
    Params p{n_a, n_b, PayoffValue::from_double(gamma_a),
             PayoffValue::from_double(gamma_b), PayoffValue::from_double(delta)};
    validate_params(p);
    return p;
}

// Decimal-literal constructor; every comparison downstream is exact.
inline Params make_params_exact(int n_a, int n_b, const std::string& gamma_a,
                                const std::string& gamma_b,
                                const std::string& delta) {
    Params p{n_a, n_b, PayoffValue::from_decimal(gamma_a),
             PayoffValue::from_decimal(gamma_b),
             PayoffValue::from_decimal(delta)};
    validate_params(p);
    return p;
}

inline bool operator==(const Params& x, const Params& y) {
    auto eq = [](const PayoffValue& a, const PayoffValue& b) {
        if (a.exact && b.exact) return *a.exact == *b.exact;
        return a.value == b.value && bool(a.exact) == bool(b.exact);
    };
    return x.n_a == y.n_a && x.n_b == y.n_b && eq(x.gamma_a, y.gamma_a) &&
           eq(x.gamma_b, y.gamma_b) && eq(x.delta, y.delta);
}

// Comparison tolerance for the double path. Exact parameters ignore it.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace segsim
