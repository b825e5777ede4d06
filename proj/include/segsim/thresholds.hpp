#pragma once

// Closed-form tipping counts for the four one-sided flows. Each is the least
// head-count at which the named movement becomes (weakly) profitable, capped
// by the group size. Ceilings here mean min{n integer : x <= n}, so an exact
// integer argument is its own ceiling.

#include "segsim/params.hpp"
#include "segsim/rational.hpp"

#include <algorithm>
#include <cmath>

namespace segsim {

struct Thresholds {
    // least n_am making m weakly better than l for A when all of B is on m
    int n_al_star = 0;
    // least count of B on m that tempts an A from an otherwise-full l
    int n_bm_star = 0;
    // least n_bm making m weakly better than l for B when all of A is on m
    int n_bl_star = 0;
    // least count of A on m that tempts a B from an otherwise-full l
    int n_am_star = 0;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

namespace detail {

inline long ceil_snapped(double x, double tol) {
    double r = std::round(x);
    if (std::abs(x - r) <= tol) return static_cast<long>(r);
    return static_cast<long>(std::ceil(x));
}

}  // namespace detail

inline Thresholds thresholds(const Params& p, double tol = kDefaultTol) {
    Thresholds t;
    if (p.all_exact()) {
        Rational ga = *p.gamma_a.exact, gb = *p.gamma_b.exact,
                 d = *p.delta.exact;
        Rational e1 = (1 - ga) * p.n_a + (2 * ga - 1) + p.n_b * d;
        Rational e2 = Rational(p.n_a - 1) * (1 - ga) / (2 * d) +
                      Rational(p.n_b, 2);
        Rational e3 = (1 - gb) * p.n_b + (2 * gb - 1) + p.n_a * d;
        Rational e4 = Rational(p.n_b - 1) * (1 - gb) / (2 * d) +
                      Rational(p.n_a, 2);
        t.n_al_star = static_cast<int>(std::min<long>(p.n_a, ceil_to_long(e1)));
        t.n_bm_star = static_cast<int>(std::min<long>(p.n_b, ceil_to_long(e2)));
        t.n_bl_star = static_cast<int>(std::min<long>(p.n_b, ceil_to_long(e3)));
        t.n_am_star = static_cast<int>(std::min<long>(p.n_a, ceil_to_long(e4)));
        return t;
    }
    double ga = p.gamma_a.value, gb = p.gamma_b.value, d = p.delta.value;
    double e1 = (1 - ga) * p.n_a + (2 * ga - 1) + p.n_b * d;
    double e2 = (p.n_a - 1) * (1 - ga) / (2 * d) + p.n_b / 2.0;
    double e3 = (1 - gb) * p.n_b + (2 * gb - 1) + p.n_a * d;
    double e4 = (p.n_b - 1) * (1 - gb) / (2 * d) + p.n_a / 2.0;
    t.n_al_star =
        static_cast<int>(std::min<long>(p.n_a, detail::ceil_snapped(e1, tol)));
    t.n_bm_star =
        static_cast<int>(std::min<long>(p.n_b, detail::ceil_snapped(e2, tol)));
    t.n_bl_star =
        static_cast<int>(std::min<long>(p.n_b, detail::ceil_snapped(e3, tol)));
    t.n_am_star =
        static_cast<int>(std::min<long>(p.n_a, detail::ceil_snapped(e4, tol)));
    return t;
}

}  // namespace segsim
