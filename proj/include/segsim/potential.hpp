#pragma once

// Exact potential for the relocation game: pair-counting over platforms.
// A single relocation changes the potential by exactly the mover's change in
// payoff (exact semantics), which makes best-response paths monotone and the
// logit chain reversible.

#include "segsim/params.hpp"
#include "segsim/payoffs.hpp"
#include "segsim/state.hpp"

#include <cstdint>
#include <stdexcept>

namespace segsim {

namespace detail {

template <class T>
T pairs(int n) {
    return T(static_cast<long>(n) * (n - 1) / 2);
}

}  // namespace detail

template <class T>
T potential_t(const State& s, int n_a, int n_b, const T& ga, const T& gb,
              const T& d) {
    using detail::pairs;
    T same = pairs<T>(s.a) * ga + pairs<T>(n_a - s.a) * (1 - ga) +
             pairs<T>(s.b) * gb + pairs<T>(n_b - s.b) * (1 - gb);
    T cross = d * (static_cast<long>(s.a) * (n_b - s.b) +
                   static_cast<long>(n_a - s.a) * s.b);
    return same + cross;
}

inline double potential(const State& s, const Params& p) {
    return potential_t<double>(s, p.n_a, p.n_b, p.gamma_a.value,
                               p.gamma_b.value, p.delta.value);
}

inline Rational potential_exact(const State& s, const Params& p) {
    return potential_t<Rational>(s, p.n_a, p.n_b, p.gamma_a.as_rational(),
                                 p.gamma_b.as_rational(),
                                 p.delta.as_rational());
}

// Number of labelled agent configurations mapping to head-count state s.
inline std::uint64_t multiplicity(const State& s, const Params& p) {
    auto binom = [](int n, int k) -> std::uint64_t {
        if (k < 0 || k > n) throw std::domain_error("binomial out of range");
        if (k > n - k) k = n - k;
        unsigned __int128 r = 1;
        for (int i = 1; i <= k; ++i) {
            r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
            if (r > UINT64_MAX) throw std::overflow_error("multiplicity overflow");
        }
        return static_cast<std::uint64_t>(r);
    };
    std::uint64_t ca = binom(p.n_a, s.a), cb = binom(p.n_b, s.b);
    unsigned __int128 prod = static_cast<unsigned __int128>(ca) * cb;
    if (prod > UINT64_MAX) throw std::overflow_error("multiplicity overflow");
    return static_cast<std::uint64_t>(prod);
}

// Sum of realised payoffs over all agents. Classes with zero occupancy
// contribute nothing, so the raw formulas are safe here.
inline double welfare(const State& s, const Params& p) {
    double w = 0.0;
    if (s.a > 0) w += s.a * utility_formula(Group::A, Platform::M, s, p);
    if (p.n_a - s.a > 0)
        w += (p.n_a - s.a) * utility_formula(Group::A, Platform::L, s, p);
    if (s.b > 0) w += s.b * utility_formula(Group::B, Platform::M, s, p);
    if (p.n_b - s.b > 0)
        w += (p.n_b - s.b) * utility_formula(Group::B, Platform::L, s, p);
    return w;
}

}  // namespace segsim
