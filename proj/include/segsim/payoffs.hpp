#pragma once

// Per-agent payoffs. Only co-located agents interact: on platform m each
// same-group companion is worth gamma_K, on platform l each is worth
// 1-gamma_K, and every co-located other-group agent costs delta. Nothing
// flows between platforms.
//
// Two comparison semantics appear throughout:
//   figure: compare U(m) and U(l) at the *same* state (partition/threshold
//           reading of the model),
//   exact:  compare staying against the utility realised *after* moving,
//           i.e. with the mover counted on its destination platform.
// They differ by exactly one occupant, and can disagree near boundaries.

#include "segsim/params.hpp"
#include "segsim/state.hpp"

#include <cmath>
#include <stdexcept>

namespace segsim {

enum class Semantics { figure, exact };

inline const char* to_string(Semantics s) {
    return s == Semantics::figure ? "figure" : "exact";
}

inline Semantics semantics_from_string(const std::string& s) {
    if (s == "figure") return Semantics::figure;
    if (s == "exact") return Semantics::exact;
    throw std::invalid_argument("unknown semantics: " + s);
}

// Raw payoff formula, defined at every grid point (occupancy of the evaluated
// platform is not required; boundary rows of the grid need these values).
template <class T>
T utility_formula_t(Group g, Platform pf, const State& s, int n_a, int n_b,
                    const T& ga, const T& gb, const T& d) {
    if (g == Group::A) {
        if (pf == Platform::M) return (s.a - 1) * ga - s.b * d;
        return (n_a - s.a - 1) * (1 - ga) - (n_b - s.b) * d;
    }
    if (pf == Platform::M) return (s.b - 1) * gb - s.a * d;
    return (n_b - s.b - 1) * (1 - gb) - (n_a - s.a) * d;
}

inline double utility_formula(Group g, Platform pf, const State& s,
                              const Params& p) {
    return utility_formula_t<double>(g, pf, s, p.n_a, p.n_b, p.gamma_a.value,
                                     p.gamma_b.value, p.delta.value);
}

inline Rational utility_formula_exact(Group g, Platform pf, const State& s,
                                      const Params& p) {
    return utility_formula_t<Rational>(g, pf, s, p.n_a, p.n_b,
                                       p.gamma_a.as_rational(),
                                       p.gamma_b.as_rational(),
                                       p.delta.as_rational());
}

inline int occupancy(Group g, Platform pf, const State& s, const Params& p) {
    if (g == Group::A) return pf == Platform::M ? s.a : p.n_a - s.a;
    return pf == Platform::M ? s.b : p.n_b - s.b;
}

// Payoff of an agent of group g currently on platform pf. Requires such an
// agent to exist.
inline double utility(Group g, Platform pf, const State& s, const Params& p) {
    if (occupancy(g, pf, s, p) <= 0)
        throw std::domain_error("empty-platform evaluation");
    return utility_formula(g, pf, s, p);
}

// The state after one agent of group g relocates from pf to the other side.
inline State after_move(Group g, Platform pf, const State& s) {
    State t = s;
    int step = pf == Platform::M ? -1 : +1;
    if (g == Group::A) t.a += step; else t.b += step;
    return t;
}

struct DecisionPair {
    double stay = 0.0;
    double move = 0.0;
};

// stay/move values under `exact` semantics: stay is the agent's payoff in the
// current state, move is its payoff in the post-move state.
inline DecisionPair decision_utilities(Group g, Platform pf, const State& s,
                                       const Params& p) {
    if (occupancy(g, pf, s, p) <= 0) throw std::domain_error("no such agent");
    Platform other = pf == Platform::M ? Platform::L : Platform::M;
    return {utility_formula(g, pf, s, p),
            utility_formula(g, other, after_move(g, pf, s), p)};
}

enum class Order { less, equal, greater };

inline Order order_of(double x, double y, double tol) {
    if (std::abs(x - y) <= tol) return Order::equal;
    return x < y ? Order::less : Order::greater;
}

inline Order order_of(const Rational& x, const Rational& y) {
    if (x == y) return Order::equal;
    return x < y ? Order::less : Order::greater;
}

// Sign of U(m) - U(l) for group g at state s (figure semantics). Exact when
// all parameters are exact, tolerance-based otherwise.
inline Order same_state_order(Group g, const State& s, const Params& p,
                              double tol = kDefaultTol) {
    if (p.all_exact())
        return order_of(utility_formula_exact(g, Platform::M, s, p),
                        utility_formula_exact(g, Platform::L, s, p));
    return order_of(utility_formula(g, Platform::M, s, p),
                    utility_formula(g, Platform::L, s, p), tol);
}

// Sign of (move - stay) for an agent of group g on platform pf (exact
// semantics). Requires the agent to exist.
inline Order move_gain_order(Group g, Platform pf, const State& s,
                             const Params& p, double tol = kDefaultTol) {
    if (occupancy(g, pf, s, p) <= 0) throw std::domain_error("no such agent");
    Platform other = pf == Platform::M ? Platform::L : Platform::M;
    State t = after_move(g, pf, s);
    if (p.all_exact())
        return order_of(utility_formula_exact(g, other, t, p),
                        utility_formula_exact(g, pf, s, p));
    return order_of(utility_formula(g, other, t, p),
                    utility_formula(g, pf, s, p), tol);
}

enum class Pref { prefers_m, prefers_l, indifferent };

inline const char* to_string(Pref p) {
    switch (p) {
        case Pref::prefers_m: return "m";
        case Pref::prefers_l: return "l";
        case Pref::indifferent: return "indifferent";
    }
    return "?";
}

struct PrefProfile {
    Pref a = Pref::indifferent;
    Pref b = Pref::indifferent;

    friend bool operator==(const PrefProfile&, const PrefProfile&) = default;
};

// Same-state platform preference of each group at s. Defined on the whole
// grid via the raw formulas.
inline PrefProfile preference_profile(const State& s, const Params& p,
                                      double tol = kDefaultTol) {
    auto pref = [&](Group g) {
        switch (same_state_order(g, s, p, tol)) {
            case Order::greater: return Pref::prefers_m;
            case Order::less: return Pref::prefers_l;
            default: return Pref::indifferent;
        }
    };
    return {pref(Group::A), pref(Group::B)};
}

}  // namespace segsim
