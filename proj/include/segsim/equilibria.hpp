#pragma once

// Nash checks by one-agent deviation, plus the closed-form classification of
// the four group-symmetric states. Both are exposed so they can be checked
// against each other.

#include "segsim/payoffs.hpp"
#include "segsim/state.hpp"

#include <utility>
#include <vector>

namespace segsim {

enum class NashKind { not_nash, weak_nash, strict_nash };

inline const char* to_string(NashKind k) {
    switch (k) {
        case NashKind::not_nash: return "not_nash";
        case NashKind::weak_nash: return "weak";
        case NashKind::strict_nash: return "strict";
    }
    return "?";
}

// A state is Nash when no occupied class gains by relocating; strict when
// every occupied class strictly loses.
inline NashKind is_nash(const State& s, const Params& p,
                        double tol = kDefaultTol) {
    bool tie = false;
    for (Group g : {Group::A, Group::B}) {
        for (Platform pf : {Platform::M, Platform::L}) {
            if (occupancy(g, pf, s, p) <= 0) continue;
            switch (move_gain_order(g, pf, s, p, tol)) {
                case Order::greater: return NashKind::not_nash;
                case Order::equal: tie = true; break;
                case Order::less: break;
            }
        }
    }
    return tie ? NashKind::weak_nash : NashKind::strict_nash;
}

struct NashState {
    State state;
    NashKind kind = NashKind::not_nash;
};

inline std::vector<NashState> enumerate_nash(const Params& p,
                                             double tol = kDefaultTol) {
    std::vector<NashState> out;
    Grid grid(p);
    for (const State& s : grid.states()) {
        NashKind k = is_nash(s, p, tol);
        if (k != NashKind::not_nash) out.push_back({s, k});
    }
    return out;
}

// Which of the four group-symmetric states are Nash, by the closed-form
// inequalities. Segregated corners always qualify; full integration on one
// platform needs both gammas (or both their complements) to dominate the
// scaled delta.
struct CornerNash {
    bool mm = false, ml = false, lm = false, ll = false;

    bool get(Corner c) const {
        switch (c) {
            case Corner::mm: return mm;
            case Corner::ml: return ml;
            case Corner::lm: return lm;
            case Corner::ll: return ll;
        }
        return false;
    }
    friend bool operator==(const CornerNash&, const CornerNash&) = default;
};

inline CornerNash classify_corner_nash(const Params& p,
                                       double tol = kDefaultTol) {
    CornerNash out;
    out.ml = true;
    out.lm = true;
    if (p.all_exact()) {
        Rational ga = *p.gamma_a.exact, gb = *p.gamma_b.exact,
                 d = *p.delta.exact;
        Rational ra = Rational(p.n_b) * d / (p.n_a - 1);
        Rational rb = Rational(p.n_a) * d / (p.n_b - 1);
        out.ll = ga >= ra && gb >= rb;
        out.mm = 1 - ga >= ra && 1 - gb >= rb;
        return out;
    }
    double ga = p.gamma_a.value, gb = p.gamma_b.value, d = p.delta.value;
    double ra = p.n_b * d / (p.n_a - 1);
    double rb = p.n_a * d / (p.n_b - 1);
    auto ge = [tol](double x, double y) { return x >= y - tol; };
    out.ll = ge(ga, ra) && ge(gb, rb);
    out.mm = ge(1 - ga, ra) && ge(1 - gb, rb);
    return out;
}

}  // namespace segsim
