#pragma once

// Comparative statics of the long-run classification: growing one group one
// member at a time, and the planner's two levers (scaling delta down or
// scaling the l-located group's gamma up by the same factor).

#include "segsim/stochastic.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace segsim {

inline Params grow_group(const Params& p, Group g, int k) {
    Params q = p;
    if (g == Group::A) q.n_a += k; else q.n_b += k;
    return q;
}

enum class SweepPattern { constant, integrated_then_flip, flip_direct,
                          via_integration };

inline const char* to_string(SweepPattern p) {
    switch (p) {
        case SweepPattern::constant: return "constant";
        case SweepPattern::integrated_then_flip: return "integrated_then_flip";
        case SweepPattern::flip_direct: return "flip_direct";
        case SweepPattern::via_integration: return "via_integration";
    }
    return "?";
}

// Which of the two stability inequalities of the base segregated state fails
// first as the other group grows.
enum class FirstBreak { none, gamma_threshold, score_flip, both };

inline const char* to_string(FirstBreak f) {
    switch (f) {
        case FirstBreak::none: return "none";
        case FirstBreak::gamma_threshold: return "gamma_threshold";
        case FirstBreak::score_flip: return "score_flip";
        case FirstBreak::both: return "both";
    }
    return "?";
}

struct SweepRow {
    int k = 0;
    Params params;
    StabilityReport stab;
};

struct SweepReport {
    Params base;
    Group grown = Group::A;
    int k_max = 0;
    std::vector<SweepRow> rows;
    std::optional<int> k_hat;       // first k whose stable set differs from base
    SweepPattern pattern = SweepPattern::constant;
    FirstBreak first_break = FirstBreak::none;
    std::optional<int> first_break_k;
    bool k_max_too_small = false;
};

namespace detail {

inline bool same_stable(const std::vector<Corner>& x,
                        const std::vector<Corner>& y) {
    return x == y;  // both are in canonical corner order
}

// Whether corner c still satisfies inequality 1 (gamma vs threshold) and
// inequality 2 (score comparison) of its stability system.
inline void corner_inequalities(const StabilityReport& r, Corner c,
                                bool& ineq_gamma, bool& ineq_score,
                                double tol) {
    const Params& p = r.params;
    if (p.all_exact()) {
        Rational ga = *p.gamma_a.exact, gb = *p.gamma_b.exact,
                 d = *p.delta.exact;
        Rational fa = Rational(static_cast<long>(p.n_a) * (p.n_a - 1) / 2) *
                      (2 * ga - 1);
        Rational fb = Rational(static_cast<long>(p.n_b) * (p.n_b - 1) / 2) *
                      (2 * gb - 1);
        Rational gsa = Rational(p.n_b) * d / (p.n_a - 1) + Rational(1, 2);
        Rational gsb = Rational(p.n_a) * d / (p.n_b - 1) + Rational(1, 2);
        if (c == Corner::ml) {
            ineq_gamma = ga <= gsa;
            ineq_score = fb >= fa;
        } else if (c == Corner::lm) {
            ineq_gamma = gb <= gsb;
            ineq_score = fa >= fb;
        } else {  // ll
            ineq_gamma = ga >= gsa && gb >= gsb;
            ineq_score = true;
        }
        return;
    }
    auto ge = [tol](double x, double y) { return x >= y - tol; };
    if (c == Corner::ml) {
        ineq_gamma = ge(r.gamma_star_a, p.gamma_a.value);
        ineq_score = ge(r.score_b, r.score_a);
    } else if (c == Corner::lm) {
        ineq_gamma = ge(r.gamma_star_b, p.gamma_b.value);
        ineq_score = ge(r.score_a, r.score_b);
    } else {
        ineq_gamma = ge(p.gamma_a.value, r.gamma_star_a) &&
                     ge(p.gamma_b.value, r.gamma_star_b);
        ineq_score = true;
    }
}

}  // namespace detail

inline SweepReport sweep_group_size(const Params& p, Group grown, int k_max,
                                    double tol = kDefaultTol) {
    if (k_max < 0) throw std::invalid_argument("k_max negative");
    SweepReport rep;
    rep.base = p;
    rep.grown = grown;
    rep.k_max = k_max;
    rep.rows.reserve(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        Params q = grow_group(p, grown, k);
        rep.rows.push_back({k, q, classify_stable(q, tol)});
    }
    const std::vector<Corner>& base_set = rep.rows[0].stab.stable;

    for (const SweepRow& row : rep.rows) {
        if (row.k == 0) continue;
        if (!detail::same_stable(row.stab.stable, base_set)) {
            rep.k_hat = row.k;
            break;
        }
    }

    // First failure of the base segregated state's own inequalities.
    Corner base_corner =
        grown == Group::A ? Corner::ml : Corner::lm;  // the state under threat
    bool base_has_segregated =
        rep.rows[0].stab.is_stable(base_corner);
    if (base_has_segregated) {
        for (const SweepRow& row : rep.rows) {
            bool g = false, s = false;
            detail::corner_inequalities(row.stab, base_corner, g, s, tol);
            if (g && s) continue;
            rep.first_break_k = row.k;
            rep.first_break = (!g && !s)  ? FirstBreak::both
                              : (!g)      ? FirstBreak::gamma_threshold
                                          : FirstBreak::score_flip;
            break;
        }
    }

    // Run-compressed sequence of distinct stable sets.
    std::vector<std::vector<Corner>> seq;
    for (const SweepRow& row : rep.rows)
        if (seq.empty() || !detail::same_stable(seq.back(), row.stab.stable))
            seq.push_back(row.stab.stable);

    bool base_has_ll = rep.rows[0].stab.is_stable(Corner::ll);
    bool later_ll = false;
    for (std::size_t i = 1; i < seq.size(); ++i)
        for (Corner c : seq[i])
            if (c == Corner::ll) later_ll = true;
    if (seq.size() == 1)
        rep.pattern = SweepPattern::constant;
    else if (base_has_ll)
        rep.pattern = SweepPattern::integrated_then_flip;
    else if (later_ll)
        rep.pattern = SweepPattern::via_integration;
    else
        rep.pattern = SweepPattern::flip_direct;

    // The grown group's segregated state eventually takes over; flag sweeps
    // that were cut before reaching it.
    Corner favoured = grown == Group::A ? Corner::lm : Corner::ml;
    const std::vector<Corner>& final_set = rep.rows.back().stab.stable;
    rep.k_max_too_small =
        !(final_set.size() == 1 && final_set[0] == favoured);
    return rep;
}

struct PerturbEval {
    Corner base_corner = Corner::ml;  // segregated state examined
    Group ell_group = Group::A;       // the group located on platform l there
    StabilityReport delta_stab;       // after delta -> (1-x)*delta
    StabilityReport gamma_stab;       // after gamma_K -> (1+x)*gamma_K
    bool delta_success = false;       // ll stable under the delta lever
    bool gamma_success = false;       // ll stable under the gamma lever
    bool implication_holds = true;    // delta_success => gamma_success
};

struct PerturbReport {
    Params base;
    PayoffValue x;
    StabilityReport base_stab;
    std::vector<PerturbEval> evals;  // one per stable segregated corner
};

namespace detail {

inline PayoffValue scaled(const PayoffValue& v, const PayoffValue& factor) {
    if (v.exact && factor.exact)
        return PayoffValue::from_rational(*v.exact * *factor.exact);
    return PayoffValue::from_double(v.value * factor.value);
}

inline PayoffValue one_minus(const PayoffValue& x) {
    if (x.exact) return PayoffValue::from_rational(1 - *x.exact);
    return PayoffValue::from_double(1.0 - x.value);
}

inline PayoffValue one_plus(const PayoffValue& x) {
    if (x.exact) return PayoffValue::from_rational(1 + *x.exact);
    return PayoffValue::from_double(1.0 + x.value);
}

}  // namespace detail

// Compares the two planner levers from a segregated-stable base: reducing
// delta by the fraction x versus raising the l-located group's gamma by the
// same fraction. Success means full integration (ll) becomes stable.
inline PerturbReport perturb_compare(const Params& p, const PayoffValue& x,
                                     double tol = kDefaultTol) {
    bool x_neg = x.exact ? (*x.exact < 0) : (x.value < 0);
    bool x_big = x.exact ? (*x.exact >= 1) : (x.value >= 1);
    if (x_neg || x_big) throw std::invalid_argument("x out of [0,1)");
    PerturbReport rep{p, x, classify_stable(p, tol), {}};
    bool any_segregated = false;
    for (Corner c : rep.base_stab.stable) {
        if (c == Corner::ll || c == Corner::mm) {
            throw std::domain_error("base stable set not segregated");
        }
        any_segregated = true;
    }
    if (!any_segregated) throw std::domain_error("base stable set not segregated");

    for (Corner c : rep.base_stab.stable) {
        PerturbEval ev;
        ev.base_corner = c;
        ev.ell_group = c == Corner::ml ? Group::A : Group::B;

        const PayoffValue& gamma_k =
            ev.ell_group == Group::A ? p.gamma_a : p.gamma_b;
        PayoffValue gamma_up = detail::scaled(gamma_k, detail::one_plus(x));
        bool cap = gamma_up.exact ? (*gamma_up.exact >= 1)
                                  : (gamma_up.value >= 1.0);
        if (cap) throw std::domain_error("gamma cap exceeded");

        Params delta_params = p;
        delta_params.delta = detail::scaled(p.delta, detail::one_minus(x));
        validate_params(delta_params);
        ev.delta_stab = classify_stable(delta_params, tol);
        ev.delta_success = ev.delta_stab.is_stable(Corner::ll);

        Params gamma_params = p;
        (ev.ell_group == Group::A ? gamma_params.gamma_a
                                  : gamma_params.gamma_b) = gamma_up;
        validate_params(gamma_params);
        ev.gamma_stab = classify_stable(gamma_params, tol);
        ev.gamma_success = ev.gamma_stab.is_stable(Corner::ll);

        ev.implication_holds = !ev.delta_success || ev.gamma_success;
        rep.evals.push_back(ev);
    }
    return rep;
}

struct CornerWelfare {
    Corner corner = Corner::mm;
    double u_a = 0;  // common payoff of a group-A member
    double u_b = 0;
    double welfare = 0;
    bool welfare_max = false;
    bool pareto_dominated = false;
};

struct WelfareAudit {
    Params params;
    CornerWelfare corners[4];
    std::vector<Corner> stable;
    bool stable_all_welfare_max = true;
    bool stable_none_dominated = true;
};

inline Rational welfare_exact(const State& s, const Params& p) {
    Rational w = 0;
    if (s.a > 0)
        w += s.a * utility_formula_exact(Group::A, Platform::M, s, p);
    if (p.n_a - s.a > 0)
        w += (p.n_a - s.a) * utility_formula_exact(Group::A, Platform::L, s, p);
    if (s.b > 0)
        w += s.b * utility_formula_exact(Group::B, Platform::M, s, p);
    if (p.n_b - s.b > 0)
        w += (p.n_b - s.b) * utility_formula_exact(Group::B, Platform::L, s, p);
    return w;
}

inline WelfareAudit welfare_audit(const Params& p, double tol = kDefaultTol) {
    WelfareAudit audit;
    audit.params = p;
    audit.stable = classify_stable(p, tol).stable;

    Rational wq[4], ua_q[4], ub_q[4];
    for (int i = 0; i < 4; ++i) {
        Corner c = kCorners[i];
        State s = corner_state(c, p);
        Platform pa = s.a > 0 ? Platform::M : Platform::L;
        Platform pb = s.b > 0 ? Platform::M : Platform::L;
        ua_q[i] = utility_formula_exact(Group::A, pa, s, p);
        ub_q[i] = utility_formula_exact(Group::B, pb, s, p);
        wq[i] = welfare_exact(s, p);
        audit.corners[i] = {c, to_double(ua_q[i]), to_double(ub_q[i]),
                            to_double(wq[i]), false, false};
    }
    Rational best = *std::max_element(wq, wq + 4);
    for (int i = 0; i < 4; ++i) {
        audit.corners[i].welfare_max = wq[i] == best;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            bool weakly_better = ua_q[j] >= ua_q[i] && ub_q[j] >= ub_q[i];
            bool strictly = ua_q[j] > ua_q[i] || ub_q[j] > ub_q[i];
            if (weakly_better && strictly) {
                audit.corners[i].pareto_dominated = true;
                break;
            }
        }
    }
    for (Corner c : audit.stable) {
        const CornerWelfare& cw = audit.corners[static_cast<int>(c)];
        if (!cw.welfare_max) audit.stable_all_welfare_max = false;
        if (cw.pareto_dominated) audit.stable_none_dominated = false;
    }
    return audit;
}

}  // namespace segsim
