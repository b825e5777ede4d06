#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace segsim;
using Catch::Approx;
using testsup::draw_params;
using testsup::draw_params_stable;
using testsup::example_params;

namespace {

using CornerSet = std::vector<Corner>;

const CornerSet kMl{Corner::ml};
const CornerSet kLm{Corner::lm};
const CornerSet kLl{Corner::ll};

}  // namespace

TEST_CASE("growing the m-located group never unseats it") {
    Rng rng(424242);
    for (int trial = 0; trial < 12; ++trial) {
        Params p = draw_params_stable(rng, Corner::lm, 2, 10);
        SweepReport rep = sweep_group_size(p, Group::A, 40);
        REQUIRE(rep.pattern == SweepPattern::constant);
        REQUIRE_FALSE(rep.k_hat.has_value());
        REQUIRE(rep.first_break == FirstBreak::none);
        REQUIRE_FALSE(rep.k_max_too_small);
        for (const SweepRow& row : rep.rows) REQUIRE(row.stab.stable == kLm);

        Params q = draw_params_stable(rng, Corner::ml, 2, 10);
        SweepReport mirror = sweep_group_size(q, Group::B, 40);
        REQUIRE(mirror.pattern == SweepPattern::constant);
        for (const SweepRow& row : mirror.rows)
            REQUIRE(row.stab.stable == kMl);
    }
}

TEST_CASE("integrated bases flip to the grown group in two phases") {
    Rng rng(771177);
    for (int trial = 0; trial < 12; ++trial) {
        Params p = draw_params_stable(rng, Corner::ll, 2, 12);
        // the integration condition on gamma_b fails once
        // (n_a + k) * delta > (gamma_b - 1/2) * (n_b - 1)
        Rational t = (*p.gamma_b.exact - Rational(1, 2)) * (p.n_b - 1) /
                     *p.delta.exact;
        BigInt fl = boost::multiprecision::numerator(t) /
                    boost::multiprecision::denominator(t);
        long k_max = fl.convert_to<long>() - p.n_a + 2;
        REQUIRE(k_max >= 1);

        SweepReport rep = sweep_group_size(p, Group::A, static_cast<int>(k_max));
        REQUIRE(rep.pattern == SweepPattern::integrated_then_flip);
        REQUIRE(rep.k_hat.has_value());
        REQUIRE_FALSE(rep.k_max_too_small);
        // phases: {ll}, optional one-k knife edge {lm,ll}, then {lm}
        for (const SweepRow& row : rep.rows) {
            bool ok = row.stab.stable == kLl || row.stab.stable == kLm ||
                      row.stab.stable == CornerSet{Corner::lm, Corner::ll};
            REQUIRE(ok);
            if (row.k < *rep.k_hat) REQUIRE(row.stab.stable == kLl);
        }
        REQUIRE(rep.rows.back().stab.stable == kLm);
    }
}

TEST_CASE("growth can integrate before it flips") {
    Params p = make_params_exact(6, 20, "0.85", "0.55", "0.1");
    REQUIRE(classify_stable(p).stable == kMl);

    SweepReport rep = sweep_group_size(p, Group::A, 8);
    REQUIRE(rep.pattern == SweepPattern::via_integration);
    REQUIRE(rep.k_hat == 1);
    REQUIRE(rep.first_break == FirstBreak::gamma_threshold);
    REQUIRE(rep.first_break_k == 1);
    REQUIRE_FALSE(rep.k_max_too_small);
    for (const SweepRow& row : rep.rows) {
        if (row.k == 0) REQUIRE(row.stab.stable == kMl);
        else if (row.k <= 3) REQUIRE(row.stab.stable == kLl);
        else REQUIRE(row.stab.stable == kLm);
    }

    // swapping group labels mirrors the whole sweep
    Params m = make_params_exact(20, 6, "0.55", "0.85", "0.1");
    SweepReport mir = sweep_group_size(m, Group::B, 8);
    REQUIRE(mir.pattern == SweepPattern::via_integration);
    REQUIRE(mir.k_hat == 1);
    REQUIRE(mir.first_break == FirstBreak::gamma_threshold);
    for (const SweepRow& row : mir.rows) {
        if (row.k == 0) REQUIRE(row.stab.stable == kLm);
        else if (row.k <= 3) REQUIRE(row.stab.stable == kLl);
        else REQUIRE(row.stab.stable == kMl);
    }

    // a sweep cut short reports it
    SweepReport cut = sweep_group_size(p, Group::A, 2);
    REQUIRE(cut.k_hat == 1);
    REQUIRE(cut.k_max_too_small);
    REQUIRE(cut.pattern == SweepPattern::via_integration);
}

TEST_CASE("growth can flip dominance directly") {
    Params p = make_params_exact(10, 10, "0.7", "0.72", "0.5");
    REQUIRE(classify_stable(p).stable == kMl);

    SweepReport rep = sweep_group_size(p, Group::A, 6);
    REQUIRE(rep.pattern == SweepPattern::flip_direct);
    REQUIRE(rep.k_hat == 1);
    REQUIRE(rep.first_break == FirstBreak::score_flip);
    REQUIRE(rep.first_break_k == 1);
    for (const SweepRow& row : rep.rows)
        REQUIRE(row.stab.stable == (row.k == 0 ? kMl : kLm));

    REQUIRE_THROWS_AS(sweep_group_size(p, Group::A, -1), std::invalid_argument);
}

TEST_CASE("the break regime determines the successor state") {
    Rng rng(881188);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Params p = draw_params_stable(rng, Corner::ml, 2, 10);
        Rational ga = *p.gamma_a.exact, gb = *p.gamma_b.exact,
                 d = *p.delta.exact;
        Rational fb = Rational(static_cast<long>(p.n_b) * (p.n_b - 1) / 2) *
                      (2 * gb - 1);

        // independent scan for the first k at which an ml inequality fails
        int k_break = -1;
        bool gamma_ok = true, score_ok = true;
        for (int k = 1; k <= 100000; ++k) {
            long na = p.n_a + k;
            gamma_ok = ga <= Rational(p.n_b) * d / (na - 1) + Rational(1, 2);
            score_ok = fb >= Rational(na * (na - 1) / 2) * (2 * ga - 1);
            if (!(gamma_ok && score_ok)) {
                k_break = k;
                break;
            }
        }
        REQUIRE(k_break > 0);  // gamma_star_a falls to 1/2, so a break exists
        if (k_break > 1500) continue;  // keep the sweep itself cheap
        ++checked;

        SweepReport rep = sweep_group_size(p, Group::A, k_break + 2);
        CAPTURE(p.n_a, p.n_b, p.gamma_a.value, p.gamma_b.value, p.delta.value,
                k_break);
        REQUIRE(rep.first_break_k == k_break);
        FirstBreak expect = (!gamma_ok && !score_ok) ? FirstBreak::both
                            : !gamma_ok ? FirstBreak::gamma_threshold
                                        : FirstBreak::score_flip;
        REQUIRE(rep.first_break == expect);
        const SweepRow& row = rep.rows[k_break];
        if (rep.first_break == FirstBreak::gamma_threshold)
            REQUIRE(row.stab.is_stable(Corner::ll));
        else if (rep.first_break == FirstBreak::score_flip)
            REQUIRE(row.stab.is_stable(Corner::lm));
        else
            REQUIRE_FALSE(row.stab.is_stable(Corner::ml));
    }
    REQUIRE(checked >= 30);
}

TEST_CASE("lever comparison on a base where delta beats gamma") {
    Params p = make_params_exact(20, 17, "0.78", "0.9", "0.4");
    PerturbReport rep = perturb_compare(p, PayoffValue::from_decimal("0.25"));
    REQUIRE(rep.base_stab.stable == kMl);
    REQUIRE(rep.evals.size() == 1);
    const PerturbEval& ev = rep.evals[0];
    REQUIRE(ev.base_corner == Corner::ml);
    REQUIRE(ev.ell_group == Group::A);
    REQUIRE(ev.delta_success);
    REQUIRE_FALSE(ev.gamma_success);
    REQUIRE_FALSE(ev.implication_holds);
    // the delta lever integrates; the gamma lever only swaps which group
    // holds platform m, leaving the outcome segregated
    REQUIRE(ev.delta_stab.is_stable(Corner::ll));
    REQUIRE(ev.gamma_stab.stable == kLm);
}

TEST_CASE("lever comparison on a base where gamma beats delta") {
    Params p = make_params_exact(10, 10, "0.7", "0.85", "0.27");
    PerturbReport rep = perturb_compare(p, PayoffValue::from_decimal("0.2"));
    REQUIRE(rep.base_stab.stable == kMl);
    const PerturbEval& ev = rep.evals.at(0);
    REQUIRE_FALSE(ev.delta_success);
    REQUIRE(ev.gamma_success);
    REQUIRE(ev.implication_holds);
}

TEST_CASE("a zero perturbation changes nothing") {
    Params p = make_params_exact(10, 10, "0.7", "0.85", "0.27");
    PerturbReport rep = perturb_compare(p, PayoffValue::from_decimal("0"));
    const PerturbEval& ev = rep.evals.at(0);
    REQUIRE(ev.delta_stab.stable == rep.base_stab.stable);
    REQUIRE(ev.gamma_stab.stable == rep.base_stab.stable);
    REQUIRE_FALSE(ev.delta_success);
    REQUIRE_FALSE(ev.gamma_success);
    REQUIRE(ev.implication_holds);
}

TEST_CASE("lever comparison rejects bad inputs") {
    Params p = make_params_exact(10, 10, "0.7", "0.85", "0.27");
    REQUIRE_THROWS_WITH(perturb_compare(p, PayoffValue::from_decimal("1.0")),
                        "x out of [0,1)");
    REQUIRE_THROWS_WITH(perturb_compare(p, PayoffValue::from_decimal("-0.1")),
                        "x out of [0,1)");
    // (1+x)*gamma_a crosses 1
    REQUIRE_THROWS_WITH(perturb_compare(p, PayoffValue::from_decimal("0.5")),
                        "gamma cap exceeded");
    Params ll = make_params_exact(10, 10, "0.9", "0.9", "0.05");
    REQUIRE_THROWS_WITH(perturb_compare(ll, PayoffValue::from_decimal("0.1")),
                        "base stable set not segregated");
}

TEST_CASE("delta implies gamma whenever the m-located group is secure") {
    // If at the base the group staying on m already meets its integration
    // threshold, a successful delta lever forces a successful gamma lever;
    // the gamma cap supplies the missing bound.
    Rng rng(995511);
    int checked = 0;
    for (int attempt = 0; attempt < 4000 && checked < 100; ++attempt) {
        Params p = draw_params(rng, 2, 12);
        StabilityReport base = classify_stable(p);
        if (base.stable.size() != 1) continue;
        Corner c = base.stable[0];
        if (c != Corner::ml && c != Corner::lm) continue;

        Rational ga = *p.gamma_a.exact, gb = *p.gamma_b.exact,
                 d = *p.delta.exact;
        bool secure = c == Corner::ml
                          ? gb >= Rational(p.n_a) * d / (p.n_b - 1) + Rational(1, 2)
                          : ga >= Rational(p.n_b) * d / (p.n_a - 1) + Rational(1, 2);
        if (!secure) continue;

        Rational x(1 + static_cast<long>(rng.below(60)), 100);
        Rational gk = c == Corner::ml ? ga : gb;
        if ((1 + x) * gk >= 1) continue;

        Rational num = boost::multiprecision::numerator(x);
        PerturbReport rep = perturb_compare(
            p, PayoffValue::from_rational(x));
        CAPTURE(p.n_a, p.n_b, p.gamma_a.value, p.gamma_b.value, p.delta.value,
                num.convert_to<long>());
        REQUIRE(rep.evals.at(0).implication_holds);
        ++checked;
    }
    REQUIRE(checked >= 40);
}

TEST_CASE("welfare audit of the worked instance") {
    WelfareAudit audit = welfare_audit(example_params());
    const CornerWelfare& mm = audit.corners[0];
    const CornerWelfare& ml = audit.corners[1];
    const CornerWelfare& lm = audit.corners[2];
    const CornerWelfare& ll = audit.corners[3];

    REQUIRE(lm.welfare == Approx(236.28).margin(1e-12));
    REQUIRE(ml.welfare == Approx(191.72).margin(1e-12));
    REQUIRE(ll.welfare == Approx(177.78).margin(1e-12));
    REQUIRE(mm.welfare == Approx(-147.58).margin(1e-12));
    REQUIRE(lm.u_a == Approx(13.44).margin(1e-12));
    REQUIRE(lm.u_b == Approx(0.60).margin(1e-12));
    REQUIRE(ll.u_a == Approx(7.59).margin(1e-12));
    REQUIRE(ll.u_b == Approx(3.75).margin(1e-12));

    REQUIRE(lm.welfare_max);
    REQUIRE_FALSE(ml.welfare_max);
    REQUIRE(mm.pareto_dominated);  // ml matches A and pays B strictly more
    REQUIRE_FALSE(ml.pareto_dominated);
    REQUIRE_FALSE(lm.pareto_dominated);
    REQUIRE_FALSE(ll.pareto_dominated);
    REQUIRE(audit.stable == kLm);
    REQUIRE(audit.stable_all_welfare_max);
    REQUIRE(audit.stable_none_dominated);
}
