#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace segsim;
using Catch::Approx;
using testsup::draw_params;
using testsup::example_params;

TEST_CASE("logit relocation probabilities") {
    Params p = example_params();

    // beta = 0: coin flip regardless of payoffs
    for (const State& s : {State{10, 10}, State{2, 5}, State{17, 0}})
        REQUIRE(logit_prob(Group::A, Platform::M, s, p, 0.0) == Approx(0.5));

    // an A on l at (10,10) gains 3.90 - (-0.39) = 4.29 by moving
    DecisionPair d = decision_utilities(Group::A, Platform::L, {10, 10}, p);
    REQUIRE(d.move - d.stay == Approx(4.29).margin(1e-12));
    REQUIRE(logit_prob(Group::A, Platform::L, {10, 10}, p, 1.0) ==
            Approx(1.0 / (1.0 + std::exp(-4.29))).margin(1e-12));

    // monotone in beta for a profitable move; extreme beta saturates cleanly
    double prev = 0.5;
    for (double beta : {0.5, 1.0, 2.0, 5.0, 50.0}) {
        double cur = logit_prob(Group::A, Platform::L, {10, 10}, p, beta);
        REQUIRE(cur > prev);
        prev = cur;
    }
    REQUIRE(logit_prob(Group::A, Platform::L, {10, 10}, p, 1e4) ==
            Approx(1.0).margin(1e-10));
    REQUIRE(logit_prob(Group::A, Platform::M, {17, 0}, p, 1e4) ==
            Approx(0.0).margin(1e-300));
    REQUIRE(std::isfinite(logit_prob(Group::A, Platform::M, {17, 0}, p, 1e6)));

    REQUIRE_THROWS_WITH(logit_prob(Group::A, Platform::M, {10, 10}, p, -1.0),
                        "negative beta");

    // exact move-gain indifference: coin flip at any beta
    Params tie = make_params_exact(5, 3, "0.75", "0.75", "1.0");
    DecisionPair dt = decision_utilities(Group::A, Platform::L, {2, 2}, tie);
    REQUIRE(dt.move == dt.stay);
    REQUIRE(logit_prob(Group::A, Platform::L, {2, 2}, tie, 37.0) == 0.5);
}

TEST_CASE("kernel rows are probability vectors built from class picks") {
    Params p = example_params();
    LogitChain chain = build_chain(p, 1.0);
    const int n = chain.grid.size();
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) row += chain.at(i, j);
        REQUIRE(row == Approx(1.0).margin(1e-12));
    }
    // from (0,0) only two classes exist, so three entries are positive
    int i00 = chain.grid.index({0, 0});
    double pa = logit_prob(Group::A, Platform::L, {0, 0}, p, 1.0);
    double pb = logit_prob(Group::B, Platform::L, {0, 0}, p, 1.0);
    REQUIRE(chain.at(i00, chain.grid.index({1, 0})) ==
            Approx(17.0 / 30.0 * pa).margin(1e-15));
    REQUIRE(chain.at(i00, chain.grid.index({0, 1})) ==
            Approx(13.0 / 30.0 * pb).margin(1e-15));
    REQUIRE(chain.at(i00, i00) ==
            Approx(17.0 / 30.0 * (1 - pa) + 13.0 / 30.0 * (1 - pb)).margin(1e-15));
    for (int j = 0; j < n; ++j) {
        if (j == i00 || j == chain.grid.index({1, 0}) ||
            j == chain.grid.index({0, 1}))
            continue;
        REQUIRE(chain.at(i00, j) == 0.0);
    }
}

TEST_CASE("stationary law: solver agrees with the closed form") {
    Rng rng(13579);
    for (int trial = 0; trial < 3; ++trial) {
        Params p = draw_params(rng, 4, 4);
        for (double beta : {0.1, 1.0, 5.0}) {
            LogitChain chain = build_chain(p, beta);
            Distribution mu = stationary(chain);
            REQUIRE(mu.method == DistMethod::linear_solve);
            double sum = 0;
            for (double v : mu.p) {
                REQUIRE(v >= 0.0);
                sum += v;
            }
            REQUIRE(sum == Approx(1.0).margin(1e-10));
            REQUIRE(stationary_residual(chain, mu.p) <= 1e-10);
            REQUIRE(total_variation(mu, gibbs_distribution(p, beta)) <= 1e-8);
        }
    }
}

TEST_CASE("power iteration fallback matches the direct solve") {
    Params p = make_params_exact(5, 4, "0.8", "0.7", "0.3");
    LogitChain chain = build_chain(p, 0.5);
    Distribution direct = stationary(chain);
    Distribution power = stationary_power(chain);
    REQUIRE(power.method == DistMethod::power_iteration);
    REQUIRE(total_variation(direct, power) <= 1e-8);
    REQUIRE(stationary_residual(chain, power.p) <= 1e-10);
}

TEST_CASE("vanishing noise spreads mass by configuration counts") {
    Params p = make_params_exact(2, 2, "0.75", "0.75", "0.5");
    Grid grid(p);
    // beta -> 0+: mu(1,1) -> multiplicity/2^4 = 4/16
    Distribution mu = stationary(build_chain(p, 1e-6));
    REQUIRE(mu.p[grid.index({1, 1})] == Approx(0.25).margin(1e-4));
    Distribution g0 = gibbs_distribution(p, 0.0);
    for (int i = 0; i < grid.size(); ++i)
        REQUIRE(g0.p[i] ==
                Approx(multiplicity(grid.state(i), p) / 16.0).margin(1e-12));
}

TEST_CASE("large beta concentrates on the potential maximiser") {
    Params p = example_params();
    Grid grid(p);
    int lm = grid.index({17, 0});

    Distribution d5 = stationary(build_chain(p, 5.0));
    REQUIRE(d5.argmax() == lm);

    double prev = 0.0;
    for (double beta : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
        Distribution d = stationary(build_chain(p, beta));
        REQUIRE(stationary_residual(build_chain(p, beta), d.p) <= 1e-10);
        REQUIRE(d.p[lm] >= prev);
        prev = d.p[lm];
    }
    REQUIRE(prev > 0.99);
}

TEST_CASE("empirical visits approach the stationary law") {
    Params p = make_params_exact(3, 3, "0.75", "0.8", "0.4");
    double beta = 0.7;
    Distribution mu = stationary(build_chain(p, beta));
    Distribution emp = empirical_distribution(p, beta, {0, 0}, 2024, 2000000);
    REQUIRE(emp.method == DistMethod::monte_carlo);
    REQUIRE(total_variation(mu, emp) < 0.01);
}

TEST_CASE("reducible kernels are rejected") {
    // two absorbing blocks: the all-stay kernel
    std::vector<double> L(4, -std::numeric_limits<double>::infinity());
    L[0 * 2 + 0] = 0.0;
    L[1 * 2 + 1] = 0.0;
    REQUIRE_THROWS_WITH(detail::gth_stationary_log(L, 2), "chain reducible");
}

TEST_CASE("long-run classification of the worked instance") {
    StabilityReport rep = classify_stable(example_params());
    REQUIRE(rep.stable.size() == 1);
    REQUIRE(rep.stable[0] == Corner::lm);
    REQUIRE(rep.score_a == Approx(92.48).margin(1e-12));
    REQUIRE(rep.score_b == Approx(70.20).margin(1e-12));
    REQUIRE(rep.gamma_star_a == Approx(0.865625).margin(1e-12));
    REQUIRE(rep.gamma_star_b == Approx(1.1375).margin(1e-12));
    REQUIRE(rep.potential_lm == Approx(217.59).margin(1e-12));
    REQUIRE(rep.potential_ml == Approx(195.31).margin(1e-12));
    REQUIRE(rep.potential_ll == Approx(188.34).margin(1e-12));
    REQUIRE(rep.potential_mm == Approx(25.66).margin(1e-12));
}

TEST_CASE("inequality route equals the potential argmax route") {
    Rng rng(192837);
    for (int trial = 0; trial < 1000; ++trial) {
        Params p = draw_params(rng, 2, 15);
        StabilityReport rep = classify_stable(p);
        std::vector<Corner> am = stable_by_argmax(p);
        CAPTURE(p.n_a, p.n_b, p.gamma_a.value, p.gamma_b.value, p.delta.value);
        REQUIRE(rep.stable == am);
        REQUIRE_FALSE(rep.is_stable(Corner::mm));
        REQUIRE_FALSE(rep.stable.empty());
    }
}

TEST_CASE("every stable state maximises welfare among the four corners") {
    Rng rng(555222);
    for (int trial = 0; trial < 300; ++trial) {
        Params p = draw_params(rng, 2, 12);
        WelfareAudit audit = welfare_audit(p);
        REQUIRE(audit.stable_all_welfare_max);
        REQUIRE(audit.stable_none_dominated);
        // full-on-l never maximises welfare: its potential always trails ll
        REQUIRE_FALSE(audit.corners[0].welfare_max);
    }
}
