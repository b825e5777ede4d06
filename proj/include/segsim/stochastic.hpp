#pragma once

// Logit-response dynamics and stochastic stability. One agent revises per
// period; it relocates with probability 1/(1+exp(-beta*(U_move - U_stay))),
// always using post-move (exact) decision utilities.
//
// The stationary distribution is computed three ways: state-reduction (GTH)
// on the kernel, carried out in log space so that no intermediate quantity
// under- or overflows even at very large beta; power iteration; and the
// closed-form Gibbs weights multiplicity * exp(beta * potential). GTH and
// the Gibbs form are independent routes to the same measure, which is the
// correctness check for collapsing agent identities to head counts.

#include "segsim/dynamics.hpp"
#include "segsim/potential.hpp"
#include "segsim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace segsim {

// P(relocate) for an agent of group g on platform pf. Branches on the sign of
// the utility gain so the exponent is never positive.
inline double logit_prob(Group g, Platform pf, const State& s, const Params& p,
                         double beta) {
    if (beta < 0) throw std::invalid_argument("negative beta");
    DecisionPair d = decision_utilities(g, pf, s, p);
    double z = beta * (d.move - d.stay);
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

struct LogitChain {
    Params params;
    double beta = 0.0;
    Grid grid;
    std::vector<double> kernel;  // row-major (grid.size() x grid.size())

    double at(int from, int to) const { return kernel[from * grid.size() + to]; }
};

inline LogitChain build_chain(const Params& p, double beta) {
    if (beta < 0) throw std::invalid_argument("negative beta");
    LogitChain chain{p, beta, Grid(p), {}};
    const int n = chain.grid.size();
    chain.kernel.assign(static_cast<std::size_t>(n) * n, 0.0);
    const double total = p.total();
    for (int i = 0; i < n; ++i) {
        State s = chain.grid.state(i);
        double stay_mass = 0.0;
        for (MoverClass c : kMoverClasses) {
            int k = occupancy(group_of(c), platform_of(c), s, p);
            if (k == 0) continue;
            double pick = k / total;
            double pm = logit_prob(group_of(c), platform_of(c), s, p, beta);
            State t = after_move(group_of(c), platform_of(c), s);
            chain.kernel[i * n + chain.grid.index(t)] += pick * pm;
            stay_mass += pick * (1.0 - pm);
        }
        chain.kernel[i * n + i] += stay_mass;
    }
    return chain;
}

enum class DistMethod { linear_solve, power_iteration, monte_carlo, gibbs };

inline const char* to_string(DistMethod m) {
    switch (m) {
        case DistMethod::linear_solve: return "linear_solve";
        case DistMethod::power_iteration: return "power_iteration";
        case DistMethod::monte_carlo: return "monte_carlo";
        case DistMethod::gibbs: return "gibbs";
    }
    return "?";
}

struct Distribution {
    double beta = 0.0;
    DistMethod method = DistMethod::linear_solve;
    std::vector<double> p;  // by grid index

    int argmax() const {
        return static_cast<int>(std::max_element(p.begin(), p.end()) -
                                p.begin());
    }
};

inline double total_variation(const Distribution& x, const Distribution& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.p.size(); ++i) s += std::abs(x.p[i] - y.p[i]);
    return 0.5 * s;
}

// l1 norm of mu*P - mu, evaluated on the original kernel.
inline double stationary_residual(const LogitChain& chain,
                                  const std::vector<double>& mu) {
    const int n = chain.grid.size();
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += mu[i] * chain.at(i, j);
        r += std::abs(s - mu[j]);
    }
    return r;
}

namespace detail {

inline double logaddexp(double x, double y) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (x == ninf) return y;
    if (y == ninf) return x;
    double hi = std::max(x, y), lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
}

// Stationary vector by state reduction (GTH) on log-probabilities. The
// algorithm only ever adds, multiplies and divides positive quantities, which
// in log space is logaddexp, + and -; it is stable even when the chain is
// nearly reducible (large beta). Throws if the chain is actually reducible.
inline std::vector<double> gth_stationary_log(std::vector<double> L, int n) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (n == 1) return {1.0};
    std::vector<double> S(n, ninf);
    for (int k = n - 1; k >= 1; --k) {
        double s = ninf;
        for (int j = 0; j < k; ++j) s = logaddexp(s, L[k * n + j]);
        if (s == ninf) throw std::domain_error("chain reducible");
        S[k] = s;
        for (int i = 0; i < k; ++i) {
            double lik = L[i * n + k];
            if (lik == ninf) continue;
            double c = lik - s;
            for (int j = 0; j < k; ++j) {
                double lkj = L[k * n + j];
                if (lkj == ninf) continue;
                L[i * n + j] = logaddexp(L[i * n + j], c + lkj);
            }
        }
    }
    std::vector<double> logmu(n, ninf);
    logmu[0] = 0.0;
    for (int k = 1; k < n; ++k) {
        double acc = ninf;
        for (int i = 0; i < k; ++i) acc = logaddexp(acc, logmu[i] + L[i * n + k]);
        logmu[k] = acc - S[k];
    }
    double z = ninf;
    for (double v : logmu) z = logaddexp(z, v);
    std::vector<double> mu(n);
    for (int k = 0; k < n; ++k) mu[k] = std::exp(logmu[k] - z);
    return mu;
}

}  // namespace detail

// Cutoff for the dense direct solve; larger spaces fall back to power
// iteration to keep memory quadratic-free.
inline constexpr int kDirectSolveMaxStates = 4096;

inline Distribution stationary_power(const LogitChain& chain,
                                     double tol = 1e-13,
                                     long max_iters = 2000000) {
    const int n = chain.grid.size();
    std::vector<double> x(n, 1.0 / n), y(n);
    for (long it = 0; it < max_iters; ++it) {
        std::fill(y.begin(), y.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            double xi = x[i];
            if (xi == 0.0) continue;
            const double* row = &chain.kernel[static_cast<std::size_t>(i) * n];
            for (int j = 0; j < n; ++j) y[j] += xi * row[j];
        }
        double diff = 0.0;
        for (int j = 0; j < n; ++j) diff += std::abs(y[j] - x[j]);
        x.swap(y);
        if (diff <= tol) break;
    }
    double sum = 0.0;
    for (double v : x) sum += v;
    for (double& v : x) v /= sum;
    return {chain.beta, DistMethod::power_iteration, std::move(x)};
}

inline Distribution stationary(const LogitChain& chain) {
    const int n = chain.grid.size();
    if (n > kDirectSolveMaxStates) return stationary_power(chain);
    std::vector<double> L(chain.kernel.size());
    for (std::size_t i = 0; i < L.size(); ++i)
        L[i] = chain.kernel[i] > 0.0
                   ? std::log(chain.kernel[i])
                   : -std::numeric_limits<double>::infinity();
    return {chain.beta, DistMethod::linear_solve,
            detail::gth_stationary_log(std::move(L), n)};
}

// Closed-form stationary measure: weight(s) = multiplicity(s)*exp(beta*rho(s)).
inline Distribution gibbs_distribution(const Params& p, double beta) {
    if (beta < 0) throw std::invalid_argument("negative beta");
    Grid grid(p);
    const int n = grid.size();
    std::vector<double> logw(n);
    for (int i = 0; i < n; ++i) {
        State s = grid.state(i);
        double logmult = std::lgamma(p.n_a + 1) - std::lgamma(s.a + 1) -
                         std::lgamma(p.n_a - s.a + 1) + std::lgamma(p.n_b + 1) -
                         std::lgamma(s.b + 1) - std::lgamma(p.n_b - s.b + 1);
        logw[i] = logmult + beta * potential(s, p);
    }
    double z = -std::numeric_limits<double>::infinity();
    for (double v : logw) z = detail::logaddexp(z, v);
    Distribution d{beta, DistMethod::gibbs, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) d.p[i] = std::exp(logw[i] - z);
    return d;
}

// Visit frequencies of a simulated logit chain over `steps` periods.
inline Distribution empirical_distribution(const Params& p, double beta,
                                           const State& start,
                                           std::uint64_t seed, long steps) {
    if (beta < 0) throw std::invalid_argument("negative beta");
    Grid grid(p);
    if (!grid.contains(start)) throw std::invalid_argument("state off grid");
    std::vector<long> visits(grid.size(), 0);
    Rng rng(seed);
    State s = start;
    ++visits[grid.index(s)];
    for (long t = 0; t < steps; ++t) {
        MoverClass c = detail::class_of_index(rng.below(p.total()), s, p);
        double pm = logit_prob(group_of(c), platform_of(c), s, p, beta);
        if (rng.unit() < pm) s = after_move(group_of(c), platform_of(c), s);
        ++visits[grid.index(s)];
    }
    Distribution d{beta, DistMethod::monte_carlo,
                   std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < d.p.size(); ++i)
        d.p[i] = static_cast<double>(visits[i]) / (steps + 1);
    return d;
}

// Long-run (vanishing-noise) classification of the four group-symmetric
// states. score_K = C(N_K,2)*(2*gamma_K - 1) measures how much a group gains
// from joining its own kind on m; gamma_star_K is the gamma level at which
// full integration overtakes the segregated state favouring the other group.
struct StabilityReport {
    Params params;
    double potential_mm = 0, potential_ml = 0, potential_lm = 0,
           potential_ll = 0;
    double score_a = 0, score_b = 0;
    double gamma_star_a = 0, gamma_star_b = 0;
    std::vector<Corner> stable;

    bool is_stable(Corner c) const {
        return std::find(stable.begin(), stable.end(), c) != stable.end();
    }
};

inline StabilityReport classify_stable(const Params& p,
                                       double tol = kDefaultTol) {
    StabilityReport rep;
    rep.params = p;
    rep.potential_mm = potential(corner_state(Corner::mm, p), p);
    rep.potential_ml = potential(corner_state(Corner::ml, p), p);
    rep.potential_lm = potential(corner_state(Corner::lm, p), p);
    rep.potential_ll = potential(corner_state(Corner::ll, p), p);

    bool ll = false, lm = false, ml = false;
    if (p.all_exact()) {
        Rational ga = *p.gamma_a.exact, gb = *p.gamma_b.exact,
                 d = *p.delta.exact;
        Rational fa = Rational(static_cast<long>(p.n_a) * (p.n_a - 1) / 2) *
                      (2 * ga - 1);
        Rational fb = Rational(static_cast<long>(p.n_b) * (p.n_b - 1) / 2) *
                      (2 * gb - 1);
        Rational gsa = Rational(p.n_b) * d / (p.n_a - 1) + Rational(1, 2);
        Rational gsb = Rational(p.n_a) * d / (p.n_b - 1) + Rational(1, 2);
        rep.score_a = to_double(fa);
        rep.score_b = to_double(fb);
        rep.gamma_star_a = to_double(gsa);
        rep.gamma_star_b = to_double(gsb);
        ll = ga >= gsa && gb >= gsb;
        lm = fa >= fb && gb <= gsb;
        ml = fb >= fa && ga <= gsa;
    } else {
        double ga = p.gamma_a.value, gb = p.gamma_b.value, d = p.delta.value;
        rep.score_a = p.n_a * (p.n_a - 1) / 2.0 * (2 * ga - 1);
        rep.score_b = p.n_b * (p.n_b - 1) / 2.0 * (2 * gb - 1);
        rep.gamma_star_a = p.n_b * d / (p.n_a - 1) + 0.5;
        rep.gamma_star_b = p.n_a * d / (p.n_b - 1) + 0.5;
        auto ge = [tol](double x, double y) { return x >= y - tol; };
        ll = ge(ga, rep.gamma_star_a) && ge(gb, rep.gamma_star_b);
        lm = ge(rep.score_a, rep.score_b) && ge(rep.gamma_star_b, gb);
        ml = ge(rep.score_b, rep.score_a) && ge(rep.gamma_star_a, ga);
    }
    if (ml) rep.stable.push_back(Corner::ml);
    if (lm) rep.stable.push_back(Corner::lm);
    if (ll) rep.stable.push_back(Corner::ll);
    return rep;
}

// Independent route: which of the four corner potentials are maximal.
inline std::vector<Corner> stable_by_argmax(const Params& p,
                                            double tol = kDefaultTol) {
    std::vector<Corner> out;
    if (p.all_exact()) {
        Rational v[4];
        for (int i = 0; i < 4; ++i)
            v[i] = potential_exact(corner_state(kCorners[i], p), p);
        Rational best = *std::max_element(v, v + 4);
        for (int i = 0; i < 4; ++i)
            if (v[i] == best) out.push_back(kCorners[i]);
        return out;
    }
    double v[4];
    for (int i = 0; i < 4; ++i)
        v[i] = potential(corner_state(kCorners[i], p), p);
    double best = *std::max_element(v, v + 4);
    for (int i = 0; i < 4; ++i)
        if (v[i] >= best - tol) out.push_back(kCorners[i]);
    return out;
}

}  // namespace segsim
