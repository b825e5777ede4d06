#pragma once

// Shared fixtures for the test binaries: the worked 17/13 instance and
// exact-rational random instance generators. Generated gammas live on the
// grid k/1000, deltas on k/1000 across three magnitude buckets, so every
// comparison downstream stays exact while knife-edge ties remain possible.

#include "segsim/segsim.hpp"

namespace testsup {

using namespace segsim;

inline Params example_params() {
    return make_params_exact(17, 13, "0.84", "0.95", "0.45");
}

inline Params example_params_double() {
    return make_params(17, 13, 0.84, 0.95, 0.45);
}

inline Params draw_params(Rng& rng, int min_n, int max_n) {
    int na = min_n + static_cast<int>(rng.below(max_n - min_n + 1));
    int nb = min_n + static_cast<int>(rng.below(max_n - min_n + 1));
    Rational ga(501 + static_cast<long>(rng.below(499)), 1000);
    Rational gb(501 + static_cast<long>(rng.below(499)), 1000);
    long dnum;
    switch (rng.below(3)) {
        case 0: dnum = 1 + static_cast<long>(rng.below(100)); break;
        case 1: dnum = 100 + static_cast<long>(rng.below(400)); break;
        default: dnum = 500 + static_cast<long>(rng.below(1500)); break;
    }
    Params p{na, nb, PayoffValue::from_rational(ga),
             PayoffValue::from_rational(gb),
             PayoffValue::from_rational(Rational(dnum, 1000))};
    validate_params(p);
    return p;
}

// Rejection sampler conditioned on the stable set being exactly {c}.
inline Params draw_params_stable(Rng& rng, Corner c, int min_n, int max_n) {
    for (;;) {
        Params p = draw_params(rng, min_n, max_n);
        if (c == Corner::ll) {
            // Integration needs small delta relative to both gammas; resample
            // delta below the feasible cap to make hits common.
            Rational fa = Rational(static_cast<long>(p.n_a) * (p.n_a - 1) / 2) *
                          (2 * *p.gamma_a.exact - 1);
            Rational fb = Rational(static_cast<long>(p.n_b) * (p.n_b - 1) / 2) *
                          (2 * *p.gamma_b.exact - 1);
            Rational cap = (fa < fb ? fa : fb) /
                           (static_cast<long>(p.n_a) * p.n_b);
            Rational scaled = cap * 1000;
            BigInt floor_num = boost::multiprecision::numerator(scaled) /
                               boost::multiprecision::denominator(scaled);
            long cap_num = floor_num.convert_to<long>();
            if (cap_num < 2) continue;
            long dnum = 1 + static_cast<long>(rng.below(cap_num - 1));
            p.delta = PayoffValue::from_rational(Rational(dnum, 1000));
        }
        StabilityReport rep = classify_stable(p);
        if (rep.stable.size() == 1 && rep.stable[0] == c) return p;
    }
}

}  // namespace testsup
