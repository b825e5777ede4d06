#pragma once

// State of the population: how many members of each group sit on platform m.
// The rest of each group sits on platform l. The full state space is the
// (n_a+1) x (n_b+1) integer grid.

#include "segsim/params.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace segsim {

enum class Group { A, B };
enum class Platform { M, L };

inline const char* to_string(Group g) { return g == Group::A ? "A" : "B"; }
inline const char* to_string(Platform p) { return p == Platform::M ? "m" : "l"; }

struct State {
    int a = 0;  // group-A members on m
    int b = 0;  // group-B members on m

    friend bool operator==(const State&, const State&) = default;
};

inline std::string to_string(const State& s) {
    return "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
}

inline int taxicab(const State& x, const State& y) {
    return std::abs(x.a - y.a) + std::abs(x.b - y.b);
}

// Indexing for the state grid, row-major in a.
struct Grid {
    int n_a = 0;
    int n_b = 0;

    explicit Grid(const Params& p) : n_a(p.n_a), n_b(p.n_b) {}
    Grid(int na, int nb) : n_a(na), n_b(nb) {}

    int size() const { return (n_a + 1) * (n_b + 1); }
    int index(const State& s) const { return s.a * (n_b + 1) + s.b; }
    State state(int idx) const { return {idx / (n_b + 1), idx % (n_b + 1)}; }
    bool contains(const State& s) const {
        return s.a >= 0 && s.a <= n_a && s.b >= 0 && s.b <= n_b;
    }
    std::vector<State> states() const {
        std::vector<State> out;
        out.reserve(size());
        for (int a = 0; a <= n_a; ++a)
            for (int b = 0; b <= n_b; ++b) out.push_back({a, b});
        return out;
    }
};

// The four group-symmetric states. Codes are the report/CLI vocabulary:
//   mm = (0,0)      nobody on m
//   ml = (0,n_b)    only group B on m
//   lm = (n_a,0)    only group A on m
//   ll = (n_a,n_b)  everybody on m
enum class Corner { mm, ml, lm, ll };

inline constexpr Corner kCorners[4] = {Corner::mm, Corner::ml, Corner::lm,
                                       Corner::ll};

inline const char* to_string(Corner c) {
    switch (c) {
        case Corner::mm: return "mm";
        case Corner::ml: return "ml";
        case Corner::lm: return "lm";
        case Corner::ll: return "ll";
    }
    return "?";
}

inline Corner corner_from_string(const std::string& s) {
    if (s == "mm") return Corner::mm;
    if (s == "ml") return Corner::ml;
    if (s == "lm") return Corner::lm;
    if (s == "ll") return Corner::ll;
    throw std::invalid_argument("unknown corner code: " + s);
}

inline State corner_state(Corner c, const Params& p) {
    switch (c) {
        case Corner::mm: return {0, 0};
        case Corner::ml: return {0, p.n_b};
        case Corner::lm: return {p.n_a, 0};
        case Corner::ll: return {p.n_a, p.n_b};
    }
    return {0, 0};
}

inline std::optional<Corner> corner_of(const State& s, const Params& p) {
    for (Corner c : kCorners)
        if (corner_state(c, p) == s) return c;
    return std::nullopt;
}

}  // namespace segsim
