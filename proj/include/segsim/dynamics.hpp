#pragma once

// Asynchronous best-response dynamics. Each period one agent, drawn uniformly
// from the whole population, relocates iff that strictly improves its payoff
// under the chosen semantics; indifferent agents stay put. All agents of a
// group on a platform are interchangeable, so the chain lives on head counts.
//
// Every improving move strictly increases the potential, so the move graph is
// acyclic and every path ends in an absorbing state.

#include "segsim/equilibria.hpp"
#include "segsim/payoffs.hpp"
#include "segsim/potential.hpp"
#include "segsim/rng.hpp"
#include "segsim/state.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace segsim {

// The four interchangeable agent classes.
enum class MoverClass { A_m, A_l, B_m, B_l };

inline constexpr MoverClass kMoverClasses[4] = {MoverClass::A_m, MoverClass::A_l,
                                                MoverClass::B_m, MoverClass::B_l};

inline Group group_of(MoverClass c) {
    return (c == MoverClass::A_m || c == MoverClass::A_l) ? Group::A : Group::B;
}

inline Platform platform_of(MoverClass c) {
    return (c == MoverClass::A_m || c == MoverClass::B_m) ? Platform::M
                                                          : Platform::L;
}

inline const char* to_string(MoverClass c) {
    switch (c) {
        case MoverClass::A_m: return "Am>l";
        case MoverClass::A_l: return "Al>m";
        case MoverClass::B_m: return "Bm>l";
        case MoverClass::B_l: return "Bl>m";
    }
    return "?";
}

// Whether an agent of this class relocates when selected.
inline bool would_move(MoverClass c, const State& s, const Params& p,
                       Semantics sem, double tol = kDefaultTol) {
    Group g = group_of(c);
    Platform pf = platform_of(c);
    if (occupancy(g, pf, s, p) <= 0) return false;
    if (sem == Semantics::exact)
        return move_gain_order(g, pf, s, p, tol) == Order::greater;
    PrefProfile prof = preference_profile(s, p, tol);
    Pref pref = g == Group::A ? prof.a : prof.b;
    return pf == Platform::M ? pref == Pref::prefers_l : pref == Pref::prefers_m;
}

struct Transition {
    State to;
    MoverClass mover;
    int count = 0;  // occupancy of the moving class; probability = count/N
};

// Strictly improving one-agent moves out of s. Self-loop mass is the
// complement of the listed counts over N.
inline std::vector<Transition> successors(const State& s, const Params& p,
                                          Semantics sem,
                                          double tol = kDefaultTol) {
    std::vector<Transition> out;
    for (MoverClass c : kMoverClasses) {
        if (!would_move(c, s, p, sem, tol)) continue;
        out.push_back({after_move(group_of(c), platform_of(c), s), c,
                       occupancy(group_of(c), platform_of(c), s, p)});
    }
    return out;
}

inline bool is_absorbing(const State& s, const Params& p, Semantics sem,
                         double tol = kDefaultTol) {
    for (MoverClass c : kMoverClasses)
        if (would_move(c, s, p, sem, tol)) return false;
    return true;
}

struct TransitionGraph {
    Params params;
    Semantics semantics = Semantics::exact;
    Grid grid;
    std::vector<std::vector<Transition>> edges;  // indexed by grid.index

    std::vector<State> absorbing() const {
        std::vector<State> out;
        for (int i = 0; i < grid.size(); ++i)
            if (edges[i].empty()) out.push_back(grid.state(i));
        return out;
    }
};

inline TransitionGraph build_graph(const Params& p, Semantics sem,
                                   double tol = kDefaultTol) {
    TransitionGraph g{p, sem, Grid(p), {}};
    g.edges.resize(g.grid.size());
    for (int i = 0; i < g.grid.size(); ++i)
        g.edges[i] = successors(g.grid.state(i), p, sem, tol);
    return g;
}

inline std::vector<State> absorbing_states(const Params& p, Semantics sem,
                                           double tol = kDefaultTol) {
    return build_graph(p, sem, tol).absorbing();
}

// For every state, the sorted set of absorbing states (by grid index)
// reachable from it. Iterative DFS; the potential argument guarantees there
// are no cycles among distinct states.
inline std::vector<std::vector<int>> reachable_absorbing(
    const TransitionGraph& g) {
    const int n = g.grid.size();
    std::vector<std::vector<int>> reach(n);
    std::vector<signed char> mark(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (mark[root] == 2) continue;
        stack.push_back(root);
        while (!stack.empty()) {
            int v = stack.back();
            if (mark[v] == 0) {
                mark[v] = 1;
                for (const Transition& t : g.edges[v]) {
                    int w = g.grid.index(t.to);
                    if (mark[w] == 1)
                        throw std::logic_error("cycle in improvement graph");
                    if (mark[w] == 0) stack.push_back(w);
                }
            } else {
                stack.pop_back();
                if (mark[v] == 2) continue;  // duplicate stack entry
                mark[v] = 2;
                if (g.edges[v].empty()) {
                    reach[v] = {v};
                    continue;
                }
                std::vector<int> acc;
                for (const Transition& t : g.edges[v]) {
                    const auto& r = reach[g.grid.index(t.to)];
                    std::vector<int> merged;
                    merged.reserve(acc.size() + r.size());
                    std::set_union(acc.begin(), acc.end(), r.begin(), r.end(),
                                   std::back_inserter(merged));
                    acc.swap(merged);
                }
                reach[v] = std::move(acc);
            }
        }
    }
    return reach;
}

struct BasinReport {
    State equilibrium;
    Semantics semantics = Semantics::exact;
    std::vector<State> basin;    // states from which only this end is reachable
    std::vector<State> tipping;  // basin members with a neighbour outside
};

inline BasinReport basin(const State& eq, const TransitionGraph& g) {
    int eq_idx = g.grid.index(eq);
    if (!g.grid.contains(eq) || !g.edges[eq_idx].empty())
        throw std::domain_error("not absorbing");
    auto reach = reachable_absorbing(g);
    BasinReport rep{eq, g.semantics, {}, {}};
    std::vector<char> in_basin(g.grid.size(), 0);
    for (int i = 0; i < g.grid.size(); ++i) {
        if (reach[i].size() == 1 && reach[i][0] == eq_idx) {
            in_basin[i] = 1;
            rep.basin.push_back(g.grid.state(i));
        }
    }
    for (const State& s : rep.basin) {
        const State nbrs[4] = {{s.a - 1, s.b}, {s.a + 1, s.b},
                               {s.a, s.b - 1}, {s.a, s.b + 1}};
        for (const State& t : nbrs) {
            if (!g.grid.contains(t)) continue;
            if (!in_basin[g.grid.index(t)]) {
                rep.tipping.push_back(s);
                break;
            }
        }
    }
    return rep;
}

inline BasinReport basin(const State& eq, const Params& p, Semantics sem,
                         double tol = kDefaultTol) {
    return basin(eq, build_graph(p, sem, tol));
}

// label >= 0: index into `absorbing` (unique attractor); -1: contested.
struct StateClassification {
    Semantics semantics = Semantics::exact;
    std::vector<State> absorbing;
    std::vector<int> label;  // by grid index
};

inline StateClassification classify_all_states(const TransitionGraph& g) {
    auto reach = reachable_absorbing(g);
    StateClassification out{g.semantics, g.absorbing(), {}};
    std::vector<int> absorbing_pos(g.grid.size(), -1);
    for (std::size_t k = 0; k < out.absorbing.size(); ++k)
        absorbing_pos[g.grid.index(out.absorbing[k])] = static_cast<int>(k);
    out.label.resize(g.grid.size(), -1);
    for (int i = 0; i < g.grid.size(); ++i)
        if (reach[i].size() == 1) out.label[i] = absorbing_pos[reach[i][0]];
    return out;
}

struct StepRecord {
    MoverClass selected;
    bool moved = false;
};

struct Trajectory {
    State start;
    Semantics semantics = Semantics::exact;
    std::uint64_t seed = 0;
    std::vector<State> states;      // states[t] after t periods
    std::vector<StepRecord> steps;  // steps[t-1] produced states[t]
    std::optional<int> absorbed_at;

    bool absorbed() const { return absorbed_at.has_value(); }
    const State& final_state() const { return states.back(); }
};

namespace detail {

inline MoverClass class_of_index(std::uint64_t idx, const State& s,
                                 const Params& p) {
    // Population order: A on m, A on l, B on m, B on l.
    std::uint64_t a_m = s.a, a_all = p.n_a;
    if (idx < a_m) return MoverClass::A_m;
    if (idx < a_all) return MoverClass::A_l;
    if (idx < a_all + s.b) return MoverClass::B_m;
    return MoverClass::B_l;
}

}  // namespace detail

inline Trajectory simulate_br(const State& start, const Params& p,
                              Semantics sem, std::uint64_t seed, int max_steps,
                              double tol = kDefaultTol) {
    if (max_steps < 1) throw std::invalid_argument("max_steps < 1");
    Grid grid(p);
    if (!grid.contains(start)) throw std::invalid_argument("state off grid");
    Trajectory traj{start, sem, seed, {start}, {}, std::nullopt};
    Rng rng(seed);
    State s = start;
    for (int t = 0;; ++t) {
        if (is_absorbing(s, p, sem, tol)) {
            traj.absorbed_at = t;
            break;
        }
        if (t >= max_steps) break;
        MoverClass c = detail::class_of_index(rng.below(p.total()), s, p);
        bool moved = would_move(c, s, p, sem, tol);
        if (moved) s = after_move(group_of(c), platform_of(c), s);
        traj.steps.push_back({c, moved});
        traj.states.push_back(s);
    }
    return traj;
}

// Lean variant for large batches: no per-step bookkeeping.
// Returns the step count at absorption, or nullopt.
inline std::optional<std::pair<State, int>> run_until_absorbed(
    const State& start, const Params& p, Semantics sem, std::uint64_t seed,
    int max_steps, double tol = kDefaultTol) {
    Rng rng(seed);
    State s = start;
    for (int t = 0;; ++t) {
        if (is_absorbing(s, p, sem, tol)) return std::make_pair(s, t);
        if (t >= max_steps) return std::nullopt;
        MoverClass c = detail::class_of_index(rng.below(p.total()), s, p);
        if (would_move(c, s, p, sem, tol))
            s = after_move(group_of(c), platform_of(c), s);
    }
}

}  // namespace segsim
