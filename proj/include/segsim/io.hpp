#pragma once

// Serialization. Parameters given as JSON strings (or CLI text) are parsed as
// exact decimals; plain JSON numbers stay doubles. Every exported file embeds
// the generating parameters so results are reproducible from the file alone:
// JSON documents carry a "params" object, CSV files a leading "# params="
// comment line that parses back to the same Params.

#include "segsim/dynamics.hpp"
#include "segsim/equilibria.hpp"
#include "segsim/params.hpp"
#include "segsim/statics.hpp"
#include "segsim/stochastic.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace segsim {

using Json = nlohmann::ordered_json;

// Shortest decimal string that parses back to exactly x.
inline std::string fmt_double(double x) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline Json payoff_to_json(const PayoffValue& v) {
    std::string dec;
    if (v.exact && to_decimal_string(*v.exact, dec)) return Json(dec);
    return Json(v.value);
}

inline Json params_to_json(const Params& p) {
    Json j;
    j["n_a"] = p.n_a;
    j["n_b"] = p.n_b;
    j["gamma_a"] = payoff_to_json(p.gamma_a);
    j["gamma_b"] = payoff_to_json(p.gamma_b);
    j["delta"] = payoff_to_json(p.delta);
    return j;
}

inline PayoffValue payoff_from_json(const Json& j, const char* field) {
    if (j.is_string()) return PayoffValue::from_decimal(j.get<std::string>());
    if (j.is_number()) return PayoffValue::from_double(j.get<double>());
    throw ParamError(std::string(field) + " must be a number or decimal string");
}

inline int group_size_from_json(const Json& j, const char* field) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (v != static_cast<double>(static_cast<int>(v)))
            throw ParamError("non-integer group size");
        return static_cast<int>(v);
    }
    throw ParamError(std::string(field) + " must be an integer");
}

inline Params params_from_json(const Json& j) {
    for (const char* field : {"n_a", "n_b", "gamma_a", "gamma_b", "delta"})
        if (!j.contains(field))
            throw ParamError(std::string("missing field: ") + field);
    Params p;
    p.n_a = group_size_from_json(j.at("n_a"), "n_a");
    p.n_b = group_size_from_json(j.at("n_b"), "n_b");
    p.gamma_a = payoff_from_json(j.at("gamma_a"), "gamma_a");
    p.gamma_b = payoff_from_json(j.at("gamma_b"), "gamma_b");
    p.delta = payoff_from_json(j.at("delta"), "delta");
    validate_params(p);
    return p;
}

inline Params load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open params file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParamError(std::string("bad params JSON: ") + e.what());
    }
    return params_from_json(j);
}

inline std::string params_comment(const Params& p) {
    return "# params=" + params_to_json(p).dump();
}

// Reads a "# params={...}" line back into Params.
inline Params params_from_comment(const std::string& line) {
    const std::string tag = "# params=";
    if (line.rfind(tag, 0) != 0) throw ParamError("missing params comment");
    return params_from_json(Json::parse(line.substr(tag.size())));
}

inline Json state_to_json(const State& s) {
    return Json{{"n_am", s.a}, {"n_bm", s.b}};
}

inline Json corners_to_json(const std::vector<Corner>& cs) {
    Json arr = Json::array();
    for (Corner c : cs) arr.push_back(to_string(c));
    return arr;
}

// ---- equilibria ----

inline std::string equilibria_csv(const std::vector<NashState>& nash,
                                  const Params& p) {
    std::ostringstream out;
    out << params_comment(p) << "\n";
    out << "state_n_am,state_n_bm,kind\n";
    for (const NashState& ns : nash)
        out << ns.state.a << "," << ns.state.b << "," << to_string(ns.kind)
            << "\n";
    return out.str();
}

inline Json equilibria_json(const std::vector<NashState>& nash,
                            const CornerNash& corners, const Params& p) {
    Json j;
    j["params"] = params_to_json(p);
    j["corner_nash"] = Json{{"mm", corners.mm},
                            {"ml", corners.ml},
                            {"lm", corners.lm},
                            {"ll", corners.ll}};
    Json arr = Json::array();
    for (const NashState& ns : nash) {
        Json e = state_to_json(ns.state);
        e["kind"] = to_string(ns.kind);
        if (auto c = corner_of(ns.state, p)) e["corner"] = to_string(*c);
        arr.push_back(e);
    }
    j["nash_states"] = arr;
    return j;
}

// ---- dynamics ----

inline std::string state_label(const State& s, const Params& p) {
    if (auto c = corner_of(s, p)) return to_string(*c);
    return "s" + std::to_string(s.a) + "_" + std::to_string(s.b);
}

inline std::string classification_csv(const StateClassification& cls,
                                      const Params& p) {
    std::ostringstream out;
    out << params_comment(p) << "\n";
    out << "n_am,n_bm,label,semantics\n";
    Grid grid(p);
    for (int i = 0; i < grid.size(); ++i) {
        State s = grid.state(i);
        std::string label = cls.label[i] < 0
                                ? "contested"
                                : state_label(cls.absorbing[cls.label[i]], p);
        out << s.a << "," << s.b << "," << label << ","
            << to_string(cls.semantics) << "\n";
    }
    return out.str();
}

inline Json basin_json(const BasinReport& rep, const Params& p) {
    Json j;
    j["params"] = params_to_json(p);
    j["semantics"] = to_string(rep.semantics);
    j["equilibrium"] = state_to_json(rep.equilibrium);
    if (auto c = corner_of(rep.equilibrium, p))
        j["equilibrium"]["corner"] = to_string(*c);
    auto states_array = [](const std::vector<State>& v) {
        Json arr = Json::array();
        for (const State& s : v) arr.push_back(Json::array({s.a, s.b}));
        return arr;
    };
    j["basin_size"] = rep.basin.size();
    j["tipping_size"] = rep.tipping.size();
    j["basin"] = states_array(rep.basin);
    j["tipping"] = states_array(rep.tipping);
    return j;
}

inline std::string tipping_csv(const BasinReport& rep, const Params& p) {
    std::ostringstream out;
    out << params_comment(p) << "\n";
    out << "n_am,n_bm\n";
    for (const State& s : rep.tipping) out << s.a << "," << s.b << "\n";
    return out.str();
}

inline std::string trajectory_csv(const Trajectory& traj, const Params& p) {
    std::ostringstream out;
    out << params_comment(p) << "\n";
    out << "# semantics=" << to_string(traj.semantics)
        << " seed=" << traj.seed << "\n";
    out << "t,n_am,n_bm,mover\n";
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        const char* mover = "init";
        if (t > 0)
            mover = traj.steps[t - 1].moved ? to_string(traj.steps[t - 1].selected)
                                            : "hold";
        out << t << "," << traj.states[t].a << "," << traj.states[t].b << ","
            << mover << "\n";
    }
    return out.str();
}

// ---- stochastic ----

inline std::string distribution_csv(const Distribution& d, const Params& p) {
    std::ostringstream out;
    out << params_comment(p) << "\n";
    out << "n_am,n_bm,probability,beta,method\n";
    Grid grid(p);
    for (int i = 0; i < grid.size(); ++i) {
        State s = grid.state(i);
        out << s.a << "," << s.b << "," << fmt_double(d.p[i]) << ","
            << fmt_double(d.beta) << "," << to_string(d.method) << "\n";
    }
    return out.str();
}

inline Json stability_json(const StabilityReport& rep) {
    Json j;
    j["params"] = params_to_json(rep.params);
    j["potentials"] = Json{{"mm", rep.potential_mm},
                           {"ml", rep.potential_ml},
                           {"lm", rep.potential_lm},
                           {"ll", rep.potential_ll}};
    j["scores"] = Json{{"a", rep.score_a}, {"b", rep.score_b}};
    j["gamma_thresholds"] =
        Json{{"a", rep.gamma_star_a}, {"b", rep.gamma_star_b}};
    j["stable_states"] = corners_to_json(rep.stable);
    return j;
}

// ---- statics ----

inline std::string stable_codes(const std::vector<Corner>& cs) {
    std::string s;
    for (Corner c : cs) {
        if (!s.empty()) s += ";";
        s += to_string(c);
    }
    return s;
}

inline std::string sweep_csv(const SweepReport& rep) {
    std::ostringstream out;
    out << params_comment(rep.base) << "\n";
    out << "# grown_group=" << to_string(rep.grown) << "\n";
    out << "k,n_a,n_b,stable_states,rho_mm,rho_ml,rho_lm,rho_ll\n";
    for (const SweepRow& row : rep.rows) {
        const StabilityReport& st = row.stab;
        out << row.k << "," << row.params.n_a << "," << row.params.n_b << ","
            << stable_codes(st.stable) << "," << fmt_double(st.potential_mm)
            << "," << fmt_double(st.potential_ml) << ","
            << fmt_double(st.potential_lm) << ","
            << fmt_double(st.potential_ll) << "\n";
    }
    return out.str();
}

inline Json sweep_json(const SweepReport& rep) {
    Json j;
    j["params"] = params_to_json(rep.base);
    j["group"] = to_string(rep.grown);
    j["k_max"] = rep.k_max;
    j["k_hat"] = rep.k_hat ? Json(*rep.k_hat) : Json(nullptr);
    j["pattern"] = to_string(rep.pattern);
    j["first_break"] = to_string(rep.first_break);
    j["first_break_k"] =
        rep.first_break_k ? Json(*rep.first_break_k) : Json(nullptr);
    j["k_max_too_small"] = rep.k_max_too_small;
    j["base_stable"] = corners_to_json(rep.rows[0].stab.stable);
    j["final_stable"] = corners_to_json(rep.rows.back().stab.stable);
    return j;
}

inline Json perturb_json(const PerturbReport& rep) {
    Json j;
    j["params"] = params_to_json(rep.base);
    j["x"] = payoff_to_json(rep.x);
    j["base_stable"] = corners_to_json(rep.base_stab.stable);
    Json evals = Json::array();
    for (const PerturbEval& ev : rep.evals) {
        Json e;
        e["base_corner"] = to_string(ev.base_corner);
        e["ell_group"] = to_string(ev.ell_group);
        e["delta_stable"] = corners_to_json(ev.delta_stab.stable);
        e["gamma_stable"] = corners_to_json(ev.gamma_stab.stable);
        e["delta_success"] = ev.delta_success;
        e["gamma_success"] = ev.gamma_success;
        e["implication_holds"] = ev.implication_holds;
        evals.push_back(e);
    }
    j["evaluations"] = evals;
    return j;
}

inline Json welfare_json(const WelfareAudit& audit) {
    Json j;
    j["params"] = params_to_json(audit.params);
    Json corners = Json::array();
    for (const CornerWelfare& cw : audit.corners) {
        corners.push_back(Json{{"corner", to_string(cw.corner)},
                               {"u_a", cw.u_a},
                               {"u_b", cw.u_b},
                               {"welfare", cw.welfare},
                               {"welfare_max", cw.welfare_max},
                               {"pareto_dominated", cw.pareto_dominated}});
    }
    j["corners"] = corners;
    j["stable_states"] = corners_to_json(audit.stable);
    j["stable_all_welfare_max"] = audit.stable_all_welfare_max;
    j["stable_none_dominated"] = audit.stable_none_dominated;
    return j;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace segsim
