// Command-line front end. Subcommands mirror the library one-to-one:
//   classify  Nash states and the corner classification
//   map       ascii/svg phase portrait of the state grid
//   simulate  asynchronous best-response runs (trajectory or full census)
//   basins    basin/contested label for every state
//   tipping   basin frontier of one absorbing state
//   stable    long-run (vanishing-noise) classification + stationary laws
//   sweep     stable set as one group grows member by member
//   perturb   delta-cut vs gamma-raise planner comparison
//
// Exit codes: 0 ok, 2 invalid parameters/input, 3 a simulation failed to
// absorb within --max-steps, 4 the gamma lever would leave (1/2,1).

#include "segsim/segsim.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace segsim;

struct Options {
    std::string params_file;
    int na = 0, nb = 0;
    std::string gamma_a, gamma_b, delta;
    std::string semantics = "figure";
    std::vector<double> betas;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int replicates = 1;
    int max_steps = 100000;
    int k_max = 200;
    std::string group = "A";
    std::string equilibrium;
    std::vector<std::string> formats;
    std::string out_dir = ".";
    std::string start;
    std::string x;
    double tol = kDefaultTol;
};

void add_param_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--params", o.params_file, "parameters JSON file");
    cmd->add_option("--na", o.na, "size of group A");
    cmd->add_option("--nb", o.nb, "size of group B");
    cmd->add_option("--gamma-a", o.gamma_a, "gamma_A as a decimal in (1/2,1)");
    cmd->add_option("--gamma-b", o.gamma_b, "gamma_B as a decimal in (1/2,1)");
    cmd->add_option("--delta", o.delta, "delta as a positive decimal");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--tol", o.tol,
                    "comparison tolerance for non-exact parameters");
    cmd->add_option("--format", o.formats, "output formats (csv,json,ascii,svg)")
        ->delimiter(',');
}

Params resolve_params(const CLI::App* cmd, const Options& o) {
    bool flags = cmd->count("--na") || cmd->count("--nb") ||
                 cmd->count("--gamma-a") || cmd->count("--gamma-b") ||
                 cmd->count("--delta");
    if (!o.params_file.empty() && flags)
        throw ParamError("--params and component flags are exclusive");
    if (!o.params_file.empty()) return load_params_file(o.params_file);
    if (cmd->count("--na") && cmd->count("--nb") && cmd->count("--gamma-a") &&
        cmd->count("--gamma-b") && cmd->count("--delta"))
        return make_params_exact(o.na, o.nb, o.gamma_a, o.gamma_b, o.delta);
    throw ParamError("provide --params or all of --na --nb --gamma-a --gamma-b --delta");
}

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed_given) return o.seed;
    if (const char* env = std::getenv("SEGSIM_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw ParamError("bad SEGSIM_SEED value");
        return v;
    }
    return 0;
}

bool wants(const Options& o, const char* fmt,
           std::initializer_list<const char*> defaults) {
    if (o.formats.empty()) {
        for (const char* d : defaults)
            if (std::strcmp(d, fmt) == 0) return true;
        return false;
    }
    for (const std::string& f : o.formats)
        if (f == fmt) return true;
    return false;
}

std::string out_path(const Options& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / name).string();
}

State parse_state(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw ParamError("expected --start a,b");
    try {
        return {std::stoi(text.substr(0, comma)),
                std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ParamError("expected --start a,b");
    }
}

int cmd_classify(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    auto nash = enumerate_nash(p, o.tol);
    CornerNash corners = classify_corner_nash(p, o.tol);
    if (wants(o, "json", {"json", "csv"}))
        write_file(out_path(o, "classify.json"),
                   equilibria_json(nash, corners, p).dump(2) + "\n");
    if (wants(o, "csv", {"json", "csv"}))
        write_file(out_path(o, "equilibria.csv"), equilibria_csv(nash, p));
    return 0;
}

int cmd_map(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    Semantics sem = semantics_from_string(o.semantics);
    if (wants(o, "ascii", {"ascii"}))
        write_file(out_path(o, "map.txt"), ascii_map(p, sem, o.tol));
    if (wants(o, "svg", {"ascii"}))
        write_file(out_path(o, "map.svg"), svg_map(p, sem, o.tol));
    return 0;
}

int cmd_simulate(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    Semantics sem = semantics_from_string(o.semantics);
    std::uint64_t seed = resolve_seed(o);
    bool all_absorbed = true;
    if (!o.start.empty()) {
        State start = parse_state(o.start);
        for (int r = 0; r < o.replicates; ++r) {
            Trajectory traj =
                simulate_br(start, p, sem, seed + r, o.max_steps, o.tol);
            all_absorbed = all_absorbed && traj.absorbed();
            std::string name = o.replicates == 1
                                   ? "trajectory.csv"
                                   : "trajectory_r" + std::to_string(r) + ".csv";
            write_file(out_path(o, name), trajectory_csv(traj, p));
        }
    } else {
        // Census mode: every state, every replicate seed.
        std::ostringstream csv;
        csv << params_comment(p) << "\n";
        csv << "# semantics=" << to_string(sem) << "\n";
        csv << "start_n_am,start_n_bm,replicate,seed,end_n_am,end_n_bm,steps,"
               "absorbed\n";
        Grid grid(p);
        for (int i = 0; i < grid.size(); ++i) {
            State s = grid.state(i);
            for (int r = 0; r < o.replicates; ++r) {
                auto res =
                    run_until_absorbed(s, p, sem, seed + r, o.max_steps, o.tol);
                csv << s.a << "," << s.b << "," << r << "," << (seed + r) << ",";
                if (res)
                    csv << res->first.a << "," << res->first.b << ","
                        << res->second << ",1\n";
                else {
                    csv << ",,," << "0\n";
                    all_absorbed = false;
                }
            }
        }
        write_file(out_path(o, "absorption.csv"), csv.str());
    }
    return all_absorbed ? 0 : 3;
}

int cmd_basins(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    Semantics sem = semantics_from_string(o.semantics);
    TransitionGraph g = build_graph(p, sem, o.tol);
    StateClassification cls = classify_all_states(g);
    if (wants(o, "csv", {"csv", "json"}))
        write_file(out_path(o, "states.csv"), classification_csv(cls, p));
    if (wants(o, "json", {"csv", "json"})) {
        Json j;
        j["params"] = params_to_json(p);
        j["semantics"] = to_string(sem);
        Json arr = Json::array();
        for (const State& eq : cls.absorbing)
            arr.push_back(basin_json(basin(eq, g), p));
        j["basins"] = arr;
        int contested = 0;
        for (int lab : cls.label) contested += lab < 0;
        j["contested_count"] = contested;
        write_file(out_path(o, "basins.json"), j.dump(2) + "\n");
    }
    return 0;
}

int cmd_tipping(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    Semantics sem = semantics_from_string(o.semantics);
    if (o.equilibrium.empty())
        throw ParamError("tipping requires --equilibrium");
    State eq = corner_state(corner_from_string(o.equilibrium), p);
    BasinReport rep = basin(eq, p, sem, o.tol);
    if (wants(o, "csv", {"csv", "json"}))
        write_file(out_path(o, "tipping.csv"), tipping_csv(rep, p));
    if (wants(o, "json", {"csv", "json"}))
        write_file(out_path(o, "tipping.json"), basin_json(rep, p).dump(2) + "\n");
    return 0;
}

int cmd_stable(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    StabilityReport rep = classify_stable(p, o.tol);
    if (wants(o, "json", {"json", "csv"}))
        write_file(out_path(o, "stable.json"), stability_json(rep).dump(2) + "\n");
    if (wants(o, "csv", {"json", "csv"})) {
        for (double beta : o.betas) {
            Distribution d = stationary(build_chain(p, beta));
            write_file(out_path(o, "distribution_b" + fmt_double(beta) + ".csv"),
                       distribution_csv(d, p));
        }
    }
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    Group g = o.group == "B" ? Group::B : Group::A;
    if (o.group != "A" && o.group != "B")
        throw ParamError("--group must be A or B");
    SweepReport rep = sweep_group_size(p, g, o.k_max, o.tol);
    if (wants(o, "csv", {"csv", "json"}))
        write_file(out_path(o, "sweep.csv"), sweep_csv(rep));
    if (wants(o, "json", {"csv", "json"}))
        write_file(out_path(o, "sweep.json"), sweep_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_perturb(const CLI::App* cmd, const Options& o) {
    Params p = resolve_params(cmd, o);
    if (o.x.empty()) throw ParamError("perturb requires --x");
    PerturbReport rep = perturb_compare(p, PayoffValue::from_decimal(o.x), o.tol);
    write_file(out_path(o, "perturb.json"), perturb_json(rep).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-group two-platform relocation game"};
    app.require_subcommand(1);
    Options o;

    CLI::App* classify = app.add_subcommand("classify", "Nash states");
    add_param_flags(classify, o);

    CLI::App* map_cmd = app.add_subcommand("map", "grid phase portrait");
    add_param_flags(map_cmd, o);
    map_cmd->add_option("--semantics", o.semantics, "figure|exact");

    CLI::App* simulate = app.add_subcommand("simulate", "best-response runs");
    add_param_flags(simulate, o);
    simulate->add_option("--semantics", o.semantics,
                         "figure|exact (default exact)");
    auto* seed_opt = simulate->add_option("--seed", o.seed, "rng seed");
    simulate->add_option("--replicates", o.replicates, "independent runs");
    simulate->add_option("--max-steps", o.max_steps, "step budget per run");
    simulate->add_option("--start", o.start, "start state a,b (census if absent)");

    CLI::App* basins = app.add_subcommand("basins", "label every state");
    add_param_flags(basins, o);
    basins->add_option("--semantics", o.semantics, "figure|exact");

    CLI::App* tipping = app.add_subcommand("tipping", "basin frontier");
    add_param_flags(tipping, o);
    tipping->add_option("--semantics", o.semantics, "figure|exact");
    tipping->add_option("--equilibrium", o.equilibrium, "mm|ml|lm|ll");

    CLI::App* stable = app.add_subcommand("stable", "long-run classification");
    add_param_flags(stable, o);
    stable->add_option("--beta", o.betas, "noise level (repeatable)");

    CLI::App* sweep = app.add_subcommand("sweep", "grow one group");
    add_param_flags(sweep, o);
    sweep->add_option("--group", o.group, "A|B");
    sweep->add_option("--k-max", o.k_max, "members added");

    CLI::App* perturb = app.add_subcommand("perturb", "planner levers");
    add_param_flags(perturb, o);
    perturb->add_option("--x", o.x, "perturbation fraction (decimal)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        o.seed_given = seed_opt->count() > 0;
        // relocation decisions default to post-move payoffs
        if (simulate->parsed() && simulate->count("--semantics") == 0)
            o.semantics = "exact";
        if (classify->parsed()) return cmd_classify(classify, o);
        if (map_cmd->parsed()) return cmd_map(map_cmd, o);
        if (simulate->parsed()) return cmd_simulate(simulate, o);
        if (basins->parsed()) return cmd_basins(basins, o);
        if (tipping->parsed()) return cmd_tipping(tipping, o);
        if (stable->parsed()) return cmd_stable(stable, o);
        if (sweep->parsed()) return cmd_sweep(sweep, o);
        if (perturb->parsed()) return cmd_perturb(perturb, o);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::strcmp(e.what(), "gamma cap exceeded") == 0 ? 4 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
