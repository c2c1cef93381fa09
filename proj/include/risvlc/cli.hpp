// SPDX-License-Identifier: Apache-2.0
//
// risvlc - secrecy-rate simulation and optimization for RIS-aided indoor VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "risvlc/config_file.hpp"
#include "risvlc/experiments.hpp"
#include "risvlc/optimizer.hpp"

namespace risvlc {

enum class CliVerb { run, sweep, baseline, oracle, dump_channels };

inline std::string verb_name(CliVerb v) {
    switch (v) {
        case CliVerb::run: return "run";
        case CliVerb::sweep: return "sweep";
        case CliVerb::baseline: return "baseline";
        case CliVerb::oracle: return "oracle";
        case CliVerb::dump_channels: return "dump-channels";
    }
    throw std::logic_error("unreachable");
}

inline CliVerb verb_from_name(const std::string& s) {
    if (s == "run") return CliVerb::run;
    if (s == "sweep") return CliVerb::sweep;
    if (s == "baseline") return CliVerb::baseline;
    if (s == "oracle") return CliVerb::oracle;
    if (s == "dump-channels") return CliVerb::dump_channels;
    throw std::invalid_argument("unknown verb '" + s + "'");
}

struct CliCommand {
    CliVerb verb = CliVerb::run;
    std::string config_path;       // scenario config (sweep: sweep spec)
    std::string scenario_path;     // sweep only: optional scenario config
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> problem;   // P1..P4
    std::string scale = "desk";           // desk | paper
    int replications = 10;                // baseline
    int angle_points = 5;                 // oracle grids
    int power_points = 5;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::json to_json(const CliCommand& cmd) {
    nlohmann::json j{{"verb", verb_name(cmd.verb)},
                     {"config", cmd.config_path},
                     {"out", cmd.out_dir},
                     {"scale", cmd.scale},
                     {"replications", cmd.replications},
                     {"angle_points", cmd.angle_points},
                     {"power_points", cmd.power_points}};
    if (!cmd.scenario_path.empty()) j["scenario"] = cmd.scenario_path;
    if (cmd.seed) j["seed"] = *cmd.seed;
    if (cmd.problem) j["problem"] = *cmd.problem;
    return j;
}

inline CliCommand command_from_json(const nlohmann::json& j) {
    CliCommand cmd;
    cmd.verb = verb_from_name(j.at("verb").get<std::string>());
    cmd.config_path = j.at("config").get<std::string>();
    cmd.out_dir = j.at("out").get<std::string>();
    cmd.scale = j.at("scale").get<std::string>();
    cmd.replications = j.at("replications").get<int>();
    cmd.angle_points = j.at("angle_points").get<int>();
    cmd.power_points = j.at("power_points").get<int>();
    if (j.contains("scenario")) cmd.scenario_path = j.at("scenario").get<std::string>();
    if (j.contains("seed")) cmd.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("problem")) cmd.problem = j.at("problem").get<std::string>();
    return cmd;
}

/// argv -> validated command. Throws UsageError (exit 2) on bad input; help
/// requests surface as UsageError with the help text and exit code 0 handled
/// by cli_main.
inline CliCommand parse_args(const std::vector<std::string>& args) {
    CLI::App app{"secrecy-rate simulation and optimization for RIS-aided indoor VLC", "risvlc"};
    app.require_subcommand(1);

    CliCommand cmd;
    std::string seed_str, problem_str;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        sub->add_option("--config", cmd.config_path, "config file path")
            ->required(config_required);
        sub->add_option("--out", cmd.out_dir, "output directory");
        sub->add_option("--seed", seed_str, "seed override");
        sub->add_option("--scale", cmd.scale, "desk | paper")
            ->check(CLI::IsMember({"desk", "paper"}));
    };

    CLI::App* run = app.add_subcommand("run", "optimize one problem instance");
    add_common(run, false);
    run->add_option("--problem", problem_str, "P1 | P2 | P3 | P4")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(sweep, true);
    sweep->add_option("--scenario", cmd.scenario_path, "base scenario config");

    CLI::App* baseline = app.add_subcommand("baseline", "fixed power split vs full NOMA GA");
    add_common(baseline, false);
    baseline->add_option("--problem", problem_str, "P2 | P4 (default P2)");
    baseline->add_option("--replications", cmd.replications, "paired seeds");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force grid optimum vs gridded GA");
    add_common(oracle, false);
    oracle->add_option("--problem", problem_str, "P1 | P2 | P3 | P4")->required();
    oracle->add_option("--angle-points", cmd.angle_points, "angle grid size per axis");
    oracle->add_option("--power-points", cmd.power_points, "power grid candidates");

    CLI::App* dump = app.add_subcommand("dump-channels", "per-(element,receiver) gains at rest pose");
    add_common(dump, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        (void)app.exit(e);
        throw UsageError("help");
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n" + app.help());
    }

    if (run->parsed()) cmd.verb = CliVerb::run;
    else if (sweep->parsed()) cmd.verb = CliVerb::sweep;
    else if (baseline->parsed()) cmd.verb = CliVerb::baseline;
    else if (oracle->parsed()) cmd.verb = CliVerb::oracle;
    else cmd.verb = CliVerb::dump_channels;

    if (!seed_str.empty()) {
        try {
            cmd.seed = std::stoull(seed_str);
        } catch (const std::exception&) {
            throw UsageError("invalid --seed value '" + seed_str + "'");
        }
    }
    if (!problem_str.empty()) {
        try {
            ProblemSpec::parse(problem_str);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        cmd.problem = problem_str;
    }
    return cmd;
}

namespace detail {

inline Scenario scenario_for(const CliCommand& cmd, const std::string& path) {
    Scenario sc = path.empty() ? build_default_scenario() : load_scenario(path);
    if (cmd.scale == "desk") {
        // desk preset: the compact instance used throughout the benchmarking
        // section, with enough search effort per generation to converge fast
        if (path.empty()) {
            apply_sweep_value(sc, "K", 30);
            apply_sweep_value(sc, "U", 2);
        }
        if (sc.params.ga.pairs_per_generation == 1)
            sc.params.ga.pairs_per_generation = 50;
    }
    if (cmd.seed) {
        sc.rng_seed = *cmd.seed;
        sc.params.ga.rng_seed = *cmd.seed;
    }
    return sc;
}

inline void write_output(const std::string& dir, const std::string& name,
                         const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    const std::string path = (fs::path(dir) / name).string();
    try {
        write_text_file(path, content);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("writing ") + path + ": " + e.what());
    }
}

inline std::pair<nlohmann::json, std::string> build_manifest(const CliCommand& cmd,
                                                             const Scenario& sc) {
    nlohmann::json manifest{{"tool", "risvlc"},
                            {"version", "0.1.0"},
                            {"command", to_json(cmd)},
                            {"scenario_hash", hex64(scenario_hash(sc))},
                            {"seed", sc.rng_seed},
                            {"ga",
                             {{"population", sc.params.ga.population},
                              {"generations", sc.params.ga.generations},
                              {"crossover_prob", sc.params.ga.crossover_prob},
                              {"mutation_prob", sc.params.ga.mutation_prob},
                              {"tournament_size", sc.params.ga.tournament_size},
                              {"elite_count", sc.params.ga.elite_count},
                              {"pairs_per_generation", sc.params.ga.pairs_per_generation}}}};
    const std::string hash = hex64(fnv1a64(manifest.dump()));
    manifest["manifest_hash"] = hash;
    return {manifest, hash};
}

inline int execute_run(const CliCommand& cmd) {
    const Scenario sc = scenario_for(cmd, cmd.config_path);
    const ProblemSpec problem = ProblemSpec::parse(cmd.problem.value_or("P1"));
    auto [manifest, hash] = build_manifest(cmd, sc);

    const GenomeLayout layout = make_genome_layout(sc, problem);
    GaConfig ga = sc.params.ga;
    ga.rng_seed = sc.rng_seed;
    const auto t0 = std::chrono::steady_clock::now();
    const GaResult best = run_ga(sc, problem, ga, layout);
    const auto t1 = std::chrono::steady_clock::now();

    SweepResult res;
    SweepRow row;
    row.param = "P_S";
    row.value = sc.params.P_S;
    row.scheme = problem.scheme();
    row.problem = problem;
    row.seed = sc.rng_seed;
    row.objective = best.record.objective;
    row.feasible = best.record.feasible;
    row.runtime_s = std::chrono::duration<double>(t1 - t0).count();
    res.rows.push_back(row);

    FitnessEvaluator ev(sc, problem, layout);
    write_output(cmd.out_dir, "manifest.json", manifest.dump(2) + "\n");
    write_output(cmd.out_dir, "results.csv", sweep_result_csv(res, hash));
    write_output(cmd.out_dir, "convergence.csv", trace_csv(best.trace, hash));
    write_output(cmd.out_dir, "decision_variables.csv",
                 "# manifest " + hash + "\n" + decision_variable_dump(best.best, ev));
    std::cout << problem.name() << " objective " << format_double(best.record.objective)
              << (best.record.feasible ? " (feasible)" : " (infeasible)") << "\n";
    return best.record.feasible ? 0 : 1;
}

inline int execute_sweep(const CliCommand& cmd) {
    const SweepSpec spec = parse_sweep_spec(parse_kv_file(cmd.config_path));
    SweepSpec adj = spec;
    if (cmd.seed) adj.seed_base = *cmd.seed;
    const Scenario base = scenario_for(cmd, cmd.scenario_path);
    auto [manifest, hash] = build_manifest(cmd, base);
    const SweepResult res = sweep(base, adj);
    write_output(cmd.out_dir, "manifest.json", manifest.dump(2) + "\n");
    write_output(cmd.out_dir, "results.csv", sweep_result_csv(res, hash));
    if (!res.rows.empty())
        write_output(cmd.out_dir, "convergence.csv", trace_csv(res.rows[0].trace, hash));
    std::cout << "sweep wrote " << res.rows.size() << " rows\n";
    return 0;
}

inline int execute_baseline(const CliCommand& cmd) {
    const Scenario sc = scenario_for(cmd, cmd.config_path);
    const ProblemSpec problem = ProblemSpec::parse(cmd.problem.value_or("P2"));
    auto [manifest, hash] = build_manifest(cmd, sc);
    const SweepResult res = fixed_power_baseline(sc, problem, cmd.replications,
                                                 cmd.seed.value_or(1));
    write_output(cmd.out_dir, "manifest.json", manifest.dump(2) + "\n");
    write_output(cmd.out_dir, "results.csv", sweep_result_csv(res, hash));
    if (!res.rows.empty())
        write_output(cmd.out_dir, "convergence.csv", trace_csv(res.rows[0].trace, hash));
    std::cout << "baseline wrote " << res.rows.size() << " paired rows\n";
    return 0;
}

inline SearchGrids make_oracle_grids(const Scenario& sc, const ProblemSpec& problem,
                                     int angle_points, int power_points) {
    SearchGrids grids;
    for (int i = 0; i < angle_points; ++i) {
        grids.angles.push_back(-pi / 2.0 + pi * i / std::max(1, angle_points - 1));
    }
    if (problem.scheme() == Scheme::rsma) {
        // Candidate splits: fraction x of the budget to the common stream,
        // the rest spread evenly across private streams.
        for (int i = 0; i < power_points; ++i) {
            const double x = power_points == 1 ? 0.5
                                               : static_cast<double>(i) / (power_points - 1);
            std::vector<double> cand(static_cast<std::size_t>(sc.params.U) + 1);
            cand[0] = x * sc.params.P_S;
            for (int u = 1; u <= sc.params.U; ++u)
                cand[static_cast<std::size_t>(u)] = (1.0 - x) * sc.params.P_S / sc.params.U;
            grids.power_candidates.push_back(std::move(cand));
        }
    } else {
        for (int i = 0; i < power_points; ++i) {
            const double eps =
                power_points == 1
                    ? 0.75
                    : epsilon_gene_min + (1.0 - epsilon_gene_min) * i / (power_points - 1);
            grids.power_candidates.push_back({eps});
        }
    }
    return grids;
}

inline int execute_oracle(const CliCommand& cmd) {
    Scenario sc = scenario_for(cmd, cmd.config_path);
    if (cmd.config_path.empty()) {
        // compact instance the exhaustive search can cover
        apply_sweep_value(sc, "K", 2);
        apply_sweep_value(sc, "U", 2);
    }
    const ProblemSpec problem = ProblemSpec::parse(cmd.problem.value_or("P1"));
    const SearchGrids grids = make_oracle_grids(sc, problem, cmd.angle_points, cmd.power_points);
    auto [manifest, hash] = build_manifest(cmd, sc);

    OracleResult oracle;
    try {
        oracle = brute_force_oracle(sc, problem, grids);
    } catch (const std::invalid_argument& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return 1;
    }
    GaConfig ga = sc.params.ga;
    ga.rng_seed = sc.rng_seed;
    GenomeLayout layout = make_genome_layout(sc, problem, grids);
    const GaResult ga_res = run_ga(sc, problem, ga, layout);

    nlohmann::json out{{"manifest_hash", hash},
                       {"problem", problem.name()},
                       {"oracle_objective", oracle.record.objective},
                       {"oracle_feasible", oracle.record.feasible},
                       {"oracle_evaluations", oracle.evaluations},
                       {"ga_objective", ga_res.record.objective},
                       {"ga_feasible", ga_res.record.feasible}};
    write_output(cmd.out_dir, "manifest.json", manifest.dump(2) + "\n");
    write_output(cmd.out_dir, "oracle.json", out.dump(2) + "\n");
    std::cout << "oracle " << format_double(oracle.record.objective) << " vs GA "
              << format_double(ga_res.record.objective) << "\n";
    return 0;
}

inline int execute_dump_channels(const CliCommand& cmd) {
    const Scenario sc = scenario_for(cmd, cmd.config_path);
    auto [manifest, hash] = build_manifest(cmd, sc);
    const auto positions = element_positions(sc.layout);
    std::vector<RisElementPose> poses;
    for (int k = 0; k < sc.params.K; ++k)
        poses.push_back({k, positions[static_cast<std::size_t>(k)], 0.0, 0.0});
    const FrozenOrientations fro = sample_frozen_orientations(sc);
    const ChannelState cs = assemble_channels(sc, poses, fro.users, fro.eve);
    CsvBuilder csv("manifest " + hash);
    csv.header({"k", "u", "gain"});
    for (int k = 0; k < cs.K; ++k) {
        for (int u = 0; u < cs.U; ++u) {
            csv.row_of_strings({std::to_string(k + 1), std::to_string(u + 1),
                                format_double(cs.h(k, u))});
        }
        csv.row_of_strings({std::to_string(k + 1), "eve",
                            format_double(cs.h_e[static_cast<std::size_t>(k)])});
    }
    write_output(cmd.out_dir, "manifest.json", manifest.dump(2) + "\n");
    write_output(cmd.out_dir, "channels.csv", csv.str());
    std::cout << "dumped " << cs.K << "x" << (cs.U + 1) << " gains\n";
    return 0;
}

} // namespace detail

/// Dispatches a parsed command; exit 0 on success, 1 on infeasible-only or
/// environment failures, 2 never (usage errors are thrown before this).
inline int execute(const CliCommand& cmd) {
    try {
        switch (cmd.verb) {
            case CliVerb::run: return detail::execute_run(cmd);
            case CliVerb::sweep: return detail::execute_sweep(cmd);
            case CliVerb::baseline: return detail::execute_baseline(cmd);
            case CliVerb::oracle: return detail::execute_oracle(cmd);
            case CliVerb::dump_channels: return detail::execute_dump_channels(cmd);
        }
    } catch (const std::exception& e) {
        std::cerr << "risvlc: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << "usage: risvlc {run|sweep|baseline|oracle|dump-channels} [options]\n"
                     "try 'risvlc --help'\n";
        return 2;
    }
    try {
        const CliCommand cmd = parse_args(args);
        return execute(cmd);
    } catch (const UsageError& e) {
        if (std::string(e.what()) == "help") return 0;
        std::cerr << e.what() << "\n";
        return 2;
    }
}

} // namespace risvlc
