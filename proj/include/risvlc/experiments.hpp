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

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "risvlc/io.hpp"
#include "risvlc/optimizer.hpp"
#include "risvlc/scenario.hpp"

namespace risvlc {

/// Worker cap for embarrassingly parallel run batches: RVS_THREADS if set,
/// else the hardware concurrency.
inline int worker_count(int tasks) {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* env = std::getenv("RVS_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) workers = std::min(workers, cap);
        } catch (const std::exception&) {
            // ignore malformed values, keep default
        }
    }
    return std::min(workers, std::max(1, tasks));
}

/// Runs fn(i) for i in [0, n) on up to worker_count(n) threads. Work items
/// must be independent; results are keyed by index so scheduling order never
/// shows in the output.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = worker_count(n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// One swept parameter, a value list, and the problems/seeds to run at each
/// point.
struct SweepSpec {
    std::string param;
    std::vector<double> values;
    std::map<std::string, double> overrides; // applied before the swept value
    int replications = 10;
    std::uint64_t seed_base = 1;
    std::vector<ProblemSpec> problems;

    void validate() const {
        if (param.empty()) throw std::invalid_argument("sweep: param name required");
        if (values.empty()) throw std::invalid_argument("sweep: value list must be nonempty");
        if (replications < 1) throw std::invalid_argument("sweep: replications must be >= 1");
        if (problems.empty()) throw std::invalid_argument("sweep: at least one problem");
    }
};

struct SweepRow {
    std::string param;
    double value = 0.0;
    Scheme scheme = Scheme::rsma;
    ProblemSpec problem{};
    std::string variant;    // "" for the plain GA, "fixed-eps" for the baseline
    std::uint64_t seed = 0;
    double objective = 0.0;
    bool feasible = false;
    double runtime_s = 0.0;
    std::vector<TracePoint> trace;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

namespace detail {

inline SweepRow run_one(Scenario sc, const ProblemSpec& problem, std::uint64_t seed,
                        const std::string& param, double value, bool freeze_power,
                        double frozen_epsilon) {
    sc.rng_seed = seed;
    sc.params.ga.rng_seed = seed;
    GenomeLayout layout = make_genome_layout(sc, problem);
    if (freeze_power) {
        layout.freeze_power = true;
        layout.frozen_epsilon = frozen_epsilon;
    }
    const auto t0 = std::chrono::steady_clock::now();
    GaResult ga = run_ga(sc, problem, sc.params.ga, layout);
    const auto t1 = std::chrono::steady_clock::now();
    SweepRow row;
    row.param = param;
    row.value = value;
    row.scheme = problem.scheme();
    row.problem = problem;
    row.variant = freeze_power ? "fixed-eps" : "";
    row.seed = seed;
    row.objective = ga.record.objective;
    row.feasible = ga.record.feasible;
    row.runtime_s = std::chrono::duration<double>(t1 - t0).count();
    row.trace = std::move(ga.trace);
    return row;
}

} // namespace detail

/// Runs the GA for every (value, problem, seed) and collects one row each.
/// Rows are produced in a fixed order regardless of scheduling.
inline SweepResult sweep(const Scenario& base, const SweepSpec& spec) {
    spec.validate();
    struct Task {
        double value;
        ProblemSpec problem;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (double v : spec.values) {
        for (const auto& p : spec.problems) {
            for (int r = 0; r < spec.replications; ++r) {
                tasks.push_back({v, p, spec.seed_base + static_cast<std::uint64_t>(r)});
            }
        }
    }
    SweepResult out;
    out.rows.resize(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), [&](int i) {
        const Task& t = tasks[static_cast<std::size_t>(i)];
        Scenario sc = base;
        for (const auto& [k, v] : spec.overrides) apply_sweep_value(sc, k, v);
        apply_sweep_value(sc, spec.param, t.value);
        out.rows[static_cast<std::size_t>(i)] =
            detail::run_one(std::move(sc), t.problem, t.seed, spec.param, t.value, false, 0.6);
    });
    return out;
}

/// Fixed power-split benchmark: the NOMA GA with epsilon pinned (the power
/// gene disappears), paired with the full run on identical seeds.
inline SweepResult fixed_power_baseline(const Scenario& base, const ProblemSpec& problem,
                                        int replications, std::uint64_t seed_base = 1,
                                        double frozen_epsilon = 0.6) {
    if (problem.scheme() != Scheme::noma)
        throw std::invalid_argument("fixed-power baseline applies to NOMA problems only");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    SweepResult out;
    out.rows.resize(static_cast<std::size_t>(2 * replications));
    parallel_for(2 * replications, [&](int i) {
        const bool frozen = (i % 2) == 1;
        const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(i / 2);
        out.rows[static_cast<std::size_t>(i)] =
            detail::run_one(base, problem, seed, "P_S", base.params.P_S, frozen, frozen_epsilon);
    });
    return out;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Linear-interpolation quantile on the sorted sample.
inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile of empty set");
    std::sort(v.begin(), v.end());
    const double pos = q * (static_cast<double>(v.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

inline double interquartile_range(const std::vector<double>& v) {
    return quantile(v, 0.75) - quantile(v, 0.25);
}

/// Objectives of the rows matching (value, problem, variant).
inline std::vector<double> objectives_at(const SweepResult& res, double value,
                                         const ProblemSpec& problem,
                                         const std::string& variant = "") {
    std::vector<double> out;
    for (const auto& row : res.rows) {
        if (row.value == value && row.problem.problem == problem.problem &&
            row.variant == variant)
            out.push_back(row.objective);
    }
    return out;
}

/// Plateau detection on a best-so-far trace: the last generation with a
/// >1% relative improvement, and whether the final 20 generations are flat.
struct ConvergenceSummary {
    int generations = 0;
    int last_improvement_generation = 0;
    bool plateau = false;
    double final_objective = 0.0;
};

inline ConvergenceSummary convergence_report(const std::vector<TracePoint>& trace) {
    if (trace.empty()) throw std::invalid_argument("empty convergence trace");
    ConvergenceSummary s;
    s.generations = trace.back().generation;
    s.final_objective = trace.back().best_objective;
    int last = 0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const double prev = trace[i - 1].best_objective;
        const double cur = trace[i].best_objective;
        const double rel = (cur - prev) / std::max(std::abs(prev), 1e-300);
        if (rel > 0.01) last = trace[i].generation;
    }
    s.last_improvement_generation = last;
    s.plateau = last <= s.generations - 20;
    return s;
}

/// Table of the optimized decision variables: one row per element (index,
/// assigned user, angles in degrees for reading and radians for exact
/// re-parsing) plus the power allocation. parse_decision_dump() restores a
/// chromosome that decodes to the same variables.
inline std::string decision_variable_dump(const Chromosome& best, const FitnessEvaluator& ev) {
    const GenomeLayout& layout = ev.genome_layout();
    const DecodedVariables dec = ev.decode(best);
    CsvBuilder csv;
    csv.header({"k", "user", "omega_deg", "gamma_deg", "omega_rad", "gamma_rad"});
    char deg[32];
    for (int k = 0; k < layout.K; ++k) {
        const auto& pose = dec.poses[static_cast<std::size_t>(k)];
        std::vector<std::string> row;
        row.push_back(std::to_string(k + 1));
        row.push_back(std::to_string(dec.G.owner(k) + 1));
        std::snprintf(deg, sizeof(deg), "%.4f", rad2deg(pose.omega));
        row.push_back(deg);
        std::snprintf(deg, sizeof(deg), "%.4f", rad2deg(pose.gamma));
        row.push_back(deg);
        row.push_back(format_double(pose.omega));
        row.push_back(format_double(pose.gamma));
        csv.row_of_strings(row);
    }
    if (layout.scheme == Scheme::rsma) {
        csv.row_of_strings({"power", "P0", format_double(dec.rsma.P0)});
        for (std::size_t u = 0; u < dec.rsma.P.size(); ++u) {
            csv.row_of_strings({"power", "P" + std::to_string(u + 1), format_double(dec.rsma.P[u])});
        }
    } else {
        csv.row_of_strings({"power", "epsilon", format_double(dec.noma.epsilon)});
        for (std::size_t u = 0; u < dec.noma.c.size(); ++u) {
            csv.row_of_strings({"power", "c" + std::to_string(u + 1), format_double(dec.noma.c[u])});
        }
    }
    return csv.str();
}

/// Inverse of decision_variable_dump (radian columns and the raw power
/// values are authoritative).
inline Chromosome parse_decision_dump(const std::string& text, const GenomeLayout& layout) {
    Chromosome chrom;
    chrom.assoc.assign(static_cast<std::size_t>(layout.K), 0);
    chrom.omega.assign(static_cast<std::size_t>(layout.K), 0.0);
    chrom.gamma.assign(static_cast<std::size_t>(layout.K), 0.0);
    double p0 = 0.0, epsilon = 0.0;
    std::vector<double> p(static_cast<std::size_t>(layout.U), 0.0);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
        const auto cells = split(line, ',');
        if (cells[0] == "power") {
            if (cells.size() != 3) throw std::invalid_argument("malformed power row: " + line);
            if (cells[1] == "P0") p0 = parse_double(cells[2]);
            else if (cells[1] == "epsilon") epsilon = parse_double(cells[2]);
            else if (cells[1][0] == 'P')
                p.at(static_cast<std::size_t>(std::stoi(cells[1].substr(1)) - 1)) =
                    parse_double(cells[2]);
            // c1..cU rows are derived output; ignored on re-parse
            continue;
        }
        if (cells.size() != 6) throw std::invalid_argument("malformed element row: " + line);
        const int k = std::stoi(cells[0]) - 1;
        if (k < 0 || k >= layout.K) throw std::invalid_argument("element index out of range");
        chrom.assoc.at(static_cast<std::size_t>(k)) = std::stoi(cells[1]) - 1;
        chrom.omega.at(static_cast<std::size_t>(k)) = parse_double(cells[4]);
        chrom.gamma.at(static_cast<std::size_t>(k)) = parse_double(cells[5]);
    }
    if (layout.power_gene_count() > 0) {
        if (layout.scheme == Scheme::rsma) {
            chrom.power.push_back(p0);
            chrom.power.insert(chrom.power.end(), p.begin(), p.end());
        } else {
            chrom.power.push_back(epsilon);
        }
    }
    return chrom;
}

/// Sweep spec file: flat key/value with `override.<name>` entries for fixed
/// parameters; `values` and `problems` are comma lists.
inline SweepSpec parse_sweep_spec(const KvFile& kv) {
    SweepSpec spec;
    spec.param = kv.at("param");
    for (const auto& v : split(kv.at("values"), ',')) {
        if (!trim(v).empty()) spec.values.push_back(parse_double(trim(v)));
    }
    for (const auto& p : split(kv.at("problems"), ',')) {
        if (!trim(p).empty()) spec.problems.push_back(ProblemSpec::parse(trim(p)));
    }
    if (kv.has("replications"))
        spec.replications = detail::as_count(parse_double(kv.at("replications")), "replications");
    if (kv.has("seed_base"))
        spec.seed_base = static_cast<std::uint64_t>(parse_double(kv.at("seed_base")));
    for (const auto& key : kv.keys) {
        if (key.rfind("override.", 0) == 0) {
            spec.overrides[key.substr(9)] = parse_double(kv.at(key));
        }
    }
    spec.validate();
    return spec;
}

/// results CSV with the fixed column order; `manifest_hash` is stamped in a
/// leading comment.
inline std::string sweep_result_csv(const SweepResult& res, const std::string& manifest_hash) {
    CsvBuilder csv("manifest " + manifest_hash);
    csv.header({"param", "value", "scheme", "problem", "seed", "objective", "runtime_s"});
    for (const auto& row : res.rows) {
        const std::string scheme =
            scheme_name(row.scheme) + (row.variant.empty() ? "" : "-" + row.variant);
        csv.row_of_strings({row.param, format_double(row.value), scheme, row.problem.name(),
                            std::to_string(row.seed), format_double(row.objective),
                            format_double(row.runtime_s)});
    }
    return csv.str();
}

inline std::string trace_csv(const std::vector<TracePoint>& trace,
                             const std::string& manifest_hash) {
    CsvBuilder csv("manifest " + manifest_hash);
    csv.header({"generation", "best_objective", "best_feasible", "feasible_count"});
    for (const auto& pt : trace) {
        csv.row_of_strings({std::to_string(pt.generation), format_double(pt.best_objective),
                            pt.best_feasible ? "1" : "0", std::to_string(pt.feasible_count)});
    }
    return csv.str();
}

} // namespace risvlc
