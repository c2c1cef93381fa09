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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "risvlc/channel.hpp"
#include "risvlc/rates.hpp"
#include "risvlc/scenario.hpp"

namespace risvlc {

enum class Problem { P1, P2, P3, P4 };

/// Which of the four Max-Min problems to solve: P1/P2 maximize the minimum
/// secrecy rate, P3/P4 the minimum secrecy energy efficiency.
struct ProblemSpec {
    Problem problem = Problem::P1;

    Scheme scheme() const {
        return (problem == Problem::P1 || problem == Problem::P3) ? Scheme::rsma : Scheme::noma;
    }
    bool maximize_see() const { return problem == Problem::P3 || problem == Problem::P4; }

    std::string name() const {
        switch (problem) {
            case Problem::P1: return "P1";
            case Problem::P2: return "P2";
            case Problem::P3: return "P3";
            case Problem::P4: return "P4";
        }
        throw std::logic_error("unreachable");
    }

    static ProblemSpec parse(const std::string& s) {
        if (s == "P1") return {Problem::P1};
        if (s == "P2") return {Problem::P2};
        if (s == "P3") return {Problem::P3};
        if (s == "P4") return {Problem::P4};
        throw std::invalid_argument("unknown problem '" + s + "' (expect P1|P2|P3|P4)");
    }
};

/// Paper-convention decision-variable count (association counted as U*K
/// binaries even though the genome stores K integers).
inline int decision_variable_count(Scheme scheme, int K, int U) {
    const int base = U * K + 2 * K;
    return scheme == Scheme::rsma ? base + 1 + U : base + 1;
}

/// Optional search-space restriction: when `angles` is set, every
/// orientation gene takes values from it; when `power_candidates` is set,
/// the power segment collapses to one index gene selecting a candidate
/// allocation (RSMA: U+1 powers, NOMA: {epsilon}).
struct SearchGrids {
    std::vector<double> angles;
    std::vector<std::vector<double>> power_candidates;

    bool gridded_angles() const { return !angles.empty(); }
    bool gridded_power() const { return !power_candidates.empty(); }
};

/// Genome geometry for one problem instance.
struct GenomeLayout {
    Scheme scheme = Scheme::rsma;
    int K = 0;
    int U = 0;
    bool freeze_power = false; // fixed-allocation baseline (epsilon pinned)
    double frozen_epsilon = 0.6;
    SearchGrids grids{};

    int power_gene_count() const {
        if (freeze_power) return 0;
        if (grids.gridded_power()) return 1;
        return scheme == Scheme::rsma ? U + 1 : 1;
    }
    int gene_count() const { return 3 * K + power_gene_count(); }
};

inline GenomeLayout make_genome_layout(const Scenario& sc, const ProblemSpec& spec,
                                       SearchGrids grids = {}) {
    return GenomeLayout{spec.scheme(), sc.params.K, sc.params.U, false, 0.6, std::move(grids)};
}

struct Chromosome {
    std::vector<int> assoc;    // K entries in [0, U)
    std::vector<double> omega; // K, radians in [-pi/2, pi/2]
    std::vector<double> gamma; // K, radians in [-pi/2, pi/2]
    std::vector<double> power; // see GenomeLayout::power_gene_count()

    int gene_count() const {
        return static_cast<int>(assoc.size() + omega.size() + gamma.size() + power.size());
    }
};

struct FitnessRecord {
    double objective = 0.0;
    bool feasible = false;
    std::vector<double> violations; // per-user rate shortfall, bits/s

    double total_violation() const {
        return std::accumulate(violations.begin(), violations.end(), 0.0);
    }
};

/// Feasibility-dominance ordering: feasible beats infeasible; feasible ties
/// break on objective; infeasible ties break on violation, then objective.
inline bool better(const FitnessRecord& a, const FitnessRecord& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible && a.total_violation() != b.total_violation())
        return a.total_violation() < b.total_violation();
    return a.objective > b.objective;
}

inline constexpr double epsilon_gene_min = 0.5 + 1e-9;

/// Decoded decision variables of one chromosome.
struct DecodedVariables {
    AssociationMatrix G;
    std::vector<RisElementPose> poses;
    RsmaPowerAllocation rsma;  // populated for RSMA
    NomaPowerAllocation noma;  // populated for NOMA
};

namespace detail {

inline std::vector<double> power_values(const Chromosome& chrom, const GenomeLayout& layout) {
    if (layout.grids.gridded_power()) {
        const auto idx = static_cast<std::size_t>(std::llround(chrom.power.at(0)));
        if (idx >= layout.grids.power_candidates.size())
            throw std::invalid_argument("power candidate index out of range");
        return layout.grids.power_candidates[idx];
    }
    return chrom.power;
}

} // namespace detail

/// Genes -> decision variables. The association is one-hot by construction;
/// RSMA powers are rescaled onto the budget simplex so the sum never exceeds
/// P_S; the NOMA gene maps through the geometric power law.
inline DecodedVariables decode(const Chromosome& chrom, const Scenario& sc,
                               const GenomeLayout& layout,
                               const std::vector<Vec3>& element_pos) {
    const int K = layout.K;
    if (static_cast<int>(chrom.assoc.size()) != K ||
        static_cast<int>(chrom.omega.size()) != K ||
        static_cast<int>(chrom.gamma.size()) != K ||
        static_cast<int>(chrom.power.size()) != layout.power_gene_count())
        throw std::invalid_argument("malformed genome");

    DecodedVariables out{AssociationMatrix(chrom.assoc, layout.U), {}, {}, {}};
    out.poses.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        out.poses.push_back({k, element_pos[static_cast<std::size_t>(k)],
                             chrom.omega[static_cast<std::size_t>(k)],
                             chrom.gamma[static_cast<std::size_t>(k)]});
    }

    if (layout.scheme == Scheme::rsma) {
        const std::vector<double> p = detail::power_values(chrom, layout);
        if (static_cast<int>(p.size()) != layout.U + 1)
            throw std::invalid_argument("RSMA power segment must hold U+1 genes");
        out.rsma.P0 = p[0];
        out.rsma.P.assign(p.begin() + 1, p.end());
        const double total = out.rsma.total();
        if (total > sc.params.P_S) {
            const double scale = sc.params.P_S / total;
            out.rsma.P0 *= scale;
            for (double& v : out.rsma.P) v *= scale;
        }
    } else {
        double eps = layout.frozen_epsilon;
        if (!layout.freeze_power) {
            const std::vector<double> p = detail::power_values(chrom, layout);
            if (p.size() != 1)
                throw std::invalid_argument("NOMA power segment must hold one gene");
            eps = p[0];
        }
        out.noma.epsilon = eps;
        out.noma.c = noma_coefficients(eps, layout.U);
    }
    return out;
}

/// Binds a scenario snapshot (element grid, frozen device orientations,
/// total power) and owns the scratch buffers for fitness evaluation.
class FitnessEvaluator {
public:
    FitnessEvaluator(const Scenario& sc, ProblemSpec spec, GenomeLayout layout)
        : sc_(&sc),
          spec_(spec),
          layout_(std::move(layout)),
          element_pos_(element_positions(sc.layout)),
          orientations_(sample_frozen_orientations(sc)) {}

    const GenomeLayout& genome_layout() const { return layout_; }
    const Scenario& scenario() const { return *sc_; }
    const std::vector<Vec3>& element_pos() const { return element_pos_; }
    const FrozenOrientations& orientations() const { return orientations_; }

    DecodedVariables decode(const Chromosome& chrom) const {
        return risvlc::decode(chrom, *sc_, layout_, element_pos_);
    }

    /// Full rate report for a candidate (used for dumps and diagnostics).
    RateReport report(const Chromosome& chrom) {
        const DecodedVariables dec = decode(chrom);
        assemble_channels_into(*sc_, dec.poses, orientations_.users, orientations_.eve, cs_);
        return layout_.scheme == Scheme::rsma
                   ? rsma_rate_report(*sc_, cs_, dec.G, dec.rsma)
                   : noma_rate_report(*sc_, cs_, dec.G, dec.noma.c);
    }

    /// Objective + feasibility. Infeasibility (a user short of R_min) is a
    /// result, not an error.
    FitnessRecord evaluate(const Chromosome& chrom) {
        const RateReport rep = report(chrom);
        FitnessRecord rec;
        rec.objective = spec_.maximize_see() ? rep.see : rep.min_secrecy_rate;
        rec.violations.resize(rep.user_rates.size());
        rec.feasible = true;
        for (std::size_t u = 0; u < rep.user_rates.size(); ++u) {
            rec.violations[u] = std::max(0.0, sc_->params.R_min - rep.user_rates[u]);
            if (rec.violations[u] > 0.0) rec.feasible = false;
        }
        return rec;
    }

private:
    const Scenario* sc_;
    ProblemSpec spec_;
    GenomeLayout layout_;
    std::vector<Vec3> element_pos_;
    FrozenOrientations orientations_;
    ChannelState cs_;
};

inline Chromosome random_chromosome(const GenomeLayout& layout, const Scenario& sc, Rng& rng) {
    Chromosome c;
    c.assoc.resize(static_cast<std::size_t>(layout.K));
    c.omega.resize(static_cast<std::size_t>(layout.K));
    c.gamma.resize(static_cast<std::size_t>(layout.K));
    for (int k = 0; k < layout.K; ++k) {
        c.assoc[static_cast<std::size_t>(k)] =
            static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(layout.U)));
        if (layout.grids.gridded_angles()) {
            c.omega[static_cast<std::size_t>(k)] =
                layout.grids.angles[rng.uniform_int(layout.grids.angles.size())];
            c.gamma[static_cast<std::size_t>(k)] =
                layout.grids.angles[rng.uniform_int(layout.grids.angles.size())];
        } else {
            c.omega[static_cast<std::size_t>(k)] = rng.uniform(-pi / 2.0, pi / 2.0);
            c.gamma[static_cast<std::size_t>(k)] = rng.uniform(-pi / 2.0, pi / 2.0);
        }
    }
    if (layout.freeze_power) return c;
    if (layout.grids.gridded_power()) {
        c.power.push_back(
            static_cast<double>(rng.uniform_int(layout.grids.power_candidates.size())));
    } else if (layout.scheme == Scheme::rsma) {
        for (int i = 0; i < layout.U + 1; ++i) c.power.push_back(rng.uniform(0.0, sc.params.P_S));
    } else {
        c.power.push_back(1.0 - 0.5 * rng.uniform()); // epsilon in (0.5, 1]
    }
    return c;
}

/// Best-of-n tournament; returns the winning population index.
inline int tournament_select(const std::vector<FitnessRecord>& records, int tournament_size,
                             Rng& rng) {
    if (records.empty()) throw std::invalid_argument("empty population");
    int best = static_cast<int>(rng.uniform_int(records.size()));
    for (int t = 1; t < tournament_size; ++t) {
        const int challenger = static_cast<int>(rng.uniform_int(records.size()));
        if (better(records[static_cast<std::size_t>(challenger)],
                   records[static_cast<std::size_t>(best)]))
            best = challenger;
    }
    return best;
}

namespace detail {

template <typename T>
void exchange_tail(std::vector<T>& a, std::vector<T>& b, Rng& rng) {
    const std::size_t n = a.size();
    if (n == 0) return;
    if (n == 1) { // no interior locus; mix by coin flip
        if (rng.bernoulli(0.5)) std::swap(a[0], b[0]);
        return;
    }
    const std::size_t locus = 1 + rng.uniform_int(n - 1);
    for (std::size_t i = locus; i < n; ++i) std::swap(a[i], b[i]);
}

} // namespace detail

/// With probability Pc, single-point crossover applied independently within
/// each gene segment; otherwise the offspring are clones.
inline std::pair<Chromosome, Chromosome> crossover(const Chromosome& pa, const Chromosome& pb,
                                                   double pc, Rng& rng) {
    if (pa.assoc.size() != pb.assoc.size() || pa.power.size() != pb.power.size())
        throw std::invalid_argument("parents have mismatched genome shapes");
    Chromosome a = pa, b = pb;
    if (!rng.bernoulli(pc)) return {a, b};
    detail::exchange_tail(a.assoc, b.assoc, rng);
    detail::exchange_tail(a.omega, b.omega, rng);
    detail::exchange_tail(a.gamma, b.gamma, rng);
    detail::exchange_tail(a.power, b.power, rng);
    return {a, b};
}

/// Per-gene mutation: association genes are resampled; real genes take a
/// clipped Gaussian step of one tenth of their range. Grid-restricted genes
/// resample from the grid so closure holds in grid mode too.
inline void mutate(Chromosome& chrom, const GenomeLayout& layout, const Scenario& sc, double pm,
                   Rng& rng) {
    for (int& a : chrom.assoc) {
        if (rng.bernoulli(pm))
            a = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(layout.U)));
    }
    auto perturb_angle = [&](double& v) {
        if (!rng.bernoulli(pm)) return;
        if (layout.grids.gridded_angles()) {
            v = layout.grids.angles[rng.uniform_int(layout.grids.angles.size())];
        } else {
            v = std::clamp(v + 0.1 * pi * rng.gaussian(), -pi / 2.0, pi / 2.0);
        }
    };
    for (double& v : chrom.omega) perturb_angle(v);
    for (double& v : chrom.gamma) perturb_angle(v);
    if (layout.freeze_power) return;
    if (layout.grids.gridded_power()) {
        if (rng.bernoulli(pm))
            chrom.power[0] =
                static_cast<double>(rng.uniform_int(layout.grids.power_candidates.size()));
    } else if (layout.scheme == Scheme::rsma) {
        for (double& v : chrom.power) {
            if (rng.bernoulli(pm))
                v = std::clamp(v + 0.1 * sc.params.P_S * rng.gaussian(), 0.0, sc.params.P_S);
        }
    } else {
        if (rng.bernoulli(pm))
            chrom.power[0] =
                std::clamp(chrom.power[0] + 0.05 * rng.gaussian(), epsilon_gene_min, 1.0);
    }
}

/// Steady-state replacement: the two offspring evict the two worst members
/// under the dominance ordering (infeasible with the largest violations
/// first, then the weakest feasibles). Elites are never evicted because the
/// two worst can never rank among the best elite_count (elite_count <= J-2).
inline void replace(std::vector<Chromosome>& population, std::vector<FitnessRecord>& records,
                    std::pair<Chromosome, Chromosome> offspring,
                    std::pair<FitnessRecord, FitnessRecord> offspring_records) {
    if (population.size() < 2) throw std::invalid_argument("population too small for replacement");
    int worst = 0, second = 1;
    if (better(records[static_cast<std::size_t>(worst)],
               records[static_cast<std::size_t>(second)]))
        std::swap(worst, second);
    for (int i = 2; i < static_cast<int>(records.size()); ++i) {
        const auto& r = records[static_cast<std::size_t>(i)];
        if (better(records[static_cast<std::size_t>(worst)], r)) {
            second = worst;
            worst = i;
        } else if (better(records[static_cast<std::size_t>(second)], r)) {
            second = i;
        }
    }
    population[static_cast<std::size_t>(worst)] = std::move(offspring.first);
    records[static_cast<std::size_t>(worst)] = std::move(offspring_records.first);
    population[static_cast<std::size_t>(second)] = std::move(offspring.second);
    records[static_cast<std::size_t>(second)] = std::move(offspring_records.second);
}

/// One point per generation: incumbent objective/feasibility plus how much
/// of the population is feasible.
struct TracePoint {
    int generation = 0;
    double best_objective = 0.0;
    bool best_feasible = false;
    int feasible_count = 0;
};

struct GaResult {
    Chromosome best;
    FitnessRecord record;
    std::vector<TracePoint> trace;
};

/// Runs the evolutionary loop for N_Gen generations and returns the best
/// candidate ever evaluated (best infeasible one if nothing reached R_min,
/// flagged via record.feasible). Bit-deterministic in config.rng_seed.
inline GaResult run_ga(const Scenario& sc, const ProblemSpec& spec, const GaConfig& config,
                       const GenomeLayout& layout) {
    config.validate();
    FitnessEvaluator ev(sc, spec, layout);
    const double pm = config.mutation_prob >= 0.0
                          ? config.mutation_prob
                          : 1.0 / std::max(1, layout.gene_count());

    Rng rng_init(splitmix64(config.rng_seed ^ 0x696e6974ULL));
    Rng rng_select(splitmix64(config.rng_seed ^ 0x73656c6563ULL));
    Rng rng_cross(splitmix64(config.rng_seed ^ 0x63726f7373ULL));
    Rng rng_mut(splitmix64(config.rng_seed ^ 0x6d757461ULL));

    std::vector<Chromosome> population;
    std::vector<FitnessRecord> records;
    population.reserve(static_cast<std::size_t>(config.population));
    records.reserve(static_cast<std::size_t>(config.population));
    for (int j = 0; j < config.population; ++j) {
        population.push_back(random_chromosome(layout, sc, rng_init));
        records.push_back(ev.evaluate(population.back()));
    }

    std::size_t incumbent = 0;
    for (std::size_t j = 1; j < records.size(); ++j) {
        if (better(records[j], records[incumbent])) incumbent = j;
    }
    Chromosome best = population[incumbent];
    FitnessRecord best_record = records[incumbent];

    auto feasible_count = [&] {
        return static_cast<int>(std::count_if(records.begin(), records.end(),
                                              [](const FitnessRecord& r) { return r.feasible; }));
    };

    GaResult result;
    result.trace.push_back({0, best_record.objective, best_record.feasible, feasible_count()});

    for (int gen = 1; gen <= config.generations; ++gen) {
        for (int p = 0; p < config.pairs_per_generation; ++p) {
            const int ia = tournament_select(records, config.tournament_size, rng_select);
            const int ib = tournament_select(records, config.tournament_size, rng_select);
            auto [c1, c2] = crossover(population[static_cast<std::size_t>(ia)],
                                      population[static_cast<std::size_t>(ib)],
                                      config.crossover_prob, rng_cross);
            mutate(c1, layout, sc, pm, rng_mut);
            mutate(c2, layout, sc, pm, rng_mut);
            FitnessRecord r1 = ev.evaluate(c1);
            FitnessRecord r2 = ev.evaluate(c2);
            if (better(r1, best_record)) {
                best = c1;
                best_record = r1;
            }
            if (better(r2, best_record)) {
                best = c2;
                best_record = r2;
            }
            replace(population, records, {std::move(c1), std::move(c2)},
                    {std::move(r1), std::move(r2)});
        }
        result.trace.push_back({gen, best_record.objective, best_record.feasible,
                                feasible_count()});
    }

    result.best = std::move(best);
    result.record = std::move(best_record);
    return result;
}

inline GaResult run_ga(const Scenario& sc, const ProblemSpec& spec, const GaConfig& config) {
    return run_ga(sc, spec, config, make_genome_layout(sc, spec));
}

/// Exhaustive search over the gridded decision space. Throws if the grid
/// would exceed the evaluation budget (1e8 points).
struct OracleResult {
    Chromosome best;
    FitnessRecord record;
    std::uint64_t evaluations = 0;
};

inline OracleResult brute_force_oracle(const Scenario& sc, const ProblemSpec& spec,
                                       const SearchGrids& grids) {
    if (!grids.gridded_angles() || !grids.gridded_power())
        throw std::invalid_argument("oracle requires both an angle grid and a power grid");
    const int K = sc.params.K;
    const int U = sc.params.U;
    const double assoc_space = std::pow(static_cast<double>(U), K);
    const double angle_space = std::pow(static_cast<double>(grids.angles.size()), 2 * K);
    const double space = assoc_space * angle_space *
                         static_cast<double>(grids.power_candidates.size());
    if (!(space <= 1e8))
        throw std::invalid_argument("oracle budget exceeded: grid has " +
                                    std::to_string(space) + " points (limit 1e8)");

    GenomeLayout layout = make_genome_layout(sc, spec, grids);
    FitnessEvaluator ev(sc, spec, layout);

    Chromosome current;
    current.assoc.assign(static_cast<std::size_t>(K), 0);
    current.omega.assign(static_cast<std::size_t>(K), grids.angles.front());
    current.gamma.assign(static_cast<std::size_t>(K), grids.angles.front());
    current.power.assign(1, 0.0);

    // Odometer over [assoc digits | omega digits | gamma digits | power digit].
    const int digits = 3 * K + 1;
    std::vector<std::size_t> idx(static_cast<std::size_t>(digits), 0);
    auto radix = [&](int d) -> std::size_t {
        if (d < K) return static_cast<std::size_t>(U);
        if (d < 3 * K) return grids.angles.size();
        return grids.power_candidates.size();
    };
    auto apply_digit = [&](int d) {
        if (d < K) {
            current.assoc[static_cast<std::size_t>(d)] = static_cast<int>(idx[static_cast<std::size_t>(d)]);
        } else if (d < 2 * K) {
            current.omega[static_cast<std::size_t>(d - K)] = grids.angles[idx[static_cast<std::size_t>(d)]];
        } else if (d < 3 * K) {
            current.gamma[static_cast<std::size_t>(d - 2 * K)] = grids.angles[idx[static_cast<std::size_t>(d)]];
        } else {
            current.power[0] = static_cast<double>(idx[static_cast<std::size_t>(d)]);
        }
    };

    OracleResult out;
    out.best = current;
    out.record = ev.evaluate(current);
    out.evaluations = 1;
    while (true) {
        int d = 0;
        for (; d < digits; ++d) {
            idx[static_cast<std::size_t>(d)]++;
            if (idx[static_cast<std::size_t>(d)] < radix(d)) {
                apply_digit(d);
                break;
            }
            idx[static_cast<std::size_t>(d)] = 0;
            apply_digit(d);
        }
        if (d == digits) break;
        const FitnessRecord rec = ev.evaluate(current);
        out.evaluations++;
        if (better(rec, out.record)) {
            out.best = current;
            out.record = rec;
        }
    }
    return out;
}

} // namespace risvlc
