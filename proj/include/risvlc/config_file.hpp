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
//
// Scenario config files are flat `key = value` text; the schema is
// documented in docs/scenario-config.md. Angles are degrees in files and
// radians in memory.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "risvlc/io.hpp"
#include "risvlc/scenario.hpp"

namespace risvlc {

namespace detail {

inline Vec3 parse_vec3(const std::string& s) {
    std::vector<std::string> parts;
    for (const auto& p : split(s, ' ')) {
        if (!trim(p).empty()) parts.push_back(trim(p));
    }
    if (parts.size() != 3) throw std::invalid_argument("expected 3 coordinates: '" + s + "'");
    return {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
}

inline std::vector<Vec3> parse_vec3_list(const std::string& s) {
    std::vector<Vec3> out;
    for (const auto& item : split(s, ';')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_vec3(item));
    }
    return out;
}

inline OrientationKind parse_orientation_kind(const std::string& s) {
    if (s == "laplace") return OrientationKind::laplace_truncated;
    if (s == "fixed") return OrientationKind::fixed;
    throw std::invalid_argument("unknown orientation kind '" + s + "' (expect laplace|fixed)");
}

inline std::string orientation_kind_name(OrientationKind k) {
    return k == OrientationKind::laplace_truncated ? "laplace" : "fixed";
}

} // namespace detail

/// Builds a Scenario from parsed key/value pairs. Numeric system parameters
/// go through the override path; positions, wall id and orientation kinds
/// are applied on top. Unknown keys are errors.
inline Scenario scenario_from_kv(const KvFile& kv) {
    static const std::vector<std::string> special = {
        "room_dims",       "ap_position",          "eve_position",
        "user_positions",  "ris_wall",             "orientation_kind",
        "fixed_alpha",     "fixed_beta",           "eve_orientation_kind",
        "eve_fixed_alpha", "eve_fixed_beta",       "common_rate_joint_decoding"};

    std::map<std::string, double> overrides;
    for (const auto& key : kv.keys) {
        if (std::find(special.begin(), special.end(), key) != special.end()) continue;
        overrides[key] = parse_double(kv.at(key));
    }
    const bool users_given = kv.has("user_positions");
    if (users_given && overrides.find("U") == overrides.end()) {
        overrides["U"] = static_cast<double>(detail::parse_vec3_list(kv.at("user_positions")).size());
    }

    Scenario sc = build_default_scenario(overrides);

    if (kv.has("room_dims")) sc.layout.room_dims = detail::parse_vec3(kv.at("room_dims"));
    if (kv.has("ap_position")) sc.layout.ap_position = detail::parse_vec3(kv.at("ap_position"));
    if (kv.has("eve_position")) sc.layout.eve_position = detail::parse_vec3(kv.at("eve_position"));
    if (kv.has("ris_wall")) sc.layout.ris_panel.wall = wall_from_name(kv.at("ris_wall"));
    if (kv.has("orientation_kind"))
        sc.user_orientation.kind = detail::parse_orientation_kind(kv.at("orientation_kind"));
    if (kv.has("fixed_alpha"))
        sc.user_orientation.fixed_alpha = deg2rad(parse_double(kv.at("fixed_alpha")));
    if (kv.has("fixed_beta"))
        sc.user_orientation.fixed_beta = deg2rad(parse_double(kv.at("fixed_beta")));
    if (kv.has("eve_orientation_kind"))
        sc.eve_orientation.kind = detail::parse_orientation_kind(kv.at("eve_orientation_kind"));
    if (kv.has("eve_fixed_alpha"))
        sc.eve_orientation.fixed_alpha = deg2rad(parse_double(kv.at("eve_fixed_alpha")));
    if (kv.has("eve_fixed_beta"))
        sc.eve_orientation.fixed_beta = deg2rad(parse_double(kv.at("eve_fixed_beta")));
    if (kv.has("common_rate_joint_decoding"))
        sc.params.common_rate_joint_decoding = parse_double(kv.at("common_rate_joint_decoding")) != 0.0;

    // Geometry edits move the wall/room, so re-center the panel; explicit
    // user positions replace the default ring.
    finalize_layout(sc, /*replace_users=*/!users_given);
    if (users_given) sc.layout.user_positions = detail::parse_vec3_list(kv.at("user_positions"));
    validate_scenario(sc);
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    return scenario_from_kv(parse_kv_file(path));
}

/// Canonical text form (stable key order, shortest round-trip numbers).
/// Hashing this string identifies the scenario in manifests.
inline std::string save_scenario(const Scenario& sc) {
    const auto& p = sc.params;
    const auto& c = p.consumption;
    const auto& g = p.ga;
    KvFile kv;
    auto setd = [&](const std::string& k, double v) { kv.set(k, format_double(v)); };
    auto setv = [&](const std::string& k, const Vec3& v) {
        kv.set(k, format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z));
    };
    setv("room_dims", sc.layout.room_dims);
    setv("ap_position", sc.layout.ap_position);
    kv.set("ris_wall", wall_name(sc.layout.ris_panel.wall));
    setd("ris_rows", sc.layout.ris_panel.rows);
    setd("ris_cols", sc.layout.ris_panel.cols);
    setd("element_side", sc.layout.ris_panel.element_side);
    setd("ris_center_height", sc.layout.ris_panel.center_height);
    {
        std::string users;
        for (std::size_t i = 0; i < sc.layout.user_positions.size(); ++i) {
            const Vec3& u = sc.layout.user_positions[i];
            if (i) users += " ; ";
            users += format_double(u.x) + " " + format_double(u.y) + " " + format_double(u.z);
        }
        kv.set("user_positions", users);
    }
    setv("eve_position", sc.layout.eve_position);
    setd("P_S", p.P_S);
    setd("K", p.K);
    setd("U", p.U);
    setd("xi_fov", rad2deg(p.xi_fov));
    setd("rho_ris", p.rho_ris);
    setd("phi_half", rad2deg(p.phi_half));
    setd("G_f", p.G_f);
    setd("f", p.f);
    setd("A_pd", p.A_pd);
    setd("R_pd", p.R_pd);
    setd("B", p.B);
    setd("N_o", p.N_o);
    setd("R_min", p.R_min);
    kv.set("common_rate_joint_decoding", p.common_rate_joint_decoding ? "1" : "0");
    kv.set("orientation_kind", detail::orientation_kind_name(sc.user_orientation.kind));
    setd("alpha_mean", rad2deg(sc.user_orientation.alpha_mean));
    setd("alpha_std", rad2deg(sc.user_orientation.alpha_std));
    setd("fixed_alpha", rad2deg(sc.user_orientation.fixed_alpha));
    setd("fixed_beta", rad2deg(sc.user_orientation.fixed_beta));
    kv.set("eve_orientation_kind", detail::orientation_kind_name(sc.eve_orientation.kind));
    setd("eve_fixed_alpha", rad2deg(sc.eve_orientation.fixed_alpha));
    setd("eve_fixed_beta", rad2deg(sc.eve_orientation.fixed_beta));
    setd("P_DAC", c.P_DAC);
    setd("P_Filter", c.P_Filter);
    setd("P_PA", c.P_PA);
    setd("P_Driver", c.P_Driver);
    setd("P_TCircuit", c.P_TCircuit);
    setd("P_Element", c.P_Element);
    setd("P_ADC", c.P_ADC);
    setd("P_TIA", c.P_TIA);
    setd("P_RCircuit", c.P_RCircuit);
    setd("ga_population", g.population);
    setd("ga_generations", g.generations);
    setd("ga_crossover_prob", g.crossover_prob);
    setd("ga_mutation_prob", g.mutation_prob);
    setd("ga_tournament_size", g.tournament_size);
    setd("ga_elite_count", g.elite_count);
    setd("ga_pairs_per_generation", g.pairs_per_generation);
    setd("rng_seed", static_cast<double>(sc.rng_seed));

    std::string out;
    for (const auto& key : kv.keys) out += key + " = " + kv.values.at(key) + "\n";
    return out;
}

inline std::uint64_t scenario_hash(const Scenario& sc) { return fnv1a64(save_scenario(sc)); }

} // namespace risvlc
