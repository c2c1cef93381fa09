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

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "risvlc/ga_config.hpp"
#include "risvlc/geometry.hpp"
#include "risvlc/orientation.hpp"
#include "risvlc/power_model.hpp"
#include "risvlc/rng.hpp"

namespace risvlc {

/// Wall plane carrying the reflector panel.
enum class Wall { x_min, x_max, y_min, y_max };

inline Vec3 wall_inward_normal(Wall w) {
    switch (w) {
        case Wall::x_min: return {1.0, 0.0, 0.0};
        case Wall::x_max: return {-1.0, 0.0, 0.0};
        case Wall::y_min: return {0.0, 1.0, 0.0};
        case Wall::y_max: return {0.0, -1.0, 0.0};
    }
    throw std::logic_error("unreachable");
}

inline std::string wall_name(Wall w) {
    switch (w) {
        case Wall::x_min: return "x0";
        case Wall::x_max: return "xmax";
        case Wall::y_min: return "y0";
        case Wall::y_max: return "ymax";
    }
    throw std::logic_error("unreachable");
}

inline Wall wall_from_name(const std::string& s) {
    if (s == "x0") return Wall::x_min;
    if (s == "xmax") return Wall::x_max;
    if (s == "y0") return Wall::y_min;
    if (s == "ymax") return Wall::y_max;
    throw std::invalid_argument("unknown wall id '" + s + "' (expect x0|xmax|y0|ymax)");
}

/// Mirror-array panel: rows x cols square elements mounted flush on a wall.
/// `origin` is the corner of the panel with the smallest in-wall coordinates;
/// it is re-derived from `center_height` whenever the layout is finalized.
struct RisPanelSpec {
    Wall wall = Wall::y_min;
    Vec3 origin{};
    int rows = 10;
    int cols = 10;
    double element_side = 0.1;   // meters
    double center_height = 2.0;  // meters, clamped so the panel fits the wall

    int element_count() const { return rows * cols; }
    double element_area() const { return element_side * element_side; }
};

struct RoomLayout {
    Vec3 room_dims{5.0, 5.0, 3.0};
    Vec3 ap_position{2.5, 2.5, 3.0};
    RisPanelSpec ris_panel{};
    std::vector<Vec3> user_positions{};
    Vec3 eve_position{4.5, 4.5, 0.85};
};

/// Element centers on the wall grid, row-major (k = row * cols + col).
inline std::vector<Vec3> element_positions(const RoomLayout& layout) {
    const RisPanelSpec& p = layout.ris_panel;
    // In-wall axes: columns advance along `ca`, rows along `ra`.
    Vec3 ca, ra{0.0, 0.0, 1.0};
    switch (p.wall) {
        case Wall::x_min:
        case Wall::x_max: ca = {0.0, 1.0, 0.0}; break;
        case Wall::y_min:
        case Wall::y_max: ca = {1.0, 0.0, 0.0}; break;
    }
    std::vector<Vec3> centers;
    centers.reserve(static_cast<std::size_t>(p.element_count()));
    for (int r = 0; r < p.rows; ++r) {
        for (int c = 0; c < p.cols; ++c) {
            centers.push_back(p.origin + ca * ((c + 0.5) * p.element_side) +
                              ra * ((r + 0.5) * p.element_side));
        }
    }
    return centers;
}

struct SystemParameters {
    double P_S = 5.0;              // W, AP electrical transmit power budget
    int K = 100;                   // reflector elements
    int U = 4;                     // served users
    double xi_fov = deg2rad(85.0); // PD field of view
    double rho_ris = 0.95;         // element reflectivity
    double phi_half = deg2rad(70.0);
    double G_f = 1.0;    // optical filter gain
    double f = 1.5;      // PD concentrator refractive index
    double A_pd = 1e-4;  // m^2, PD physical area
    double R_pd = 0.53;  // A/W, PD responsivity
    double B = 200e6;    // Hz
    double N_o = 1e-21;  // A^2/Hz
    double R_min = 30e3; // bits/s, per-user rate floor
    // Off by default: the common-stream rate is the per-user value; set to
    // limit every user to the weakest common rate instead.
    bool common_rate_joint_decoding = false;
    PowerConsumptionModel consumption{};
    GaConfig ga{};
};

struct Scenario {
    RoomLayout layout{};
    SystemParameters params{};
    OrientationModel user_orientation{};
    OrientationModel eve_orientation{.kind = OrientationKind::fixed,
                                     .fixed_alpha = 0.0,
                                     .fixed_beta = 0.0};
    std::uint64_t rng_seed = 1; // freezes device orientations per run

    int K() const { return params.K; }
    int U() const { return params.U; }
};

namespace detail {

inline bool inside_box(const Vec3& p, const Vec3& dims) {
    return p.x >= 0.0 && p.x <= dims.x && p.y >= 0.0 && p.y <= dims.y && p.z >= 0.0 &&
           p.z <= dims.z;
}

// Largest divisor of k not exceeding sqrt(k); gives the squarest rows x cols
// grid for a requested element count.
inline int squarest_rows(int k) {
    int best = 1;
    for (int r = 1; r * r <= k; ++r) {
        if (k % r == 0) best = r;
    }
    return best;
}

} // namespace detail

inline void validate_scenario(const Scenario& sc) {
    const auto& lay = sc.layout;
    const auto& par = sc.params;
    if (lay.room_dims.x <= 0 || lay.room_dims.y <= 0 || lay.room_dims.z <= 0)
        throw std::invalid_argument("room dimensions must be positive");
    if (!detail::inside_box(lay.ap_position, lay.room_dims))
        throw std::invalid_argument("AP position outside room");
    if (!detail::inside_box(lay.eve_position, lay.room_dims))
        throw std::invalid_argument("Eve position outside room");
    for (const Vec3& u : lay.user_positions) {
        if (!detail::inside_box(u, lay.room_dims))
            throw std::invalid_argument("user position outside room");
    }
    if (static_cast<int>(lay.user_positions.size()) != par.U)
        throw std::invalid_argument("user position count does not match U");
    if (lay.ris_panel.rows < 1 || lay.ris_panel.cols < 1 || lay.ris_panel.element_side <= 0)
        throw std::invalid_argument("invalid panel grid");
    if (lay.ris_panel.element_count() != par.K)
        throw std::invalid_argument("K does not match panel rows*cols");
    for (const Vec3& e : element_positions(lay)) {
        if (!detail::inside_box(e, lay.room_dims))
            throw std::invalid_argument("panel does not fit inside the room");
    }
    if (par.P_S <= 0) throw std::invalid_argument("P_S must be positive");
    if (par.xi_fov <= 0 || par.xi_fov > pi / 2.0)
        throw std::invalid_argument("xi_fov must lie in (0, 90] degrees");
    if (par.rho_ris <= 0 || par.rho_ris > 1.0)
        throw std::invalid_argument("rho_ris must lie in (0, 1]");
    if (par.phi_half <= 0 || par.phi_half >= pi / 2.0)
        throw std::invalid_argument("phi_half must lie in (0, 90) degrees");
    if (par.G_f <= 0 || par.f <= 0 || par.A_pd <= 0 || par.R_pd <= 0 || par.B <= 0 ||
        par.N_o <= 0)
        throw std::invalid_argument("system constants must be positive");
    if (par.R_min < 0) throw std::invalid_argument("R_min must be nonnegative");
    if (par.U < 1) throw std::invalid_argument("U must be >= 1");
    sc.params.ga.validate();
}

/// Re-centers the panel on its wall and re-seats the default user row after
/// K/U/geometry overrides. The panel sits centered horizontally with its
/// center at z = 2 m (clamped to fit); default users stand on a line 0.8 m
/// in front of the panel wall, spaced 1 m apart. Receivers well inside the
/// panel's field keep the wall in view for almost every sampled device
/// orientation, which the randomized-orientation experiments rely on.
inline void finalize_layout(Scenario& sc, bool replace_users) {
    RisPanelSpec& p = sc.layout.ris_panel;
    const Vec3 dims = sc.layout.room_dims;
    const double width = p.cols * p.element_side;
    const double height = p.rows * p.element_side;
    const double zc = std::clamp(p.center_height, height / 2.0,
                                 std::max(height / 2.0, dims.z - height / 2.0));
    const double z0 = zc - height / 2.0;
    switch (p.wall) {
        case Wall::x_min: p.origin = {0.0, (dims.y - width) / 2.0, z0}; break;
        case Wall::x_max: p.origin = {dims.x, (dims.y - width) / 2.0, z0}; break;
        case Wall::y_min: p.origin = {(dims.x - width) / 2.0, 0.0, z0}; break;
        case Wall::y_max: p.origin = {(dims.x - width) / 2.0, dims.y, z0}; break;
    }
    if (replace_users) {
        sc.layout.user_positions.clear();
        const double wall_gap = 0.8;
        const int U = sc.params.U;
        // Along-wall axis and the point wall_gap meters in front of the panel.
        Vec3 along{1.0, 0.0, 0.0};
        Vec3 base{dims.x / 2.0, wall_gap, 0.85};
        switch (p.wall) {
            case Wall::x_min: along = {0.0, 1.0, 0.0}; base = {wall_gap, dims.y / 2.0, 0.85}; break;
            case Wall::x_max: along = {0.0, 1.0, 0.0}; base = {dims.x - wall_gap, dims.y / 2.0, 0.85}; break;
            case Wall::y_min: base = {dims.x / 2.0, wall_gap, 0.85}; break;
            case Wall::y_max: base = {dims.x / 2.0, dims.y - wall_gap, 0.85}; break;
        }
        const double extent = dot(along, dims) - 1.0;
        const double spacing = U > 1 ? std::min(1.0, extent / (U - 1)) : 0.0;
        for (int u = 0; u < U; ++u) {
            const double offset = (u - (U - 1) / 2.0) * spacing;
            sc.layout.user_positions.push_back(base + along * offset);
        }
    }
}

namespace detail {

inline int as_count(double v, const std::string& key) {
    if (v < 1.0 || v != std::floor(v))
        throw std::invalid_argument(key + " must be a positive integer");
    return static_cast<int>(v);
}

// Sets one named parameter. Angle values are in degrees (file/CLI
// convention); storage is radians/SI. Returns which structural field
// changed so callers can re-derive the layout.
enum class OverrideEffect { plain, element_count, user_count, grid };

inline OverrideEffect apply_override(Scenario& sc, const std::string& key, double value) {
    auto& par = sc.params;
    if (key == "P_S") par.P_S = value;
    else if (key == "K") { par.K = as_count(value, key); return OverrideEffect::element_count; }
    else if (key == "U") { par.U = as_count(value, key); return OverrideEffect::user_count; }
    else if (key == "xi_fov") par.xi_fov = deg2rad(value);
    else if (key == "rho_ris") par.rho_ris = value;
    else if (key == "phi_half") par.phi_half = deg2rad(value);
    else if (key == "G_f") par.G_f = value;
    else if (key == "f") par.f = value;
    else if (key == "A_pd") par.A_pd = value;
    else if (key == "R_pd") par.R_pd = value;
    else if (key == "B") par.B = value;
    else if (key == "N_o") par.N_o = value;
    else if (key == "R_min") par.R_min = value;
    else if (key == "ris_rows") { sc.layout.ris_panel.rows = as_count(value, key); return OverrideEffect::grid; }
    else if (key == "ris_cols") { sc.layout.ris_panel.cols = as_count(value, key); return OverrideEffect::grid; }
    else if (key == "element_side") sc.layout.ris_panel.element_side = value;
    else if (key == "ris_center_height") sc.layout.ris_panel.center_height = value;
    else if (key == "alpha_mean") sc.user_orientation.alpha_mean = deg2rad(value);
    else if (key == "alpha_std") sc.user_orientation.alpha_std = deg2rad(value);
    else if (key == "rng_seed") sc.rng_seed = static_cast<std::uint64_t>(value);
    else if (key == "P_DAC") par.consumption.P_DAC = value;
    else if (key == "P_Filter") par.consumption.P_Filter = value;
    else if (key == "P_PA") par.consumption.P_PA = value;
    else if (key == "P_Driver") par.consumption.P_Driver = value;
    else if (key == "P_TCircuit") par.consumption.P_TCircuit = value;
    else if (key == "P_Element") par.consumption.P_Element = value;
    else if (key == "P_ADC") par.consumption.P_ADC = value;
    else if (key == "P_TIA") par.consumption.P_TIA = value;
    else if (key == "P_RCircuit") par.consumption.P_RCircuit = value;
    else if (key == "ga_population") par.ga.population = as_count(value, key);
    else if (key == "ga_generations") par.ga.generations = static_cast<int>(value);
    else if (key == "ga_crossover_prob") par.ga.crossover_prob = value;
    else if (key == "ga_mutation_prob") par.ga.mutation_prob = value;
    else if (key == "ga_tournament_size") par.ga.tournament_size = as_count(value, key);
    else if (key == "ga_elite_count") par.ga.elite_count = static_cast<int>(value);
    else if (key == "ga_pairs_per_generation") par.ga.pairs_per_generation = as_count(value, key);
    else throw std::invalid_argument("unknown override key '" + key + "'");
    return OverrideEffect::plain;
}

} // namespace detail

/// Table-defaults deployment with numeric overrides. Angle overrides are in
/// degrees (file/CLI convention); everything is stored in radians/SI.
inline Scenario build_default_scenario(const std::map<std::string, double>& overrides = {}) {
    Scenario sc;
    bool k_set = false, grid_set = false;
    for (const auto& [key, value] : overrides) {
        const auto effect = detail::apply_override(sc, key, value);
        if (effect == detail::OverrideEffect::element_count) k_set = true;
        if (effect == detail::OverrideEffect::grid) grid_set = true;
    }

    if (k_set && grid_set &&
        sc.layout.ris_panel.rows * sc.layout.ris_panel.cols != sc.params.K) {
        throw std::invalid_argument("K does not match panel rows*cols");
    }
    if (k_set && !grid_set) {
        sc.layout.ris_panel.rows = detail::squarest_rows(sc.params.K);
        sc.layout.ris_panel.cols = sc.params.K / sc.layout.ris_panel.rows;
    }
    if (!k_set) sc.params.K = sc.layout.ris_panel.element_count();

    sc.user_orientation.rng_seed = sc.rng_seed;
    finalize_layout(sc, /*replace_users=*/true);
    validate_scenario(sc);
    return sc;
}

/// Re-applies one parameter to an existing scenario (sweep use). K changes
/// re-factor the panel grid at the configured element size; U changes
/// re-seat the default user row.
inline void apply_sweep_value(Scenario& sc, const std::string& key, double value) {
    const auto effect = detail::apply_override(sc, key, value);
    if (effect == detail::OverrideEffect::element_count) {
        sc.layout.ris_panel.rows = detail::squarest_rows(sc.params.K);
        sc.layout.ris_panel.cols = sc.params.K / sc.layout.ris_panel.rows;
    }
    finalize_layout(sc, effect == detail::OverrideEffect::user_count);
    validate_scenario(sc);
}

/// Per-run frozen device orientations (users then Eve), deterministic in the
/// scenario seed.
struct FrozenOrientations {
    std::vector<DeviceOrientation> users;
    DeviceOrientation eve;
};

inline FrozenOrientations sample_frozen_orientations(const Scenario& sc) {
    FrozenOrientations out;
    Rng rng(splitmix64(sc.rng_seed ^ 0x6f7269656e74ULL));
    out.users.reserve(static_cast<std::size_t>(sc.params.U));
    for (int u = 0; u < sc.params.U; ++u) {
        out.users.push_back(sample_orientation(sc.user_orientation, rng));
    }
    out.eve = sample_orientation(sc.eve_orientation, rng);
    return out;
}

} // namespace risvlc
