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
#include <stdexcept>
#include <vector>

#include "risvlc/geometry.hpp"
#include "risvlc/orientation.hpp"
#include "risvlc/scenario.hpp"

namespace risvlc {

/// One mirror element with its optimized roll/yaw angles.
struct RisElementPose {
    int index = 0;
    Vec3 position{};
    double omega = 0.0; // roll, [-pi/2, pi/2]
    double gamma = 0.0; // yaw,  [-pi/2, pi/2]
};

/// Reflected-path gains: H(k,u) for legitimate users, h_e[k] for Eve.
struct ChannelState {
    int K = 0;
    int U = 0;
    std::vector<double> H;   // row-major K x U
    std::vector<double> h_e; // K

    void resize(int k, int u) {
        K = k;
        U = u;
        H.assign(static_cast<std::size_t>(k) * u, 0.0);
        h_e.assign(static_cast<std::size_t>(k), 0.0);
    }
    double& h(int k, int u) { return H[static_cast<std::size_t>(k) * U + u]; }
    double h(int k, int u) const { return H[static_cast<std::size_t>(k) * U + u]; }
};

/// Lambertian emission order m = -log2(cos(phi_half)).
inline double lambertian_order(double phi_half) {
    if (!(phi_half > 0.0 && phi_half < pi / 2.0))
        throw std::invalid_argument("phi_half must lie in (0, pi/2)");
    return -std::log2(std::cos(phi_half));
}

/// Hemispherical concentrator gain f^2 / sin^2(xi_fov), constant in the FoV.
inline double concentrator_gain(double f, double xi_fov) {
    if (!(xi_fov > 0.0 && xi_fov <= pi / 2.0))
        throw std::invalid_argument("xi_fov must lie in (0, pi/2]");
    const double s = std::sin(xi_fov);
    return f * f / (s * s);
}

/// Cosine of the incidence angle at the receiver: device normal dotted with
/// the receiver->element direction. May be negative; callers gate.
inline double incidence_cosine(const Vec3& rx_pos, const DeviceOrientation& rx_orientation,
                               const Vec3& element_pos) {
    const Vec3 diff = element_pos - rx_pos;
    const double d = norm(diff);
    if (d == 0.0) throw std::invalid_argument("receiver coincides with element");
    return dot(device_normal(rx_orientation), diff) / d;
}

/// Mirror surface normal for roll omega and yaw gamma (rest pose faces +y).
inline Vec3 element_normal(double omega, double gamma) {
    return {std::sin(gamma) * std::cos(omega), std::cos(gamma) * std::cos(omega),
            std::sin(omega)};
}

/// Cosine of the irradiance angle at the element: mirror normal dotted with
/// the element->receiver direction. May be negative; callers gate.
inline double irradiance_cosine(const Vec3& element_pos, double omega, double gamma,
                                const Vec3& rx_pos) {
    const Vec3 diff = rx_pos - element_pos;
    const double d = norm(diff);
    if (d == 0.0) throw std::invalid_argument("receiver coincides with element");
    return dot(element_normal(omega, gamma), diff) / d;
}

namespace detail {

// AP-side factors of the reflected-path gain. They depend only on the element
// position, never on (omega, gamma): the AP irradiance angle is measured from
// the AP's downward normal, the element-side incidence angle from the wall's
// inward normal.
struct ApSideFactors {
    double cos_phi_k = 0.0;
    double cos_xi_k = 0.0;
    double dist_sq = 0.0;
};

inline ApSideFactors ap_side_factors(const Scenario& sc, const Vec3& element_pos) {
    const Vec3 ap = sc.layout.ap_position;
    const Vec3 diff = element_pos - ap;
    const double d = norm(diff);
    if (d == 0.0) throw std::invalid_argument("element coincides with AP");
    ApSideFactors out;
    out.dist_sq = d * d;
    out.cos_phi_k = -diff.z / d; // AP normal (0,0,-1) to AP->element ray
    out.cos_xi_k = dot(wall_inward_normal(sc.layout.ris_panel.wall), ap - element_pos) / d;
    return out;
}

// rho * (m+1) * A_pd * A_k * G_c * G_f * cos^m(Phi_k) * cos(xi_k) / (2 pi^2 d_k^2),
// i.e. everything in the gain that is shared by all receivers of element k.
inline double element_prefactor(const Scenario& sc, const Vec3& element_pos) {
    const auto ap = ap_side_factors(sc, element_pos);
    if (ap.cos_phi_k <= 0.0 || ap.cos_xi_k <= 0.0) return 0.0;
    const auto& par = sc.params;
    const double m = lambertian_order(par.phi_half);
    const double gc = concentrator_gain(par.f, par.xi_fov);
    const double cos_m = std::exp(m * std::log(ap.cos_phi_k));
    return par.rho_ris * (m + 1.0) * par.A_pd * sc.layout.ris_panel.element_area() * gc *
           par.G_f * cos_m * ap.cos_xi_k / (2.0 * pi * pi * ap.dist_sq);
}

// Receiver-side part; prefactor already carries the AP side.
inline double receiver_side_gain(const Scenario& sc, double prefactor, const Vec3& element_pos,
                                 double omega, double gamma, const Vec3& rx_pos,
                                 const DeviceOrientation& rx_orientation) {
    const Vec3 diff = rx_pos - element_pos;
    const double dist_sq = dot(diff, diff);
    if (dist_sq == 0.0) throw std::invalid_argument("receiver coincides with element");
    if (prefactor == 0.0) return 0.0;
    const double d = std::sqrt(dist_sq);
    const double cos_xi = dot(device_normal(rx_orientation), element_pos - rx_pos) / d;
    if (cos_xi < std::cos(sc.params.xi_fov) || cos_xi <= 0.0) return 0.0;
    const double cos_phi = dot(element_normal(omega, gamma), diff) / d;
    if (cos_phi <= 0.0) return 0.0;
    return prefactor / dist_sq * cos_phi * cos_xi;
}

} // namespace detail

/// Reflected-path optical gain AP -> element -> receiver. Exactly 0 outside
/// the receiver FoV or when the geometry faces away on any leg.
inline double element_gain(const Scenario& sc, const RisElementPose& pose, const Vec3& rx_pos,
                           const DeviceOrientation& rx_orientation) {
    const double pref = detail::element_prefactor(sc, pose.position);
    return detail::receiver_side_gain(sc, pref, pose.position, pose.omega, pose.gamma, rx_pos,
                                      rx_orientation);
}

/// Fills `state` with gains for every (element, user) pair plus Eve's vector.
inline void assemble_channels_into(const Scenario& sc, const std::vector<RisElementPose>& poses,
                                   const std::vector<DeviceOrientation>& user_orientations,
                                   const DeviceOrientation& eve_orientation,
                                   ChannelState& state) {
    const int K = sc.params.K;
    const int U = sc.params.U;
    if (static_cast<int>(poses.size()) != K)
        throw std::invalid_argument("pose count does not match K");
    if (static_cast<int>(user_orientations.size()) != U)
        throw std::invalid_argument("orientation count does not match U");
    if (state.K != K || state.U != U) state.resize(K, U);
    for (int k = 0; k < K; ++k) {
        const auto& pose = poses[static_cast<std::size_t>(k)];
        const double pref = detail::element_prefactor(sc, pose.position);
        for (int u = 0; u < U; ++u) {
            state.h(k, u) = detail::receiver_side_gain(
                sc, pref, pose.position, pose.omega, pose.gamma,
                sc.layout.user_positions[static_cast<std::size_t>(u)],
                user_orientations[static_cast<std::size_t>(u)]);
        }
        state.h_e[static_cast<std::size_t>(k)] =
            detail::receiver_side_gain(sc, pref, pose.position, pose.omega, pose.gamma,
                                       sc.layout.eve_position, eve_orientation);
    }
}

inline ChannelState assemble_channels(const Scenario& sc,
                                      const std::vector<RisElementPose>& poses,
                                      const std::vector<DeviceOrientation>& user_orientations,
                                      const DeviceOrientation& eve_orientation) {
    ChannelState state;
    assemble_channels_into(sc, poses, user_orientations, eve_orientation, state);
    return state;
}

} // namespace risvlc
