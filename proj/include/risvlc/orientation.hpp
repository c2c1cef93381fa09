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
#include <cstdint>

#include "risvlc/geometry.hpp"
#include "risvlc/rng.hpp"

namespace risvlc {

/// Handheld-receiver pose: polar angle from the vertical and azimuth around it.
struct DeviceOrientation {
    double alpha = 0.0; // polar, [0, pi/2]
    double beta = 0.0;  // azimuth, [-pi, pi]
};

/// Receiver surface normal for a given orientation.
inline Vec3 device_normal(const DeviceOrientation& o) {
    return {std::cos(o.beta) * std::sin(o.alpha), std::sin(o.beta) * std::sin(o.alpha),
            std::cos(o.alpha)};
}

enum class OrientationKind { laplace_truncated, fixed };

// Polar angle follows a Laplace distribution truncated to [0, pi/2]; azimuth
// is uniform on [-pi, pi]. The fixed kind pins both angles (used for Eve and
// for deterministic fixtures).
struct OrientationModel {
    OrientationKind kind = OrientationKind::laplace_truncated;
    double alpha_mean = deg2rad(41.0);
    double alpha_std = deg2rad(9.0);
    double fixed_alpha = 0.0;
    double fixed_beta = 0.0;
    std::uint64_t rng_seed = 1;
};

/// Draws one orientation. Truncation is by rejection, so the polar angle is
/// always inside [0, pi/2] exactly.
inline DeviceOrientation sample_orientation(const OrientationModel& model, Rng& rng) {
    if (model.kind == OrientationKind::fixed) {
        return {model.fixed_alpha, model.fixed_beta};
    }
    const double scale = model.alpha_std / std::sqrt(2.0); // Laplace variance = 2 b^2
    double alpha = rng.laplace(model.alpha_mean, scale);
    while (alpha < 0.0 || alpha > pi / 2.0) {
        alpha = rng.laplace(model.alpha_mean, scale);
    }
    const double beta = rng.uniform(-pi, pi);
    return {std::clamp(alpha, 0.0, pi / 2.0), beta};
}

} // namespace risvlc
