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
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "risvlc/channel.hpp"
#include "risvlc/scenario.hpp"

namespace risvlc {

enum class Scheme { rsma, noma };

inline std::string scheme_name(Scheme s) { return s == Scheme::rsma ? "RSMA" : "NOMA"; }

/// Element-to-user assignment, one user per element (rows of the binary
/// matrix are one-hot by construction).
class AssociationMatrix {
public:
    AssociationMatrix() = default;
    AssociationMatrix(std::vector<int> owner, int users) : owner_(std::move(owner)), U_(users) {
        for (int o : owner_) {
            if (o < 0 || o >= U_) throw std::invalid_argument("association owner out of range");
        }
    }

    /// Builds from a dense binary matrix; rejects rows that do not sum to 1.
    static AssociationMatrix from_dense(const std::vector<std::vector<int>>& g) {
        std::vector<int> owner;
        int users = g.empty() ? 0 : static_cast<int>(g.front().size());
        for (const auto& row : g) {
            if (static_cast<int>(row.size()) != users)
                throw std::invalid_argument("ragged association matrix");
            int sum = 0, pick = -1;
            for (int u = 0; u < users; ++u) {
                if (row[static_cast<std::size_t>(u)] != 0 &&
                    row[static_cast<std::size_t>(u)] != 1)
                    throw std::invalid_argument("association entries must be 0/1");
                if (row[static_cast<std::size_t>(u)] == 1) pick = u;
                sum += row[static_cast<std::size_t>(u)];
            }
            if (sum != 1) throw std::invalid_argument("association row must sum to exactly 1");
            owner.push_back(pick);
        }
        return AssociationMatrix(std::move(owner), users);
    }

    int K() const { return static_cast<int>(owner_.size()); }
    int U() const { return U_; }
    int owner(int k) const { return owner_[static_cast<std::size_t>(k)]; }
    int g(int k, int u) const { return owner(k) == u ? 1 : 0; }
    const std::vector<int>& owners() const { return owner_; }

private:
    std::vector<int> owner_;
    int U_ = 0;
};

/// Sum_k h[k] * g[k] for a binary selection vector.
inline double composite_gain(const std::vector<double>& h, const std::vector<int>& g) {
    if (h.size() != g.size()) throw std::invalid_argument("composite_gain: length mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) acc += h[k] * g[k];
    return acc;
}

/// h_u^T g_u: user u's channel through its own assigned elements.
inline double user_composite_gain(const ChannelState& cs, const AssociationMatrix& G, int u) {
    double acc = 0.0;
    for (int k = 0; k < cs.K; ++k) {
        if (G.owner(k) == u) acc += cs.h(k, u);
    }
    return acc;
}

/// h_e^T g_u: Eve's channel through user u's assigned elements.
inline double eve_composite_gain(const ChannelState& cs, const AssociationMatrix& G, int u) {
    double acc = 0.0;
    for (int k = 0; k < cs.K; ++k) {
        if (G.owner(k) == u) acc += cs.h_e[static_cast<std::size_t>(k)];
    }
    return acc;
}

struct RsmaPowerAllocation {
    double P0 = 0.0;        // common stream, W
    std::vector<double> P;  // private streams, W

    double total() const { return P0 + std::accumulate(P.begin(), P.end(), 0.0); }
};

struct NomaPowerAllocation {
    double epsilon = 0.6;
    std::vector<double> c; // per-SIC-rank power fractions, sum 1
};

/// Geometric power-split law: c_u = eps(1-eps)^(u-1) for u < U and the
/// remainder (1-eps)^(U-1) for the last user; the fractions sum to 1.
inline std::vector<double> noma_coefficients(double epsilon, int U) {
    if (!(epsilon > 0.5 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in (0.5, 1]");
    if (U < 1) throw std::invalid_argument("U must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(U));
    for (int u = 0; u < U - 1; ++u) {
        c[static_cast<std::size_t>(u)] = epsilon * std::pow(1.0 - epsilon, u);
    }
    c[static_cast<std::size_t>(U - 1)] = std::pow(1.0 - epsilon, U - 1);
    return c;
}

namespace detail {

inline constexpr double optical_snr_factor = std::numbers::e / (2.0 * pi);

// B log2(1 + (e/2pi) * q * P_sig / (q * P_int + N_o B)) with q = (R_pd g)^2.
inline double vlc_rate(const SystemParameters& par, double gain, double p_signal,
                       double p_interference) {
    const double q = par.R_pd * gain * par.R_pd * gain;
    const double snr = optical_snr_factor * q * p_signal / (q * p_interference + par.N_o * par.B);
    return par.B * std::log2(1.0 + snr);
}

} // namespace detail

/// Rate of decoding the common stream at a receiver with composite gain
/// `gain`: all private powers interfere.
inline double rsma_common_rate(const Scenario& sc, double gain,
                               const RsmaPowerAllocation& alloc) {
    const double p_priv = std::accumulate(alloc.P.begin(), alloc.P.end(), 0.0);
    return detail::vlc_rate(sc.params, gain, alloc.P0, p_priv);
}

/// Rate of decoding user u's private stream after common-stream SIC: the
/// other private powers interfere.
inline double rsma_private_rate(const Scenario& sc, double gain, const RsmaPowerAllocation& alloc,
                                int u) {
    if (u < 0 || u >= static_cast<int>(alloc.P.size()))
        throw std::invalid_argument("user index out of range");
    double p_other = 0.0;
    for (std::size_t j = 0; j < alloc.P.size(); ++j) {
        if (static_cast<int>(j) != u) p_other += alloc.P[j];
    }
    return detail::vlc_rate(sc.params, gain, alloc.P[static_cast<std::size_t>(u)], p_other);
}

/// Eve's (common, private) decoding rates when wiretapping user u, using her
/// composite gain through user u's elements.
inline std::pair<double, double> rsma_eve_rates(const Scenario& sc, double gain_e,
                                                const RsmaPowerAllocation& alloc, int u) {
    return {rsma_common_rate(sc, gain_e, alloc), rsma_private_rate(sc, gain_e, alloc, u)};
}

/// Decoding rate at SIC rank `rank` (0 = strongest composite gain, decoded
/// first, interference-free; later ranks see all earlier powers).
inline double noma_user_rate(const Scenario& sc, double gain, const std::vector<double>& c,
                             int rank) {
    if (rank < 0 || rank >= static_cast<int>(c.size()))
        throw std::invalid_argument("rank out of range");
    double p_earlier = 0.0;
    for (int i = 0; i < rank; ++i) p_earlier += c[static_cast<std::size_t>(i)] * sc.params.P_S;
    return detail::vlc_rate(sc.params, gain, c[static_cast<std::size_t>(rank)] * sc.params.P_S,
                            p_earlier);
}

/// Eve's rate when wiretapping the user at SIC rank `rank`; identical form
/// with Eve's composite gain.
inline double noma_eve_rate(const Scenario& sc, double gain_e, const std::vector<double>& c,
                            int rank) {
    return noma_user_rate(sc, gain_e, c, rank);
}

/// Consumed power: transmitter chain + per-element actuation + receiver
/// chains. Uses the P_S budget, so the value is fixed for a given (K, U).
inline double total_power(const Scenario& sc) {
    const auto& c = sc.params.consumption;
    const double tx = sc.params.P_S + c.P_DAC + c.P_Filter + c.P_PA + c.P_Driver + c.P_TCircuit;
    const double ris = sc.params.K * c.P_Element;
    const double rx = sc.params.U * (c.P_ADC + c.P_TIA + c.P_Filter + c.P_RCircuit);
    return tx + ris + rx;
}

/// Bits per joule of worst-case confidential throughput.
inline double min_see(double min_sr, double p_total) {
    if (!(p_total > 0.0)) throw std::invalid_argument("total power must be positive");
    return min_sr / p_total;
}

/// Per-user rates, per-user Eve rates, worst-case secrecy rate and secrecy
/// energy efficiency for one channel/allocation snapshot.
struct RateReport {
    Scheme scheme = Scheme::rsma;
    std::vector<double> common_rates;  // RSMA only
    std::vector<double> private_rates; // RSMA only
    std::vector<double> user_rates;    // total per-user rate
    std::vector<double> eve_rates;     // total per-user Eve rate
    std::vector<double> secrecy_rates; // [user - eve]^+
    double min_secrecy_rate = 0.0;
    double see = 0.0;
};

inline RateReport rsma_rate_report(const Scenario& sc, const ChannelState& cs,
                                   const AssociationMatrix& G,
                                   const RsmaPowerAllocation& alloc) {
    const int U = sc.params.U;
    RateReport rep;
    rep.scheme = Scheme::rsma;
    rep.common_rates.resize(static_cast<std::size_t>(U));
    rep.private_rates.resize(static_cast<std::size_t>(U));
    rep.user_rates.resize(static_cast<std::size_t>(U));
    rep.eve_rates.resize(static_cast<std::size_t>(U));
    rep.secrecy_rates.resize(static_cast<std::size_t>(U));
    for (int u = 0; u < U; ++u) {
        const double g = user_composite_gain(cs, G, u);
        rep.common_rates[static_cast<std::size_t>(u)] = rsma_common_rate(sc, g, alloc);
        rep.private_rates[static_cast<std::size_t>(u)] = rsma_private_rate(sc, g, alloc, u);
    }
    if (sc.params.common_rate_joint_decoding) {
        // Optional variant: every user is limited to the weakest common rate.
        const double cmin =
            *std::min_element(rep.common_rates.begin(), rep.common_rates.end());
        std::fill(rep.common_rates.begin(), rep.common_rates.end(), cmin);
    }
    double min_sr = std::numeric_limits<double>::infinity();
    for (int u = 0; u < U; ++u) {
        const double ge = eve_composite_gain(cs, G, u);
        const auto [ec, ep] = rsma_eve_rates(sc, ge, alloc, u);
        const double user_rate = rep.common_rates[static_cast<std::size_t>(u)] +
                                 rep.private_rates[static_cast<std::size_t>(u)];
        rep.user_rates[static_cast<std::size_t>(u)] = user_rate;
        rep.eve_rates[static_cast<std::size_t>(u)] = ec + ep;
        const double sec = std::max(0.0, user_rate - (ec + ep));
        rep.secrecy_rates[static_cast<std::size_t>(u)] = sec;
        min_sr = std::min(min_sr, sec);
    }
    rep.min_secrecy_rate = min_sr;
    rep.see = min_see(min_sr, total_power(sc));
    return rep;
}

/// Users are re-ranked by composite gain (strongest first) so the SIC power
/// law matches the candidate association; rates are reported under original
/// user ids.
inline RateReport noma_rate_report(const Scenario& sc, const ChannelState& cs,
                                   const AssociationMatrix& G, const std::vector<double>& c) {
    const int U = sc.params.U;
    if (static_cast<int>(c.size()) != U)
        throw std::invalid_argument("coefficient count does not match U");
    RateReport rep;
    rep.scheme = Scheme::noma;
    rep.user_rates.resize(static_cast<std::size_t>(U));
    rep.eve_rates.resize(static_cast<std::size_t>(U));
    rep.secrecy_rates.resize(static_cast<std::size_t>(U));

    std::vector<double> gains(static_cast<std::size_t>(U));
    for (int u = 0; u < U; ++u) gains[static_cast<std::size_t>(u)] = user_composite_gain(cs, G, u);
    std::vector<int> order(static_cast<std::size_t>(U));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return gains[static_cast<std::size_t>(a)] > gains[static_cast<std::size_t>(b)];
    });

    double min_sr = std::numeric_limits<double>::infinity();
    for (int rank = 0; rank < U; ++rank) {
        const int u = order[static_cast<std::size_t>(rank)];
        const double ru = noma_user_rate(sc, gains[static_cast<std::size_t>(u)], c, rank);
        const double re = noma_eve_rate(sc, eve_composite_gain(cs, G, u), c, rank);
        rep.user_rates[static_cast<std::size_t>(u)] = ru;
        rep.eve_rates[static_cast<std::size_t>(u)] = re;
        const double sec = std::max(0.0, ru - re);
        rep.secrecy_rates[static_cast<std::size_t>(u)] = sec;
        min_sr = std::min(min_sr, sec);
    }
    rep.min_secrecy_rate = min_sr;
    rep.see = min_see(min_sr, total_power(sc));
    return rep;
}

/// Worst-user secrecy rate, Eq.-style clamped min.
inline double rsma_min_secrecy(const Scenario& sc, const ChannelState& cs,
                               const AssociationMatrix& G, const RsmaPowerAllocation& alloc) {
    return rsma_rate_report(sc, cs, G, alloc).min_secrecy_rate;
}

inline double noma_min_secrecy(const Scenario& sc, const ChannelState& cs,
                               const AssociationMatrix& G, const std::vector<double>& c) {
    return noma_rate_report(sc, cs, G, c).min_secrecy_rate;
}

inline nlohmann::json to_json(const RateReport& rep) {
    return nlohmann::json{{"scheme", scheme_name(rep.scheme)},
                          {"common_rates", rep.common_rates},
                          {"private_rates", rep.private_rates},
                          {"user_rates", rep.user_rates},
                          {"eve_rates", rep.eve_rates},
                          {"secrecy_rates", rep.secrecy_rates},
                          {"min_secrecy_rate", rep.min_secrecy_rate},
                          {"see", rep.see}};
}

} // namespace risvlc
