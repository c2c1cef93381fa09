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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "risvlc/rates.hpp"
#include "risvlc/rng.hpp"
#include "risvlc/scenario.hpp"

using namespace risvlc;
using Catch::Approx;

namespace {

// Independent single-link rate: the whole expression written out once.
double reference_rate(const Scenario& sc, double gain, double p_sig, double p_int) {
    const double q = (sc.params.R_pd * gain) * (sc.params.R_pd * gain);
    const double e_over_2pi = std::exp(1.0) / (2.0 * risvlc::pi);
    return sc.params.B *
           std::log2(1.0 + e_over_2pi * q * p_sig / (q * p_int + sc.params.N_o * sc.params.B));
}

ChannelState make_state(int K, int U, const std::vector<double>& H,
                        const std::vector<double>& h_e) {
    ChannelState cs;
    cs.resize(K, U);
    cs.H = H;
    cs.h_e = h_e;
    return cs;
}

} // namespace

TEST_CASE("composite gain") {
    CHECK(composite_gain({1.0, 2.0, 3.0}, {0, 0, 0}) == 0.0);
    CHECK(composite_gain({1.0, 2.0, 3.0}, {0, 1, 0}) == 2.0);
    const std::vector<double> h{0.5, 1.25, -0.75, 2.0, 0.125, 3.5};
    const std::vector<int> g{1, 0, 1, 1, 0, 1};
    CHECK(composite_gain(h, g) == Approx(0.5 - 0.75 + 2.0 + 3.5));
    CHECK_THROWS_AS(composite_gain({1.0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("association matrix invariants") {
    const AssociationMatrix G({0, 1, 1, 0}, 2);
    CHECK(G.K() == 4);
    CHECK(G.g(0, 0) == 1);
    CHECK(G.g(0, 1) == 0);
    CHECK(G.g(2, 1) == 1);
    CHECK(AssociationMatrix::from_dense({{1, 0}, {0, 1}}).owner(1) == 1);
    CHECK_THROWS_AS(AssociationMatrix::from_dense({{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(AssociationMatrix::from_dense({{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(AssociationMatrix({0, 2}, 2), std::invalid_argument);
}

TEST_CASE("rsma common-stream rate") {
    const Scenario sc = build_default_scenario({{"U", 2.0}});
    SECTION("no common power, no rate") {
        CHECK(rsma_common_rate(sc, 1e-6, {0.0, {1.0, 1.0}}) == 0.0);
    }
    SECTION("no channel, no rate") {
        CHECK(rsma_common_rate(sc, 0.0, {3.0, {1.0, 1.0}}) == 0.0);
    }
    SECTION("fixture against the written-out expression") {
        const RsmaPowerAllocation alloc{3.0, {1.0, 1.0}};
        const double expected = reference_rate(sc, 1e-6, 3.0, 2.0);
        REQUIRE(expected > 0.0);
        CHECK(rsma_common_rate(sc, 1e-6, alloc) == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("rsma private-stream rate") {
    const Scenario sc = build_default_scenario({{"U", 2.0}});
    SECTION("zero private power") {
        CHECK(rsma_private_rate(sc, 1e-6, {1.0, {0.0, 4.0}}, 0) == 0.0);
    }
    SECTION("single user sees no private interference") {
        const Scenario one = build_default_scenario({{"U", 1.0}});
        const RsmaPowerAllocation alloc{1.0, {2.5}};
        CHECK(rsma_private_rate(one, 2e-6, alloc, 0) ==
              Approx(reference_rate(one, 2e-6, 2.5, 0.0)).epsilon(1e-12));
    }
    SECTION("two-user fixture") {
        const RsmaPowerAllocation alloc{2.0, {1.2, 1.8}};
        CHECK(rsma_private_rate(sc, 5e-7, alloc, 0) ==
              Approx(reference_rate(sc, 5e-7, 1.2, 1.8)).epsilon(1e-12));
        CHECK(rsma_private_rate(sc, 5e-7, alloc, 1) ==
              Approx(reference_rate(sc, 5e-7, 1.8, 1.2)).epsilon(1e-12));
    }
    SECTION("bad user index") {
        CHECK_THROWS_AS(rsma_private_rate(sc, 1e-6, {1.0, {1.0, 1.0}}, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("rsma eavesdropper rates") {
    const Scenario sc = build_default_scenario({{"U", 2.0}});
    const RsmaPowerAllocation alloc{2.0, {1.5, 1.5}};
    SECTION("no channel to Eve") {
        const auto [c, p] = rsma_eve_rates(sc, 0.0, alloc, 0);
        CHECK(c == 0.0);
        CHECK(p == 0.0);
    }
    SECTION("Eve with the user's gain sees the user's rates") {
        const double gain = 7e-7;
        const auto [c, p] = rsma_eve_rates(sc, gain, alloc, 1);
        CHECK(c == rsma_common_rate(sc, gain, alloc));
        CHECK(p == rsma_private_rate(sc, gain, alloc, 1));
    }
    SECTION("fixture") {
        const auto [c, p] = rsma_eve_rates(sc, 3e-7, alloc, 0);
        CHECK(c == Approx(reference_rate(sc, 3e-7, 2.0, 3.0)).epsilon(1e-12));
        CHECK(p == Approx(reference_rate(sc, 3e-7, 1.5, 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("rsma minimum secrecy rate") {
    const Scenario sc = build_default_scenario({{"K", 4.0}, {"U", 2.0}});
    const AssociationMatrix G({0, 0, 1, 1}, 2);
    const RsmaPowerAllocation alloc{2.0, {1.5, 1.5}};

    SECTION("Eve matching every user's composite gain zeroes the metric") {
        // h_e picked so that h_e^T g_u equals h_u^T g_u for both users
        const ChannelState cs = make_state(4, 2,
                                           {1e-6, 0.0,   //
                                            2e-6, 0.0,   //
                                            0.0, 3e-6,   //
                                            0.0, 1e-6},  //
                                           {1.5e-6, 1.5e-6, 2e-6, 2e-6});
        CHECK(user_composite_gain(cs, G, 0) == eve_composite_gain(cs, G, 0));
        CHECK(user_composite_gain(cs, G, 1) == eve_composite_gain(cs, G, 1));
        CHECK(rsma_min_secrecy(sc, cs, G, alloc) == 0.0);
    }
    SECTION("deaf Eve leaves the worst user total") {
        const ChannelState cs = make_state(4, 2,
                                           {1e-6, 0.0, 2e-6, 0.0, 0.0, 3e-6, 0.0, 1e-6},
                                           {0.0, 0.0, 0.0, 0.0});
        const double g0 = user_composite_gain(cs, G, 0);
        const double g1 = user_composite_gain(cs, G, 1);
        const double r0 = rsma_common_rate(sc, g0, alloc) + rsma_private_rate(sc, g0, alloc, 0);
        const double r1 = rsma_common_rate(sc, g1, alloc) + rsma_private_rate(sc, g1, alloc, 1);
        CHECK(rsma_min_secrecy(sc, cs, G, alloc) == Approx(std::min(r0, r1)));
    }
    SECTION("fixture equals the composition of the four rate operations") {
        const ChannelState cs = make_state(4, 2,
                                           {1e-6, 2e-7, 2e-6, 1e-7, 4e-7, 3e-6, 2e-7, 1e-6},
                                           {3e-7, 1e-7, 4e-7, 2e-7});
        double min_sr = std::numeric_limits<double>::infinity();
        for (int u = 0; u < 2; ++u) {
            const double gu = user_composite_gain(cs, G, u);
            const double ge = eve_composite_gain(cs, G, u);
            const double user_total =
                rsma_common_rate(sc, gu, alloc) + rsma_private_rate(sc, gu, alloc, u);
            const auto [ec, ep] = rsma_eve_rates(sc, ge, alloc, u);
            min_sr = std::min(min_sr, std::max(0.0, user_total - ec - ep));
        }
        CHECK(rsma_min_secrecy(sc, cs, G, alloc) == Approx(min_sr).epsilon(1e-14));
    }
}

TEST_CASE("noma coefficients") {
    CHECK(noma_coefficients(0.6, 1) == std::vector<double>{1.0});
    const auto forced = noma_coefficients(1.0, 3);
    CHECK(forced[0] == 1.0);
    CHECK(forced[1] == 0.0);
    CHECK(forced[2] == 0.0);
    const auto c = noma_coefficients(0.6, 4);
    CHECK(c[0] == Approx(0.6).epsilon(1e-12));
    CHECK(c[1] == Approx(0.24).epsilon(1e-12));
    CHECK(c[2] == Approx(0.096).epsilon(1e-12));
    CHECK(c[3] == Approx(0.064).epsilon(1e-12));
    CHECK_THROWS_AS(noma_coefficients(0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(noma_coefficients(1.1, 4), std::invalid_argument);
}

TEST_CASE("noma coefficients always sum to one") {
    Rng rng(31);
    for (int i = 0; i < 10000; ++i) {
        const double eps = 1.0 - 0.5 * rng.uniform();
        const int U = 1 + static_cast<int>(rng.uniform_int(8));
        const auto c = noma_coefficients(eps, U);
        double sum = 0.0;
        for (double v : c) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("noma decoding rates") {
    const Scenario sc = build_default_scenario({{"U", 2.0}});
    const std::vector<double> c{0.7, 0.3};
    SECTION("zero coefficient, zero rate") {
        CHECK(noma_user_rate(sc, 1e-6, {1.0, 0.0}, 1) == 0.0);
    }
    SECTION("strongest user with no channel") {
        CHECK(noma_user_rate(sc, 0.0, c, 0) == 0.0);
    }
    SECTION("both branches against the written-out expression") {
        CHECK(noma_user_rate(sc, 1e-6, c, 0) ==
              Approx(reference_rate(sc, 1e-6, 0.7 * sc.params.P_S, 0.0)).epsilon(1e-12));
        CHECK(noma_user_rate(sc, 4e-7, c, 1) ==
              Approx(reference_rate(sc, 4e-7, 0.3 * sc.params.P_S, 0.7 * sc.params.P_S))
                  .epsilon(1e-12));
    }
    SECTION("eavesdropper rate shares the formula") {
        CHECK(noma_eve_rate(sc, 0.0, c, 1) == 0.0);
        CHECK(noma_eve_rate(sc, 4e-7, c, 1) == noma_user_rate(sc, 4e-7, c, 1));
    }
    SECTION("bad rank") {
        CHECK_THROWS_AS(noma_user_rate(sc, 1e-6, c, 2), std::invalid_argument);
    }
}

TEST_CASE("noma minimum secrecy rate") {
    const Scenario sc = build_default_scenario({{"K", 4.0}, {"U", 2.0}});
    const AssociationMatrix G({0, 0, 1, 1}, 2);
    const auto c = noma_coefficients(0.7, 2);

    SECTION("Eve matching every composite gain zeroes the metric") {
        const ChannelState cs = make_state(4, 2,
                                           {1e-6, 0.0, 2e-6, 0.0, 0.0, 3e-6, 0.0, 1e-6},
                                           {1.5e-6, 1.5e-6, 2e-6, 2e-6});
        CHECK(noma_min_secrecy(sc, cs, G, c) == 0.0);
    }
    SECTION("deaf Eve leaves the worst decoding rate") {
        const ChannelState cs = make_state(4, 2,
                                           {1e-6, 0.0, 2e-6, 0.0, 0.0, 3e-6, 0.0, 1e-6},
                                           {0.0, 0.0, 0.0, 0.0});
        // composite gains: user0 = 3e-6, user1 = 4e-6 -> user1 decodes first
        const double r_first = noma_user_rate(sc, 4e-6, c, 0);
        const double r_second = noma_user_rate(sc, 3e-6, c, 1);
        CHECK(noma_min_secrecy(sc, cs, G, c) == Approx(std::min(r_first, r_second)));
    }
    SECTION("fixture equals composition with re-ranked users") {
        const ChannelState cs = make_state(4, 2,
                                           {1e-6, 2e-7, 2e-6, 1e-7, 4e-7, 3e-6, 2e-7, 1e-6},
                                           {3e-7, 1e-7, 4e-7, 2e-7});
        const double g0 = user_composite_gain(cs, G, 0); // 3e-6
        const double g1 = user_composite_gain(cs, G, 1); // 4e-6
        REQUIRE(g1 > g0);
        const double e0 = eve_composite_gain(cs, G, 0);
        const double e1 = eve_composite_gain(cs, G, 1);
        const double s1 = std::max(0.0, noma_user_rate(sc, g1, c, 0) - noma_eve_rate(sc, e1, c, 0));
        const double s0 = std::max(0.0, noma_user_rate(sc, g0, c, 1) - noma_eve_rate(sc, e0, c, 1));
        CHECK(noma_min_secrecy(sc, cs, G, c) == Approx(std::min(s0, s1)).epsilon(1e-14));
    }
}

TEST_CASE("total consumed power") {
    SECTION("bare transmit power when every stage is free") {
        Scenario sc = build_default_scenario();
        sc.params.consumption = PowerConsumptionModel{0, 0, 0, 0, 0, 0, 0, 0, 0};
        CHECK(total_power(sc) == Approx(5.0));
    }
    SECTION("no elements, no receivers: transmitter-only sum") {
        Scenario sc = build_default_scenario();
        sc.params.K = 0;
        sc.params.U = 0;
        CHECK(total_power(sc) ==
              Approx(5.0 + 0.175 + 0.0025 + 0.28 + 2.758 + 3.25).epsilon(1e-12));
    }
    SECTION("table defaults at K=100, U=4") {
        const Scenario sc = build_default_scenario();
        // 11.4655 (transmitter) + 10.0 (elements) + 4 x 2.5994 (receivers)
        const double expected = 11.4655 + 10.0 + 4.0 * 2.5994;
        CHECK(expected == Approx(31.8631).epsilon(1e-12));
        CHECK(total_power(sc) == Approx(31.8631).epsilon(1e-4));
    }
}

TEST_CASE("minimum secrecy energy efficiency") {
    CHECK(min_see(0.0, 31.8631) == 0.0);
    CHECK(min_see(31.8631, 31.8631) == Approx(1.0));
    CHECK(min_see(1.23e6, 19.6643) == Approx(1.23e6 / 19.6643).epsilon(1e-14));
    CHECK_THROWS_AS(min_see(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(min_see(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("see is linear in the secrecy rate at fixed power") {
    Rng rng(37);
    for (int i = 0; i < 1000; ++i) {
        const double sr = rng.uniform(0.0, 1e7);
        const double p = rng.uniform(1.0, 100.0);
        const double k = rng.uniform(0.0, 10.0);
        CHECK(min_see(k * sr, p) == Approx(k * min_see(sr, p)).margin(1e-9));
    }
}

TEST_CASE("clamp/min identity holds for both secrecy metrics") {
    const Scenario sc = build_default_scenario({{"K", 3.0}, {"U", 3.0}});
    Rng rng(41);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> H(9), he(3);
        for (double& v : H) v = rng.uniform(0.0, 5e-6);
        for (double& v : he) v = rng.uniform(0.0, 5e-6);
        const ChannelState cs = make_state(3, 3, H, he);
        std::vector<int> owner(3);
        for (int& o : owner) o = static_cast<int>(rng.uniform_int(3));
        const AssociationMatrix G(owner, 3);

        // RSMA: min of clamped per-user secrecy == clamp of min of raw diffs
        RsmaPowerAllocation alloc{rng.uniform(0.0, 2.0),
                                  {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                                   rng.uniform(0.0, 1.0)}};
        const RateReport rep = rsma_rate_report(sc, cs, G, alloc);
        double raw_min = std::numeric_limits<double>::infinity();
        for (int u = 0; u < 3; ++u)
            raw_min = std::min(raw_min, rep.user_rates[u] - rep.eve_rates[u]);
        CHECK(rep.min_secrecy_rate == Approx(std::max(0.0, raw_min)).margin(1e-9));

        // NOMA
        const auto c = noma_coefficients(1.0 - 0.5 * rng.uniform(), 3);
        const RateReport nrep = noma_rate_report(sc, cs, G, c);
        raw_min = std::numeric_limits<double>::infinity();
        for (int u = 0; u < 3; ++u)
            raw_min = std::min(raw_min, nrep.user_rates[u] - nrep.eve_rates[u]);
        CHECK(nrep.min_secrecy_rate == Approx(std::max(0.0, raw_min)).margin(1e-9));
    }
}

TEST_CASE("rate monotonicity in allocated power") {
    const Scenario sc = build_default_scenario({{"U", 2.0}});
    Rng rng(43);
    for (int i = 0; i < 1000; ++i) {
        const double gain = rng.uniform(1e-8, 5e-6);
        const double p_lo = rng.uniform(0.0, 2.0);
        const double p_hi = p_lo + rng.uniform(0.01, 2.0);
        const std::vector<double> priv{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        CHECK(rsma_common_rate(sc, gain, {p_hi, priv}) >
              rsma_common_rate(sc, gain, {p_lo, priv}));
        const double c_lo = rng.uniform(0.01, 0.5);
        const double c_hi = c_lo + rng.uniform(0.01, 0.5);
        CHECK(noma_user_rate(sc, gain, {c_hi, 1.0 - c_hi}, 0) >
              noma_user_rate(sc, gain, {c_lo, 1.0 - c_lo}, 0));
    }
}

TEST_CASE("all rates respect the total-power upper bound") {
    const Scenario sc = build_default_scenario({{"K", 3.0}, {"U", 3.0}});
    Rng rng(47);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> H(9), he(3);
        for (double& v : H) v = rng.uniform(0.0, 5e-6);
        for (double& v : he) v = rng.uniform(0.0, 5e-6);
        const ChannelState cs = make_state(3, 3, H, he);
        std::vector<int> owner(3);
        for (int& o : owner) o = static_cast<int>(rng.uniform_int(3));
        const AssociationMatrix G(owner, 3);
        RsmaPowerAllocation alloc{rng.uniform(0.0, 2.0),
                                  {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                                   rng.uniform(0.0, 1.0)}};
        const RateReport rep = rsma_rate_report(sc, cs, G, alloc);
        const auto c = noma_coefficients(1.0 - 0.5 * rng.uniform(), 3);
        const RateReport nrep = noma_rate_report(sc, cs, G, c);
        for (int u = 0; u < 3; ++u) {
            const double bound =
                reference_rate(sc, user_composite_gain(cs, G, u), sc.params.P_S, 0.0);
            CHECK(rep.common_rates[u] <= bound + 1e-9);
            CHECK(rep.private_rates[u] <= bound + 1e-9);
            CHECK(nrep.user_rates[u] <= bound + 1e-9);
        }
    }
}

TEST_CASE("rate report serializes with the documented field names") {
    const Scenario sc = build_default_scenario({{"K", 4.0}, {"U", 2.0}});
    const AssociationMatrix G({0, 0, 1, 1}, 2);
    const ChannelState cs = make_state(4, 2,
                                       {1e-6, 2e-7, 2e-6, 1e-7, 4e-7, 3e-6, 2e-7, 1e-6},
                                       {3e-7, 1e-7, 4e-7, 2e-7});
    const RateReport rep = rsma_rate_report(sc, cs, G, {2.0, {1.5, 1.5}});
    const nlohmann::json j = to_json(rep);
    CHECK(j.at("scheme") == "RSMA");
    CHECK(j.contains("min_secrecy_rate"));
    CHECK(j.contains("see"));
    CHECK(j.at("user_rates").size() == 2);
    CHECK(j.at("eve_rates").size() == 2);
    CHECK(j.at("min_secrecy_rate").get<double>() == rep.min_secrecy_rate);
    CHECK(j.at("see").get<double>() ==
          Approx(rep.min_secrecy_rate / total_power(sc)).epsilon(1e-12));
}

TEST_CASE("joint-decoding variant lowers every common rate to the weakest") {
    Scenario sc = build_default_scenario({{"K", 4.0}, {"U", 2.0}});
    const AssociationMatrix G({0, 0, 1, 1}, 2);
    const ChannelState cs = make_state(4, 2,
                                       {1e-6, 2e-7, 2e-6, 1e-7, 4e-7, 3e-6, 2e-7, 1e-6},
                                       {3e-7, 1e-7, 4e-7, 2e-7});
    const RsmaPowerAllocation alloc{2.0, {1.5, 1.5}};
    const RateReport plain = rsma_rate_report(sc, cs, G, alloc);
    sc.params.common_rate_joint_decoding = true;
    const RateReport joint = rsma_rate_report(sc, cs, G, alloc);
    const double weakest = std::min(plain.common_rates[0], plain.common_rates[1]);
    CHECK(joint.common_rates[0] == Approx(weakest));
    CHECK(joint.common_rates[1] == Approx(weakest));
    CHECK(joint.min_secrecy_rate <= plain.min_secrecy_rate + 1e-9);
}
