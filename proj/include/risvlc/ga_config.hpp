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

#include <cstdint>
#include <stdexcept>

namespace risvlc {

// Search settings. mutation_prob < 0 means "use 1/genome_length", resolved
// when the run starts. One generation processes `pairs_per_generation`
// parent pairs (two offspring each); 1 reproduces the steady-state loop.
struct GaConfig {
    int population = 150;
    int generations = 100;
    double crossover_prob = 0.9;
    double mutation_prob = -1.0;
    int tournament_size = 3;
    int elite_count = 2;
    int pairs_per_generation = 1;
    std::uint64_t rng_seed = 1;

    void validate() const {
        if (population < 2) throw std::invalid_argument("ga: population must be >= 2");
        if (generations < 0) throw std::invalid_argument("ga: generations must be >= 0");
        if (crossover_prob < 0.0 || crossover_prob > 1.0)
            throw std::invalid_argument("ga: crossover_prob must lie in [0,1]");
        if (mutation_prob > 1.0)
            throw std::invalid_argument("ga: mutation_prob must lie in [0,1]");
        if (tournament_size < 1) throw std::invalid_argument("ga: tournament_size must be >= 1");
        if (elite_count < 0 || elite_count > population - 2)
            throw std::invalid_argument("ga: elite_count must leave room for replacement");
        if (pairs_per_generation < 1)
            throw std::invalid_argument("ga: pairs_per_generation must be >= 1");
    }
};

} // namespace risvlc
