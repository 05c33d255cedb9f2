/*
 * Copyright 2026 The parbisim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Instances shared across the test suites.

#include "parbisim/lts.hpp"
#include "parbisim/partition.hpp"
#include "parbisim/rcpp.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace parbisim::testing {

/// Five states s1..s5 as 0..4 with edges s1->s4, s2->s5, s2->s3, s3->s2.
inline rcpp::RelationInput five_state_input() {
    const std::vector<std::int64_t> pi0{0, 0, 0, 1, 1};
    return {5, {{0, 3}, {1, 4}, {1, 2}, {2, 1}}, partition_from_assignment(pi0)};
}

inline Lts five_state_lts() { return rcpp::as_lts(five_state_input()); }

/// Three states over {a, b, c}, transitions listed out of (source, action) order.
inline Lts three_state_lts() {
    return Lts::from_labeled(3, {
                                    {1, "c", 1},
                                    {0, "a", 1},
                                    {2, "c", 0},
                                    {1, "a", 0},
                                    {0, "c", 2},
                                    {2, "c", 2},
                                    {0, "a", 2},
                                    {1, "b", 2},
                                });
}

struct RandomSpec {
    std::size_t max_states = 50;
    std::size_t max_transitions = 200;
    std::size_t max_actions = 4;
};

/// Random LTS from a logged seed; labels are "a", "b", ...
inline Lts random_lts(std::uint64_t seed, const RandomSpec &spec = {}) {
    std::mt19937_64 rng(seed);
    const auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t n = pick(1, spec.max_states);
    const std::size_t actions = pick(1, spec.max_actions);
    // Bias towards sparse systems, where bisimulation classes are non-trivial.
    const std::size_t m = std::min(spec.max_transitions, pick(0, std::min(spec.max_transitions, 4 * n)));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < actions; ++a) {
        labels.push_back(std::string(1, static_cast<char>('a' + a)));
    }
    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < m; ++i) {
        transitions.push_back({static_cast<StateId>(pick(0, n - 1)), static_cast<ActionId>(pick(0, actions - 1)),
                               static_cast<StateId>(pick(0, n - 1))});
    }
    return Lts(n, labels, transitions);
}

/// Random partition with up to `max_blocks` blocks.
inline Partition random_partition(std::uint64_t seed, std::size_t n, std::size_t max_blocks) {
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::uniform_int_distribution<std::int64_t> block(0, static_cast<std::int64_t>(max_blocks) - 1);
    std::vector<std::int64_t> assignment(n);
    for (auto &b : assignment) {
        b = block(rng);
    }
    return partition_from_assignment(assignment);
}

/// Sorted outgoing action sets, one per state.
inline std::vector<std::vector<ActionId>> outgoing_labels(const Lts &lts) {
    std::vector<std::vector<ActionId>> labels(lts.num_states());
    for (const Transition &t : lts.transitions()) {
        labels[t.source].push_back(t.action);
    }
    for (auto &l : labels) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return labels;
}

} // namespace parbisim::testing
