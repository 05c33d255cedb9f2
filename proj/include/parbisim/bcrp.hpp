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

#include "parbisim/lts.hpp"
#include "parbisim/partition.hpp"
#include "parbisim/pram.hpp"
#include "parbisim/refinement.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

/// Labeled bisimulation refinement on the PRAM engine.
namespace parbisim::bcrp {

enum class ScanKind { Inclusive, Exclusive };

/**
 * Prefix sum restarted at every position whose flag is set. The exclusive
 * variant yields the sum of the segment's elements strictly before i.
 * Throws InputError when the lengths differ.
 */
std::vector<std::int64_t> segmented_prefix_sum(std::span<const std::int64_t> values,
                                               const std::vector<bool> &segment_starts, ScanKind kind);

/// Stable sort of the transitions by (source, action).
Lts sort_transitions(const Lts &lts);

/// 1 where a transition starts a new action within its source's run, else 0.
std::vector<std::int64_t> compute_action_switch(std::span<const Transition> sorted);

/// Layout of the per-(state, outgoing action) mark slots.
struct MarkLayout {
    /// Rank of the transition's action among its source's distinct actions.
    std::vector<std::int64_t> order;
    /// Distinct outgoing actions per state.
    std::vector<std::int64_t> nr_marks;
    /// First mark slot of each state (exclusive prefix sum of nr_marks).
    std::vector<std::int64_t> off;
    std::size_t mark_length = 0;
};

MarkLayout compute_order_and_offsets(std::span<const std::int64_t> action_switch, std::span<const Transition> sorted,
                                     std::size_t n);

/**
 * Groups states by their set of outgoing action labels using one
 * mark-and-split round per action (ascending ActionId) on the engine.
 */
Partition partition_by_outgoing_labels(const Lts &lts, const pram::WritePolicy &policy,
                                       const RunOptions &options = {});
Partition partition_by_outgoing_labels(pram::Engine &engine, const Lts &lts, bool common_election = true);

/**
 * Coarsest strong bisimulation of `lts`. The main loop starts from
 * partition_by_outgoing_labels; RunStats::supersteps counts main-loop
 * iterations only, RunStats::preprocessing_rounds the label rounds.
 */
RunResult bcrp_run(const Lts &lts, const pram::WritePolicy &policy, const RunOptions &options = {});

} // namespace parbisim::bcrp
