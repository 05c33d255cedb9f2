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

#include <optional>
#include <span>
#include <utility>
#include <vector>

/// Single-relation coarsest partition refinement on the PRAM engine.
namespace parbisim::rcpp {

using Edge = std::pair<StateId, StateId>;

/// A state set, one relation over it and an initial partition.
struct RelationInput {
    std::size_t n = 0;
    std::vector<Edge> edges;
    Partition pi0;

    /// Throws InputError for out-of-range edges or a pi0 of the wrong size.
    void validate() const;
};

/// Forgets the labels of an LTS with at most one action (InputError otherwise).
RelationInput relation_of(const Lts &lts, const Partition &pi0);
/// The relation as an LTS whose transitions all carry label "a".
Lts as_lts(const RelationInput &input);

/// Handles of the refinement cells inside the shared memory.
struct RcppMemory {
    pram::SharedMemory memory;
    pram::ArrayId mark;
    pram::ArrayId block;
    pram::ArrayId new_leader;
    pram::ArrayId unstable;
    pram::ArrayId candidate;
    pram::ArrayId splitter;
    std::size_t n = 0;

    Partition partition() const;
    /// Current splitter cell, empty when it holds the no-splitter value.
    std::optional<StateId> splitter_value() const;
    std::vector<StateId> unstable_labels() const;
};

/// Loads pi0 in leader form and flags every initial block unstable.
RcppMemory phase_init(const RelationInput &input);

/**
 * Clears all marks and elects the splitter among the unstable labels; the
 * engine policy decides between competing labels. `forced` bypasses the
 * election. Returns the splitter, or nothing when every block is stable.
 */
std::optional<StateId> phase_select_splitter(pram::Engine &engine, RcppMemory &mem,
                                             std::optional<StateId> forced = std::nullopt,
                                             bool common_election = true);

/// Marks every source of an edge whose target lies in the splitter block.
void phase_mark(pram::Engine &engine, RcppMemory &mem, std::span<const Edge> edges);

/**
 * Splits every block whose states disagree with their leader's mark: the
 * disagreeing states move into one new block led by an elected member.
 * Under Common, `common_election` selects common_leader_election for the
 * leader bids. Returns the number of blocks that were split.
 */
std::size_t phase_split(pram::Engine &engine, RcppMemory &mem, bool common_election = true);

/**
 * Leader election legal under the Common policy, on n^2 processors: every
 * disagreeing state bids with its block label, processor (i, j) withdraws j
 * if i < j bids for the same block, and the survivor (the smallest bidder)
 * writes itself to new_leader of its block. Also clears unstable[C].
 */
void common_leader_election(pram::Engine &engine, RcppMemory &mem);

/// Runs the refinement loop to a stable partition.
RunResult rcpp_run(const RelationInput &input, const pram::WritePolicy &policy, const RunOptions &options = {});

} // namespace parbisim::rcpp
