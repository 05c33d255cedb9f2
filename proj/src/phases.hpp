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

// Phase kernels shared by the single-relation and labeled drivers.

#include "parbisim/partition.hpp"
#include "parbisim/pram.hpp"
#include "parbisim/refinement.hpp"

#include <functional>
#include <optional>

namespace parbisim::detail {

/// Cells common to both refinement drivers.
struct BlockCells {
    pram::ArrayId block;
    pram::ArrayId new_leader;
    pram::ArrayId unstable;
    pram::ArrayId candidate;
    pram::ArrayId splitter;
    std::size_t n;
};

/// Per-state predicate evaluated against a snapshot.
using StatePredicate = std::function<bool(std::size_t state, const pram::SharedMemory &)>;
/// Extra per-processor writes issued alongside splitter election (resets).
using ResetWrites = std::function<void(std::size_t processor, const pram::SharedMemory &, pram::WriteSink &)>;

/**
 * Resets the splitter cell on the host, then runs the election. With
 * `pairwise` this is three Common-legal phases (candidates, n^2 elimination
 * keeping the smallest label, write); otherwise one phase where every
 * unstable label writes itself. `reset` runs on `reset_processors`
 * processors in the first phase. Returns the chosen splitter.
 */
std::optional<StateId> select_splitter(pram::Engine &engine, pram::SharedMemory &memory, const BlockCells &cells,
                                       std::size_t reset_processors, const ResetWrites &reset,
                                       std::optional<StateId> forced, bool pairwise);

/**
 * Sub-phase A: clears unstable[C] (when a splitter is set) and lets every
 * splitting state bid for new_leader[block]. With `pairwise` the bid uses
 * the Common-legal n^2 elimination instead.
 */
void elect_leaders(pram::Engine &engine, pram::SharedMemory &memory, const BlockCells &cells,
                   const StatePredicate &splitting, bool pairwise);

/**
 * Sub-phase B: every splitting state moves to new_leader[old block] and
 * raises unstable for the old and new labels; with `restabilize_splitter`
 * it also raises unstable[C].
 */
void reassign_blocks(pram::Engine &engine, pram::SharedMemory &memory, const BlockCells &cells,
                     const StatePredicate &splitting, bool restabilize_splitter);

/// Reads the block array as a Partition; throws Error if the leader invariant is broken.
Partition read_partition(const pram::SharedMemory &memory, const BlockCells &cells);

/// True when the engine runs Common and the caller asked for pairwise election.
bool uses_common_election(const pram::Engine &engine, bool common_election);

} // namespace parbisim::detail
