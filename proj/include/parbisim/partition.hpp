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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace parbisim {

/**
 * A partition of the states {0, ..., n-1} in leader representation:
 * block(s) is the index of the leader of the block containing s, and every
 * leader leads itself (block(block(s)) == block(s)).
 */
class Partition {
public:
    Partition() = default;

    /// Throws InputError unless every entry is in range and self-referencing.
    explicit Partition(std::vector<StateId> block);

    static Partition discrete(std::size_t n);
    static Partition trivial(std::size_t n);

    std::size_t size() const noexcept { return block_.size(); }
    StateId leader_of(StateId s) const { return block_.at(s); }
    std::span<const StateId> block() const noexcept { return block_; }

    bool same_block(StateId s, StateId t) const { return block_.at(s) == block_.at(t); }

    /// Exact equality of the leader arrays; see partitions_equal for the
    /// comparison of induced equivalences.
    friend bool operator==(const Partition &, const Partition &) = default;

private:
    std::vector<StateId> block_;
};

/// States with equal assignment values share a block led by its smallest state.
Partition partition_from_assignment(std::span<const std::int64_t> assignment);
/// As above, but throws InputError unless assignment.size() == n.
Partition partition_from_assignment(std::span<const std::int64_t> assignment, std::size_t n);
Partition partition_from_assignment(std::span<const StateId> assignment);

/// True iff both partitions induce the same equivalence relation.
bool partitions_equal(const Partition &p, const Partition &q);

std::size_t block_count(const Partition &p);

/// True iff every block of `fine` lies inside a block of `coarse`.
bool refines(const Partition &fine, const Partition &coarse);

/// Blocks as sorted member lists, ordered by their smallest member.
std::vector<std::vector<StateId>> blocks_of(const Partition &p);

/// The same equivalence with the smallest member of each block as leader.
Partition canonical(const Partition &p);

/// Statistics of one refinement run.
struct RunStats {
    /// do-while iterations, including the final one that finds no splitter.
    std::size_t supersteps = 0;
    /// Number of blocks split in each iteration; one entry per superstep.
    std::vector<std::size_t> splits_per_iteration;
    std::size_t initial_block_count = 0;
    std::size_t final_block_count = 0;
    /// Mark-and-split rounds spent building the initial partition (BCRP only).
    std::size_t preprocessing_rounds = 0;
    /// Barrier-separated PRAM phases executed, preprocessing included.
    std::size_t phases = 0;

    /// Iterations that selected a splitter.
    std::size_t splitter_iterations() const noexcept { return supersteps > 0 ? supersteps - 1 : 0; }
};

/// Upper bound 2n - |pi0| on the splitter iterations of single-relation refinement.
std::int64_t rcpp_iteration_bound(std::size_t n, std::size_t initial_blocks);
/// Upper bound 3n - |pi0| on the splitter iterations of labeled refinement.
std::int64_t bcrp_iteration_bound(std::size_t n, std::size_t initial_blocks);

} // namespace parbisim
