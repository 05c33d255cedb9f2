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

#include "parbisim/partition.hpp"
#include "parbisim/pram.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace parbisim {

/// Splitter cell value meaning "no splitter selected". Block labels are
/// state indices, so 0 is a valid label and cannot serve as the sentinel.
inline constexpr pram::Word kNoSplitter = -1;

/// Knobs shared by the PRAM refinement drivers.
struct RunOptions {
    /// Use this block label as the first splitter instead of electing one.
    std::optional<StateId> initial_splitter;
    /// Under the Common policy, elect splitters and leaders by pairwise
    /// elimination on n^2 processors. When false, the plain concurrent
    /// writes are issued and conflicts surface as PolicyViolation.
    bool common_election = true;
    /// Abort after this many iterations; 0 selects 3n + |Act| + 8.
    std::size_t max_supersteps = 0;
    pram::ExecutionOrder order = pram::ExecutionOrder::Forward;
    std::uint64_t shuffle_seed = 0;
    /// Keep the partition of every iteration in RunResult::trace.
    bool record_trace = false;
};

struct IterationRecord {
    /// Splitter of this iteration; empty for the terminating iteration.
    std::optional<StateId> splitter;
    std::size_t splits = 0;
    /// Partition at the end of the iteration.
    Partition partition;
};

struct RunResult {
    Partition partition;
    /// The partition the main loop started from.
    Partition initial_partition;
    RunStats stats;
    /// Filled only when RunOptions::record_trace is set.
    std::vector<IterationRecord> trace;
};

std::size_t default_superstep_guard(std::size_t n, std::size_t num_actions);

} // namespace parbisim
