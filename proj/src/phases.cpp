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

#include "phases.hpp"

#include "parbisim/error.hpp"

#include <algorithm>
#include <string>

namespace parbisim::detail {

using pram::SharedMemory;
using pram::Word;
using pram::WriteSink;

bool uses_common_election(const pram::Engine &engine, bool common_election) {
    return common_election && engine.policy().kind() == pram::WritePolicy::Kind::Common;
}

std::optional<StateId> select_splitter(pram::Engine &engine, SharedMemory &memory, const BlockCells &cells,
                                       std::size_t reset_processors, const ResetWrites &reset,
                                       std::optional<StateId> forced, bool pairwise) {
    const std::size_t n = cells.n;
    memory.set_scalar(cells.splitter, kNoSplitter);
    const auto run_reset = [&](std::size_t p, const SharedMemory &snap, WriteSink &out) {
        if (p < reset_processors) {
            reset(p, snap, out);
        }
    };

    if (forced) {
        if (*forced >= n || memory.get(cells.unstable, *forced) == 0) {
            throw InputError("requested splitter " + std::to_string(*forced) + " is not an unstable block");
        }
        engine.run_phase(reset_processors, run_reset, memory);
        memory.set_scalar(cells.splitter, static_cast<Word>(*forced));
        return forced;
    }

    const std::size_t width = std::max(n, reset_processors);
    if (pairwise) {
        engine.run_phase(width, [&](std::size_t p, const SharedMemory &snap, WriteSink &out) {
            run_reset(p, snap, out);
            if (p < n) {
                out.write(cells.candidate, p, snap.get(cells.unstable, p));
            }
        }, memory);
        // Of any two unstable labels the larger drops out; all writes are 0.
        engine.run_phase(n * n, [&](std::size_t p, const SharedMemory &snap, WriteSink &out) {
            const std::size_t i = p / n;
            const std::size_t j = p % n;
            if (i < j && snap.get(cells.candidate, i) != 0 && snap.get(cells.candidate, j) != 0) {
                out.write(cells.candidate, j, 0);
            }
        }, memory);
        engine.run_phase(n, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
            if (snap.get(cells.candidate, i) != 0) {
                out.write_scalar(cells.splitter, static_cast<Word>(i));
            }
        }, memory);
    } else {
        engine.run_phase(width, [&](std::size_t p, const SharedMemory &snap, WriteSink &out) {
            run_reset(p, snap, out);
            if (p < n && snap.get(cells.unstable, p) != 0) {
                out.write_scalar(cells.splitter, static_cast<Word>(p));
            }
        }, memory);
    }

    const Word chosen = memory.scalar(cells.splitter);
    if (chosen == kNoSplitter) {
        return std::nullopt;
    }
    return static_cast<StateId>(chosen);
}

void elect_leaders(pram::Engine &engine, SharedMemory &memory, const BlockCells &cells,
                   const StatePredicate &splitting, bool pairwise) {
    const std::size_t n = cells.n;
    const Word splitter = memory.scalar(cells.splitter);

    if (!pairwise) {
        engine.run_phase(n, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
            if (splitter != kNoSplitter) {
                out.write(cells.unstable, static_cast<std::size_t>(splitter), 0);
            }
            if (splitting(i, snap)) {
                out.write(cells.new_leader, static_cast<std::size_t>(snap.get(cells.block, i)),
                          static_cast<Word>(i));
            }
        }, memory);
        return;
    }

    // Each splitting state records its block in its own new_leader slot.
    engine.run_phase(n, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
        if (splitter != kNoSplitter) {
            out.write(cells.unstable, static_cast<std::size_t>(splitter), 0);
        }
        out.write(cells.new_leader, i, splitting(i, snap) ? snap.get(cells.block, i) : kNoSplitter);
    }, memory);
    // Processor (i, j) withdraws j when i < j bids for the same block.
    engine.run_phase(n * n, [&](std::size_t p, const SharedMemory &snap, WriteSink &out) {
        const std::size_t i = p / n;
        const std::size_t j = p % n;
        const Word bid = snap.get(cells.new_leader, i);
        if (i < j && bid != kNoSplitter && bid == snap.get(cells.new_leader, j)) {
            out.write(cells.new_leader, j, kNoSplitter);
        }
    }, memory);
    // The surviving bidder of each block installs itself as leader.
    engine.run_phase(n, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
        if (splitting(i, snap) && snap.get(cells.new_leader, i) != kNoSplitter) {
            out.write(cells.new_leader, static_cast<std::size_t>(snap.get(cells.block, i)), static_cast<Word>(i));
        }
    }, memory);
}

void reassign_blocks(pram::Engine &engine, SharedMemory &memory, const BlockCells &cells,
                     const StatePredicate &splitting, bool restabilize_splitter) {
    const Word splitter = memory.scalar(cells.splitter);
    engine.run_phase(cells.n, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
        if (!splitting(i, snap)) {
            return;
        }
        const auto old_block = static_cast<std::size_t>(snap.get(cells.block, i));
        const Word leader = snap.get(cells.new_leader, old_block);
        out.write(cells.block, i, leader);
        out.write(cells.unstable, old_block, 1);
        out.write(cells.unstable, static_cast<std::size_t>(leader), 1);
        if (restabilize_splitter && splitter != kNoSplitter) {
            out.write(cells.unstable, static_cast<std::size_t>(splitter), 1);
        }
    }, memory);
}

Partition read_partition(const SharedMemory &memory, const BlockCells &cells) {
    const auto cells_view = memory.array(cells.block);
    std::vector<StateId> block(cells_view.size());
    std::transform(cells_view.begin(), cells_view.end(), block.begin(),
                   [](Word w) { return static_cast<StateId>(w); });
    try {
        return Partition(std::move(block));
    } catch (const InputError &e) {
        throw Error(std::string("block array lost the leader invariant: ") + e.what());
    }
}

} // namespace parbisim::detail

namespace parbisim {

std::size_t default_superstep_guard(std::size_t n, std::size_t num_actions) { return 3 * n + num_actions + 8; }

} // namespace parbisim
