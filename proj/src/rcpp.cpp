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

#include "parbisim/rcpp.hpp"

#include "parbisim/error.hpp"
#include "phases.hpp"

#include <string>

namespace parbisim::rcpp {

using pram::SharedMemory;
using pram::Word;
using pram::WriteSink;

namespace {

detail::BlockCells cells_of(const RcppMemory &mem) {
    return {mem.block, mem.new_leader, mem.unstable, mem.candidate, mem.splitter, mem.n};
}

// A state splits off when its mark differs from its leader's.
bool disagrees_with_leader(const RcppMemory &mem, std::size_t i, const SharedMemory &snap) {
    return snap.get(mem.mark, i) != snap.get(mem.mark, static_cast<std::size_t>(snap.get(mem.block, i)));
}

std::size_t count_leaders(const SharedMemory &memory, pram::ArrayId block) {
    const auto cells = memory.array(block);
    std::size_t count = 0;
    for (std::size_t s = 0; s < cells.size(); ++s) {
        count += cells[s] == static_cast<Word>(s) ? 1 : 0;
    }
    return count;
}

} // namespace

void RelationInput::validate() const {
    if (n == 0) {
        throw InputError("relation input needs at least one state");
    }
    if (pi0.size() != n) {
        throw InputError("initial partition covers " + std::to_string(pi0.size()) + " states, expected " +
                         std::to_string(n));
    }
    for (const auto &[s, t] : edges) {
        if (s >= n || t >= n) {
            throw InputError("edge (" + std::to_string(s) + ", " + std::to_string(t) + ") out of range");
        }
    }
}

RelationInput relation_of(const Lts &lts, const Partition &pi0) {
    if (lts.num_actions() > 1) {
        throw InputError("single-relation refinement needs at most one action label, got " +
                         std::to_string(lts.num_actions()));
    }
    RelationInput input{lts.num_states(), {}, pi0};
    input.edges.reserve(lts.num_transitions());
    for (const Transition &t : lts.transitions()) {
        input.edges.emplace_back(t.source, t.target);
    }
    input.validate();
    return input;
}

Lts as_lts(const RelationInput &input) {
    std::vector<Transition> transitions;
    transitions.reserve(input.edges.size());
    for (const auto &[s, t] : input.edges) {
        transitions.push_back({s, 0, t});
    }
    std::vector<std::string> labels;
    if (!transitions.empty()) {
        labels.emplace_back("a");
    }
    return Lts(input.n, std::move(labels), std::move(transitions));
}

Partition RcppMemory::partition() const { return detail::read_partition(memory, cells_of(*this)); }

std::optional<StateId> RcppMemory::splitter_value() const {
    const Word c = memory.scalar(splitter);
    if (c == kNoSplitter) {
        return std::nullopt;
    }
    return static_cast<StateId>(c);
}

std::vector<StateId> RcppMemory::unstable_labels() const {
    std::vector<StateId> labels;
    for (std::size_t i = 0; i < n; ++i) {
        if (memory.get(unstable, i) != 0) {
            labels.push_back(static_cast<StateId>(i));
        }
    }
    return labels;
}

RcppMemory phase_init(const RelationInput &input) {
    input.validate();
    RcppMemory mem;
    mem.n = input.n;
    mem.mark = mem.memory.add_array("mark", input.n, 0);
    mem.block = mem.memory.add_array("block", input.n, 0);
    mem.new_leader = mem.memory.add_array("new_leader", input.n, 0);
    mem.unstable = mem.memory.add_array("unstable", input.n, 0);
    mem.candidate = mem.memory.add_array("candidate", input.n, 0);
    mem.splitter = mem.memory.add_scalar("C", kNoSplitter);
    for (std::size_t s = 0; s < input.n; ++s) {
        const StateId leader = input.pi0.block()[s];
        mem.memory.set(mem.block, s, leader);
        mem.memory.set(mem.unstable, leader, 1);
    }
    return mem;
}

std::optional<StateId> phase_select_splitter(pram::Engine &engine, RcppMemory &mem, std::optional<StateId> forced,
                                             bool common_election) {
    const auto clear_mark = [&](std::size_t i, const SharedMemory &, WriteSink &out) { out.write(mem.mark, i, 0); };
    return detail::select_splitter(engine, mem.memory, cells_of(mem), mem.n, clear_mark, forced,
                                   detail::uses_common_election(engine, common_election));
}

void phase_mark(pram::Engine &engine, RcppMemory &mem, std::span<const Edge> edges) {
    const Word splitter = mem.memory.scalar(mem.splitter);
    if (splitter == kNoSplitter) {
        throw InputError("phase_mark needs a splitter");
    }
    engine.run_phase(edges.size(), [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
        const auto &[source, target] = edges[i];
        if (snap.get(mem.block, target) == splitter) {
            out.write(mem.mark, source, 1);
        }
    }, mem.memory);
}

std::size_t phase_split(pram::Engine &engine, RcppMemory &mem, bool common_election) {
    const std::size_t before = count_leaders(mem.memory, mem.block);
    const auto splitting = [&](std::size_t i, const SharedMemory &snap) { return disagrees_with_leader(mem, i, snap); };
    if (detail::uses_common_election(engine, common_election)) {
        common_leader_election(engine, mem);
    } else {
        detail::elect_leaders(engine, mem.memory, cells_of(mem), splitting, false);
    }
    detail::reassign_blocks(engine, mem.memory, cells_of(mem), splitting, false);
    return count_leaders(mem.memory, mem.block) - before;
}

void common_leader_election(pram::Engine &engine, RcppMemory &mem) {
    const auto splitting = [&](std::size_t i, const SharedMemory &snap) { return disagrees_with_leader(mem, i, snap); };
    detail::elect_leaders(engine, mem.memory, cells_of(mem), splitting, true);
}

RunResult rcpp_run(const RelationInput &input, const pram::WritePolicy &policy, const RunOptions &options) {
    pram::Engine engine(policy, options.order, options.shuffle_seed);
    RcppMemory mem = phase_init(input);
    const std::size_t guard =
        options.max_supersteps != 0 ? options.max_supersteps : default_superstep_guard(input.n, 1);

    RunResult result;
    result.initial_partition = mem.partition();
    result.stats.initial_block_count = block_count(result.initial_partition);

    std::optional<StateId> forced = options.initial_splitter;
    for (;;) {
        if (result.stats.supersteps >= guard) {
            throw GuardExceeded("refinement exceeded " + std::to_string(guard) + " supersteps");
        }
        ++result.stats.supersteps;
        const auto splitter = phase_select_splitter(engine, mem, forced, options.common_election);
        forced.reset();
        std::size_t splits = 0;
        if (splitter) {
            phase_mark(engine, mem, input.edges);
            splits = phase_split(engine, mem, options.common_election);
        }
        result.stats.splits_per_iteration.push_back(splits);
        // Reading the partition checks the leader invariant.
        Partition current = mem.partition();
        if (options.record_trace) {
            result.trace.push_back({splitter, splits, std::move(current)});
        }
        if (!splitter) {
            break;
        }
    }

    result.partition = mem.partition();
    result.stats.final_block_count = block_count(result.partition);
    result.stats.phases = engine.phases();
    return result;
}

} // namespace parbisim::rcpp
