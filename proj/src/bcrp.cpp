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

#include "parbisim/bcrp.hpp"

#include "parbisim/error.hpp"
#include "parbisim/rcpp.hpp"
#include "phases.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace parbisim::bcrp {

using pram::SharedMemory;
using pram::Word;
using pram::WriteSink;

namespace {

struct Segmented {
    bool starts;
    std::int64_t value;
};

// Associative segmented-sum operator: a set flag on the right discards the left sum.
Segmented combine(const Segmented &left, const Segmented &right) {
    return {left.starts || right.starts, right.starts ? right.value : left.value + right.value};
}

struct LabeledMemory {
    SharedMemory memory;
    detail::BlockCells cells{};
    pram::ArrayId mark = 0;
    pram::ArrayId split = 0;
    pram::ArrayId order = 0;
    pram::ArrayId off = 0;
    pram::ArrayId nr_marks = 0;
    pram::ArrayId mark_length = 0;
};

LabeledMemory load_memory(const Partition &pi0, const MarkLayout &layout) {
    const std::size_t n = pi0.size();
    LabeledMemory mem;
    mem.cells.n = n;
    mem.cells.block = mem.memory.add_array("block", n, 0);
    mem.cells.new_leader = mem.memory.add_array("new_leader", n, 0);
    mem.cells.unstable = mem.memory.add_array("unstable", n, 0);
    mem.cells.candidate = mem.memory.add_array("candidate", n, 0);
    mem.cells.splitter = mem.memory.add_scalar("C", kNoSplitter);
    mem.mark = mem.memory.add_array("mark", layout.mark_length, 0);
    mem.split = mem.memory.add_array("split", n, 0);
    mem.order = mem.memory.add_array("order", layout.order.size(), 0);
    mem.off = mem.memory.add_array("off", n, 0);
    mem.nr_marks = mem.memory.add_array("nr_marks", n, 0);
    mem.mark_length = mem.memory.add_scalar("mark_length", static_cast<Word>(layout.mark_length));
    for (std::size_t i = 0; i < layout.order.size(); ++i) {
        mem.memory.set(mem.order, i, layout.order[i]);
    }
    for (std::size_t s = 0; s < n; ++s) {
        mem.memory.set(mem.off, s, layout.off[s]);
        mem.memory.set(mem.nr_marks, s, layout.nr_marks[s]);
        const StateId leader = pi0.block()[s];
        mem.memory.set(mem.cells.block, s, leader);
        mem.memory.set(mem.cells.unstable, leader, 1);
    }
    return mem;
}

} // namespace

std::vector<std::int64_t> segmented_prefix_sum(std::span<const std::int64_t> values,
                                               const std::vector<bool> &segment_starts, ScanKind kind) {
    if (values.size() != segment_starts.size()) {
        throw InputError("segmented_prefix_sum: " + std::to_string(values.size()) + " values but " +
                         std::to_string(segment_starts.size()) + " flags");
    }
    std::vector<Segmented> pairs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        pairs[i] = {static_cast<bool>(segment_starts[i]), values[i]};
    }
    std::inclusive_scan(pairs.begin(), pairs.end(), pairs.begin(), combine);

    std::vector<std::int64_t> result(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (kind == ScanKind::Inclusive) {
            result[i] = pairs[i].value;
        } else {
            result[i] = (i == 0 || segment_starts[i]) ? 0 : pairs[i - 1].value;
        }
    }
    return result;
}

Lts sort_transitions(const Lts &lts) {
    std::vector<Transition> sorted(lts.transitions().begin(), lts.transitions().end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const Transition &a, const Transition &b) {
        return std::pair(a.source, a.action) < std::pair(b.source, b.action);
    });
    return lts.with_transitions(std::move(sorted));
}

std::vector<std::int64_t> compute_action_switch(std::span<const Transition> sorted) {
    std::vector<std::int64_t> action_switch(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const bool same_run = i == 0 || sorted[i].source != sorted[i - 1].source ||
                              sorted[i].action == sorted[i - 1].action;
        action_switch[i] = same_run ? 0 : 1;
    }
    return action_switch;
}

MarkLayout compute_order_and_offsets(std::span<const std::int64_t> action_switch, std::span<const Transition> sorted,
                                     std::size_t n) {
    if (action_switch.size() != sorted.size()) {
        throw InputError("action_switch and transition list differ in length");
    }
    const std::size_t m = sorted.size();
    std::vector<bool> source_starts(m);
    for (std::size_t i = 0; i < m; ++i) {
        source_starts[i] = i == 0 || sorted[i].source != sorted[i - 1].source;
    }

    MarkLayout layout;
    layout.order = segmented_prefix_sum(action_switch, source_starts, ScanKind::Inclusive);
    layout.nr_marks.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (i + 1 == m || source_starts[i + 1]) {
            layout.nr_marks.at(sorted[i].source) = layout.order[i] + 1;
        }
    }
    layout.off.assign(n, 0);
    std::exclusive_scan(layout.nr_marks.begin(), layout.nr_marks.end(), layout.off.begin(), std::int64_t{0});
    layout.mark_length = static_cast<std::size_t>(
        std::accumulate(layout.nr_marks.begin(), layout.nr_marks.end(), std::int64_t{0}));
    return layout;
}

Partition partition_by_outgoing_labels(pram::Engine &engine, const Lts &lts, bool common_election) {
    rcpp::RelationInput input{lts.num_states(), {}, Partition::trivial(lts.num_states())};
    rcpp::RcppMemory mem = rcpp::phase_init(input);
    const auto transitions = lts.transitions();
    for (ActionId a = 0; a < lts.num_actions(); ++a) {
        engine.run_phase(mem.n, [&](std::size_t i, const SharedMemory &, WriteSink &out) {
            out.write(mem.mark, i, 0);
        }, mem.memory);
        engine.run_phase(transitions.size(), [&](std::size_t i, const SharedMemory &, WriteSink &out) {
            if (transitions[i].action == a) {
                out.write(mem.mark, transitions[i].source, 1);
            }
        }, mem.memory);
        rcpp::phase_split(engine, mem, common_election);
    }
    return mem.partition();
}

Partition partition_by_outgoing_labels(const Lts &lts, const pram::WritePolicy &policy, const RunOptions &options) {
    pram::Engine engine(policy, options.order, options.shuffle_seed);
    return partition_by_outgoing_labels(engine, lts, options.common_election);
}

RunResult bcrp_run(const Lts &lts, const pram::WritePolicy &policy, const RunOptions &options) {
    pram::Engine engine(policy, options.order, options.shuffle_seed);
    const std::size_t n = lts.num_states();
    const bool pairwise = detail::uses_common_election(engine, options.common_election);

    RunResult result;
    result.initial_partition = partition_by_outgoing_labels(engine, lts, options.common_election);
    result.stats.preprocessing_rounds = lts.num_actions();
    result.stats.initial_block_count = block_count(result.initial_partition);

    const Lts sorted = sort_transitions(lts);
    const auto transitions = sorted.transitions();
    const std::size_t m = transitions.size();
    const MarkLayout layout = compute_order_and_offsets(compute_action_switch(transitions), transitions, n);
    LabeledMemory mem = load_memory(result.initial_partition, layout);
    const detail::BlockCells &cells = mem.cells;

    const auto slot = [&](const SharedMemory &snap, std::size_t state, std::size_t i) {
        return static_cast<std::size_t>(snap.get(mem.off, state) + snap.get(mem.order, i));
    };
    const auto reset = [&](std::size_t p, const SharedMemory &, WriteSink &out) {
        if (p < layout.mark_length) {
            out.write(mem.mark, p, 0);
        }
        if (p < n) {
            out.write(mem.split, p, 0);
        }
    };
    const auto tagged = [&](std::size_t i, const SharedMemory &snap) { return snap.get(mem.split, i) != 0; };

    const std::size_t guard =
        options.max_supersteps != 0 ? options.max_supersteps : default_superstep_guard(n, lts.num_actions());
    std::optional<StateId> forced = options.initial_splitter;
    std::size_t blocks = result.stats.initial_block_count;
    for (;;) {
        if (result.stats.supersteps >= guard) {
            throw GuardExceeded("refinement exceeded " + std::to_string(guard) + " supersteps");
        }
        ++result.stats.supersteps;
        const auto splitter = detail::select_splitter(engine, mem.memory, cells, std::max(n, layout.mark_length),
                                                      reset, forced, pairwise);
        forced.reset();
        if (splitter) {
            const Word c = static_cast<Word>(*splitter);
            engine.run_phase(m, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
                if (snap.get(cells.block, transitions[i].target) == c) {
                    out.write(mem.mark, slot(snap, transitions[i].source, i), 1);
                }
            }, mem.memory);
            // The leader has the same outgoing actions, hence the same slot layout.
            engine.run_phase(m, [&](std::size_t i, const SharedMemory &snap, WriteSink &out) {
                const std::size_t source = transitions[i].source;
                const auto leader = static_cast<std::size_t>(snap.get(cells.block, source));
                if (snap.get(mem.mark, slot(snap, source, i)) != snap.get(mem.mark, slot(snap, leader, i))) {
                    out.write(mem.split, source, 1);
                }
            }, mem.memory);
            detail::elect_leaders(engine, mem.memory, cells, tagged, pairwise);
            detail::reassign_blocks(engine, mem.memory, cells, tagged, true);
        }
        Partition current = detail::read_partition(mem.memory, cells);
        const std::size_t now = block_count(current);
        const std::size_t splits = now - blocks;
        blocks = now;
        result.stats.splits_per_iteration.push_back(splits);
        if (options.record_trace) {
            result.trace.push_back({splitter, splits, std::move(current)});
        }
        if (!splitter) {
            break;
        }
    }

    result.partition = detail::read_partition(mem.memory, cells);
    result.stats.final_block_count = block_count(result.partition);
    result.stats.phases = engine.phases();
    return result;
}

} // namespace parbisim::bcrp
