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

#include <catch2/catch_amalgamated.hpp>

#include "parbisim/bcrp.hpp"
#include "parbisim/error.hpp"
#include "parbisim/fanout.hpp"
#include "parbisim/oracle.hpp"
#include "parbisim/rcpp.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace parbisim;
using namespace parbisim::bcrp;
using pram::WritePolicy;
using I64 = std::vector<std::int64_t>;

namespace {

// Direct per-state computation of the mark layout, independent of scans.
MarkLayout naive_layout(const Lts &sorted) {
    const auto labels = testing::outgoing_labels(sorted);
    MarkLayout layout;
    for (const Transition &t : sorted.transitions()) {
        const auto &l = labels[t.source];
        layout.order.push_back(std::find(l.begin(), l.end(), t.action) - l.begin());
    }
    std::int64_t running = 0;
    for (const auto &l : labels) {
        layout.nr_marks.push_back(static_cast<std::int64_t>(l.size()));
        layout.off.push_back(running);
        running += static_cast<std::int64_t>(l.size());
    }
    layout.mark_length = static_cast<std::size_t>(running);
    return layout;
}

I64 naive_scan(const I64 &values, const std::vector<bool> &starts, ScanKind kind) {
    I64 out(values.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (starts[i]) {
            acc = 0;
        }
        if (kind == ScanKind::Exclusive) {
            out[i] = acc;
            acc += values[i];
        } else {
            acc += values[i];
            out[i] = acc;
        }
    }
    return out;
}

MarkLayout layout_of(const Lts &lts) {
    const Lts sorted = sort_transitions(lts);
    return compute_order_and_offsets(compute_action_switch(sorted.transitions()), sorted.transitions(),
                                     sorted.num_states());
}

} // namespace

TEST_CASE("sort_transitions is a stable sort by source and action") {
    const Lts lts(2, {"a", "b"}, {{1, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    const Lts sorted = sort_transitions(lts);
    CHECK(std::vector<Transition>(sorted.transitions().begin(), sorted.transitions().end()) ==
          std::vector<Transition>{{0, 0, 1}, {0, 0, 0}, {1, 1, 0}});
    const Lts again = sort_transitions(sorted);
    CHECK(std::equal(again.transitions().begin(), again.transitions().end(), sorted.transitions().begin(),
                     sorted.transitions().end()));

    const Lts three = sort_transitions(testing::three_state_lts());
    std::vector<std::pair<StateId, std::string>> rows;
    for (const Transition &t : three.transitions()) {
        rows.emplace_back(t.source, three.label(t.action));
    }
    CHECK(rows == std::vector<std::pair<StateId, std::string>>{
                      {0, "a"}, {0, "a"}, {0, "c"}, {1, "a"}, {1, "b"}, {1, "c"}, {2, "c"}, {2, "c"}});
}

TEST_CASE("compute_action_switch") {
    const Lts three = sort_transitions(testing::three_state_lts());
    CHECK(compute_action_switch(three.transitions()) == I64{0, 0, 1, 0, 1, 1, 0, 0});
    const std::vector<Transition> one{{0, 0, 0}};
    CHECK(compute_action_switch(one) == I64{0});
    const std::vector<Transition> same{{0, 0, 0}, {0, 0, 1}};
    CHECK(compute_action_switch(same) == I64{0, 0});
    CHECK(compute_action_switch({}).empty());
}

TEST_CASE("compute_order_and_offsets") {
    SECTION("three-state system") {
        const MarkLayout layout = layout_of(testing::three_state_lts());
        CHECK(layout.order == I64{0, 0, 1, 0, 1, 2, 0, 0});
        CHECK(layout.nr_marks == I64{2, 3, 1});
        CHECK(layout.off == I64{0, 2, 5});
        CHECK(layout.mark_length == 6);
        const MarkLayout naive = naive_layout(sort_transitions(testing::three_state_lts()));
        CHECK(layout.off == naive.off);
    }
    SECTION("a silent state between two active ones") {
        const MarkLayout layout = layout_of(Lts(3, {"a", "b"}, {{0, 0, 1}, {0, 1, 1}, {2, 1, 0}}));
        CHECK(layout.nr_marks == I64{2, 0, 1});
        CHECK(layout.off == I64{0, 2, 2});
        CHECK(layout.mark_length == 3);
    }
    SECTION("layout invariants on random systems") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            INFO("seed " << seed);
            const Lts lts = testing::random_lts(seed);
            const MarkLayout layout = layout_of(lts);
            const MarkLayout naive = naive_layout(sort_transitions(lts));
            CHECK(layout.order == naive.order);
            CHECK(layout.nr_marks == naive.nr_marks);
            CHECK(layout.off == naive.off);
            CHECK(layout.mark_length == naive.mark_length);
            CHECK(layout.mark_length <= lts.num_transitions());
            const Lts sorted = sort_transitions(lts);
            for (std::size_t i = 0; i < sorted.num_transitions(); ++i) {
                CHECK(layout.order[i] < layout.nr_marks[sorted.transitions()[i].source]);
            }
            for (std::size_t s = 0; s < lts.num_states(); ++s) {
                CHECK(layout.off[s] + layout.nr_marks[s] <= static_cast<std::int64_t>(layout.mark_length));
                if (s > 0) {
                    CHECK(layout.off[s] >= layout.off[s - 1]);
                }
            }
        }
    }
    CHECK_THROWS_AS(compute_order_and_offsets(I64{0}, {}, 1), InputError);
}

TEST_CASE("segmented_prefix_sum") {
    CHECK(segmented_prefix_sum(I64{1, 1, 1}, {true, false, false}, ScanKind::Exclusive) == I64{0, 1, 2});
    CHECK(segmented_prefix_sum(I64{1, 1, 1}, {true, true, true}, ScanKind::Exclusive) == I64{0, 0, 0});
    CHECK(segmented_prefix_sum(I64{0, 0, 1, 0, 1, 1, 0, 0}, {true, false, false, true, false, false, true, false},
                               ScanKind::Inclusive) == I64{0, 0, 1, 0, 1, 2, 0, 0});
    CHECK(segmented_prefix_sum(I64{}, {}, ScanKind::Inclusive).empty());
    CHECK_THROWS_AS(segmented_prefix_sum(I64{1, 2}, {true}, ScanKind::Inclusive), InputError);

    std::mt19937_64 rng(2024);
    for (int round = 0; round < 200; ++round) {
        const std::size_t len = rng() % 40;
        I64 values(len);
        std::vector<bool> starts(len);
        for (std::size_t i = 0; i < len; ++i) {
            values[i] = static_cast<std::int64_t>(rng() % 21) - 10;
            starts[i] = rng() % 4 == 0;
        }
        for (const ScanKind kind : {ScanKind::Inclusive, ScanKind::Exclusive}) {
            CHECK(segmented_prefix_sum(values, starts, kind) == naive_scan(values, starts, kind));
        }
    }
}

TEST_CASE("partition_by_outgoing_labels") {
    CHECK(block_count(partition_by_outgoing_labels(testing::three_state_lts(), WritePolicy::priority())) == 3);

    const Lts uniform(3, {"a", "b"}, {{0, 0, 1}, {0, 1, 1}, {1, 1, 0}, {1, 0, 2}, {2, 0, 2}, {2, 1, 0}});
    CHECK(block_count(partition_by_outgoing_labels(uniform, WritePolicy::priority())) == 1);
    CHECK(block_count(partition_by_outgoing_labels(Lts(4, {"a"}, {}), WritePolicy::priority())) == 1);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        INFO("seed " << seed);
        const Lts lts = testing::random_lts(seed);
        const auto labels = testing::outgoing_labels(lts);
        std::vector<std::int64_t> signature(lts.num_states());
        for (std::size_t s = 0; s < labels.size(); ++s) {
            for (const ActionId a : labels[s]) {
                signature[s] |= std::int64_t{1} << a;
            }
        }
        const Partition expected = partition_from_assignment(signature);
        for (const WritePolicy policy : {WritePolicy::priority(), WritePolicy::arbitrary(seed), WritePolicy::common()}) {
            CHECK(partitions_equal(partition_by_outgoing_labels(lts, policy), expected));
        }
    }
}

TEST_CASE("bcrp_run computes bisimilarity") {
    CHECK(block_count(bcrp_run(gen_fanout(4), WritePolicy::priority()).partition) == 3);
    CHECK(block_count(bcrp_run(testing::three_state_lts(), WritePolicy::priority()).partition) == 3);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        INFO("seed " << seed);
        const Lts lts = testing::random_lts(seed);
        RunOptions options;
        options.record_trace = true;
        const RunResult run = bcrp_run(lts, WritePolicy::priority(), options);
        const Partition expected = oracle::brute_force_bisim(lts);
        CHECK(partitions_equal(run.partition, expected));
        CHECK(oracle::is_stable(lts, run.partition));
        CHECK(run.stats.preprocessing_rounds == lts.num_actions());
        CHECK(static_cast<std::int64_t>(run.stats.splitter_iterations()) <=
              bcrp_iteration_bound(lts.num_states(), run.stats.initial_block_count));

        const auto labels = testing::outgoing_labels(lts);
        const auto same_labels = [&](const Partition &p) {
            for (std::size_t s = 0; s < p.size(); ++s) {
                if (labels[s] != labels[p.block()[s]]) {
                    return false;
                }
            }
            return true;
        };
        CHECK(same_labels(run.initial_partition));
        Partition previous = run.initial_partition;
        for (const IterationRecord &step : run.trace) {
            CHECK(same_labels(step.partition));
            CHECK(refines(step.partition, previous));
            CHECK(refines(expected, step.partition));
            previous = step.partition;
        }
    }
}

TEST_CASE("bcrp_run on one label matches rcpp_run from the label partition") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        INFO("seed " << seed);
        const Lts lts = testing::random_lts(seed, {40, 120, 1});
        const Partition pi0 = partition_by_outgoing_labels(lts, WritePolicy::priority());
        const Partition via_rcpp = rcpp::rcpp_run(rcpp::relation_of(lts, pi0), WritePolicy::priority()).partition;
        CHECK(partitions_equal(bcrp_run(lts, WritePolicy::priority()).partition, via_rcpp));
    }
}

TEST_CASE("bcrp_run is policy invariant") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        INFO("seed " << seed);
        const Lts lts = testing::random_lts(seed);
        const Partition reference = bcrp_run(lts, WritePolicy::priority()).partition;
        CHECK(partitions_equal(bcrp_run(lts, WritePolicy::arbitrary(seed)).partition, reference));
        CHECK(partitions_equal(bcrp_run(lts, WritePolicy::common()).partition, reference));
        RunOptions shuffled;
        shuffled.order = pram::ExecutionOrder::Shuffled;
        shuffled.shuffle_seed = seed;
        CHECK(bcrp_run(lts, WritePolicy::arbitrary(seed), shuffled).partition ==
              bcrp_run(lts, WritePolicy::arbitrary(seed)).partition);
    }
}

TEST_CASE("bcrp_run under plain common election") {
    // Two b-successors of a hub split off together, so the plain bids conflict.
    RunOptions plain;
    plain.common_election = false;
    CHECK_THROWS_AS(bcrp_run(gen_fanout(6), WritePolicy::common(), plain), PolicyViolation);
    RunOptions guarded;
    guarded.max_supersteps = 1;
    CHECK_THROWS_AS(bcrp_run(gen_fanout(6), WritePolicy::priority(), guarded), GuardExceeded);
}
