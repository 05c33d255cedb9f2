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

#include "parbisim/error.hpp"
#include "parbisim/lts.hpp"
#include "parbisim/partition.hpp"
#include "support/fixtures.hpp"

#include <vector>

using namespace parbisim;

namespace {

std::vector<StateId> leaders(const std::vector<std::int64_t> &assignment) {
    const Partition p = partition_from_assignment(assignment);
    return {p.block().begin(), p.block().end()};
}

} // namespace

TEST_CASE("partition_from_assignment picks the smallest member as leader") {
    CHECK(leaders({0, 0, 1}) == std::vector<StateId>{0, 0, 2});
    CHECK(leaders({7, 7, 7}) == std::vector<StateId>{0, 0, 0});
    CHECK(leaders({5, 3, 5, 3}) == std::vector<StateId>{0, 1, 0, 1});
    CHECK(leaders({-4, 9, -4}) == std::vector<StateId>{0, 1, 0});
}

TEST_CASE("partition_from_assignment rejects a length mismatch") {
    const std::vector<std::int64_t> assignment{0, 1};
    CHECK_THROWS_AS(partition_from_assignment(assignment, 3), InputError);
    CHECK_NOTHROW(partition_from_assignment(assignment, 2));
}

TEST_CASE("Partition enforces leader self-reference") {
    CHECK_NOTHROW(Partition({0, 0, 2}));
    CHECK_THROWS_AS(Partition({1, 0}), InputError);
    CHECK_THROWS_AS(Partition({0, 5}), InputError);
}

TEST_CASE("partitions_equal compares induced equivalences") {
    CHECK(partitions_equal(Partition({0, 0, 2}), Partition({1, 1, 2})));
    CHECK_FALSE(partitions_equal(Partition({0, 0, 0}), Partition({0, 0, 2})));
    CHECK(partitions_equal(Partition({0, 1, 2}), Partition({0, 1, 2})));
    CHECK_FALSE(partitions_equal(Partition({0, 1, 1}), Partition({0, 0, 2})));
    CHECK_THROWS_AS(partitions_equal(Partition({0}), Partition({0, 1})), InputError);
}

TEST_CASE("block_count") {
    CHECK(block_count(Partition({0, 0, 2})) == 2);
    CHECK(block_count(Partition::discrete(4)) == 4);
    CHECK(block_count(Partition::trivial(4)) == 1);
}

TEST_CASE("refines and blocks_of") {
    CHECK(refines(Partition::discrete(3), Partition::trivial(3)));
    CHECK_FALSE(refines(Partition::trivial(3), Partition::discrete(3)));
    CHECK(refines(Partition({0, 0, 2}), Partition({0, 0, 0})));
    CHECK_FALSE(refines(Partition({0, 1, 0}), Partition({0, 0, 2})));
    CHECK(blocks_of(Partition({2, 1, 2})) == std::vector<std::vector<StateId>>{{0, 2}, {1}});
}

TEST_CASE("partition properties on random assignments") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Partition p = testing::random_partition(seed, 1 + seed % 30, 1 + seed % 7);
        const Partition q = testing::random_partition(seed + 1000, p.size(), 1 + seed % 5);
        const Partition r = testing::random_partition(seed + 2000, p.size(), 1 + seed % 3);
        INFO("seed " << seed);
        // Re-encoding is idempotent.
        CHECK(partitions_equal(partition_from_assignment(p.block()), p));
        CHECK(partition_from_assignment(p.block()) == canonical(p));
        // partitions_equal is an equivalence relation.
        CHECK(partitions_equal(p, p));
        CHECK(partitions_equal(p, q) == partitions_equal(q, p));
        if (partitions_equal(p, q) && partitions_equal(q, r)) {
            CHECK(partitions_equal(p, r));
        }
        // Mutual refinement is equality.
        CHECK((refines(p, q) && refines(q, p)) == partitions_equal(p, q));
    }
}

TEST_CASE("Lts validates its contents") {
    CHECK_THROWS_AS(Lts(0, {}, {}), InputError);
    CHECK_THROWS_AS(Lts(2, {"a"}, {{0, 0, 2}}), InputError);
    CHECK_THROWS_AS(Lts(2, {"a"}, {{0, 1, 1}}), InputError);
    CHECK_THROWS_AS(Lts(2, {"b", "a"}, {}), InputError);
    CHECK_THROWS_AS(Lts(2, {"a", "a"}, {}), InputError);
    CHECK_THROWS_AS(Lts(2, {}, {}, 2), InputError);
    // Self-loops and duplicates are fine.
    CHECK_NOTHROW(Lts(1, {"a"}, {{0, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("Lts::from_labeled orders actions lexicographically") {
    const Lts lts = Lts::from_labeled(2, {{0, "zeta", 1}, {1, "alpha", 0}, {0, "alpha", 0}});
    CHECK(lts.action_labels() == std::vector<std::string>{"alpha", "zeta"});
    REQUIRE(lts.num_transitions() == 3);
    CHECK(lts.transitions()[0] == Transition{0, 1, 1});
    CHECK(lts.transitions()[1] == Transition{1, 0, 0});
}
