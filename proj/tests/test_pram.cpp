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
#include "parbisim/pram.hpp"

#include <random>
#include <set>
#include <vector>

using namespace parbisim;
using namespace parbisim::pram;

namespace {

const Address kX{0, 0};

WriteRequest req(Word value, std::size_t processor) { return {kX, value, processor}; }

} // namespace

TEST_CASE("WritePolicy parsing") {
    CHECK(WritePolicy::parse("priority") == WritePolicy::priority());
    CHECK(WritePolicy::parse("common") == WritePolicy::common());
    CHECK(WritePolicy::parse("arbitrary:42") == WritePolicy::arbitrary(42));
    CHECK(WritePolicy::arbitrary(7).to_string() == "arbitrary:7");
    CHECK_THROWS_AS(WritePolicy::parse("arbitrary"), InputError);
    CHECK_THROWS_AS(WritePolicy::parse("arbitrary:x"), InputError);
    CHECK_THROWS_AS(WritePolicy::parse("random"), InputError);
}

TEST_CASE("resolve_writes") {
    const std::vector<WriteRequest> two{req(9, 0), req(7, 2)};
    CHECK(resolve_writes(two, WritePolicy::priority()) == 9);

    const std::vector<WriteRequest> one{req(4, 3)};
    CHECK(resolve_writes(one, WritePolicy::priority()) == 4);
    CHECK(resolve_writes(one, WritePolicy::common()) == 4);
    CHECK(resolve_writes(one, WritePolicy::arbitrary(11)) == 4);

    const std::vector<WriteRequest> conflict{req(1, 0), req(2, 1)};
    CHECK_THROWS_AS(resolve_writes(conflict, WritePolicy::common()), PolicyViolation);

    const std::vector<WriteRequest> agree{req(5, 0), req(5, 1)};
    CHECK(resolve_writes(agree, WritePolicy::common()) == 5);

    SECTION("priority ignores request order") {
        const std::vector<WriteRequest> shuffled{req(7, 2), req(3, 5), req(9, 0)};
        CHECK(resolve_writes(shuffled, WritePolicy::priority()) == 9);
    }
    SECTION("a processor counts with its last write") {
        const std::vector<WriteRequest> repeated{req(1, 0), req(2, 0), req(3, 1)};
        CHECK(resolve_writes(repeated, WritePolicy::priority()) == 2);
        const std::vector<WriteRequest> overwritten{req(1, 0), req(2, 0), req(2, 1)};
        CHECK(resolve_writes(overwritten, WritePolicy::common()) == 2);
    }
    SECTION("arbitrary picks one of the written values") {
        const std::vector<WriteRequest> many{req(10, 0), req(20, 1), req(30, 2), req(40, 3)};
        std::set<Word> seen;
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            const Word v = resolve_writes(many, WritePolicy::arbitrary(seed));
            CHECK(v % 10 == 0);
            CHECK(v >= 10);
            CHECK(v <= 40);
            CHECK(resolve_writes(many, WritePolicy::arbitrary(seed)) == v);
            seen.insert(v);
        }
        CHECK(seen.size() > 1);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(resolve_writes({}, WritePolicy::priority()), InputError);
        const std::vector<WriteRequest> mixed{req(1, 0), {{0, 1}, 1, 1}};
        CHECK_THROWS_AS(resolve_writes(mixed, WritePolicy::priority()), InputError);
    }
}

TEST_CASE("run_phase") {
    SharedMemory memory;
    const ArrayId x = memory.add_scalar("X", 0);
    const ArrayId cells = memory.add_array("cells", 4, -1);

    SECTION("zero processors leave memory unchanged") {
        const SharedMemory before = memory;
        Engine engine(WritePolicy::common());
        engine.run_phase(0, [&](std::size_t, const SharedMemory &, WriteSink &out) { out.write_scalar(x, 1); },
                         memory);
        CHECK(memory == before);
        CHECK(engine.phases() == 1);
    }
    SECTION("common writers with equal values succeed") {
        Engine engine(WritePolicy::common());
        engine.run_phase(2, [&](std::size_t, const SharedMemory &, WriteSink &out) { out.write_scalar(x, 5); },
                         memory);
        CHECK(memory.scalar(x) == 5);
    }
    SECTION("priority picks the lowest processor") {
        Engine engine(WritePolicy::priority());
        engine.run_phase(
            3,
            [&](std::size_t p, const SharedMemory &, WriteSink &out) {
                if (p == 0) {
                    out.write_scalar(x, 9);
                } else if (p == 2) {
                    out.write_scalar(x, 7);
                }
            },
            memory);
        CHECK(memory.scalar(x) == 9);
    }
    SECTION("common conflicts name the address and leave memory untouched") {
        const SharedMemory before = memory;
        Engine engine(WritePolicy::common());
        try {
            engine.run_phase(
                2,
                [&](std::size_t p, const SharedMemory &, WriteSink &out) {
                    out.write(cells, 0, static_cast<Word>(p));
                    out.write(cells, 2, static_cast<Word>(p));
                },
                memory);
            FAIL("expected a policy violation");
        } catch (const PolicyViolation &e) {
            CHECK(e.address() == "cells[0]");
        }
        CHECK(memory == before);
    }
    SECTION("writes outside memory are rejected") {
        Engine engine(WritePolicy::priority());
        CHECK_THROWS_AS(engine.run_phase(
                            1, [&](std::size_t, const SharedMemory &, WriteSink &out) { out.write(cells, 4, 0); },
                            memory),
                        InputError);
    }
}

TEST_CASE("phases read a snapshot regardless of execution order") {
    // Each processor reads its right neighbour and writes itself; also every
    // processor races on a shared cell with a value derived from the snapshot.
    const auto kernel = [](ArrayId a, ArrayId shared) {
        return [a, shared](std::size_t p, const SharedMemory &snap, WriteSink &out) {
            const std::size_t n = snap.size(a);
            out.write(a, p, snap.get(a, (p + 1) % n) + snap.get(a, p));
            out.write_scalar(shared, snap.get(a, (p * 7) % n));
        };
    };
    for (const WritePolicy policy : {WritePolicy::priority(), WritePolicy::arbitrary(3)}) {
        std::vector<SharedMemory> results;
        for (const ExecutionOrder order : {ExecutionOrder::Forward, ExecutionOrder::Reverse, ExecutionOrder::Shuffled}) {
            for (std::uint64_t shuffle = 0; shuffle < 4; ++shuffle) {
                SharedMemory memory;
                const ArrayId a = memory.add_array("a", 17, 0);
                const ArrayId shared = memory.add_scalar("s", 0);
                std::mt19937_64 rng(99);
                for (std::size_t i = 0; i < 17; ++i) {
                    memory.set(a, i, static_cast<Word>(rng() % 100));
                }
                Engine engine(policy, order, shuffle);
                for (int step = 0; step < 5; ++step) {
                    engine.run_phase(17, kernel(a, shared), memory);
                }
                results.push_back(memory);
            }
        }
        for (const SharedMemory &m : results) {
            CHECK(m == results.front());
        }
    }
}

TEST_CASE("arbitrary resolution is reproducible and varies across phases") {
    const auto run = [](std::uint64_t seed) {
        SharedMemory memory;
        const ArrayId x = memory.add_array("x", 8, 0);
        Engine engine(WritePolicy::arbitrary(seed));
        std::vector<Word> history;
        for (int step = 0; step < 32; ++step) {
            engine.run_phase(
                16, [&](std::size_t p, const SharedMemory &, WriteSink &out) { out.write(x, p % 8, static_cast<Word>(p)); },
                memory);
            history.insert(history.end(), memory.array(x).begin(), memory.array(x).end());
        }
        return history;
    };
    CHECK(run(5) == run(5));
    CHECK(run(5) != run(6));
    const auto h = run(5);
    std::set<Word> winners_of_cell0;
    for (std::size_t i = 0; i < h.size(); i += 8) {
        winners_of_cell0.insert(h[i]);
    }
    CHECK(winners_of_cell0 == std::set<Word>{0, 8});
}
