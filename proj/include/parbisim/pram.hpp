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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parbisim::pram {

/// How concurrent writes to one cell are resolved.
class WritePolicy {
public:
    enum class Kind { Priority, Arbitrary, Common };

    /// The writer with the lowest processor index wins.
    static WritePolicy priority() { return WritePolicy(Kind::Priority, 0); }
    /// One writer wins, chosen by a seeded hash; reproducible per seed.
    static WritePolicy arbitrary(std::uint64_t seed) { return WritePolicy(Kind::Arbitrary, seed); }
    /// All writers must agree on the value, otherwise PolicyViolation.
    static WritePolicy common() { return WritePolicy(Kind::Common, 0); }

    /// Parses `priority`, `arbitrary:<seed>` or `common`; throws InputError.
    static WritePolicy parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::string to_string() const;

    friend bool operator==(const WritePolicy &, const WritePolicy &) = default;

private:
    WritePolicy(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}

    Kind kind_;
    std::uint64_t seed_;
};

using Word = std::int64_t;
using ArrayId = std::uint32_t;

/// A memory cell: element `index` of a registered array (scalars have index 0).
struct Address {
    ArrayId array;
    std::size_t index;

    friend auto operator<=>(const Address &, const Address &) = default;
};

struct WriteRequest {
    Address address;
    Word value;
    std::size_t processor;
};

/// The common memory of the machine: a set of named word arrays.
class SharedMemory {
public:
    ArrayId add_array(std::string name, std::size_t size, Word fill = 0);
    ArrayId add_scalar(std::string name, Word value = 0) { return add_array(std::move(name), 1, value); }

    Word get(ArrayId array, std::size_t index) const { return arrays_[array].at(index); }
    Word get(Address a) const { return get(a.array, a.index); }
    Word scalar(ArrayId array) const { return get(array, 0); }
    std::span<const Word> array(ArrayId array) const { return arrays_.at(array); }
    std::size_t size(ArrayId array) const { return arrays_.at(array).size(); }
    std::size_t num_arrays() const noexcept { return arrays_.size(); }
    const std::string &name(ArrayId array) const { return names_.at(array); }

    /// Host-side access between phases (initialisation, resets).
    void set(ArrayId array, std::size_t index, Word value) { arrays_[array].at(index) = value; }
    void set_scalar(ArrayId array, Word value) { set(array, 0, value); }
    void fill(ArrayId array, Word value);
    void resize(ArrayId array, std::size_t size, Word fill = 0);

    /// "name[index]", or just "name" for scalars.
    std::string describe(Address a) const;

    friend bool operator==(const SharedMemory &, const SharedMemory &) = default;

private:
    std::vector<std::vector<Word>> arrays_;
    std::vector<std::string> names_;
};

/// Collects the writes issued by one processor during a phase.
class WriteSink {
public:
    void write(ArrayId array, std::size_t index, Word value) {
        requests_.push_back({{array, index}, value, processor_});
    }
    void write_scalar(ArrayId array, Word value) { write(array, 0, value); }

private:
    friend class Engine;
    WriteSink(std::vector<WriteRequest> &requests, std::size_t processor)
        : requests_(requests), processor_(processor) {}

    std::vector<WriteRequest> &requests_;
    std::size_t processor_;
};

/// A per-processor program step. It may only read the snapshot it is given.
using Kernel = std::function<void(std::size_t processor, const SharedMemory &snapshot, WriteSink &out)>;

/// Order in which the engine invokes processors within a phase. The result
/// never depends on it; it exists so tests can check that.
enum class ExecutionOrder { Forward, Reverse, Shuffled };

/**
 * Resolves the writes that target a single address. Requests are ranked by
 * processor index; a processor issuing several writes counts with its last.
 * Throws PolicyViolation (naming `address_name`) for Common conflicts and
 * InputError for an empty set.
 */
Word resolve_writes(std::span<const WriteRequest> requests, const WritePolicy &policy,
                    std::uint64_t superstep = 0, std::string_view address_name = "cell");

/// Lock-step CRCW executor: one call to run_phase is one barrier-separated superstep.
class Engine {
public:
    explicit Engine(WritePolicy policy, ExecutionOrder order = ExecutionOrder::Forward,
                    std::uint64_t shuffle_seed = 0)
        : policy_(policy), order_(order), shuffle_seed_(shuffle_seed) {}

    /// Runs `kernel` for processors 0..num_processors-1 against the current
    /// memory, then applies one resolved value per written address.
    void run_phase(std::size_t num_processors, const Kernel &kernel, SharedMemory &memory);

    const WritePolicy &policy() const noexcept { return policy_; }
    /// Number of phases run so far; salts the Arbitrary choice.
    std::uint64_t phases() const noexcept { return phases_; }

private:
    WritePolicy policy_;
    ExecutionOrder order_;
    std::uint64_t shuffle_seed_;
    std::uint64_t phases_ = 0;
    std::vector<WriteRequest> requests_;
    std::vector<std::size_t> schedule_;
};

} // namespace parbisim::pram
