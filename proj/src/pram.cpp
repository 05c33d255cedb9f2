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

#include "parbisim/pram.hpp"

#include "parbisim/error.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

namespace parbisim::pram {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t arbitrary_pick(std::uint64_t seed, std::uint64_t superstep, const Address &a) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ superstep);
    h = splitmix64(h ^ a.array);
    return splitmix64(h ^ a.index);
}

// Requests must be sorted by processor with each processor's writes in
// issue order; returns the effective write of every distinct processor.
template <typename Fn>
void for_each_writer(std::span<const WriteRequest> sorted, Fn &&fn) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1].processor == sorted[i].processor) {
            continue;
        }
        fn(sorted[i]);
    }
}

template <typename NameFn>
Word resolve_sorted(std::span<const WriteRequest> sorted, const WritePolicy &policy, std::uint64_t superstep,
                    NameFn &&address_name) {
    switch (policy.kind()) {
    case WritePolicy::Kind::Priority: {
        // Lowest processor, last write of that processor.
        std::size_t i = 0;
        while (i + 1 < sorted.size() && sorted[i + 1].processor == sorted[0].processor) {
            ++i;
        }
        return sorted[i].value;
    }
    case WritePolicy::Kind::Common: {
        bool first = true;
        Word value = 0;
        for_each_writer(sorted, [&](const WriteRequest &r) {
            if (first) {
                value = r.value;
                first = false;
            } else if (r.value != value) {
                throw PolicyViolation(address_name());
            }
        });
        return value;
    }
    case WritePolicy::Kind::Arbitrary: {
        std::vector<Word> values;
        for_each_writer(sorted, [&](const WriteRequest &r) { values.push_back(r.value); });
        const auto pick = arbitrary_pick(policy.seed(), superstep, sorted.front().address);
        return values[pick % values.size()];
    }
    }
    return sorted.front().value;
}

} // namespace

WritePolicy WritePolicy::parse(std::string_view text) {
    if (text == "priority") {
        return priority();
    }
    if (text == "common") {
        return common();
    }
    constexpr std::string_view prefix = "arbitrary:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view digits = text.substr(prefix.size());
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
            return arbitrary(seed);
        }
    }
    throw InputError("unknown write policy '" + std::string(text) +
                     "' (expected priority, arbitrary:<seed> or common)");
}

std::string WritePolicy::to_string() const {
    switch (kind_) {
    case Kind::Priority:
        return "priority";
    case Kind::Arbitrary:
        return "arbitrary:" + std::to_string(seed_);
    case Kind::Common:
        return "common";
    }
    return "?";
}

ArrayId SharedMemory::add_array(std::string name, std::size_t size, Word fill) {
    arrays_.emplace_back(size, fill);
    names_.push_back(std::move(name));
    return static_cast<ArrayId>(arrays_.size() - 1);
}

void SharedMemory::fill(ArrayId array, Word value) {
    auto &cells = arrays_.at(array);
    std::fill(cells.begin(), cells.end(), value);
}

void SharedMemory::resize(ArrayId array, std::size_t size, Word fill) { arrays_.at(array).assign(size, fill); }

std::string SharedMemory::describe(Address a) const {
    if (arrays_.at(a.array).size() == 1 && a.index == 0) {
        return names_[a.array];
    }
    return names_[a.array] + "[" + std::to_string(a.index) + "]";
}

Word resolve_writes(std::span<const WriteRequest> requests, const WritePolicy &policy, std::uint64_t superstep,
                    std::string_view address_name) {
    if (requests.empty()) {
        throw InputError("resolve_writes needs at least one request");
    }
    for (const auto &r : requests) {
        if (r.address != requests.front().address) {
            throw InputError("resolve_writes given requests for different addresses");
        }
    }
    std::vector<WriteRequest> sorted(requests.begin(), requests.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const WriteRequest &a, const WriteRequest &b) { return a.processor < b.processor; });
    return resolve_sorted(sorted, policy, superstep, [&] { return std::string(address_name); });
}

void Engine::run_phase(std::size_t num_processors, const Kernel &kernel, SharedMemory &memory) {
    const std::uint64_t superstep = phases_++;
    requests_.clear();

    schedule_.resize(num_processors);
    std::iota(schedule_.begin(), schedule_.end(), std::size_t{0});
    if (order_ == ExecutionOrder::Reverse) {
        std::reverse(schedule_.begin(), schedule_.end());
    } else if (order_ == ExecutionOrder::Shuffled) {
        std::mt19937_64 rng(splitmix64(shuffle_seed_ ^ superstep));
        std::shuffle(schedule_.begin(), schedule_.end(), rng);
    }

    const SharedMemory &snapshot = memory;
    for (const std::size_t p : schedule_) {
        WriteSink sink(requests_, p);
        kernel(p, snapshot, sink);
    }
    if (requests_.empty()) {
        return;
    }

    // Each processor's requests are contiguous and in issue order, so a
    // stable sort yields per-address groups ranked by processor.
    std::stable_sort(requests_.begin(), requests_.end(), [](const WriteRequest &a, const WriteRequest &b) {
        if (a.address != b.address) {
            return a.address < b.address;
        }
        return a.processor < b.processor;
    });

    for (const auto &r : requests_) {
        if (r.address.array >= memory.num_arrays() || r.address.index >= memory.size(r.address.array)) {
            throw InputError("processor " + std::to_string(r.processor) + " wrote outside shared memory");
        }
    }

    // Resolve everything before applying anything.
    std::vector<std::pair<Address, Word>> resolved;
    std::size_t begin = 0;
    while (begin < requests_.size()) {
        std::size_t end = begin + 1;
        while (end < requests_.size() && requests_[end].address == requests_[begin].address) {
            ++end;
        }
        const std::span<const WriteRequest> group(requests_.data() + begin, end - begin);
        const Address address = group.front().address;
        resolved.emplace_back(address, resolve_sorted(group, policy_, superstep, [&] { return memory.describe(address); }));
        begin = end;
    }
    for (const auto &[address, value] : resolved) {
        memory.set(address.array, address.index, value);
    }
}

} // namespace parbisim::pram
