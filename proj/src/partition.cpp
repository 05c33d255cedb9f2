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

#include "parbisim/partition.hpp"

#include "parbisim/error.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

namespace parbisim {

Partition::Partition(std::vector<StateId> block) : block_(std::move(block)) {
    for (std::size_t s = 0; s < block_.size(); ++s) {
        const StateId leader = block_[s];
        if (leader >= block_.size()) {
            throw InputError("state " + std::to_string(s) + " has out-of-range leader " +
                             std::to_string(leader));
        }
        if (block_[leader] != leader) {
            throw InputError("leader " + std::to_string(leader) + " of state " + std::to_string(s) +
                             " is not in its own block");
        }
    }
}

Partition Partition::discrete(std::size_t n) {
    std::vector<StateId> block(n);
    for (std::size_t s = 0; s < n; ++s) {
        block[s] = static_cast<StateId>(s);
    }
    return Partition(std::move(block));
}

Partition Partition::trivial(std::size_t n) { return Partition(std::vector<StateId>(n, 0)); }

namespace {

template <typename T>
Partition from_values(std::span<const T> assignment) {
    std::unordered_map<T, StateId> leader_of_value;
    std::vector<StateId> block(assignment.size());
    for (std::size_t s = 0; s < assignment.size(); ++s) {
        auto [it, inserted] = leader_of_value.try_emplace(assignment[s], static_cast<StateId>(s));
        block[s] = it->second;
    }
    return Partition(std::move(block));
}

} // namespace

Partition partition_from_assignment(std::span<const std::int64_t> assignment) {
    return from_values(assignment);
}

Partition partition_from_assignment(std::span<const std::int64_t> assignment, std::size_t n) {
    if (assignment.size() != n) {
        throw InputError("assignment has " + std::to_string(assignment.size()) +
                         " entries, expected " + std::to_string(n));
    }
    return from_values(assignment);
}

Partition partition_from_assignment(std::span<const StateId> assignment) { return from_values(assignment); }

bool partitions_equal(const Partition &p, const Partition &q) {
    if (p.size() != q.size()) {
        throw InputError("cannot compare partitions over " + std::to_string(p.size()) + " and " +
                         std::to_string(q.size()) + " states");
    }
    constexpr StateId unset = std::numeric_limits<StateId>::max();
    std::vector<StateId> p_to_q(p.size(), unset);
    std::vector<StateId> q_to_p(q.size(), unset);
    for (std::size_t s = 0; s < p.size(); ++s) {
        const StateId a = p.block()[s];
        const StateId b = q.block()[s];
        if (p_to_q[a] == unset && q_to_p[b] == unset) {
            p_to_q[a] = b;
            q_to_p[b] = a;
        } else if (p_to_q[a] != b || q_to_p[b] != a) {
            return false;
        }
    }
    return true;
}

std::size_t block_count(const Partition &p) {
    std::size_t count = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        count += p.block()[s] == s ? 1 : 0;
    }
    return count;
}

bool refines(const Partition &fine, const Partition &coarse) {
    if (fine.size() != coarse.size()) {
        throw InputError("refinement check over partitions of different sizes");
    }
    for (std::size_t s = 0; s < fine.size(); ++s) {
        if (coarse.block()[s] != coarse.block()[fine.block()[s]]) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<StateId>> blocks_of(const Partition &p) {
    std::unordered_map<StateId, std::size_t> index;
    std::vector<std::vector<StateId>> result;
    for (std::size_t s = 0; s < p.size(); ++s) {
        auto [it, inserted] = index.try_emplace(p.block()[s], result.size());
        if (inserted) {
            result.emplace_back();
        }
        result[it->second].push_back(static_cast<StateId>(s));
    }
    return result;
}

Partition canonical(const Partition &p) { return partition_from_assignment(p.block()); }

std::int64_t rcpp_iteration_bound(std::size_t n, std::size_t initial_blocks) {
    return 2 * static_cast<std::int64_t>(n) - static_cast<std::int64_t>(initial_blocks);
}

std::int64_t bcrp_iteration_bound(std::size_t n, std::size_t initial_blocks) {
    return 3 * static_cast<std::int64_t>(n) - static_cast<std::int64_t>(initial_blocks);
}

} // namespace parbisim
