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

#include "parbisim/oracle.hpp"

#include "parbisim/error.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

namespace parbisim::oracle {

namespace {

void check_size(const Lts &lts, const Partition &p) {
    if (p.size() != lts.num_states()) {
        throw InputError("partition over " + std::to_string(p.size()) + " states given for an LTS with " +
                         std::to_string(lts.num_states()));
    }
}

std::vector<std::vector<Transition>> outgoing(const Lts &lts) {
    std::vector<std::vector<Transition>> out(lts.num_states());
    for (const Transition &t : lts.transitions()) {
        out[t.source].push_back(t);
    }
    return out;
}

} // namespace

Partition ks_sequential(const Lts &lts, const Partition &pi0, std::vector<Partition> *trace) {
    check_size(lts, pi0);
    if (lts.num_actions() > 1) {
        throw InputError("ks_sequential handles a single relation; use the labeled refinement for " +
                         std::to_string(lts.num_actions()) + " action labels");
    }
    const std::size_t n = lts.num_states();

    std::vector<std::vector<StateId>> predecessors(n);
    for (const Transition &t : lts.transitions()) {
        predecessors[t.target].push_back(t.source);
    }

    // Blocks get stable ids; block_of maps a state to its block id.
    std::vector<std::vector<StateId>> members;
    std::vector<std::size_t> block_of(n);
    for (const auto &b : blocks_of(pi0)) {
        for (StateId s : b) {
            block_of[s] = members.size();
        }
        members.push_back(b);
    }

    std::deque<std::size_t> unstable;
    std::vector<char> queued(members.size(), 1);
    for (std::size_t b = 0; b < members.size(); ++b) {
        unstable.push_back(b);
    }

    std::vector<char> in_preimage(n, 0);
    std::vector<std::size_t> hits;
    while (!unstable.empty()) {
        const std::size_t splitter = unstable.front();
        unstable.pop_front();
        queued[splitter] = 0;

        std::vector<StateId> preimage;
        for (StateId t : members[splitter]) {
            for (StateId s : predecessors[t]) {
                if (!in_preimage[s]) {
                    in_preimage[s] = 1;
                    preimage.push_back(s);
                }
            }
        }

        hits.assign(members.size(), 0);
        std::vector<std::size_t> touched;
        for (StateId s : preimage) {
            if (hits[block_of[s]]++ == 0) {
                touched.push_back(block_of[s]);
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t b : touched) {
            if (hits[b] == members[b].size()) {
                continue;
            }
            // Split b into b ∩ S' (keeps the id) and b \ S' (fresh id).
            std::vector<StateId> inside;
            std::vector<StateId> outside;
            for (StateId s : members[b]) {
                (in_preimage[s] ? inside : outside).push_back(s);
            }
            const std::size_t fresh = members.size();
            for (StateId s : outside) {
                block_of[s] = fresh;
            }
            members[b] = std::move(inside);
            members.push_back(std::move(outside));
            queued.push_back(0);
            for (std::size_t id : {b, fresh}) {
                if (!queued[id]) {
                    queued[id] = 1;
                    unstable.push_back(id);
                }
            }
        }
        for (StateId s : preimage) {
            in_preimage[s] = 0;
        }
        if (trace != nullptr) {
            std::vector<std::int64_t> assignment(block_of.begin(), block_of.end());
            trace->push_back(partition_from_assignment(assignment));
        }
    }

    std::vector<std::int64_t> assignment(block_of.begin(), block_of.end());
    return partition_from_assignment(assignment);
}

Partition brute_force_bisim_refining(const Lts &lts, const Partition &pi0) {
    check_size(lts, pi0);
    const std::size_t n = lts.num_states();
    const auto out = outgoing(lts);

    std::vector<char> related(n * n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            related[s * n + t] = pi0.same_block(static_cast<StateId>(s), static_cast<StateId>(t)) ? 1 : 0;
        }
    }

    // Every step of s must be matched by an equally labeled step of t into a related state.
    const auto simulates = [&](std::size_t s, std::size_t t) {
        for (const Transition &step : out[s]) {
            const bool matched = std::any_of(out[t].begin(), out[t].end(), [&](const Transition &answer) {
                return answer.action == step.action && related[step.target * n + answer.target];
            });
            if (!matched) {
                return false;
            }
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = s + 1; t < n; ++t) {
                if (related[s * n + t] && !(simulates(s, t) && simulates(t, s))) {
                    related[s * n + t] = 0;
                    related[t * n + s] = 0;
                    changed = true;
                }
            }
        }
    }

    std::vector<std::int64_t> assignment(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t t = 0;
        while (!related[s * n + t]) {
            ++t;
        }
        assignment[s] = static_cast<std::int64_t>(t);
    }
    return partition_from_assignment(assignment);
}

Partition brute_force_bisim(const Lts &lts) {
    return brute_force_bisim_refining(lts, Partition::trivial(lts.num_states()));
}

bool is_stable_under(const Lts &lts, const Partition &p, std::span<const StateId> splitter) {
    check_size(lts, p);
    const std::size_t n = lts.num_states();
    std::vector<char> in_splitter(n, 0);
    for (StateId s : splitter) {
        in_splitter.at(s) = 1;
    }
    for (ActionId a = 0; a < lts.num_actions(); ++a) {
        std::vector<char> reaches(n, 0);
        for (const Transition &t : lts.transitions()) {
            if (t.action == a && in_splitter[t.target]) {
                reaches[t.source] = 1;
            }
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (reaches[s] != reaches[p.block()[s]]) {
                return false;
            }
        }
    }
    return true;
}

bool is_stable(const Lts &lts, const Partition &p) {
    check_size(lts, p);
    // Group sources by (target block, action); each group is one reachability set.
    struct Key {
        StateId target_block;
        ActionId action;
        StateId source;
        auto operator<=>(const Key &) const = default;
    };
    std::vector<Key> keys;
    keys.reserve(lts.num_transitions());
    for (const Transition &t : lts.transitions()) {
        keys.push_back({p.block()[t.target], t.action, t.source});
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<std::size_t> block_size(p.size(), 0);
    for (std::size_t s = 0; s < p.size(); ++s) {
        ++block_size[p.block()[s]];
    }

    std::vector<std::size_t> hits(p.size(), 0);
    std::size_t begin = 0;
    while (begin < keys.size()) {
        std::size_t end = begin;
        while (end < keys.size() && keys[end].target_block == keys[begin].target_block &&
               keys[end].action == keys[begin].action) {
            ++hits[p.block()[keys[end].source]];
            ++end;
        }
        bool stable = true;
        for (std::size_t i = begin; i < end; ++i) {
            const StateId b = p.block()[keys[i].source];
            if (hits[b] != block_size[b]) {
                stable = false;
            }
        }
        for (std::size_t i = begin; i < end; ++i) {
            hits[p.block()[keys[i].source]] = 0;
        }
        if (!stable) {
            return false;
        }
        begin = end;
    }
    return true;
}

} // namespace parbisim::oracle
