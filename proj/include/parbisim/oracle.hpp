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

#include "parbisim/lts.hpp"
#include "parbisim/partition.hpp"

#include <span>
#include <vector>

/// Sequential reference implementations used to check the PRAM algorithms.
namespace parbisim::oracle {

/**
 * Kanellakis-Smolka refinement of `pi0` for an LTS with at most one action
 * label. Unstable blocks are processed first-in first-out; each splitter
 * splits every block that both meets and misses its predecessor set.
 *
 * If `trace` is given, the partition after every splitter pass is appended.
 * Throws InputError for multi-label input.
 */
Partition ks_sequential(const Lts &lts, const Partition &pi0, std::vector<Partition> *trace = nullptr);

/// Coarsest strong bisimulation, computed as a greatest fixed point on pairs.
Partition brute_force_bisim(const Lts &lts);

/// Coarsest strong bisimulation that refines `pi0`.
Partition brute_force_bisim_refining(const Lts &lts, const Partition &pi0);

/// True iff for every block U, action a and block B, either all or none of B reach U via a.
bool is_stable(const Lts &lts, const Partition &p);

/// True iff every block of `p` is stable under the state set `splitter`.
bool is_stable_under(const Lts &lts, const Partition &p, std::span<const StateId> splitter);

} // namespace parbisim::oracle
