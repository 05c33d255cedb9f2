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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace parbisim::aut {

/// Header line `des (<initial>, <m>, <n>)` of an Aldebaran file.
struct AutHeader {
    StateId initial_state = 0;
    std::size_t declared_m = 0;
    std::size_t declared_n = 0;
};

/**
 * Parses an Aldebaran `.aut` file.
 *
 * Labels are either bare tokens or double-quoted strings; quotes are
 * stripped and no escapes are processed. Blank lines and CR characters are
 * ignored. Errors are reported as ParseError with the offending line.
 */
Lts parse_aut(std::istream &in);
Lts parse_aut(std::string_view text);
Lts read_aut_file(const std::string &path);

/// Writes `des (init, m, n)` followed by one line per transition, labels quoted.
void write_aut(std::ostream &out, const Lts &lts);
std::string write_aut(const Lts &lts);

/// One `<state> <leader>` line per state, ascending.
void write_partition(std::ostream &out, const Partition &p);
std::string write_partition(const Partition &p);

/// Reads `<state> <block-id>` lines; every state in [0, n) must occur once.
Partition read_partition(std::istream &in, std::size_t n);
Partition read_partition(std::string_view text, std::size_t n);

/**
 * The quotient of `lts` under `p`: one state per block, numbered by
 * ascending leader, with deduplicated block-level transitions.
 */
Lts quotient(const Lts &lts, const Partition &p);

} // namespace parbisim::aut
