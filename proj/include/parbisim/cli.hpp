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

#include "parbisim/partition.hpp"
#include "parbisim/pram.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace parbisim::cli {

/// Process exit statuses of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParseError = 2,
    kViolation = 3,
    kPolicyViolation = 4,
    kInternal = 5,
};

enum class EngineKind { Pram, Sequential, Oracle, Auto };

/// The brute-force oracle refuses inputs with more states than this.
inline constexpr std::size_t kOracleStateLimit = 200;

struct CliConfig {
    std::string input;
    std::string output;
    pram::WritePolicy policy = pram::WritePolicy::priority();
    EngineKind engine = EngineKind::Pram;
    /// Initial partition file; selects single-relation mode.
    std::string pi0_path;
    std::string partition_out;
    std::string stats_out;
    std::size_t fanout_n = 0;
};

/// One run's bound report, printed as a single line of key=value pairs.
struct StatsRecord {
    std::string mode;
    std::string policy;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t actions = 0;
    std::size_t initial_blocks = 0;
    std::size_t preprocessing_rounds = 0;
    std::size_t supersteps = 0;
    std::size_t splitter_iterations = 0;
    std::size_t blocks = 0;
    std::size_t phases = 0;
    std::int64_t bound = 0;
    std::int64_t bound_margin = 0;

    double supersteps_per_n() const { return n == 0 ? 0.0 : static_cast<double>(supersteps) / static_cast<double>(n); }
};

std::string format_stats(const StatsRecord &record);

/// Two states grouped together by one partition and apart by the other.
std::optional<std::pair<StateId, StateId>> distinguishing_pair(const Partition &p, const Partition &q);

int cmd_reduce(const CliConfig &config, std::ostream &out, std::ostream &err);
int cmd_compare(const CliConfig &config, std::ostream &out, std::ostream &err);
int cmd_stats(const CliConfig &config, std::ostream &out, std::ostream &err);
int cmd_gen_fanout(const CliConfig &config, std::ostream &out, std::ostream &err);

/// Parses the command line and dispatches to a subcommand.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace parbisim::cli
