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

#include "parbisim/cli.hpp"

#include "parbisim/aut_io.hpp"
#include "parbisim/bcrp.hpp"
#include "parbisim/error.hpp"
#include "parbisim/fanout.hpp"
#include "parbisim/oracle.hpp"
#include "parbisim/rcpp.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace parbisim::cli {

namespace {

int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const PolicyViolation &e) {
        err << "policy violation: " << e.what() << '\n';
        return kPolicyViolation;
    } catch (const GuardExceeded &e) {
        err << "guard tripped: " << e.what() << '\n';
        return kInternal;
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

void write_file(const std::string &path, const std::function<void(std::ostream &)> &writer) {
    std::ofstream file(path);
    if (!file) {
        throw InputError("cannot write " + path);
    }
    writer(file);
    if (!file) {
        throw InputError("failed writing " + path);
    }
}

Partition load_pi0(const CliConfig &config, const Lts &lts) {
    if (config.pi0_path.empty()) {
        return Partition::trivial(lts.num_states());
    }
    std::ifstream in(config.pi0_path);
    if (!in) {
        throw InputError("cannot open " + config.pi0_path);
    }
    return aut::read_partition(in, lts.num_states());
}

struct PramRun {
    RunResult result;
    StatsRecord record;
};

// Labeled refinement unless an initial partition asks for single-relation mode.
PramRun run_pram(const Lts &lts, const CliConfig &config) {
    PramRun run;
    StatsRecord &r = run.record;
    if (!config.pi0_path.empty()) {
        run.result = rcpp::rcpp_run(rcpp::relation_of(lts, load_pi0(config, lts)), config.policy);
        r.mode = "rcpp";
    } else {
        run.result = bcrp::bcrp_run(lts, config.policy);
        r.mode = "bcrp";
    }
    const RunStats &s = run.result.stats;
    r.policy = config.policy.to_string();
    r.n = lts.num_states();
    r.m = lts.num_transitions();
    r.actions = lts.num_actions();
    r.initial_blocks = s.initial_block_count;
    r.preprocessing_rounds = s.preprocessing_rounds;
    r.supersteps = s.supersteps;
    r.splitter_iterations = s.splitter_iterations();
    r.blocks = s.final_block_count;
    r.phases = s.phases;
    r.bound = r.mode == "rcpp" ? rcpp_iteration_bound(r.n, r.initial_blocks) : bcrp_iteration_bound(r.n, r.initial_blocks);
    r.bound_margin = r.bound - static_cast<std::int64_t>(r.splitter_iterations);
    return run;
}

void require_single_label(const Lts &lts) {
    if (lts.num_actions() > 1) {
        throw InputError("the sequential engine needs a single-label LTS, this one has " +
                         std::to_string(lts.num_actions()) + " labels");
    }
}

void require_oracle_size(const Lts &lts) {
    if (lts.num_states() > kOracleStateLimit) {
        throw InputError("the brute-force oracle is limited to " + std::to_string(kOracleStateLimit) +
                         " states, input has " + std::to_string(lts.num_states()));
    }
}

} // namespace

std::string format_stats(const StatsRecord &r) {
    std::ostringstream out;
    out << "mode=" << r.mode << " policy=" << r.policy << " n=" << r.n << " m=" << r.m << " actions=" << r.actions
        << " initial_blocks=" << r.initial_blocks << " preprocessing_rounds=" << r.preprocessing_rounds
        << " supersteps=" << r.supersteps << " splitter_iterations=" << r.splitter_iterations
        << " supersteps_per_n=" << std::fixed << std::setprecision(4) << r.supersteps_per_n()
        << " blocks=" << r.blocks << " phases=" << r.phases << " bound=" << r.bound
        << " bound_margin=" << r.bound_margin;
    return out.str();
}

std::optional<std::pair<StateId, StateId>> distinguishing_pair(const Partition &p, const Partition &q) {
    if (p.size() != q.size()) {
        throw InputError("partitions of different sizes");
    }
    for (const auto &[a, b] : {std::pair{&p, &q}, std::pair{&q, &p}}) {
        std::map<StateId, StateId> first_member;
        for (StateId s = 0; s < a->size(); ++s) {
            const StateId f = first_member.try_emplace(a->block()[s], s).first->second;
            if (!b->same_block(s, f)) {
                return std::pair{f, s};
            }
        }
    }
    return std::nullopt;
}

int cmd_reduce(const CliConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Lts lts = aut::read_aut_file(config.input);
        Partition result;
        std::optional<StatsRecord> record;
        switch (config.engine) {
        case EngineKind::Pram:
        case EngineKind::Auto: {
            PramRun run = run_pram(lts, config);
            result = run.result.partition;
            record = run.record;
            break;
        }
        case EngineKind::Sequential:
            require_single_label(lts);
            result = oracle::ks_sequential(lts, load_pi0(config, lts));
            break;
        case EngineKind::Oracle:
            require_oracle_size(lts);
            result = oracle::brute_force_bisim_refining(lts, load_pi0(config, lts));
            break;
        }

        const Lts reduced = aut::quotient(lts, result);
        if (!config.output.empty()) {
            write_file(config.output, [&](std::ostream &file) { aut::write_aut(file, reduced); });
        }
        if (!config.partition_out.empty()) {
            write_file(config.partition_out, [&](std::ostream &file) { aut::write_partition(file, result); });
        }
        out << "n=" << lts.num_states() << " m=" << lts.num_transitions() << " actions=" << lts.num_actions()
            << " blocks=" << block_count(result);
        if (record) {
            out << " supersteps=" << record->supersteps;
        }
        out << " quotient_m=" << reduced.num_transitions() << '\n';
        if (record && !config.stats_out.empty()) {
            write_file(config.stats_out, [&](std::ostream &file) { file << format_stats(*record) << '\n'; });
        }
        return static_cast<int>(kOk);
    });
}

int cmd_compare(const CliConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Lts lts = aut::read_aut_file(config.input);
        const Partition pi0 = load_pi0(config, lts);

        std::vector<std::pair<std::string, Partition>> references;
        const bool auto_pick = config.engine == EngineKind::Auto || config.engine == EngineKind::Pram;
        if (config.engine == EngineKind::Sequential) {
            require_single_label(lts);
        }
        if (config.engine == EngineKind::Oracle) {
            require_oracle_size(lts);
        }
        if (config.engine == EngineKind::Sequential || (auto_pick && lts.num_actions() <= 1)) {
            references.emplace_back("sequential", oracle::ks_sequential(lts, pi0));
        }
        if (config.engine == EngineKind::Oracle || (auto_pick && lts.num_states() <= kOracleStateLimit)) {
            references.emplace_back("oracle", oracle::brute_force_bisim_refining(lts, pi0));
        }
        if (references.empty()) {
            throw InputError("no reference engine applies: input has " + std::to_string(lts.num_actions()) +
                             " labels and " + std::to_string(lts.num_states()) + " states");
        }

        const PramRun run = run_pram(lts, config);
        const Partition &mine = run.result.partition;
        out << "pram(" << config.policy.to_string() << "): " << block_count(mine) << " blocks\n";
        int status = kOk;
        for (const auto &[name, reference] : references) {
            out << name << ": " << block_count(reference) << " blocks\n";
            if (const auto pair = distinguishing_pair(mine, reference)) {
                out << "disagree with " << name << ": states " << pair->first << " and " << pair->second
                    << " are " << (mine.same_block(pair->first, pair->second) ? "merged" : "separated")
                    << " by pram\n";
                status = kViolation;
            }
        }
        if (status == kOk) {
            out << "agree\n";
        }
        return status;
    });
}

int cmd_stats(const CliConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Lts lts = aut::read_aut_file(config.input);
        const PramRun run = run_pram(lts, config);
        const std::string line = format_stats(run.record);
        out << line << '\n';
        if (!config.stats_out.empty()) {
            write_file(config.stats_out, [&](std::ostream &file) { file << line << '\n'; });
        }
        if (run.record.bound_margin < 0) {
            err << "iteration bound violated\n";
            return static_cast<int>(kViolation);
        }
        return static_cast<int>(kOk);
    });
}

int cmd_gen_fanout(const CliConfig &config, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Lts lts = gen_fanout(config.fanout_n);
        if (config.output.empty()) {
            aut::write_aut(out, lts);
        } else {
            write_file(config.output, [&](std::ostream &file) { aut::write_aut(file, lts); });
        }
        return static_cast<int>(kOk);
    });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Strong bisimulation minimisation with linear-time PRAM partition refinement"};
    app.require_subcommand(1);

    CliConfig config;
    std::string policy = "priority";
    std::string engine;

    const std::map<std::string, EngineKind> reduce_engines{
        {"pram", EngineKind::Pram}, {"sequential", EngineKind::Sequential}, {"oracle", EngineKind::Oracle}};
    const std::map<std::string, EngineKind> compare_engines{
        {"auto", EngineKind::Auto}, {"sequential", EngineKind::Sequential}, {"oracle", EngineKind::Oracle}};

    auto *reduce = app.add_subcommand("reduce", "Minimise an .aut file modulo strong bisimulation");
    reduce->add_option("input", config.input, "Input .aut file")->required();
    reduce->add_option("-o,--output", config.output, "Quotient .aut file")->required();
    reduce->add_option("--policy", policy, "priority | arbitrary:<seed> | common");
    reduce->add_option("--engine", engine, "pram | sequential | oracle")->check(CLI::IsMember(reduce_engines));
    reduce->add_option("--pi0", config.pi0_path, "Initial partition (single-relation mode)");
    reduce->add_option("--partition-out", config.partition_out, "Write the final partition here");
    reduce->add_option("--stats-out", config.stats_out, "Write the run statistics here");

    auto *compare = app.add_subcommand("compare", "Cross-check the PRAM result against sequential references");
    compare->add_option("input", config.input, "Input .aut file")->required();
    compare->add_option("--policy", policy, "priority | arbitrary:<seed> | common");
    compare->add_option("--engine", engine, "auto | sequential | oracle")->check(CLI::IsMember(compare_engines));
    compare->add_option("--pi0", config.pi0_path, "Initial partition (single-relation mode)");

    auto *stats = app.add_subcommand("stats", "Report iteration counts against the proven bounds");
    stats->add_option("input", config.input, "Input .aut file")->required();
    stats->add_option("--policy", policy, "priority | arbitrary:<seed> | common");
    stats->add_option("--pi0", config.pi0_path, "Initial partition (single-relation mode)");
    stats->add_option("--stats-out", config.stats_out, "Also write the record here");

    auto *gen = app.add_subcommand("gen", "Generate benchmark transition systems");
    gen->require_subcommand(1);
    auto *fanout = gen->add_subcommand("fanout", "The Fan_out_n family");
    fanout->add_option("n", config.fanout_n, "Number of states (>= 3)")->required();
    fanout->add_option("-o,--output", config.output, "Output .aut file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << '\n';
        for (const CLI::App *sub : app.get_subcommands()) {
            err << sub->help();
        }
        return kUsage;
    }

    try {
        config.policy = pram::WritePolicy::parse(policy);
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (reduce->parsed()) {
        config.engine = engine.empty() ? EngineKind::Pram : reduce_engines.at(engine);
        return cmd_reduce(config, out, err);
    }
    if (compare->parsed()) {
        config.engine = engine.empty() ? EngineKind::Auto : compare_engines.at(engine);
        return cmd_compare(config, out, err);
    }
    if (stats->parsed()) {
        return cmd_stats(config, out, err);
    }
    return cmd_gen_fanout(config, out, err);
}

} // namespace parbisim::cli
