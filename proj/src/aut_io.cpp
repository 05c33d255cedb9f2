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

#include "parbisim/aut_io.hpp"

#include "parbisim/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace parbisim::aut {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line) : rest_(text), line_(line) {}

    void skip_space() {
        while (!rest_.empty() && is_space(rest_.front())) {
            rest_.remove_prefix(1);
        }
    }

    void expect(char c) {
        skip_space();
        if (rest_.empty() || rest_.front() != c) {
            fail(std::string("expected '") + c + "'");
        }
        rest_.remove_prefix(1);
    }

    std::size_t number() {
        skip_space();
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(rest_.data(), rest_.data() + rest_.size(), value);
        if (ec != std::errc() || ptr == rest_.data()) {
            fail("expected a non-negative integer");
        }
        rest_.remove_prefix(static_cast<std::size_t>(ptr - rest_.data()));
        return value;
    }

    // A quoted label runs to the next quote. A bare label runs to the last
    // comma on the line, which separates it from the target state.
    std::string label() {
        skip_space();
        if (!rest_.empty() && rest_.front() == '"') {
            rest_.remove_prefix(1);
            const auto close = rest_.find('"');
            if (close == std::string_view::npos) {
                fail("unterminated quoted label");
            }
            std::string result(rest_.substr(0, close));
            rest_.remove_prefix(close + 1);
            return result;
        }
        const auto comma = rest_.rfind(',');
        if (comma == std::string_view::npos) {
            fail("expected a label followed by ','");
        }
        const std::string_view bare = trim(rest_.substr(0, comma));
        if (bare.empty()) {
            fail("empty label");
        }
        rest_.remove_prefix(comma);
        return std::string(bare);
    }

    void expect_end() {
        skip_space();
        if (!rest_.empty()) {
            fail("unexpected trailing text '" + std::string(rest_) + "'");
        }
    }

    [[noreturn]] void fail(const std::string &message) const { throw ParseError(line_, message); }

private:
    std::string_view rest_;
    std::size_t line_;
};

AutHeader parse_header(std::string_view line, std::size_t line_no) {
    if (trim(line).substr(0, 3) != "des") {
        throw ParseError(line_no, "malformed header, expected 'des (<initial>, <m>, <n>)'");
    }
    LineCursor rest(trim(line).substr(3), line_no);
    AutHeader header;
    rest.expect('(');
    header.initial_state = static_cast<StateId>(rest.number());
    rest.expect(',');
    header.declared_m = rest.number();
    rest.expect(',');
    header.declared_n = rest.number();
    rest.expect(')');
    rest.expect_end();
    if (header.declared_n == 0) {
        rest.fail("an LTS needs at least one state");
    }
    if (header.declared_n > std::numeric_limits<StateId>::max()) {
        rest.fail("state count too large");
    }
    if (header.initial_state >= header.declared_n) {
        rest.fail("initial state " + std::to_string(header.initial_state) + " out of range");
    }
    return header;
}

} // namespace

Lts parse_aut(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<AutHeader> header;
    std::vector<LabeledTransition> transitions;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = trim(line);
        if (content.empty()) {
            continue;
        }
        if (!header) {
            header = parse_header(content, line_no);
            transitions.reserve(std::min<std::size_t>(header->declared_m, 1u << 24));
            continue;
        }
        LineCursor cursor(content, line_no);
        cursor.expect('(');
        const std::size_t source = cursor.number();
        cursor.expect(',');
        std::string label = cursor.label();
        cursor.expect(',');
        const std::size_t target = cursor.number();
        cursor.expect(')');
        cursor.expect_end();
        if (source >= header->declared_n || target >= header->declared_n) {
            cursor.fail("state index " + std::to_string(std::max(source, target)) +
                        " out of range for " + std::to_string(header->declared_n) + " states");
        }
        transitions.push_back({static_cast<StateId>(source), std::move(label), static_cast<StateId>(target)});
    }
    if (!header) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing 'des' header");
    }
    if (transitions.size() != header->declared_m) {
        throw ParseError(line_no, "expected " + std::to_string(header->declared_m) + " transitions, found " +
                                      std::to_string(transitions.size()));
    }
    return Lts::from_labeled(header->declared_n, transitions, header->initial_state);
}

Lts parse_aut(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_aut(in);
}

Lts read_aut_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return parse_aut(in);
}

void write_aut(std::ostream &out, const Lts &lts) {
    out << "des (" << lts.initial_state() << ", " << lts.num_transitions() << ", " << lts.num_states() << ")\n";
    for (const Transition &t : lts.transitions()) {
        out << '(' << t.source << ", \"" << lts.label(t.action) << "\", " << t.target << ")\n";
    }
}

std::string write_aut(const Lts &lts) {
    std::ostringstream out;
    write_aut(out, lts);
    return out.str();
}

void write_partition(std::ostream &out, const Partition &p) {
    for (std::size_t s = 0; s < p.size(); ++s) {
        out << s << ' ' << p.block()[s] << '\n';
    }
}

std::string write_partition(const Partition &p) {
    std::ostringstream out;
    write_partition(out, p);
    return out.str();
}

Partition read_partition(std::istream &in, std::size_t n) {
    constexpr std::int64_t missing = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> assignment(n, missing);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = trim(line);
        if (content.empty()) {
            continue;
        }
        std::istringstream fields{std::string(content)};
        long long state = -1;
        long long block = 0;
        std::string extra;
        if (!(fields >> state >> block) || (fields >> extra)) {
            throw InputError("partition line " + std::to_string(line_no) + ": expected '<state> <block>'");
        }
        if (state < 0 || static_cast<std::size_t>(state) >= n) {
            throw InputError("partition line " + std::to_string(line_no) + ": state " + std::to_string(state) +
                             " out of range");
        }
        if (assignment[static_cast<std::size_t>(state)] != missing) {
            throw InputError("partition line " + std::to_string(line_no) + ": state " + std::to_string(state) +
                             " listed twice");
        }
        if (block == missing) {
            throw InputError("partition line " + std::to_string(line_no) + ": block id out of range");
        }
        assignment[static_cast<std::size_t>(state)] = block;
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (assignment[s] == missing) {
            throw InputError("state " + std::to_string(s) + " missing");
        }
    }
    return partition_from_assignment(assignment, n);
}

Partition read_partition(std::string_view text, std::size_t n) {
    std::istringstream in{std::string(text)};
    return read_partition(in, n);
}

Lts quotient(const Lts &lts, const Partition &p) {
    if (p.size() != lts.num_states()) {
        throw InputError("partition size does not match the LTS");
    }
    // Leaders in ascending order get consecutive quotient indices.
    std::vector<StateId> index_of_leader(p.size(), 0);
    StateId next = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (p.block()[s] == s) {
            index_of_leader[s] = next++;
        }
    }
    std::vector<Transition> transitions;
    transitions.reserve(lts.num_transitions());
    for (const Transition &t : lts.transitions()) {
        transitions.push_back({index_of_leader[p.block()[t.source]], t.action, index_of_leader[p.block()[t.target]]});
    }
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    return Lts(next, lts.action_labels(), std::move(transitions),
               index_of_leader[p.block()[lts.initial_state()]]);
}

} // namespace parbisim::aut
