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
#include <span>
#include <string>
#include <vector>

namespace parbisim {

/// Index of a state, in [0, n).
using StateId = std::uint32_t;
/// Index of an action label, in [0, |Act|).
using ActionId = std::uint32_t;

struct Transition {
    StateId source;
    ActionId action;
    StateId target;

    friend auto operator<=>(const Transition &, const Transition &) = default;
};

/// A transition carrying its label text, used while building an Lts.
struct LabeledTransition {
    StateId source;
    std::string label;
    StateId target;
};

/**
 * Immutable labeled transition system.
 *
 * Action labels are kept in strictly ascending lexicographic order, so the
 * ActionId of a label is its rank. Duplicate transitions and self-loops are
 * allowed.
 */
class Lts {
public:
    Lts() = default;

    /// Throws InputError when n == 0, a label is out of order or duplicated,
    /// or a transition refers to a state or action that does not exist.
    Lts(std::size_t num_states, std::vector<std::string> action_labels,
        std::vector<Transition> transitions, StateId initial_state = 0);

    /// Builds an Lts from textual labels; the alphabet is the sorted set of
    /// labels that occur.
    static Lts from_labeled(std::size_t num_states, const std::vector<LabeledTransition> &transitions,
                            StateId initial_state = 0);

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_transitions() const noexcept { return transitions_.size(); }
    std::size_t num_actions() const noexcept { return action_labels_.size(); }

    const std::vector<std::string> &action_labels() const noexcept { return action_labels_; }
    const std::string &label(ActionId a) const { return action_labels_.at(a); }
    std::span<const Transition> transitions() const noexcept { return transitions_; }
    StateId initial_state() const noexcept { return initial_state_; }

    /// Same states, labels and initial state with a different transition list.
    Lts with_transitions(std::vector<Transition> transitions) const;

private:
    std::size_t num_states_ = 1;
    std::vector<std::string> action_labels_;
    std::vector<Transition> transitions_;
    StateId initial_state_ = 0;
};

} // namespace parbisim
