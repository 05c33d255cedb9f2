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

#include "parbisim/lts.hpp"

#include "parbisim/error.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace parbisim {

Lts::Lts(std::size_t num_states, std::vector<std::string> action_labels,
         std::vector<Transition> transitions, StateId initial_state)
    : num_states_(num_states),
      action_labels_(std::move(action_labels)),
      transitions_(std::move(transitions)),
      initial_state_(initial_state) {
    if (num_states_ == 0) {
        throw InputError("an LTS needs at least one state");
    }
    if (initial_state_ >= num_states_) {
        throw InputError("initial state " + std::to_string(initial_state_) + " out of range");
    }
    for (std::size_t i = 1; i < action_labels_.size(); ++i) {
        if (!(action_labels_[i - 1] < action_labels_[i])) {
            throw InputError("action labels must be distinct and sorted; offending label \"" +
                             action_labels_[i] + "\"");
        }
    }
    for (const Transition &t : transitions_) {
        if (t.source >= num_states_ || t.target >= num_states_) {
            throw InputError("transition (" + std::to_string(t.source) + ", " +
                             std::to_string(t.target) + ") refers to a missing state");
        }
        if (t.action >= action_labels_.size()) {
            throw InputError("transition uses undeclared action " + std::to_string(t.action));
        }
    }
}

Lts Lts::from_labeled(std::size_t num_states, const std::vector<LabeledTransition> &transitions,
                      StateId initial_state) {
    std::map<std::string, ActionId> ids;
    for (const auto &t : transitions) {
        ids.emplace(t.label, 0);
    }
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (auto &[label, id] : ids) {
        id = static_cast<ActionId>(labels.size());
        labels.push_back(label);
    }
    std::vector<Transition> converted;
    converted.reserve(transitions.size());
    for (const auto &t : transitions) {
        converted.push_back({t.source, ids.at(t.label), t.target});
    }
    return Lts(num_states, std::move(labels), std::move(converted), initial_state);
}

Lts Lts::with_transitions(std::vector<Transition> transitions) const {
    return Lts(num_states_, action_labels_, std::move(transitions), initial_state_);
}

} // namespace parbisim
