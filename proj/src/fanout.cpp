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

#include "parbisim/fanout.hpp"

#include "parbisim/error.hpp"

#include <string>
#include <vector>

namespace parbisim {

Lts gen_fanout(std::size_t n) {
    if (n < 3) {
        throw InputError("Fan_out needs n >= 3, got " + std::to_string(n));
    }
    constexpr ActionId a = 0;
    constexpr ActionId b = 1;
    std::vector<Transition> transitions;
    transitions.reserve(3 * n - 3);
    for (StateId hub : {StateId{0}, StateId{1}}) {
        for (StateId i = 0; i < n; ++i) {
            transitions.push_back({hub, b, i});
        }
    }
    for (StateId i = 2; i + 1 < n; ++i) {
        transitions.push_back({i, a, i + 1});
    }
    return Lts(n, {"a", "b"}, std::move(transitions));
}

} // namespace parbisim
