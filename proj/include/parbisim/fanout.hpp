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

#include <cstddef>

namespace parbisim {

/**
 * The Fan_out_n family over actions {a, b}: a chain i -a-> i+1 for
 * 1 < i < n-1, and b-steps from states 0 and 1 to every state. It has 3n-3
 * transitions and out-degree n at the two hubs. Requires n >= 3.
 */
Lts gen_fanout(std::size_t n);

} // namespace parbisim
