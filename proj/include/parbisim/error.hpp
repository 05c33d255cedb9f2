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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parbisim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied data that violates a precondition (sizes, indices, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Concurrent writes that are illegal under the active CRCW policy.
class PolicyViolation : public Error {
public:
    explicit PolicyViolation(const std::string &address)
        : Error("common-write policy violated at " + address + ": processors wrote different values"),
          address_(address) {}

    const std::string &address() const noexcept { return address_; }

private:
    std::string address_;
};

/// A refinement loop ran past its superstep guard.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

} // namespace parbisim
