/*
Copyright 2026 The cvq authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace cvq {

// Error categories, one per failure class surfaced by the toolkit.
// The CLI maps these onto exit codes and the single-line
// "error: <category>: <detail>" report.
enum class ErrorKind {
    Structural,   // malformed object: unknown atom id, duplicate id, bad index
    Domain,       // numeric argument outside its mathematical domain
    Precondition, // operation called on inputs violating its contract
    Parameter,    // bad user-supplied parameter (budget 0, eps <= 0, ...)
    Data,         // bad payload data (symbol outside the codebook, ...)
    Format,       // malformed coded stream or file
    Refusal,      // request is well-formed but cannot be served safely
    Validation,   // input file failed semantic validation
    Internal,     // internal invariant broken; always a bug
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
          kind_(kind), detail_(detail) {}

    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }
    const char* category() const { return error_kind_name(kind_); }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& detail) {
    throw Error(kind, detail);
}

} // namespace cvq
