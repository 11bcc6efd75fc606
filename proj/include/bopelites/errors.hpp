// Copyright 2026 The bopelites Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bopelites {

/// Base of every error raised by the library. The C API maps each subclass
/// onto one status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Cholesky factorisation failed at every jitter level tried.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, std::vector<double> attempted_jitter = {})
        : Error(what), attempted_jitter_(std::move(attempted_jitter)) {}

    const std::vector<double>& attempted_jitter() const noexcept { return attempted_jitter_; }

private:
    std::vector<double> attempted_jitter_;
};

/// Every candidate has already been evaluated.
class ExhaustedError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace bopelites
