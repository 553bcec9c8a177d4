// Copyright 2026 The ccontour Authors
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

namespace ccontour {

// Error categories shared across the library. The service maps each to an
// HTTP status; the CLI maps them to exit codes.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistic is undefined for the given data (e.g. zero variance).
class DegenerateResult : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Conflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed request whose content violates a domain invariant.
class Unprocessable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccontour
