// Copyright 2026 The iontrap-bell Authors
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

namespace iontrap {

// Contract violations on inputs (bad cutoffs, out-of-range occupations,
// non-Hermitian generators, malformed config) are reported with
// std::invalid_argument. The types below mark outcomes that are valid inputs
// but failed physics: the CLI maps them to exit status 1.

class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Population would leave (or has reached) the top of a truncated Fock space.
class LeakageError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

/// Measurement outcome has probability below 1e-12.
class PostSelectionError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace iontrap
