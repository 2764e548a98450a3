// Copyright 2026 The alab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALAB_ERRORS_HPP
#define ALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alab {

/// Caller handed in arguments outside an operation's documented domain.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class dimension_mismatch : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class non_normalized_input : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class degenerate_minimum : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class not_canonical : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class coefficient_bound_violated : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class dimension_too_large : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

class budget_exceeded : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// A numerical procedure ran but could not deliver its postcondition.
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class step_count_too_small : public computation_error {
 public:
  using computation_error::computation_error;
};

class no_convergence : public computation_error {
 public:
  using computation_error::computation_error;
};

class generation_exhausted : public computation_error {
 public:
  using computation_error::computation_error;
};

class zero_success : public computation_error {
 public:
  using computation_error::computation_error;
};

class non_hermitian : public computation_error {
 public:
  using computation_error::computation_error;
};

// Outcomes of the run-time search; recorded as row status by the bench.
class already_above_window : public computation_error {
 public:
  using computation_error::computation_error;
};

class not_reached : public computation_error {
 public:
  using computation_error::computation_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
  if (!condition) throw precondition_error(message);
}
}  // namespace detail

}  // namespace alab

#endif  // ALAB_ERRORS_HPP
