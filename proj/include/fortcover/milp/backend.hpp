// Copyright 2026 The fortcover Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FORTCOVER_MILP_BACKEND_HPP
#define FORTCOVER_MILP_BACKEND_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fortcover/milp/linear_model.hpp"

namespace fortcover::milp {

enum class SolveStatus { kOptimal, kInfeasible, kLimit };

[[nodiscard]] inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kLimit: return "limit";
  }
  return "?";
}

struct BackendCapabilities {
  bool incremental_resolve = false;
  bool lp_relaxation = false;
};

struct SolveLimits {
  double time_limit_s = kInfinity;
  std::int64_t node_limit = -1;
  // Optional starting point. Backends may use it as the first incumbent when
  // it is feasible and ignore it otherwise.
  std::vector<double> start;
};

struct MilpResult {
  SolveStatus status = SolveStatus::kLimit;
  // Valid when status is optimal, or when a limit was hit with an incumbent.
  bool has_solution = false;
  double objective = kInfinity;
  std::vector<double> values;
  double best_bound = -kInfinity;
  std::int64_t nodes = 0;
  std::int64_t lp_pivots = 0;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual BackendCapabilities capabilities() const = 0;
  virtual MilpResult solve(const LinearModel& model, const SolveLimits& limits) = 0;

  /// LP relaxation; only for backends reporting lp_relaxation.
  virtual MilpResult solve_relaxation(const LinearModel& /*model*/) {
    throw std::logic_error(name() + " does not solve LP relaxations");
  }
};

}  // namespace fortcover::milp

#endif  // FORTCOVER_MILP_BACKEND_HPP
