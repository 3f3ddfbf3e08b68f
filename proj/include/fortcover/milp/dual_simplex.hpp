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

#ifndef FORTCOVER_MILP_DUAL_SIMPLEX_HPP
#define FORTCOVER_MILP_DUAL_SIMPLEX_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fortcover/milp/linear_model.hpp"

namespace fortcover::milp {

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit, kTimeLimit };

/// Dense bounded dual simplex on a condensed tableau.
///
/// Structural columns j < n carry finite bounds; each row i has a logical
/// r_i = a_i x with bounds taken from its relation. The tableau expresses the
/// basic variables in terms of the nonbasic ones, so a pivot is one rank-one
/// update. Because every structural is boxed, the all-logical basis is dual
/// feasible after placing each structural at the bound its cost prefers, and
/// bound changes between solves keep dual feasibility. That is what lets the
/// branch-and-bound driver warm start every node from the previous tableau.
class DualSimplex {
 public:
  explicit DualSimplex(const LinearModel& model) {
    n_ = model.variable_count();
    m_ = model.constraint_count();
    cost_.resize(n_);
    lower_.resize(n_ + m_);
    upper_.resize(n_ + m_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& v = model.variables()[j];
      cost_[j] = v.objective;
      lower_[j] = v.lower;
      upper_[j] = v.upper;
    }
    a_.assign(m_ * n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& c = model.constraints()[i];
      for (const Term& t : c.terms) a_[i * n_ + static_cast<std::size_t>(t.var)] += t.coef;
      switch (c.relation) {
        case Relation::kLessEqual:
          lower_[n_ + i] = -kInfinity;
          upper_[n_ + i] = c.rhs;
          break;
        case Relation::kGreaterEqual:
          lower_[n_ + i] = c.rhs;
          upper_[n_ + i] = kInfinity;
          break;
        case Relation::kEqual:
          lower_[n_ + i] = c.rhs;
          upper_[n_ + i] = c.rhs;
          break;
      }
    }
    cold_start();
  }

  [[nodiscard]] std::size_t column_count() const { return n_; }
  [[nodiscard]] std::size_t row_count() const { return m_; }

  void set_column_bounds(std::size_t j, double lo, double hi) {
    lower_[j] = lo;
    upper_[j] = hi;
  }
  [[nodiscard]] double column_lower(std::size_t j) const { return lower_[j]; }
  [[nodiscard]] double column_upper(std::size_t j) const { return upper_[j]; }

  using Clock = std::chrono::steady_clock;
  void set_deadline(Clock::time_point deadline) { deadline_ = deadline; }

  /// Runs from the current basis. Falls back to a fresh slack basis when the
  /// warm tableau has drifted or stalls.
  LpStatus solve(std::int64_t iteration_limit = -1) {
    if (iteration_limit < 0) {
      iteration_limit = 50 * static_cast<std::int64_t>(n_ + m_) + 1000;
    }
    if (pivots_since_refresh_ > 20 * (n_ + m_) + 500) cold_start();
    LpStatus status = run(iteration_limit, false);
    if (status == LpStatus::kOptimal && !check_solution()) {
      cold_start();
      status = run(iteration_limit, false);
      if (status == LpStatus::kOptimal && !check_solution()) {
        throw std::runtime_error("dual simplex: numerical failure");
      }
    }
    if (status == LpStatus::kTimeLimit) return status;
    if (status == LpStatus::kIterationLimit) {
      // Degenerate cycling: restart with a smallest-index rule.
      cold_start();
      status = run(iteration_limit * 4, true);
    }
    return status;
  }

  [[nodiscard]] std::vector<double> primal() const {
    std::vector<double> x(n_ + m_);
    fill_values(x);
    x.resize(n_);
    return x;
  }

  [[nodiscard]] double objective() const {
    std::vector<double> x = primal();
    double z = 0.0;
    for (std::size_t j = 0; j < n_; ++j) z += cost_[j] * x[j];
    return z;
  }

  /// Reduced cost of structural column j (0 when basic).
  [[nodiscard]] double reduced_cost(std::size_t j) const {
    if (position_[j] < 0) return 0.0;
    return d_[static_cast<std::size_t>(position_[j])];
  }

  /// True when column j is nonbasic at its lower bound.
  [[nodiscard]] bool at_lower(std::size_t j) const {
    return position_[j] >= 0 && !at_upper_[static_cast<std::size_t>(position_[j])];
  }

  [[nodiscard]] std::int64_t total_pivots() const { return total_pivots_; }

 private:
  static constexpr double kPrimalTol = 1e-9;
  static constexpr double kDualTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;

  void cold_start() {
    t_ = a_;
    basic_.resize(m_);
    nonbasic_.resize(n_);
    at_upper_.assign(n_, false);
    position_.assign(n_ + m_, -1);
    for (std::size_t i = 0; i < m_; ++i) basic_[i] = n_ + i;
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      position_[j] = static_cast<std::int64_t>(j);
    }
    d_ = cost_;
    fix_dual_signs();
    pivots_since_refresh_ = 0;
  }

  [[nodiscard]] double nonbasic_value(std::size_t k) const {
    const std::size_t var = nonbasic_[k];
    return at_upper_[k] ? upper_[var] : lower_[var];
  }

  // x indexed by variable id (structural then logical).
  void fill_values(std::vector<double>& x) const {
    std::vector<double> xn(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      xn[k] = nonbasic_value(k);
      x[nonbasic_[k]] = xn[k];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = &t_[i * n_];
      double s = 0.0;
      for (std::size_t k = 0; k < n_; ++k) s += row[k] * xn[k];
      x[basic_[i]] = s;
    }
  }

  // Place each boxed nonbasic at the bound its reduced cost prefers.
  void fix_dual_signs() {
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t var = nonbasic_[k];
      const bool lo_ok = std::isfinite(lower_[var]);
      const bool hi_ok = std::isfinite(upper_[var]);
      if (d_[k] < -kDualTol && hi_ok) {
        at_upper_[k] = true;
      } else if (d_[k] > kDualTol && lo_ok) {
        at_upper_[k] = false;
      } else if (!lo_ok) {
        at_upper_[k] = true;
      } else if (!hi_ok) {
        at_upper_[k] = false;
      }
    }
  }

  [[nodiscard]] bool check_solution() const {
    std::vector<double> x(n_ + m_);
    fill_values(x);
    for (std::size_t j = 0; j < n_; ++j) {
      const double tol = 1e-6 * (1.0 + std::abs(x[j]));
      if (x[j] < lower_[j] - tol || x[j] > upper_[j] + tol) return false;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = &a_[i * n_];
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
      const double tol = 1e-6 * (1.0 + std::abs(s));
      if (std::abs(s - x[n_ + i]) > tol) return false;
      if (s < lower_[n_ + i] - tol || s > upper_[n_ + i] + tol) return false;
    }
    return true;
  }

  void recompute_basic_values() {
    std::vector<double> xn(n_);
    for (std::size_t k = 0; k < n_; ++k) xn[k] = nonbasic_value(k);
    xb_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = &t_[i * n_];
      double s = 0.0;
      for (std::size_t k = 0; k < n_; ++k) s += row[k] * xn[k];
      xb_[i] = s;
    }
  }

  LpStatus run(std::int64_t iteration_limit, bool bland) {
    fix_dual_signs();
    recompute_basic_values();
    std::vector<double> pivot_row(n_);
    for (std::int64_t iter = 0; iter < iteration_limit; ++iter) {
      if ((iter & 63) == 63) {
        if (Clock::now() > deadline_) return LpStatus::kTimeLimit;
        recompute_basic_values();
      }

      // Leaving row: largest infeasibility (or smallest variable, under Bland).
      std::size_t r = m_;
      double worst = 0.0;
      bool below = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t var = basic_[i];
        const double v = xb_[i];
        const double lo = lower_[var];
        const double hi = upper_[var];
        double viol = 0.0;
        bool is_below = false;
        if (v < lo - kPrimalTol * (1.0 + std::abs(lo))) {
          viol = lo - v;
          is_below = true;
        } else if (v > hi + kPrimalTol * (1.0 + std::abs(hi))) {
          viol = v - hi;
        }
        if (viol <= 0.0) continue;
        if (bland) {
          if (r == m_ || var < basic_[r]) {
            r = i;
            below = is_below;
          }
        } else if (viol > worst) {
          worst = viol;
          r = i;
          below = is_below;
        }
      }
      if (r == m_) {
        recompute_basic_values();
        if (!any_infeasible()) return LpStatus::kOptimal;
        continue;
      }

      // Entering column: Harris two-pass ratio test.
      const double* row = &t_[r * n_];
      auto eligible = [&](std::size_t k) {
        const std::size_t var = nonbasic_[k];
        if (lower_[var] == upper_[var]) return false;
        const double a = row[k];
        if (std::abs(a) <= kPivotTol) return false;
        const bool up = at_upper_[k];
        // Moving x_k off its bound must push x_r toward feasibility.
        return below ? (up ? a < 0 : a > 0) : (up ? a > 0 : a < 0);
      };
      double bound = kInfinity;
      for (std::size_t k = 0; k < n_; ++k) {
        if (!eligible(k)) continue;
        const double ratio = (std::abs(d_[k]) + kDualTol) / std::abs(row[k]);
        if (ratio < bound) bound = ratio;
      }
      if (!std::isfinite(bound)) return LpStatus::kInfeasible;
      std::size_t q = n_;
      double best = 0.0;
      double best_ratio = kInfinity;
      for (std::size_t k = 0; k < n_; ++k) {
        if (!eligible(k)) continue;
        const double ratio = std::abs(d_[k]) / std::abs(row[k]);
        if (ratio > bound) continue;
        if (bland) {
          if (ratio < best_ratio - 1e-12 ||
              (ratio <= best_ratio + 1e-12 && (q == n_ || nonbasic_[k] < nonbasic_[q]))) {
            best_ratio = std::min(best_ratio, ratio);
            q = k;
          }
        } else if (std::abs(row[k]) > best) {
          best = std::abs(row[k]);
          q = k;
        }
      }
      if (q == n_) return LpStatus::kInfeasible;

      // Primal step: the leaving variable lands on the violated bound.
      const std::size_t leaving = basic_[r];
      const double target = below ? lower_[leaving] : upper_[leaving];
      const double theta = (target - xb_[r]) / row[q];
      const double entering_value = nonbasic_value(q) + theta;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i != r) xb_[i] += t_[i * n_ + q] * theta;
      }
      pivot(r, q, below, pivot_row);
      xb_[r] = entering_value;
    }
    return LpStatus::kIterationLimit;
  }

  [[nodiscard]] bool any_infeasible() const {
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t var = basic_[i];
      const double lo = lower_[var];
      const double hi = upper_[var];
      if (xb_[i] < lo - kPrimalTol * (1.0 + std::abs(lo))) return true;
      if (xb_[i] > hi + kPrimalTol * (1.0 + std::abs(hi))) return true;
    }
    return false;
  }

  void pivot(std::size_t r, std::size_t q, bool leaving_to_lower, std::vector<double>& new_row) {
    double* row = &t_[r * n_];
    const double p = row[q];
    for (std::size_t k = 0; k < n_; ++k) new_row[k] = -row[k] / p;
    new_row[q] = 1.0 / p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ti = &t_[i * n_];
      const double f = ti[q];
      if (f == 0.0) continue;
      ti[q] = 0.0;
      for (std::size_t k = 0; k < n_; ++k) ti[k] += f * new_row[k];
    }
    for (std::size_t k = 0; k < n_; ++k) row[k] = new_row[k];
    const double dq = d_[q];
    d_[q] = 0.0;
    for (std::size_t k = 0; k < n_; ++k) d_[k] += dq * new_row[k];

    const std::size_t entering = nonbasic_[q];
    const std::size_t leaving = basic_[r];
    basic_[r] = entering;
    nonbasic_[q] = leaving;
    position_[entering] = -1;
    position_[leaving] = static_cast<std::int64_t>(q);
    at_upper_[q] = !leaving_to_lower;
    ++pivots_since_refresh_;
    ++total_pivots_;
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> a_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;

  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<double> xb_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::vector<bool> at_upper_;
  std::vector<std::int64_t> position_;
  std::size_t pivots_since_refresh_ = 0;
  std::int64_t total_pivots_ = 0;
  Clock::time_point deadline_ = Clock::time_point::max();
};

}  // namespace fortcover::milp

#endif  // FORTCOVER_MILP_DUAL_SIMPLEX_HPP
