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

#ifndef FORTCOVER_MILP_BRANCH_AND_BOUND_HPP
#define FORTCOVER_MILP_BRANCH_AND_BOUND_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fortcover/milp/backend.hpp"
#include "fortcover/milp/dual_simplex.hpp"
#include "fortcover/milp/linear_model.hpp"

namespace fortcover::milp {

namespace detail {

inline constexpr double kIntegralityTol = 1e-6;

// A constraint as lo <= terms <= hi, duplicate variables merged.
struct Row {
  std::vector<Term> terms;
  double lo;
  double hi;
};

inline std::vector<Row> make_rows(const LinearModel& model) {
  std::vector<Row> rows;
  for (const auto& c : model.constraints()) {
    std::vector<Term> terms = c.terms;
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    for (const Term& t : terms) {
      if (!merged.empty() && merged.back().var == t.var) {
        merged.back().coef += t.coef;
      } else {
        merged.push_back(t);
      }
    }
    Row r{std::move(merged), -kInfinity, kInfinity};
    if (c.relation != Relation::kLessEqual) r.lo = c.rhs;
    if (c.relation != Relation::kGreaterEqual) r.hi = c.rhs;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Activity-based bound tightening; false when some row cannot be met.
inline bool propagate_bounds(const std::vector<Row>& rows, const std::vector<char>& integral,
                             std::vector<double>& lo, std::vector<double>& hi,
                             int max_rounds = 16) {
  const std::size_t n = lo.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (lo[j] > hi[j] + 1e-9) return false;
  }
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (const Row& row : rows) {
      double min_act = 0.0;
      double max_act = 0.0;
      for (const Term& t : row.terms) {
        const auto j = static_cast<std::size_t>(t.var);
        min_act += t.coef > 0 ? t.coef * lo[j] : t.coef * hi[j];
        max_act += t.coef > 0 ? t.coef * hi[j] : t.coef * lo[j];
      }
      const double slack = 1e-7 * (1.0 + (std::isfinite(row.lo) ? std::abs(row.lo) : 0.0) +
                                   (std::isfinite(row.hi) ? std::abs(row.hi) : 0.0));
      if (min_act > row.hi + slack || max_act < row.lo - slack) return false;
      for (const Term& t : row.terms) {
        if (t.coef == 0.0) continue;
        const auto j = static_cast<std::size_t>(t.var);
        double new_lo = lo[j];
        double new_hi = hi[j];
        if (std::isfinite(row.hi)) {
          const double rest = min_act - (t.coef > 0 ? t.coef * lo[j] : t.coef * hi[j]);
          const double lim = (row.hi - rest) / t.coef;
          if (t.coef > 0) {
            new_hi = std::min(new_hi, lim);
          } else {
            new_lo = std::max(new_lo, lim);
          }
        }
        if (std::isfinite(row.lo)) {
          const double rest = max_act - (t.coef > 0 ? t.coef * hi[j] : t.coef * lo[j]);
          const double lim = (row.lo - rest) / t.coef;
          if (t.coef > 0) {
            new_lo = std::max(new_lo, lim);
          } else {
            new_hi = std::min(new_hi, lim);
          }
        }
        if (integral[j]) {
          new_lo = std::ceil(new_lo - kIntegralityTol);
          new_hi = std::floor(new_hi + kIntegralityTol);
        }
        const double step = integral[j] ? 0.5 : 1e-4 * (1.0 + hi[j] - lo[j]);
        if (new_lo > lo[j] + step) {
          lo[j] = new_lo;
          changed = true;
        }
        if (new_hi < hi[j] - step) {
          hi[j] = new_hi;
          changed = true;
        }
        if (lo[j] > hi[j] + 1e-7) return false;
      }
    }
    if (!changed) break;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (hi[j] < lo[j]) hi[j] = lo[j];
  }
  return true;
}

// The model with fixed columns substituted out and redundant rows dropped.
struct Presolved {
  bool infeasible = false;
  LinearModel reduced;
  std::vector<int> original;  // reduced column -> model column
  std::vector<double> value;  // model column -> value when fixed
  double offset = 0.0;
};

inline Presolved presolve(const LinearModel& model) {
  Presolved out;
  const std::size_t n = model.variable_count();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  std::vector<char> integral(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = model.variables()[j].lower;
    hi[j] = model.variables()[j].upper;
    integral[j] = model.variables()[j].is_integral() ? 1 : 0;
  }
  const std::vector<Row> rows = make_rows(model);
  if (!propagate_bounds(rows, integral, lo, hi, 64)) {
    out.infeasible = true;
    return out;
  }
  std::vector<int> local(n, -1);
  out.value.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = model.variables()[j];
    if (lo[j] == hi[j]) {
      out.value[j] = lo[j];
      out.offset += v.objective * lo[j];
      continue;
    }
    local[j] = out.reduced.add_variable(v.name, v.kind, lo[j], hi[j], v.objective);
    out.reduced.set_branch_priority(local[j], v.branch_priority);
    out.original.push_back(static_cast<int>(j));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    double constant = 0.0;
    double min_act = 0.0;
    double max_act = 0.0;
    std::vector<Term> terms;
    for (const Term& t : row.terms) {
      const auto j = static_cast<std::size_t>(t.var);
      if (local[j] < 0) {
        constant += t.coef * out.value[j];
      } else if (t.coef != 0.0) {
        terms.push_back({local[j], t.coef});
        min_act += t.coef > 0 ? t.coef * lo[j] : t.coef * hi[j];
        max_act += t.coef > 0 ? t.coef * hi[j] : t.coef * lo[j];
      }
    }
    const double scale = (std::isfinite(row.lo) ? std::abs(row.lo) : 0.0) +
                         (std::isfinite(row.hi) ? std::abs(row.hi) : 0.0);
    const double tol = 1e-9 * (1.0 + scale);
    const bool lo_met = min_act + constant >= row.lo - tol;
    const bool hi_met = max_act + constant <= row.hi + tol;
    if (lo_met && hi_met) continue;
    const auto& c = model.constraints()[i];
    out.reduced.add_constraint(std::move(terms), c.relation, c.rhs - constant, c.name);
  }
  return out;
}

}  // namespace detail

/// LP-based branch and bound: bound propagation at every node, dual simplex
/// warm started from the parent tableau, depth-first dives with best-bound
/// backtracking.
class BranchAndBoundBackend final : public SolverBackend {
 public:
  static constexpr double kIntegralityTol = detail::kIntegralityTol;

  [[nodiscard]] std::string name() const override { return "branch-and-bound"; }
  [[nodiscard]] BackendCapabilities capabilities() const override {
    return {.incremental_resolve = false, .lp_relaxation = true};
  }

  MilpResult solve(const LinearModel& model, const SolveLimits& limits) override {
    detail::Presolved pre = detail::presolve(model);
    if (pre.infeasible) {
      MilpResult result;
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    Search search(pre.reduced, limits);
    if (!limits.start.empty() && model.is_feasible(limits.start, kIntegralityTol)) {
      std::vector<double> local;
      for (int j : pre.original) local.push_back(limits.start[static_cast<std::size_t>(j)]);
      search.offer(std::move(local));
    }
    MilpResult result = search.run();
    result.objective += pre.offset;
    result.best_bound += pre.offset;
    if (result.has_solution) {
      std::vector<double> full = pre.value;
      for (std::size_t k = 0; k < pre.original.size(); ++k) {
        full[static_cast<std::size_t>(pre.original[k])] = result.values[k];
      }
      result.values = std::move(full);
      if (!model.is_feasible(result.values, kIntegralityTol)) {
        throw std::logic_error("presolved solution violates the original model");
      }
    }
    return result;
  }

  MilpResult solve_relaxation(const LinearModel& model) override {
    MilpResult result;
    if (model.variable_count() == 0) return trivial(model);
    DualSimplex lp(model);
    const LpStatus s = lp.solve();
    result.lp_pivots = lp.total_pivots();
    if (s == LpStatus::kInfeasible) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    if (s != LpStatus::kOptimal) return result;
    result.status = SolveStatus::kOptimal;
    result.has_solution = true;
    result.values = lp.primal();
    result.objective = lp.objective();
    result.best_bound = result.objective;
    return result;
  }

 private:
  static MilpResult trivial(const LinearModel& model) {
    MilpResult result;
    const bool ok = model.is_feasible({});
    result.status = ok ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    result.has_solution = ok;
    result.objective = ok ? 0.0 : kInfinity;
    result.best_bound = result.objective;
    return result;
  }

  struct Node {
    std::vector<double> lo;
    std::vector<double> hi;
    double bound;
    std::int64_t order;
  };

  // Best bound first; among equal bounds, the most recent node.
  struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.order < b.order;
    }
  };

  class Search {
   public:
    using Clock = std::chrono::steady_clock;

    Search(const LinearModel& model, const SolveLimits& limits)
        : model_(model), limits_(limits), start_(Clock::now()) {
      n_ = model.variable_count();
      rows_ = detail::make_rows(model);
      for (const auto& v : model.variables()) integral_.push_back(v.is_integral() ? 1 : 0);
      integral_objective_ = true;
      for (const auto& v : model.variables()) {
        if (v.objective == 0.0) continue;
        if (!v.is_integral() || v.objective != std::round(v.objective)) integral_objective_ = false;
      }
      if (std::isfinite(limits.time_limit_s)) {
        deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(limits.time_limit_s));
      }
    }

    MilpResult run() {
      MilpResult result;
      if (n_ == 0) return trivial(model_);
      DualSimplex lp(model_);
      lp.set_deadline(deadline_);

      std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
      Node root;
      for (const auto& v : model_.variables()) {
        root.lo.push_back(v.lower);
        root.hi.push_back(v.upper);
      }
      root.bound = -kInfinity;
      root.order = order_++;
      open.push(std::move(root));

      bool stopped = false;
      double open_bound = kInfinity;
      while (!open.empty()) {
        if (limit_reached()) {
          stopped = true;
          break;
        }
        Node node = open.top();
        open.pop();
        if (prunable(node.bound)) continue;
        // Dive from this node, parking the sibling of each branch.
        bool dive = true;
        while (dive) {
          ++nodes_;
          dive = false;
          if (!detail::propagate_bounds(rows_, integral_, node.lo, node.hi)) break;
          for (std::size_t j = 0; j < n_; ++j) lp.set_column_bounds(j, node.lo[j], node.hi[j]);
          const LpStatus s = lp.solve();
          if (s == LpStatus::kInfeasible) break;
          if (s != LpStatus::kOptimal) {
            // Unresolved node: keep its bound so the search cannot claim optimality.
            stopped = true;
            open_bound = std::min(open_bound, node.bound);
            break;
          }
          const double obj = lp.objective();
          if (prunable(obj)) break;
          std::vector<double> x = lp.primal();
          const int branch = choose_branch(x, node);
          if (branch < 0) {
            accept(x);
            break;
          }
          const auto j = static_cast<std::size_t>(branch);
          Node down{node.lo, node.hi, obj, order_++};
          Node up{std::move(node.lo), std::move(node.hi), obj, order_++};
          const double split = std::clamp(std::floor(x[j] + kIntegralityTol), down.lo[j], down.hi[j] - 1.0);
          down.hi[j] = split;
          up.lo[j] = split + 1.0;
          const bool go_up = x[j] - split >= 0.5;
          node = go_up ? std::move(up) : std::move(down);
          open.push(go_up ? std::move(down) : std::move(up));
          dive = !limit_reached();
          if (!dive) {
            stopped = true;
            open.push(std::move(node));
            break;
          }
        }
        if (stopped) break;
      }

      result.nodes = nodes_;
      result.lp_pivots = lp.total_pivots();
      if (has_incumbent_) {
        result.has_solution = true;
        result.values = incumbent_;
        result.objective = incumbent_value_;
      }
      if (stopped) {
        while (!open.empty()) {
          open_bound = std::min(open_bound, open.top().bound);
          open.pop();
        }
        result.status = SolveStatus::kLimit;
        result.best_bound = std::min(open_bound, incumbent_value_);
        return result;
      }
      result.status = has_incumbent_ ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      result.best_bound = incumbent_value_;
      return result;
    }

    void offer(std::vector<double> x) { accept(std::move(x)); }

   private:
    [[nodiscard]] bool limit_reached() const {
      if (limits_.node_limit >= 0 && nodes_ >= limits_.node_limit) return true;
      return Clock::now() > deadline_;
    }

    [[nodiscard]] bool prunable(double bound) const {
      if (!has_incumbent_) return false;
      if (integral_objective_) return std::ceil(bound - kIntegralityTol) >= incumbent_value_ - 0.5;
      return bound >= incumbent_value_ - 1e-9 * (1.0 + std::abs(incumbent_value_));
    }

    // Most fractional variable of the highest priority class. An unfixed
    // variable of a strictly higher class than every fractional one is
    // branched on first, split at its LP value.
    [[nodiscard]] int choose_branch(const std::vector<double>& x, const Node& node) const {
      int best = -1;
      int best_priority = 0;
      double best_score = -1.0;
      int unfixed = -1;
      int unfixed_priority = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& v = model_.variables()[j];
        if (!v.is_integral()) continue;
        const double frac = x[j] - std::floor(x[j]);
        if (frac <= kIntegralityTol || frac >= 1.0 - kIntegralityTol) {
          if (node.hi[j] - node.lo[j] > 0.5 && (unfixed < 0 || v.branch_priority > unfixed_priority)) {
            unfixed = static_cast<int>(j);
            unfixed_priority = v.branch_priority;
          }
          continue;
        }
        const double score = 0.5 - std::abs(frac - 0.5);
        if (best < 0 || v.branch_priority > best_priority ||
            (v.branch_priority == best_priority && score > best_score + 1e-12)) {
          best = static_cast<int>(j);
          best_priority = v.branch_priority;
          best_score = score;
        }
      }
      if (best >= 0 && unfixed >= 0 && unfixed_priority > best_priority) return unfixed;
      return best;
    }

    void accept(std::vector<double> x) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (model_.variables()[j].is_integral()) x[j] = std::round(x[j]);
      }
      if (!model_.is_feasible(x, kIntegralityTol)) return;
      const double value = model_.objective_value(x);
      if (has_incumbent_ && value >= incumbent_value_) return;
      incumbent_ = std::move(x);
      incumbent_value_ = value;
      has_incumbent_ = true;
    }

    const LinearModel& model_;
    SolveLimits limits_;
    Clock::time_point start_;
    Clock::time_point deadline_ = Clock::time_point::max();
    std::size_t n_ = 0;
    std::vector<detail::Row> rows_;
    std::vector<char> integral_;
    bool integral_objective_ = true;

    bool has_incumbent_ = false;
    std::vector<double> incumbent_;
    double incumbent_value_ = kInfinity;
    std::int64_t nodes_ = 0;
    std::int64_t order_ = 0;
  };
};

}  // namespace fortcover::milp

#endif  // FORTCOVER_MILP_BRANCH_AND_BOUND_HPP
