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

#ifndef FORTCOVER_MILP_LINEAR_MODEL_HPP
#define FORTCOVER_MILP_LINEAR_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fortcover::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kBinary, kInteger, kContinuous };

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
  double objective = 0.0;
  // Higher priority variables are branched on first.
  int branch_priority = 0;

  [[nodiscard]] bool is_integral() const { return kind != VarKind::kContinuous; }
};

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// Backend-neutral minimization model over bounded variables.
class LinearModel {
 public:
  int add_variable(std::string name, VarKind kind, double lower, double upper,
                   double objective = 0.0) {
    if (kind == VarKind::kBinary) {
      lower = std::max(lower, 0.0);
      upper = std::min(upper, 1.0);
    }
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
      throw std::invalid_argument("variable '" + name + "' needs finite bounds");
    }
    if (lower > upper) {
      throw std::invalid_argument("variable '" + name + "' has empty domain");
    }
    variables_.push_back({std::move(name), kind, lower, upper, objective, 0});
    return static_cast<int>(variables_.size()) - 1;
  }

  int add_binary(std::string name, double objective = 0.0) {
    return add_variable(std::move(name), VarKind::kBinary, 0.0, 1.0, objective);
  }

  /// Throws std::out_of_range if a term names an undeclared variable.
  void add_constraint(std::vector<Term> terms, Relation relation, double rhs,
                      std::string name = {}) {
    for (const Term& t : terms) {
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= variables_.size()) {
        throw std::out_of_range("constraint '" + name + "' references undeclared variable " +
                                std::to_string(t.var));
      }
    }
    if (name.empty()) name = "c" + std::to_string(constraints_.size());
    constraints_.push_back({std::move(name), std::move(terms), relation, rhs});
  }

  void set_objective_coefficient(int var, double coef) { variables_.at(var).objective = coef; }
  void set_bounds(int var, double lower, double upper) {
    variables_.at(var).lower = lower;
    variables_.at(var).upper = upper;
  }
  void set_branch_priority(int var, int priority) { variables_.at(var).branch_priority = priority; }

  [[nodiscard]] const std::vector<Variable>& variables() const { return variables_; }
  [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
  [[nodiscard]] const Variable& variable(int i) const { return variables_.at(i); }
  [[nodiscard]] std::size_t variable_count() const { return variables_.size(); }
  [[nodiscard]] std::size_t constraint_count() const { return constraints_.size(); }

  [[nodiscard]] double objective_value(const std::vector<double>& x) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < variables_.size(); ++j) sum += variables_[j].objective * x[j];
    return sum;
  }

  /// Checks bounds, integrality and every constraint within `tol`.
  [[nodiscard]] bool is_feasible(const std::vector<double>& x, double tol = 1e-6) const {
    if (x.size() != variables_.size()) return false;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
      const auto& v = variables_[j];
      if (x[j] < v.lower - tol || x[j] > v.upper + tol) return false;
      if (v.is_integral() && std::abs(x[j] - std::round(x[j])) > tol) return false;
    }
    for (const auto& c : constraints_) {
      double lhs = 0.0;
      for (const Term& t : c.terms) lhs += t.coef * x[t.var];
      const double slack = tol * (1.0 + std::abs(c.rhs));
      switch (c.relation) {
        case Relation::kLessEqual:
          if (lhs > c.rhs + slack) return false;
          break;
        case Relation::kGreaterEqual:
          if (lhs < c.rhs - slack) return false;
          break;
        case Relation::kEqual:
          if (std::abs(lhs - c.rhs) > slack) return false;
          break;
      }
    }
    return true;
  }

  /// CPLEX LP-format text, for feeding the model to an external solver.
  void write_lp(std::ostream& out) const {
    auto term_text = [&](double coef, int var, bool first) {
      std::string s;
      if (coef < 0) {
        s += "- ";
      } else if (!first) {
        s += "+ ";
      }
      const double mag = std::abs(coef);
      if (mag != 1.0) {
        std::ostringstream num;
        num.precision(17);
        num << mag;
        s += num.str() + " ";
      }
      s += variables_[var].name;
      return s;
    };

    out << "Minimize\n obj:";
    bool first = true;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
      if (variables_[j].objective == 0.0) continue;
      out << ' ' << term_text(variables_[j].objective, static_cast<int>(j), first);
      first = false;
    }
    if (first) out << " 0";
    out << "\nSubject To\n";
    for (const auto& c : constraints_) {
      out << ' ' << c.name << ':';
      bool first_term = true;
      for (const Term& t : c.terms) {
        out << ' ' << term_text(t.coef, t.var, first_term);
        first_term = false;
      }
      if (first_term) out << " 0 " << variables_.front().name;
      switch (c.relation) {
        case Relation::kLessEqual: out << " <= "; break;
        case Relation::kGreaterEqual: out << " >= "; break;
        case Relation::kEqual: out << " = "; break;
      }
      out << c.rhs << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : variables_) {
      if (v.kind == VarKind::kBinary) continue;
      out << ' ' << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
    }
    bool any_general = false;
    for (const auto& v : variables_) any_general |= v.kind == VarKind::kInteger;
    if (any_general) {
      out << "General\n";
      for (const auto& v : variables_) {
        if (v.kind == VarKind::kInteger) out << ' ' << v.name << '\n';
      }
    }
    bool any_binary = false;
    for (const auto& v : variables_) any_binary |= v.kind == VarKind::kBinary;
    if (any_binary) {
      out << "Binary\n";
      for (const auto& v : variables_) {
        if (v.kind == VarKind::kBinary) out << ' ' << v.name << '\n';
      }
    }
    out << "End\n";
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

}  // namespace fortcover::milp

#endif  // FORTCOVER_MILP_LINEAR_MODEL_HPP
