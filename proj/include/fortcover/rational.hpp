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

#ifndef FORTCOVER_RATIONAL_HPP
#define FORTCOVER_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "fortcover/graph.hpp"

namespace fortcover {

/// Exact vertex weight.
using Rational = boost::rational<std::int64_t>;

/// Per-vertex weights indexed by vertex.
using Weights = std::vector<Rational>;

[[nodiscard]] inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

/// "p/q" or "p"; q must be positive.
[[nodiscard]] inline Rational parse_rational(const std::string& text) {
  try {
    std::size_t used = 0;
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      std::int64_t p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(p);
    }
    std::int64_t p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    const std::string den = text.substr(slash + 1);
    std::int64_t q = std::stoll(den, &used);
    if (used != den.size() || q <= 0) throw std::invalid_argument(text);
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

[[nodiscard]] inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

[[nodiscard]] inline Rational total_weight(const Weights& w, const VertexSet& s) {
  Rational sum(0);
  for (Vertex v : s) sum += w[static_cast<std::size_t>(v)];
  return sum;
}

/// Characteristic vector of S as 0/1 weights.
[[nodiscard]] inline Weights indicator_weights(std::size_t n, const VertexSet& s) {
  Weights w(n, Rational(0));
  for (Vertex v : s) w[static_cast<std::size_t>(v)] = Rational(1);
  return w;
}

}  // namespace fortcover

#endif  // FORTCOVER_RATIONAL_HPP
