// Copyright 2026 The rfflab Authors
//
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

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rfflab {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on
/// P_n from the Chebyshev-like initial guesses.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(int order) : nodes(order), weights(order) {
    if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    // P_n(x) and P_n'(x) by the three-term recurrence.
    auto legendre = [order](double x) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double deriv = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
      return std::pair{p1, deriv};
    };
    for (int i = 0; i < (order + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
      for (int iter = 0; iter < 100; ++iter) {
        const auto [p, dp] = legendre(x);
        const double dx = p / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double dp = legendre(x).second;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[order - 1 - i] = x;
      weights[i] = w;
      weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) nodes[order / 2] = 0.0;
  }
};

/// Composite rule: `panels` equal panels on [a, b], each with `rule`.
/// Returns nodes/weights already mapped to [a, b].
inline void composite_nodes(const GaussLegendreRule& rule, double a, double b, int panels,
                            std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(lo + 0.5 * width * (rule.nodes[i] + 1.0));
      weights.push_back(0.5 * width * rule.weights[i]);
    }
  }
}

/// Integral of a smooth f over [a, b], doubling the panel count until two
/// successive estimates agree to `rel_tol` (relative) or `abs_tol`.
template <typename F>
double integrate_smooth(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 1e-14,
                        int max_panels = 1 << 14) {
  if (b <= a) return 0.0;
  static const GaussLegendreRule rule(16);
  auto estimate = [&](int panels) {
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * width;
      double part = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        part += rule.weights[i] * f(lo + 0.5 * width * (rule.nodes[i] + 1.0));
      sum += 0.5 * width * part;
    }
    return sum;
  };
  double prev = estimate(1);
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    const double next = estimate(panels);
    if (std::abs(next - prev) <= std::max(abs_tol, rel_tol * std::abs(next))) return next;
    prev = next;
  }
  return prev;
}

}  // namespace rfflab
