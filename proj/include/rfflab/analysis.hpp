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

// Closed-form second moments of the reconstructions s(x, y) = z(x)^T z(y).
// Every formula is exactly proportional to 1/D.

#include <Eigen/Dense>

#include "rfflab/features.hpp"
#include "rfflab/kernels.hpp"

namespace rfflab {

/// Var cos(w^T delta) = 1/2 + 1/2 k(2 delta) - k(delta)^2. The tilde
/// reconstruction has lower variance than breve at delta iff this is <= 1/2.
template <typename Derived>
double variance_advantage(const ShiftInvariantKernel& kernel, const Eigen::MatrixBase<Derived>& delta) {
  const double k1 = kernel_eval(kernel, delta);
  const double k2 = kernel_eval(kernel, 2.0 * delta);
  return 0.5 + 0.5 * k2 - k1 * k1;
}

template <typename DerivedX, typename DerivedY>
double variance(Variant variant, const ShiftInvariantKernel& kernel, const Eigen::MatrixBase<DerivedX>& x,
                const Eigen::MatrixBase<DerivedY>& y, Eigen::Index dim) {
  validate_dimension(variant, dim);
  detail::require(x.size() == y.size(), "x and y have different lengths");
  const Eigen::VectorXd delta = x - y;
  const double k1 = kernel_eval(kernel, delta);
  const double k2 = kernel_eval(kernel, 2.0 * delta);
  const double D = static_cast<double>(dim);
  return variant == Variant::Tilde ? (1.0 + k2 - 2.0 * k1 * k1) / D : (1.0 + 0.5 * k2 - k1 * k1) / D;
}

/// Cov(s(x, y), s(x', y')). For breve the phase noise contributes
/// 1/2 k(t - t') with t = x + y.
template <typename D1, typename D2, typename D3, typename D4>
double covariance(Variant variant, const ShiftInvariantKernel& kernel, const Eigen::MatrixBase<D1>& x,
                  const Eigen::MatrixBase<D2>& y, const Eigen::MatrixBase<D3>& x2,
                  const Eigen::MatrixBase<D4>& y2, Eigen::Index dim) {
  validate_dimension(variant, dim);
  detail::require(x.size() == y.size() && x2.size() == y2.size() && x.size() == x2.size(),
                  "point pairs have inconsistent lengths");
  const Eigen::VectorXd delta = x - y;
  const Eigen::VectorXd delta2 = x2 - y2;
  const double bracket = 0.5 * kernel_eval(kernel, delta - delta2) + 0.5 * kernel_eval(kernel, delta + delta2) -
                         kernel_eval(kernel, delta) * kernel_eval(kernel, delta2);
  const double D = static_cast<double>(dim);
  if (variant == Variant::Tilde) return 2.0 / D * bracket;
  const Eigen::VectorXd t_diff = (x + y) - (x2 + y2);
  return (bracket + 0.5 * kernel_eval(kernel, t_diff)) / D;
}

struct VarianceReport {
  Eigen::VectorXd delta;
  double var_tilde = 0.0;
  double var_breve = 0.0;
  Eigen::Index dim = 0;
};

/// Both variances at a difference vector (tilde needs only delta; breve's
/// variance is also a function of delta alone).
template <typename Derived>
VarianceReport variance_report(const ShiftInvariantKernel& kernel, const Eigen::MatrixBase<Derived>& delta,
                               Eigen::Index dim) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(delta.size());
  return VarianceReport{delta, variance(Variant::Tilde, kernel, delta, zero, dim),
                        variance(Variant::Breve, kernel, delta, zero, dim), dim};
}

}  // namespace rfflab
