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

// Effect of the approximation on downstream methods: kernel ridge regression
// and its prediction-drift bounds, the SVM drift bound, and mean map kernel /
// MMD estimators with their feature-redraw concentration bounds.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <iostream>
#include <numbers>

#include "rfflab/analysis.hpp"
#include "rfflab/errors.hpp"
#include "rfflab/features.hpp"
#include "rfflab/kernels.hpp"

namespace rfflab {

// ---------------------------------------------------------------------------
// Kernel ridge regression (dual form)

struct KrrModel {
  Eigen::VectorXd alpha;  // (K + n lambda0 I)^{-1} (y - offset)
  double offset = 0.0;    // mean of the training labels
  double lambda0 = 1.0;
  double sigma_y = 0.0;   // RMS of the centered labels
  bool jittered = false;
};

inline constexpr double kPsdTolerance = 1e-8;

inline KrrModel krr_fit(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y, double lambda0) {
  const Eigen::Index n = gram.rows();
  detail::require(gram.cols() == n && y.size() == n && n >= 1, "Gram matrix and labels have inconsistent sizes");
  detail::require(lambda0 > 0.0, "lambda0 must be positive");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  detail::require((gram - gram.transpose()).cwiseAbs().maxCoeff() <= kPsdTolerance * scale,
                  "Gram matrix is not symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  detail::require(eig.eigenvalues().minCoeff() >= -kPsdTolerance * scale,
                  "Gram matrix is not positive semidefinite");

  KrrModel model;
  model.lambda0 = lambda0;
  model.offset = y.mean();
  const Eigen::VectorXd centered = y.array() - model.offset;
  model.sigma_y = std::sqrt(centered.squaredNorm() / static_cast<double>(n));

  Eigen::MatrixXd system = gram;
  system.diagonal().array() += static_cast<double>(n) * lambda0;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    std::clog << "rfflab: warning: KRR factorization failed, retrying with jitter\n";
    system.diagonal().array() += 1e-10 * static_cast<double>(n);
    llt.compute(system);
    model.jittered = true;
    if (llt.info() != Eigen::Success) throw NumericalError("KRR system is not positive definite");
  }
  model.alpha = llt.solve(centered);
  return model;
}

/// h(x) = alpha^T k_x + offset, with k_x the kernel values against the training points.
inline double krr_predict(const KrrModel& model, const Eigen::VectorXd& kx) {
  detail::require(kx.size() == model.alpha.size(), "k_x length does not match the training set");
  return model.alpha.dot(kx) + model.offset;
}

/// |h_approx(x) - h(x)| <= (lambda0 + 1) / lambda0^2 sigma_y eps when the
/// kernel error is uniformly at most eps; lambda0 + 2 with a bias feature.
inline double krr_drift_bound(double sigma_y, double lambda0, double epsilon, bool with_bias = false) {
  detail::require(lambda0 > 0.0 && sigma_y >= 0.0 && epsilon >= 0.0, "invalid KRR drift bound inputs");
  return (lambda0 + (with_bias ? 2.0 : 1.0)) / (lambda0 * lambda0) * sigma_y * epsilon;
}

/// sigma_y / (sqrt(n) lambda0) ||k^_x - k_x|| + kappa sigma_y / (n lambda0^2) ||K^ - K||_2.
inline double krr_general_drift_bound(double sigma_y, Eigen::Index n, double lambda0, double kappa,
                                      double kx_error_norm, double gram_error_norm) {
  detail::require(n >= 1 && lambda0 > 0.0 && kappa > 0.0, "invalid KRR drift bound inputs");
  const double nd = static_cast<double>(n);
  return sigma_y / (std::sqrt(nd) * lambda0) * kx_error_norm + kappa * sigma_y / (nd * lambda0 * lambda0) * gram_error_norm;
}

// ---------------------------------------------------------------------------
// SVM

/// sqrt(2) kappa^{3/4} C0 S^{1/4} + sqrt(kappa) C0 S^{1/2},
/// S = ||K^ - K||_2 + ||k^_x - k_x|| + |f_x|.
inline double svm_drift_bound(double C0, double kappa, double gram_error_norm, double kx_error_norm, double fx) {
  detail::require(C0 > 0.0 && kappa > 0.0, "C0 and kappa must be positive");
  const double S = gram_error_norm + kx_error_norm + std::abs(fx);
  return std::numbers::sqrt2 * std::pow(kappa, 0.75) * C0 * std::pow(S, 0.25) + std::sqrt(kappa) * C0 * std::sqrt(S);
}

/// Uniform kernel error below which the SVM decision function moves by less
/// than u; the n + sqrt(n) + g term has g = 0 for tilde and 1 for breve.
inline double svm_epsilon_threshold(double C0, double u, Eigen::Index n, Variant variant) {
  detail::require(C0 > 0.0 && u >= 0.0 && n >= 1, "invalid SVM threshold inputs");
  const double g = variant == Variant::Tilde ? 0.0 : 1.0;
  const double nd = static_cast<double>(n);
  const double num = 2.0 * C0 * C0 + 4.0 * C0 * u + u * u - 2.0 * (C0 + u) * std::sqrt(C0 * (C0 + 2.0 * u));
  return std::max(0.0, num) / (C0 * C0 * (nd + std::sqrt(nd) + g));
}

// ---------------------------------------------------------------------------
// Mean map kernel and MMD

enum class Bias { Biased, Unbiased };
enum class MmdEstimator { BiasedMMK, UnbiasedMMK, BiasedMMD2, UnbiasedMMD2, FeatureMMD2 };

struct MmdEstimate {
  double value = 0.0;
  MmdEstimator estimator = MmdEstimator::BiasedMMK;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
};

/// MMK(X, Y) = 1/(nm) sum_ij k(X_i, Y_j). The unbiased form drops the
/// diagonal and is only defined for MMK(X, X).
inline MmdEstimate mmk(const ShiftInvariantKernel& kernel, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                       Bias bias = Bias::Biased) {
  detail::require(X.rows() >= 1 && Y.rows() >= 1, "empty sample");
  const Eigen::MatrixXd K = kernel_matrix(kernel, X, Y);
  const Eigen::Index n = X.rows(), m = Y.rows();
  if (bias == Bias::Biased) return {K.mean(), MmdEstimator::BiasedMMK, n, m};
  detail::require(X.rows() == Y.rows() && X.cols() == Y.cols() && X == Y, "unbiased MMK is only defined for MMK(X, X)");
  detail::require(n >= 2, "unbiased MMK needs n >= 2");
  const double off_diag = K.sum() - K.trace();
  return {off_diag / (static_cast<double>(n) * static_cast<double>(n - 1)), MmdEstimator::UnbiasedMMK, n, n};
}

/// Feature-mode MMK: zbar(X)^T zbar(Y); unbiased
///   n^2/(n^2 - n) (||zbar||^2 - 1/n^2 sum_i ||z(X_i)||^2).
inline MmdEstimate mmk(const EmbeddedSet& zx, const EmbeddedSet& zy, Bias bias = Bias::Biased) {
  detail::require(zx.config == zy.config, "embedded sets were built from different configurations");
  detail::require(zx.point_count() >= 1 && zy.point_count() >= 1, "empty sample");
  const Eigen::VectorXd mx = zx.features.rowwise().mean();
  const Eigen::Index n = zx.point_count(), m = zy.point_count();
  if (bias == Bias::Biased) {
    const Eigen::VectorXd my = zy.features.rowwise().mean();
    return {mx.dot(my), MmdEstimator::BiasedMMK, n, m};
  }
  detail::require(zx.features.cols() == zy.features.cols() && zx.features == zy.features,
                  "unbiased MMK is only defined for MMK(X, X)");
  detail::require(n >= 2, "unbiased MMK needs n >= 2");
  const double nd = static_cast<double>(n);
  const double self = zx.features.colwise().squaredNorm().sum();
  return {nd * nd / (nd * nd - nd) * (mx.squaredNorm() - self / (nd * nd)), MmdEstimator::UnbiasedMMK, n, n};
}

/// n/(n-1) ||zbar||^2 - 1/(n-1): the unbiased MMK(X, X) when every
/// z(x)^T z(x) = 1, which holds for tilde.
inline double mmk_unbiased_unit_norm(const EmbeddedSet& zx) {
  detail::require(zx.config.variant == Variant::Tilde, "the unit-norm simplification only holds for tilde");
  detail::require(zx.point_count() >= 2, "unbiased MMK needs n >= 2");
  const double nd = static_cast<double>(zx.point_count());
  return nd / (nd - 1.0) * zx.features.rowwise().mean().squaredNorm() - 1.0 / (nd - 1.0);
}

/// MMD^2 = MMK(X, X) + MMK(Y, Y) - 2 MMK(X, Y).
inline MmdEstimate mmd2(const ShiftInvariantKernel& kernel, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                        Bias bias = Bias::Biased) {
  const double v = mmk(kernel, X, X, bias).value + mmk(kernel, Y, Y, bias).value - 2.0 * mmk(kernel, X, Y).value;
  return {v, bias == Bias::Biased ? MmdEstimator::BiasedMMD2 : MmdEstimator::UnbiasedMMD2, X.rows(), Y.rows()};
}

/// Feature-mode MMD^2; the biased form is ||zbar(X) - zbar(Y)||^2.
inline MmdEstimate mmd2(const EmbeddedSet& zx, const EmbeddedSet& zy, Bias bias = Bias::Biased) {
  detail::require(zx.config == zy.config, "embedded sets were built from different configurations");
  if (bias == Bias::Biased) {
    const Eigen::VectorXd diff = zx.features.rowwise().mean() - zy.features.rowwise().mean();
    return {diff.squaredNorm(), MmdEstimator::FeatureMMD2, zx.point_count(), zy.point_count()};
  }
  const double v = mmk(zx, zx, bias).value + mmk(zy, zy, bias).value - 2.0 * mmk(zx, zy).value;
  return {v, MmdEstimator::UnbiasedMMD2, zx.point_count(), zy.point_count()};
}

enum class MmdTarget { MMK, MMD };

/// Pr(|estimate_z - estimate| >= eps) over feature redraws, X and Y fixed:
/// 2 exp(-D eps^2 / 8) for MMK, 2 exp(-D eps^2 / 128) for MMD^2.
inline double mmk_mcdiarmid_bound(MmdTarget target, Eigen::Index D, double epsilon) {
  detail::require(D >= 1 && epsilon >= 0.0, "invalid McDiarmid bound inputs");
  const double rate = target == MmdTarget::MMK ? 1.0 / 8.0 : 1.0 / 128.0;
  return 2.0 * std::exp(-rate * static_cast<double>(D) * epsilon * epsilon);
}

/// E|estimate_z - estimate| <= 2 sqrt(2 pi / D) (MMK), 8 sqrt(2 pi / D) (MMD^2).
inline double mmk_expected_abs_error(MmdTarget target, Eigen::Index D) {
  detail::require(D >= 1, "D must be >= 1");
  const double root = std::sqrt(2.0 * std::numbers::pi / static_cast<double>(D));
  return (target == MmdTarget::MMK ? 2.0 : 8.0) * root;
}

inline constexpr Eigen::Index kMmkVariancePairLimit = 10000;

/// Exact Var MMK_z(X, Y) = 1/(n^2 m^2) sum over pairs of pairs of
/// Cov(s(X_i, Y_j), s(X_i', Y_j')).
inline double mmk_variance(const ShiftInvariantKernel& kernel, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           Variant variant, Eigen::Index dim) {
  validate_dimension(variant, dim);
  detail::require(X.cols() == kernel.dim() && Y.cols() == kernel.dim(), "point dimension does not match kernel");
  const Eigen::Index pairs = X.rows() * Y.rows();
  detail::require(pairs >= 1, "empty sample");
  detail::require(pairs <= kMmkVariancePairLimit, "n*m exceeds the pair limit for the exact variance");
  const Eigen::Index d = kernel.dim();
  Eigen::MatrixXd deltas(d, pairs), sums(d, pairs);
  Eigen::VectorXd kd(pairs);
  for (Eigen::Index i = 0, p = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < Y.rows(); ++j, ++p) {
      deltas.col(p) = (X.row(i) - Y.row(j)).transpose();
      sums.col(p) = (X.row(i) + Y.row(j)).transpose();
      kd(p) = kernel.from_sq_norm(deltas.col(p).squaredNorm());
    }
  // Sum of the covariance bracket over all (p, q), using symmetry in (p, q).
  double total = 0.0;
  for (Eigen::Index p = 0; p < pairs; ++p) {
    double row = 0.0;
    for (Eigen::Index q = p; q < pairs; ++q) {
      double minus = 0.0, plus = 0.0, tdiff = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const double a = deltas(c, p), b = deltas(c, q);
        minus += (a - b) * (a - b);
        plus += (a + b) * (a + b);
        if (variant == Variant::Breve) {
          const double t = sums(c, p) - sums(c, q);
          tdiff += t * t;
        }
      }
      double term = 0.5 * kernel.from_sq_norm(minus) + 0.5 * kernel.from_sq_norm(plus) - kd(p) * kd(q);
      term = variant == Variant::Tilde ? 2.0 * term : term + 0.5 * kernel.from_sq_norm(tdiff);
      row += (q == p ? 1.0 : 2.0) * term;
    }
    total += row;
  }
  const double P = static_cast<double>(pairs);
  return total / static_cast<double>(dim) / (P * P);
}

}  // namespace rfflab
