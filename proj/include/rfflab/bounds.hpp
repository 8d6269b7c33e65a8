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

// Analytic error bounds for the random Fourier reconstructions:
// high-probability uniform bounds and their inversion for D, the Dudley-type
// expected-max bounds, concentration of the max error about its mean, the
// exact expected squared L2 error and its McDiarmid concentration, and the
// numerical integration of survival bounds.
//
// All evaluators return raw values; probabilities above 1 are not clamped.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "rfflab/errors.hpp"
#include "rfflab/features.hpp"
#include "rfflab/kernels.hpp"
#include "rfflab/quadrature.hpp"

namespace rfflab {

enum class BoundForm { Tight, Loose };

inline std::string_view to_string(BoundForm f) { return f == BoundForm::Tight ? "tight" : "loose"; }

/// Parameters shared by the uniform and expected-max bounds.
struct BoundInput {
  int d = 1;
  double diameter = 1.0;  // l
  double sigma_p = 1.0;
  Eigen::Index D = 100;
  double epsilon = 0.1;
  double delta = 0.05;
  double wimpy_variance = 1.0;  // sigma_w^2
  // sup over the difference domain of the variance terms inside alpha_eps
  // (1/2 + 1/2 k(2d) - k(d)^2) and alpha'_eps (1/4 + 1/8 k(2d) - 1/4 k(d)^2).
  double variance_sup_tilde = 0.5;
  double variance_sup_breve = 0.25;
  double diameter_over_radius = 2.0;  // l / rho, breve expected-max only
  double lipschitz = 0.0;             // L
  // R = E max_i ||omega_i||. When unset, the Gaussian upper bound is used,
  // which needs `bandwidth`.
  std::optional<double> max_frequency_norm;
  std::optional<double> bandwidth;
};

inline void validate(const BoundInput& in) {
  detail::require(in.d >= 1, "d must be >= 1");
  detail::require(in.diameter > 0.0, "domain diameter must be positive");
  detail::require(in.sigma_p > 0.0, "sigma_p must be positive");
  detail::require(in.D >= 1, "D must be >= 1");
  detail::require(in.epsilon >= 0.0, "epsilon must be >= 0");
  detail::require(in.delta > 0.0 && in.delta < 1.0, "delta must lie in (0, 1)");
  detail::require(in.wimpy_variance >= 0.0, "wimpy variance must be >= 0");
  detail::require(in.diameter_over_radius >= 1.0 && in.diameter_over_radius <= 2.0,
                  "l/rho must lie in [1, 2]");
  detail::require(in.lipschitz >= 0.0, "Lipschitz constant must be >= 0");
}

/// sup over ||delta|| <= radius of the per-variant variance term that enters
/// alpha_eps (tilde) or alpha'_eps (breve), before adding the epsilon term.
inline double alpha_variance_sup(Variant variant, const ShiftInvariantKernel& kernel, double radius,
                                  int grid_resolution = kDefaultSupGridResolution) {
  if (variant == Variant::Tilde)
    return detail::radial_grid_sup(kernel, radius, grid_resolution,
                                   [](double k1, double k2) { return 0.5 + 0.5 * k2 - k1 * k1; });
  return detail::radial_grid_sup(kernel, radius, grid_resolution,
                                 [](double k1, double k2) { return 0.25 + 0.125 * k2 - 0.25 * k1 * k1; });
}

inline double alpha_from_sup(Variant variant, double variance_sup, double epsilon) {
  const double eps_term = variant == Variant::Tilde ? epsilon / 3.0 : epsilon / 6.0;
  return std::min(1.0, variance_sup + eps_term);
}

/// alpha_eps (tilde) or alpha'_eps (breve): min(1, grid sup + eps term).
inline double alpha_coefficient(Variant variant, const ShiftInvariantKernel& kernel, double epsilon,
                                double domain_radius, int grid_resolution = kDefaultSupGridResolution) {
  detail::require(epsilon > 0.0, "epsilon must be positive");
  return alpha_from_sup(variant, alpha_variance_sup(variant, kernel, domain_radius, grid_resolution), epsilon);
}

/// beta_d (tilde) or beta'_d (breve), the optimized net-radius constants.
inline double beta_coefficient(Variant variant, int d) {
  detail::require(d >= 1, "d must be >= 1");
  const double dd = d;
  if (variant == Variant::Tilde) {
    const double h = dd / 2.0;
    return (std::pow(h, -dd / (dd + 2.0)) + std::pow(h, 2.0 / (dd + 2.0))) *
           std::pow(2.0, (6.0 * dd + 2.0) / (dd + 2.0));
  }
  return (std::pow(dd, -dd / (dd + 1.0)) + std::pow(dd, 1.0 / (dd + 1.0))) *
         std::pow(2.0, (5.0 * dd + 1.0) / (dd + 1.0)) * std::pow(3.0, dd / (dd + 1.0));
}

namespace detail {

struct UniformBoundTerms {
  double coefficient;    // beta_d, beta'_d, 66 or 98
  double power;          // exponent on sigma_p l / eps
  double rate_constant;  // 8(d+2) or 32(d+1)
  double alpha;          // 1 for the loose form
};

inline UniformBoundTerms uniform_terms(Variant variant, const BoundInput& in, BoundForm form) {
  const double dd = in.d;
  if (variant == Variant::Tilde) {
    if (form == BoundForm::Loose) return {66.0, 2.0, 8.0 * (dd + 2.0), 1.0};
    return {beta_coefficient(variant, in.d), 2.0 / (1.0 + 2.0 / dd), 8.0 * (dd + 2.0),
            alpha_from_sup(variant, in.variance_sup_tilde, in.epsilon)};
  }
  if (form == BoundForm::Loose) return {98.0, 2.0, 32.0 * (dd + 1.0), 1.0};
  return {beta_coefficient(variant, in.d), 2.0 / (1.0 + 1.0 / dd), 32.0 * (dd + 1.0),
          alpha_from_sup(variant, in.variance_sup_breve, in.epsilon)};
}

}  // namespace detail

/// Pr(||f||_inf >= eps) upper bound. The loose form is only stated for
/// eps <= sigma_p l. Returns +inf at eps = 0.
inline double uniform_bound(Variant variant, const BoundInput& in, BoundForm form) {
  validate(in);
  if (form == BoundForm::Loose && in.epsilon > in.sigma_p * in.diameter)
    throw PreconditionError("loose uniform bound requires epsilon <= sigma_p * l");
  if (in.epsilon == 0.0) return std::numeric_limits<double>::infinity();
  const auto t = detail::uniform_terms(variant, in, form);
  const double D = static_cast<double>(in.D);
  return t.coefficient * std::pow(in.sigma_p * in.diameter / in.epsilon, t.power) *
         std::exp(-D * in.epsilon * in.epsilon / (t.rate_constant * t.alpha));
}

/// Smallest D (even for tilde) for which the tight uniform bound is <= delta,
/// from the closed-form inequality solved for D.
inline Eigen::Index required_D(Variant variant, const BoundInput& in) {
  validate(in);
  detail::require(in.epsilon > 0.0, "epsilon must be positive");
  const auto t = detail::uniform_terms(variant, in, BoundForm::Tight);
  const double eps = in.epsilon;
  const double bracket = t.power * std::log(in.sigma_p * in.diameter / eps) + std::log(t.coefficient / in.delta);
  const double lower = t.rate_constant * t.alpha / (eps * eps) * bracket;
  auto dim = static_cast<Eigen::Index>(std::ceil(std::max(lower, 1.0)));
  if (variant == Variant::Tilde) {
    dim = std::max<Eigen::Index>(dim, 2);
    if (dim % 2 != 0) ++dim;
  }
  return dim;
}

/// gamma = 4 sqrt(pi) erfc(2 sqrt(log 2)) + sqrt(log 2), the entropy
/// integral constant for the shift-invariant error process.
inline double dudley_gamma() {
  const double log2 = std::numbers::ln2;
  return 4.0 * std::sqrt(std::numbers::pi) * std::erfc(2.0 * std::sqrt(log2)) + std::sqrt(log2);
}

/// gamma'_{l/rho} for the phase-shifted error process on X^2:
///   4 sqrt(pi) erfc(sqrt(log(2)/2 + log(4 sqrt(2) l/rho))) + (rho/l) sqrt(5/2 log 2 + log(l/rho)).
/// Note: this expression gives 1.610 at l/rho = 1 and 0.910 at l/rho = 2.
inline double dudley_gamma_prime(double diameter_over_radius) {
  const double r = diameter_over_radius;
  if (!(r >= 1.0 && r <= 2.0)) throw InputError("l/rho must lie in [1, 2]");
  const double log2 = std::numbers::ln2;
  return 4.0 * std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(0.5 * log2 + std::log(4.0 * std::numbers::sqrt2 * r))) +
         (1.0 / r) * std::sqrt(2.5 * log2 + std::log(r));
}

/// Upper bound on R = E max ||omega_i|| for the Gaussian: the max runs over
/// D/2 frequencies for tilde and D for breve.
inline double gaussian_max_frequency_bound(Variant variant, int d, Eigen::Index D, double bandwidth) {
  const double count = variant == Variant::Tilde ? static_cast<double>(D) / 2.0 : static_cast<double>(D);
  return (std::sqrt(static_cast<double>(d)) + std::sqrt(2.0 * std::log(count))) / bandwidth;
}

/// E||f||_inf <= 24 gamma sqrt(d) l / sqrt(D) (R + L)          (tilde)
///            <= 48 gamma' sqrt(d) l / sqrt(D) (R + L)         (breve)
/// The breve statement assumes X and D are not tiny (the probability that the
/// error crosses zero is taken as 1).
inline double expected_max_bound(Variant variant, const BoundInput& in) {
  validate(in);
  detail::require(in.D >= 4, "expected-max bound needs D >= 4");
  double R = 0.0;
  if (in.max_frequency_norm) {
    R = *in.max_frequency_norm;
  } else {
    detail::require(in.bandwidth.has_value(), "expected-max bound needs R or a Gaussian bandwidth");
    R = gaussian_max_frequency_bound(variant, in.d, in.D, *in.bandwidth);
  }
  const double scale = std::sqrt(static_cast<double>(in.d)) * in.diameter / std::sqrt(static_cast<double>(in.D));
  const double coef = variant == Variant::Tilde ? 24.0 * dudley_gamma() : 48.0 * dudley_gamma_prime(in.diameter_over_radius);
  return coef * scale * (R + in.lipschitz);
}

/// Pr(||f||_inf - E||f||_inf >= eps) upper bound from Bousquet's inequality.
inline double concentration_bound(Variant variant, double epsilon, Eigen::Index D, double expected_max,
                                  double wimpy_variance) {
  detail::require(epsilon >= 0.0, "epsilon must be >= 0");
  detail::require(expected_max >= 0.0, "expected max error must be >= 0");
  detail::require(D >= 1, "D must be >= 1");
  const double Dd = static_cast<double>(D);
  const double denom = variant == Variant::Tilde
                           ? Dd * expected_max + 0.5 * wimpy_variance + Dd * epsilon / 6.0
                           : 4.0 / 9.0 * Dd * expected_max + (wimpy_variance + 1.0) / 81.0 + 2.0 / 27.0 * Dd * epsilon;
  if (denom == 0.0) return epsilon == 0.0 ? 2.0 : 0.0;
  return 2.0 * std::exp(-Dd * epsilon * epsilon / denom);
}

// ---------------------------------------------------------------------------
// L2 error

/// mass * (uniform probability on x_box) x (uniform probability on y_box).
struct UniformBoxMeasure {
  Eigen::VectorXd x_lower, x_upper;
  Eigen::VectorXd y_lower, y_upper;
  double mass = 1.0;

  /// The same box [lower, upper] for both arguments.
  static UniformBoxMeasure square(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, double mass = 1.0) {
    return {lower, upper, lower, upper, mass};
  }
};

/// Finite measure sum_i w_i delta_{(x_i, y_i)}; xs and ys hold one point per row.
struct WeightedPairMeasure {
  Eigen::MatrixXd xs;
  Eigen::MatrixXd ys;
  Eigen::VectorXd weights;
};

using MeasureSpec = std::variant<UniformBoxMeasure, WeightedPairMeasure>;

inline double total_mass(const MeasureSpec& measure) {
  if (const auto* box = std::get_if<UniformBoxMeasure>(&measure)) return box->mass;
  return std::get<WeightedPairMeasure>(measure).weights.sum();
}

namespace detail {

// Mean of g(x - y) over x ~ U[a, b], y ~ U[c, e], by composite Gauss-Legendre
// on the square with panel doubling.
template <typename G>
double box_pair_mean_1d(G&& g, double a, double b, double c, double e, double rel_tol) {
  static const GaussLegendreRule rule(16);
  auto estimate = [&](int panels) {
    std::vector<double> xn, xw, yn, yw;
    composite_nodes(rule, a, b, panels, xn, xw);
    composite_nodes(rule, c, e, panels, yn, yw);
    double sum = 0.0;
    for (std::size_t i = 0; i < xn.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < yn.size(); ++j) row += yw[j] * g(xn[i] - yn[j]);
      sum += xw[i] * row;
    }
    return sum / ((b - a) * (e - c));
  };
  double prev = estimate(1);
  for (int panels = 2; panels <= 512; panels *= 2) {
    const double next = estimate(panels);
    if (std::abs(next - prev) <= rel_tol * std::abs(next)) return next;
    prev = next;
  }
  throw NumericalError("box quadrature did not converge");
}

// Mean of h(x, y) over the product box for a non-separable kernel: tensor grid
// on all 2d coordinates with a fixed-order rule per axis and order doubling.
template <typename H>
double box_pair_mean_tensor(H&& h, const UniformBoxMeasure& box, double rel_tol) {
  const Eigen::Index d = box.x_lower.size();
  auto estimate = [&](int order) {
    const GaussLegendreRule rule(order);
    const Eigen::Index axes = 2 * d;
    std::vector<int> idx(axes, 0);
    Eigen::VectorXd x(d), y(d);
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      for (Eigen::Index k = 0; k < axes; ++k) {
        const bool is_x = k < d;
        const Eigen::Index j = is_x ? k : k - d;
        const double lo = is_x ? box.x_lower(j) : box.y_lower(j);
        const double hi = is_x ? box.x_upper(j) : box.y_upper(j);
        const double node = lo + 0.5 * (hi - lo) * (rule.nodes[idx[k]] + 1.0);
        (is_x ? x : y)(j) = node;
        w *= 0.5 * rule.weights[idx[k]];  // normalized: weights of U[lo, hi]
      }
      sum += w * h(x, y);
      Eigen::Index k = 0;
      while (k < axes && ++idx[k] == order) idx[k++] = 0;
      if (k == axes) break;
    }
    return sum;
  };
  double prev = estimate(8);
  for (int order = 16; std::pow(static_cast<double>(order), 2.0 * static_cast<double>(d)) <= 5e7; order *= 2) {
    const double next = estimate(order);
    if (std::abs(next - prev) <= rel_tol * std::abs(next)) return next;
    prev = next;
  }
  throw NumericalError("tensor-grid quadrature did not converge within the node budget");
}

struct L2Integrals {
  double mass;
  double doubled;  // integral of k(2x, 2y) d mu
  double squared;  // integral of k(x, y)^2 d mu
};

inline L2Integrals l2_integrals(const ShiftInvariantKernel& kernel, const MeasureSpec& measure) {
  constexpr double kRelTol = 1e-10;
  if (const auto* box = std::get_if<UniformBoxMeasure>(&measure)) {
    const Eigen::Index d = box->x_lower.size();
    require(d == kernel.dim() && box->x_upper.size() == d && box->y_lower.size() == d && box->y_upper.size() == d,
            "box dimension does not match kernel dimension");
    require((box->x_upper - box->x_lower).minCoeff() > 0.0 && (box->y_upper - box->y_lower).minCoeff() > 0.0,
            "box must have positive extent in every coordinate");
    require(box->mass > 0.0, "measure mass must be positive");
    double doubled = 1.0, squared = 1.0;
    if (kernel.separable()) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double a = box->x_lower(j), b = box->x_upper(j), c = box->y_lower(j), e = box->y_upper(j);
        doubled *= box_pair_mean_1d([&](double t) { return kernel.factor(2.0 * t); }, a, b, c, e, kRelTol);
        squared *= box_pair_mean_1d([&](double t) { const double f = kernel.factor(t); return f * f; }, a, b, c, e, kRelTol);
      }
    } else {
      doubled = box_pair_mean_tensor([&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return kernel_eval(kernel, 2.0 * (x - y)); }, *box, kRelTol);
      squared = box_pair_mean_tensor([&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        const double k = kernel_eval(kernel, x - y); return k * k; }, *box, kRelTol);
    }
    return {box->mass, box->mass * doubled, box->mass * squared};
  }
  const auto& pts = std::get<WeightedPairMeasure>(measure);
  require(pts.xs.rows() == pts.ys.rows() && pts.xs.rows() == pts.weights.size(),
          "weighted pair measure has inconsistent sizes");
  require(pts.xs.cols() == kernel.dim() && pts.ys.cols() == kernel.dim(),
          "point dimension does not match kernel dimension");
  require(pts.weights.size() > 0 && pts.weights.minCoeff() >= 0.0, "weights must be nonnegative and nonempty");
  L2Integrals out{pts.weights.sum(), 0.0, 0.0};
  for (Eigen::Index i = 0; i < pts.xs.rows(); ++i) {
    const Eigen::VectorXd delta = (pts.xs.row(i) - pts.ys.row(i)).transpose();
    const double k = kernel_eval(kernel, delta);
    out.doubled += pts.weights(i) * kernel_eval(kernel, 2.0 * delta);
    out.squared += pts.weights(i) * k * k;
  }
  return out;
}

}  // namespace detail

/// E ||f||_mu^2, exact up to quadrature error:
///   tilde: (1/D) [mu(X^2) + int k(2x,2y) dmu - 2 ||k||_mu^2]
///   breve: (1/D) [mu(X^2) + 1/2 int k(2x,2y) dmu - ||k||_mu^2]
inline double l2_expected_error(Variant variant, const ShiftInvariantKernel& kernel, const MeasureSpec& measure,
                                Eigen::Index dim) {
  validate_dimension(variant, dim);
  const auto I = detail::l2_integrals(kernel, measure);
  const double D = static_cast<double>(dim);
  return variant == Variant::Tilde ? (I.mass + I.doubled - 2.0 * I.squared) / D
                                   : (I.mass + 0.5 * I.doubled - I.squared) / D;
}

/// Pr(| ||f||_mu^2 - E ||f||_mu^2 | >= eps) upper bound (McDiarmid).
inline double l2_concentration_bound(Variant variant, double epsilon, Eigen::Index D, double mass, BoundForm form) {
  detail::require(mass > 0.0, "measure mass must be positive");
  detail::require(D >= 1, "D must be >= 1");
  detail::require(epsilon >= 0.0, "epsilon must be >= 0");
  const double Dd = static_cast<double>(D);
  const double e2 = epsilon * epsilon, m2 = mass * mass;
  double exponent = 0.0;
  if (variant == Variant::Tilde) {
    exponent = form == BoundForm::Tight ? Dd * Dd * Dd * e2 / (8.0 * (4.0 * Dd + 1.0) * (4.0 * Dd + 1.0) * m2)
                                        : Dd * e2 / (200.0 * m2);
  } else {
    exponent = form == BoundForm::Tight ? Dd * Dd * Dd * e2 / (512.0 * (Dd + 1.0) * (Dd + 1.0) * m2)
                                        : Dd * e2 / (2048.0 * m2);
  }
  return 2.0 * std::exp(-exponent);
}

/// Largest change in ||f||_mu^2 from replacing one frequency:
/// 4 (4D + 1) / D^2 mu(X^2) for tilde, 32 (D + 1) / D^2 mu(X^2) for breve.
inline double l2_bounded_difference(Variant variant, Eigen::Index D, double mass) {
  const double Dd = static_cast<double>(D);
  return variant == Variant::Tilde ? 4.0 * (4.0 * Dd + 1.0) / (Dd * Dd) * mass : 32.0 * (Dd + 1.0) / (Dd * Dd) * mass;
}

// ---------------------------------------------------------------------------
// Integrated survival bounds

/// integral over [0, eps_max] of min(1, uniform_bound(eps)), an upper
/// estimate of E||f||_inf. The integrand is 1 up to the crossing point eps*
/// (found by bisection; the bound is decreasing in eps) and smooth after it
/// apart from the kink where alpha_eps reaches its cap, which is used as a
/// panel break.
inline double integrate_survival_bound(Variant variant, const BoundInput& in, BoundForm form, double epsilon_max) {
  validate(in);
  detail::require(epsilon_max > 0.0, "epsilon_max must be positive");
  auto bound_at = [&](double eps) {
    BoundInput at = in;
    at.epsilon = eps;
    return uniform_bound(variant, at, form);
  };
  if (bound_at(epsilon_max) >= 1e-8)
    throw InputError("epsilon_max too small: the bound there is not below 1e-8");

  double lo = 0.0, hi = epsilon_max;  // bound(lo) = inf >= 1 > bound(hi)
  for (int i = 0; i < 200 && hi - lo > 1e-15 * epsilon_max; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bound_at(mid) >= 1.0 ? lo : hi) = mid;
  }
  const double crossing = hi;

  std::vector<double> breaks{crossing};
  if (form == BoundForm::Tight) {
    const double sup = variant == Variant::Tilde ? in.variance_sup_tilde : in.variance_sup_breve;
    const double cap = variant == Variant::Tilde ? 3.0 * (1.0 - sup) : 6.0 * (1.0 - sup);
    if (cap > crossing && cap < epsilon_max) breaks.push_back(cap);
  }
  breaks.push_back(epsilon_max);
  double total = crossing;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += integrate_smooth([&](double e) { return std::min(1.0, bound_at(e)); }, breaks[i], breaks[i + 1], 1e-12, 1e-13);
  return total;
}

/// An eps_max for integrate_survival_bound: doubles from 0.05 until the bound
/// falls below 1e-9. For the loose form the result is capped at sigma_p l,
/// and a cap that does not reach 1e-9 is reported as a precondition failure.
inline double survival_epsilon_max(Variant variant, const BoundInput& in, BoundForm form) {
  const double cap = form == BoundForm::Loose ? in.sigma_p * in.diameter : std::numeric_limits<double>::infinity();
  BoundInput at = in;
  for (double eps = 0.05;; eps *= 2.0) {
    at.epsilon = std::min(eps, cap);
    if (uniform_bound(variant, at, form) < 1e-9) return at.epsilon;
    if (at.epsilon == cap) throw PreconditionError("loose bound does not vanish within epsilon <= sigma_p * l");
    if (eps > 1e6) throw NumericalError("uniform bound does not decay");
  }
}

/// A BoundInput filled from a kernel on a domain of the given diameter: sigma_p,
/// L, the variance sups and sigma_w^2 over ||delta|| <= diameter.
inline BoundInput make_bound_input(const ShiftInvariantKernel& kernel, double diameter, Eigen::Index D, double epsilon,
                                   double delta = 0.05, int grid_resolution = kDefaultSupGridResolution) {
  BoundInput in;
  in.d = kernel.dim();
  in.diameter = diameter;
  in.sigma_p = sigma_p(kernel);
  in.D = D;
  in.epsilon = epsilon;
  in.delta = delta;
  in.wimpy_variance = wimpy_variance_sup(kernel, diameter, grid_resolution);
  in.variance_sup_tilde = alpha_variance_sup(Variant::Tilde, kernel, diameter, grid_resolution);
  in.variance_sup_breve = alpha_variance_sup(Variant::Breve, kernel, diameter, grid_resolution);
  in.lipschitz = lipschitz_const(kernel);
  if (kernel.family() == KernelFamily::Gaussian) in.bandwidth = kernel.bandwidth();
  return in;
}

}  // namespace rfflab
