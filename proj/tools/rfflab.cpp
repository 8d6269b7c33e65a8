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

// rfflab command-line front end: runs the analyses and experiments and
// writes their CSV outputs plus a manifest that replays the run.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "rfflab/rfflab.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace rfflab;

// ---------------------------------------------------------------------------
// Option registry: every option value is recorded so the manifest can replay it.

template <typename T>
struct is_vector : std::false_type {};
template <typename T>
struct is_vector<std::vector<T>> : std::true_type {};

std::string to_text(double v) { return format_double(v); }
std::string to_text(const std::string& v) { return v; }
template <typename T>
  requires std::is_integral_v<T>
std::string to_text(T v) {
  return std::to_string(v);
}
template <typename T>
std::string to_text(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_text(v[i]);
  return out;
}

class Command {
 public:
  Command(CLI::App& parent, std::string name, std::string description)
      : app_(parent.add_subcommand(std::move(name), std::move(description))) {
    app_->add_option("--out-dir", out_dir_, "Output directory (created if missing)")->capture_default_str();
  }
  virtual ~Command() = default;

  template <typename T>
  CLI::Option* option(const std::string& name, T& var, const std::string& description) {
    auto* opt = app_->add_option("--" + name, var, description)->capture_default_str();
    if constexpr (is_vector<T>::value) opt->delimiter(',');
    recorders_.emplace_back(name, [&var] { return to_text(var); });
    return opt;
  }

  CLI::App* app() const { return app_; }
  const std::string& out_dir() const { return out_dir_; }

  json resolved_config() const {
    json config = json::object();
    for (const auto& [name, get] : recorders_) config[name] = get();
    return config;
  }

  /// Base seed recorded in the manifest; nullopt for seedless commands.
  virtual std::optional<std::uint64_t> seed() const { return std::nullopt; }

  /// Runs the command, creating files through `out`.
  virtual void run(class Outputs& out) = 0;

 protected:
  CLI::App* app_;
  std::string out_dir_ = "out";
  std::vector<std::pair<std::string, std::function<std::string()>>> recorders_;
};

/// Files written by one run; removed again if the run fails.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    const fs::path path = dir_ / name;
    names_.push_back(name);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os.exceptions(std::ios::badbit | std::ios::failbit);
    return os;
  }

  const std::vector<std::string>& names() const { return names_; }

  void remove_all() noexcept {
    for (const auto& name : names_) {
      std::error_code ec;
      fs::remove(dir_ / name, ec);
    }
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw NumericalError("output sanity check failed: " + what);
}

void warn(const std::string& msg) { std::cerr << "rfflab: warning: " << msg << '\n'; }

std::vector<Variant> variants_of(const std::string& name) {
  if (name == "both") return {Variant::Tilde, Variant::Breve};
  return {parse_variant(name)};
}

CLI::Option* variant_option(Command& cmd, std::string& var) {
  return cmd.option("variant", var, "Embedding: tilde, breve or both")
      ->check(CLI::IsMember({"tilde", "breve", "both"}));
}

// ---------------------------------------------------------------------------
// variance

class VarianceCommand : public Command {
 public:
  explicit VarianceCommand(CLI::App& parent)
      : Command(parent, "variance", "Per-dimension variance of both embeddings along ||delta|| in [0, range*sigma]") {
    option("sigma", sigma_, "Gaussian bandwidth")->required()->check(CLI::PositiveNumber);
    option("points", points_, "Number of ||delta|| grid points")->check(CLI::Range(2, 100000000));
    option("range", range_, "Grid upper end in units of sigma")->check(CLI::PositiveNumber);
  }

  void run(Outputs& out) override {
    const auto kernel = ShiftInvariantKernel::gaussian(sigma_, 1);
    constexpr Eigen::Index kDim = 2;  // var * D does not depend on D
    auto os = out.open("variance_profile.csv");
    CsvWriter csv(os, {"delta_norm", "var_tilde_times_D", "var_breve_times_D", "kernel_value"});
    const double hi = range_ * sigma_;
    for (int i = 0; i < points_; ++i) {
      const double r = hi * static_cast<double>(i) / static_cast<double>(points_ - 1);
      const auto rep = variance_report(kernel, Eigen::VectorXd::Constant(1, r), kDim);
      const double vt = rep.var_tilde * kDim, vb = rep.var_breve * kDim;
      check(vt <= vb + 1e-15, "tilde variance exceeds breve variance at ||delta|| = " + format_double(r));
      csv.row(r, vt, vb, kernel.radial(r));
    }
    check(csv.rows_written() == static_cast<std::size_t>(points_) + 1, "variance profile row count");
  }

 private:
  double sigma_ = 1.0;
  int points_ = 1001;
  double range_ = 10.0;
};

// ---------------------------------------------------------------------------
// bounds

class BoundsCommand : public Command {
 public:
  explicit BoundsCommand(CLI::App& parent)
      : Command(parent, "bounds", "Uniform-error bounds, expected-max bounds and the beta coefficients") {
    option("sigma", sigma_, "Gaussian bandwidth")->check(CLI::PositiveNumber);
    option("domain", domain_, "Half-width b of the domain [-b, b]^d")->check(CLI::PositiveNumber);
    option("input-dim", input_dim_, "Input dimension d")->check(CLI::Range(1, 1000));
    option("d-grid", dims_, "Embedding dimensions D for the expected-max table");
    option("D", curve_dim_, "Embedding dimension D for the epsilon curve")->check(CLI::PositiveNumber);
    option("eps-points", eps_points_, "Number of epsilon grid points")->check(CLI::Range(2, 1000000));
    option("beta-max-d", beta_max_d_, "Largest d in the beta table")->check(CLI::Range(1, 100000));
    option("diameter-over-radius", ratio_, "l / rho for the breve expected-max constant")->check(CLI::Range(1.0, 2.0));
    variant_option(*this, variant_);
  }

  void run(Outputs& out) override {
    const auto variants = variants_of(variant_);
    const auto kernel = ShiftInvariantKernel::gaussian(sigma_, input_dim_);
    const double diameter = 2.0 * domain_ * std::sqrt(static_cast<double>(input_dim_));
    for (const auto v : variants) {
      validate_dimension(v, curve_dim_);
      for (const auto D : dims_) validate_dimension(v, D);
    }

    BoundInput in = make_bound_input(kernel, diameter, curve_dim_, 0.1);
    in.diameter_over_radius = ratio_;
    double eps_hi = 0.0;
    for (const auto v : variants) eps_hi = std::max(eps_hi, survival_epsilon_max(v, in, BoundForm::Tight));
    {
      auto os = out.open("bounds_epsilon.csv");
      CsvWriter csv(os, {"variant", "form", "epsilon", "bound_value"});
      for (const auto v : variants)
        for (const auto form : {BoundForm::Tight, BoundForm::Loose}) {
          double prev = std::numeric_limits<double>::infinity();
          for (int i = 1; i <= eps_points_; ++i) {
            in.epsilon = eps_hi * static_cast<double>(i) / static_cast<double>(eps_points_);
            if (form == BoundForm::Loose && in.epsilon > in.sigma_p * in.diameter) break;
            const double b = uniform_bound(v, in, form);
            check(b >= 0.0 && b <= prev, "uniform bound is not decreasing in epsilon");
            prev = b;
            csv.row(to_string(v), to_string(form), in.epsilon, b);
          }
        }
    }
    {
      auto os = out.open("bounds_expected.csv");
      CsvWriter csv(os, {"variant", "D", "expected_max_bound", "integrated_bound", "integrated_bound_loose"});
      for (const auto v : variants)
        for (const auto D : dims_) {
          BoundInput at = in;
          at.D = D;
          const double em = expected_max_bound(v, at);
          const double tight = integrate_survival_bound(v, at, BoundForm::Tight, survival_epsilon_max(v, at, BoundForm::Tight));
          double loose = std::numeric_limits<double>::quiet_NaN();
          try {
            loose = integrate_survival_bound(v, at, BoundForm::Loose, survival_epsilon_max(v, at, BoundForm::Loose));
          } catch (const PreconditionError&) {
            warn("loose bound undefined at D = " + std::to_string(D) + " (" + std::string(to_string(v)) + ")");
          }
          check(std::isfinite(em) && std::isfinite(tight), "non-finite expected-max bound");
          csv.row(to_string(v), static_cast<long long>(D), em, tight, loose);
        }
    }
    {
      auto os = out.open("beta.csv");
      CsvWriter csv(os, {"variant", "d", "beta"});
      for (const auto v : variants) {
        int argmax = 0;
        double best = 0.0;
        for (int d = 1; d <= beta_max_d_; ++d) {
          const double b = beta_coefficient(v, d);
          if (b > best) best = b, argmax = d;
          csv.row(to_string(v), d, b);
        }
        const int peak = v == Variant::Tilde ? 64 : 48;
        if (beta_max_d_ >= 2 * peak) check(argmax == peak, "beta coefficient peak is not at d = " + std::to_string(peak));
      }
    }
  }

 private:
  double sigma_ = 1.0;
  double domain_ = 3.0;
  int input_dim_ = 1;
  std::vector<Eigen::Index> dims_{50, 100, 200, 500, 1000, 2000, 5000, 10000};
  Eigen::Index curve_dim_ = 500;
  int eps_points_ = 200;
  int beta_max_d_ = 100;
  double ratio_ = 2.0;
  std::string variant_ = "both";
};

// ---------------------------------------------------------------------------
// max-error and l2-error

class GridExperimentCommand : public Command {
 public:
  GridExperimentCommand(CLI::App& parent, std::string name, std::string description)
      : Command(parent, std::move(name), std::move(description)) {
    option("seed", seed_, "Base seed; trial t uses seed + t");
    option("sigma", sigma_, "Gaussian bandwidth")->check(CLI::PositiveNumber);
    option("domain", domain_, "Half-width b of the domain [-b, b]^d")->check(CLI::PositiveNumber);
    option("input-dim", input_dim_, "Input dimension d (1 or 2)")->check(CLI::Range(1, 2));
    option("grid-points", grid_points_, "Grid points per axis")->check(CLI::Range(2, 1000000));
    option("trials", trials_, "Trials per (variant, D)")->check(CLI::Range(1, 100000000));
    option("d-grid", dims_, "Embedding dimensions D");
    option("memory-limit-mb", memory_mb_, "Refuse runs needing more memory than this")->check(CLI::PositiveNumber);
    variant_option(*this, variant_);
  }

  std::optional<std::uint64_t> seed() const override { return seed_; }

 protected:
  ExperimentConfig config() const {
    ExperimentConfig c;
    c.kernel = ShiftInvariantKernel::gaussian(sigma_, input_dim_);
    c.variants = variants_of(variant_);
    c.dims = dims_;
    c.half_width = domain_;
    c.grid_points = grid_points_;
    c.trials = trials_;
    c.base_seed = seed_;
    c.memory_limit_bytes = memory_mb_ << 20;
    return c;
  }

  void warn_if_not_decreasing(const std::vector<TrialStats>& stats, bool squared) const {
    for (std::size_t i = 1; i < stats.size(); ++i) {
      if (stats[i].variant != stats[i - 1].variant || stats[i].D <= stats[i - 1].D) continue;
      const auto& a = squared ? stats[i - 1].mean_sq_error : stats[i - 1].max_abs_error;
      const auto& b = squared ? stats[i].mean_sq_error : stats[i].max_abs_error;
      if (mean_of(b) > mean_of(a))
        warn("mean error increased from D = " + std::to_string(stats[i - 1].D) + " to D = " +
             std::to_string(stats[i].D) + " (" + std::string(to_string(stats[i].variant)) + "); more trials may help");
    }
  }

  static std::optional<SlopeFit> fit(const std::vector<TrialStats>& stats, Variant v, bool squared) {
    std::vector<double> dims, means;
    for (const auto& s : stats)
      if (s.variant == v) {
        dims.push_back(static_cast<double>(s.D));
        means.push_back(mean_of(squared ? s.mean_sq_error : s.max_abs_error));
      }
    if (std::set<double>(dims.begin(), dims.end()).size() < 3) return std::nullopt;
    return loglog_slope(dims, means);
  }

  std::uint64_t seed_ = 0;
  double sigma_ = 1.0;
  double domain_ = 3.0;
  int input_dim_ = 1;
  int grid_points_ = 1000;
  int trials_ = 100;
  std::vector<Eigen::Index> dims_{50, 100, 200, 500, 1000, 2000, 5000, 10000};
  std::size_t memory_mb_ = 2048;
  std::string variant_ = "both";
};

class MaxErrorCommand : public GridExperimentCommand {
 public:
  explicit MaxErrorCommand(CLI::App& parent)
      : GridExperimentCommand(parent, "max-error", "Monte-Carlo max error over a grid, survival curves and slopes") {
    option("survival-points", survival_points_, "Number of epsilon points in survival.csv")->check(CLI::Range(2, 1000000));
  }

  void run(Outputs& out) override {
    const auto c = config();
    const auto stats = run_max_error_trials(c);
    {
      auto os = out.open("max_error.csv");
      CsvWriter csv(os, {"variant", "D", "trial", "max_abs_error", "mean_sq_error"});
      for (const auto& s : stats)
        for (int t = 0; t < c.trials; ++t)
          csv.row(to_string(s.variant), static_cast<long long>(s.D), t, s.max_abs_error[t], s.mean_sq_error[t]);
      check(csv.rows_written() == stats.size() * static_cast<std::size_t>(c.trials) + 1, "max_error.csv row count");
    }
    {
      double top = 0.0;
      for (const auto& s : stats) top = std::max(top, *std::max_element(s.max_abs_error.begin(), s.max_abs_error.end()));
      std::vector<double> eps(survival_points_);
      for (int i = 0; i < survival_points_; ++i) eps[i] = top * static_cast<double>(i) / (survival_points_ - 1);
      auto os = out.open("survival.csv");
      CsvWriter csv(os, {"variant", "D", "epsilon", "survival"});
      for (const auto& s : stats) {
        const auto curve = survival_curve(s, eps);
        for (std::size_t i = 0; i < curve.size(); ++i) {
          check(curve[i].survival >= 0.0 && curve[i].survival <= 1.0, "survival outside [0, 1]");
          if (i) check(curve[i].survival <= curve[i - 1].survival, "survival curve is not monotone");
          csv.row(to_string(s.variant), static_cast<long long>(s.D), curve[i].epsilon, curve[i].survival);
        }
      }
    }
    {
      auto os = out.open("slopes.csv");
      CsvWriter csv(os, {"variant", "slope", "ci_lo", "ci_hi"});
      for (const auto v : c.variants) {
        if (const auto f = fit(stats, v, false)) {
          csv.row(to_string(v), f->slope, f->ci_lo, f->ci_hi);
        } else {
          warn("fewer than 3 distinct D values; no slope for " + std::string(to_string(v)));
        }
      }
    }
    warn_if_not_decreasing(stats, false);
  }

 private:
  int survival_points_ = 201;
};

class L2ErrorCommand : public GridExperimentCommand {
 public:
  explicit L2ErrorCommand(CLI::App& parent)
      : GridExperimentCommand(parent, "l2-error", "Monte-Carlo mean squared error over a grid vs. its expectation") {}

  void run(Outputs& out) override {
    const auto c = config();
    const auto stats = run_l2_error_trials(c);
    const int d = c.kernel.dim();
    const auto box = UniformBoxMeasure::square(Eigen::VectorXd::Constant(d, -c.half_width),
                                               Eigen::VectorXd::Constant(d, c.half_width));
    {
      auto os = out.open("l2_error.csv");
      CsvWriter csv(os, {"variant", "D", "trial", "mean_sq_error"});
      for (const auto& s : stats)
        for (int t = 0; t < c.trials; ++t) csv.row(to_string(s.variant), static_cast<long long>(s.D), t, s.mean_sq_error[t]);
      check(csv.rows_written() == stats.size() * static_cast<std::size_t>(c.trials) + 1, "l2_error.csv row count");
    }
    {
      auto os = out.open("l2_summary.csv");
      CsvWriter csv(os, {"variant", "D", "mean_sq_error", "std_error", "expected"});
      for (const auto& s : stats) {
        const double se = s.mean_sq_error.size() >= 2 ? standard_error(s.mean_sq_error)
                                                      : std::numeric_limits<double>::quiet_NaN();
        const double expected = l2_expected_error(s.variant, c.kernel, box, s.D);
        check(std::isfinite(expected) && expected > 0.0, "non-positive expected L2 error");
        csv.row(to_string(s.variant), static_cast<long long>(s.D), mean_of(s.mean_sq_error), se, expected);
      }
    }
    {
      auto os = out.open("l2_slopes.csv");
      CsvWriter csv(os, {"variant", "slope", "ci_lo", "ci_hi"});
      for (const auto v : c.variants)
        if (const auto f = fit(stats, v, true)) csv.row(to_string(v), f->slope, f->ci_lo, f->ci_hi);
    }
    warn_if_not_decreasing(stats, true);
  }
};

// ---------------------------------------------------------------------------
// mmd

class MmdCommand : public Command {
 public:
  explicit MmdCommand(CLI::App& parent)
      : Command(parent, "mmd", "Biased MMD^2 error under feature redraws for fixed two-sample data") {
    option("seed", seed_, "Base spectral seed; redraw r uses seed + r");
    option("data-seed", data_seed_, "Seed for the two samples");
    option("n", n_, "Size of X")->check(CLI::Range(1, 100000000));
    option("m", m_, "Size of Y")->check(CLI::Range(1, 100000000));
    option("sigma", sigma_, "Gaussian bandwidth")->check(CLI::PositiveNumber);
    option("d-grid", dims_, "Embedding dimensions D");
    option("trials", redraws_, "Feature redraws per (variant, D)")->check(CLI::Range(1, 100000000));
    variant_option(*this, variant_);
  }

  std::optional<std::uint64_t> seed() const override { return seed_; }

  void run(Outputs& out) override {
    MmdExperimentConfig c;
    c.n = n_;
    c.m = m_;
    c.bandwidth = sigma_;
    c.dims = dims_;
    c.variants = variants_of(variant_);
    c.redraws = redraws_;
    c.data_seed = data_seed_;
    c.base_seed = seed_;
    for (const auto v : c.variants)
      for (const auto D : c.dims) validate_dimension(v, D);
    const auto result = run_mmd_experiment(c);
    {
      auto os = out.open("mmd_error.csv");
      CsvWriter csv(os, {"variant", "D", "redraw", "abs_error", "estimate"});
      for (const auto& r : result.records) {
        check(std::isfinite(r.estimate), "non-finite MMD estimate");
        csv.row(to_string(r.variant), static_cast<long long>(r.D), r.redraw, r.abs_error, r.estimate);
      }
      check(csv.rows_written() == c.variants.size() * c.dims.size() * c.redraws + 1, "mmd_error.csv row count");
    }
    {
      auto os = out.open("mmd_summary.csv");
      CsvWriter csv(os, {"variant", "D", "mean_abs_error", "std_error", "expected_abs_error_bound", "exact_mmd2"});
      for (const auto v : c.variants)
        for (const auto D : c.dims) {
          std::vector<double> errs;
          for (const auto& r : result.records)
            if (r.variant == v && r.D == D) errs.push_back(r.abs_error);
          const double se = errs.size() >= 2 ? standard_error(errs) : std::numeric_limits<double>::quiet_NaN();
          csv.row(to_string(v), static_cast<long long>(D), mean_of(errs), se,
                  mmk_expected_abs_error(MmdTarget::MMD, D), result.exact);
        }
    }
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t data_seed_ = 1;
  Eigen::Index n_ = 1000;
  Eigen::Index m_ = 1000;
  double sigma_ = 1.0;
  std::vector<Eigen::Index> dims_{50, 100, 500, 1000, 5000};
  int redraws_ = 50;
  std::string variant_ = "both";
};

// ---------------------------------------------------------------------------
// krr

class KrrCommand : public Command {
 public:
  explicit KrrCommand(CLI::App& parent)
      : Command(parent, "krr", "KRR prediction drift from the approximate Gram matrix vs. the uniform drift bound") {
    option("seed", seed_, "Base seed; repetition s uses seed + s for data and features");
    option("trials", seeds_, "Repetitions (data and feature seeds)")->check(CLI::Range(1, 100000000));
    option("n-train", n_train_, "Training points")->check(CLI::Range(1, 100000));
    option("n-test", n_test_, "Test points")->check(CLI::Range(1, 100000000));
    option("input-dim", input_dim_, "Input dimension d")->check(CLI::Range(1, 1000));
    option("sigma", sigma_, "Gaussian bandwidth")->check(CLI::PositiveNumber);
    option("lambda0", lambda0s_, "Regularization values lambda0");
    option("d-grid", dims_, "Embedding dimensions D");
    option("noise", noise_, "Label noise standard deviation")->check(CLI::NonNegativeNumber);
    variant_option(*this, variant_);
  }

  std::optional<std::uint64_t> seed() const override { return seed_; }

  void run(Outputs& out) override {
    for (const double l : lambda0s_) detail::require(l > 0.0, "lambda0 values must be positive");
    const auto variants = variants_of(variant_);
    for (const auto v : variants)
      for (const auto D : dims_) validate_dimension(v, D);
    auto os = out.open("krr_drift.csv");
    CsvWriter csv(os, {"variant", "D", "test_index", "drift", "bound", "lambda0", "seed", "eps_obs"});
    std::size_t violations = 0;
    for (const auto D : dims_) {
      KrrExperimentConfig c;
      c.n_train = n_train_;
      c.n_test = n_test_;
      c.d = input_dim_;
      c.bandwidth = sigma_;
      c.lambda0s = lambda0s_;
      c.D = D;
      c.variants = variants;
      c.seeds = seeds_;
      c.base_seed = seed_;
      c.noise = noise_;
      for (const auto& r : run_krr_drift_experiment(c)) {
        if (r.drift > r.bound) ++violations;
        csv.row(to_string(r.variant), static_cast<long long>(r.D), static_cast<long long>(r.test_index), r.drift, r.bound,
                r.lambda0, r.seed, r.eps_obs);
      }
    }
    check(csv.rows_written() ==
              dims_.size() * variants.size() * static_cast<std::size_t>(seeds_) * lambda0s_.size() * n_test_ + 1,
          "krr_drift.csv row count");
    check(violations == 0, std::to_string(violations) + " drift values exceed the bound");
  }

 private:
  std::uint64_t seed_ = 0;
  int seeds_ = 20;
  Eigen::Index n_train_ = 200;
  Eigen::Index n_test_ = 50;
  int input_dim_ = 2;
  double sigma_ = 1.0;
  std::vector<double> lambda0s_{0.1, 1.0};
  std::vector<Eigen::Index> dims_{2000};
  double noise_ = 0.1;
  std::string variant_ = "both";
};

// ---------------------------------------------------------------------------

json manifest_for(const Command& cmd, const Outputs& out) {
  json m;
  m["tool"] = "rfflab";
  m["version"] = std::string(kVersion);
  m["subcommand"] = cmd.app()->get_name();
  if (const auto s = cmd.seed()) {
    m["seed"] = *s;
  } else {
    m["seed"] = nullptr;
  }
  m["config"] = cmd.resolved_config();
  m["outputs"] = out.names();
  return m;
}

int execute(Command& cmd) {
  Outputs out(cmd.out_dir());
  try {
    cmd.run(out);
    auto json_out = out.open("manifest.json");
    json_out << manifest_for(cmd, out).dump(2) << '\n';
  } catch (const std::exception& e) {
    out.remove_all();
    std::cerr << "rfflab " << cmd.app()->get_name() << ": error: " << e.what() << '\n';
    return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InputError*>(&e) ? 2 : 1;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args);

/// Rebuilds the argument list recorded in a manifest.
std::vector<std::string> replay_args(const fs::path& manifest_path, const std::string& out_dir) {
  std::ifstream is(manifest_path);
  if (!is) throw ConfigError("cannot read manifest " + manifest_path.string());
  json m;
  try {
    m = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
  }
  if (!m.contains("subcommand") || !m.contains("config"))
    throw ConfigError("manifest " + manifest_path.string() + " lacks subcommand or config");
  if (m.value("version", "") != kVersion)
    warn("manifest was written by version " + m.value("version", std::string("?")) + ", replaying with " +
         std::string(kVersion));
  std::vector<std::string> args{"rfflab", m["subcommand"].get<std::string>()};
  for (const auto& [key, value] : m["config"].items()) {
    args.push_back("--" + key);
    args.push_back(value.get<std::string>());
  }
  args.push_back("--out-dir");
  args.push_back(out_dir);
  return args;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"rfflab: random Fourier feature approximation error toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "INI/TOML file with option values, one [subcommand] section each; flags override");
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Command>> commands;
  commands.push_back(std::make_unique<VarianceCommand>(app));
  commands.push_back(std::make_unique<BoundsCommand>(app));
  commands.push_back(std::make_unique<MaxErrorCommand>(app));
  commands.push_back(std::make_unique<L2ErrorCommand>(app));
  commands.push_back(std::make_unique<MmdCommand>(app));
  commands.push_back(std::make_unique<KrrCommand>(app));

  std::string manifest_path, replay_out = "out";
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest.json");
  replay->add_option("manifest", manifest_path, "Path to manifest.json")->required()->check(CLI::ExistingFile);
  replay->add_option("--out-dir", replay_out, "Output directory")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (replay->parsed()) {
    try {
      return run_cli(replay_args(manifest_path, replay_out));
    } catch (const std::exception& e) {
      std::cerr << "rfflab replay: error: " << e.what() << '\n';
      return 2;
    }
  }
  for (auto& cmd : commands)
    if (cmd->app()->parsed()) return execute(*cmd);
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(std::vector<std::string>(argv, argv + argc)); }
