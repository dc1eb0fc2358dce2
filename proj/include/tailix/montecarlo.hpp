#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tailix/distributions.hpp"
#include "tailix/estimators.hpp"

namespace tailix {

enum class TuningRule { explicit_value, optimal_from_theory };

struct ExperimentConfig {
  HallDistribution dist;
  std::size_t n_obs = 0;
  Method method = Method::dpr;
  /// Used as given under explicit_value. Under optimal_from_theory, m (dpr) or
  /// k (classical) is replaced by the theory optimum.
  Tuning tuning;
  TuningRule rule = TuningRule::explicit_value;
  std::size_t replicates = 1;
  std::uint64_t base_seed = 0;
  /// Mean of the normal law the standardized dpr statistics are tested
  /// against. Defaults to 0 for pure Pareto and mu/sigma at the optimal block
  /// size; otherwise no test is run.
  std::optional<double> clt_mean = std::nullopt;
  /// Thread count, 0 for hardware concurrency. Never changes the results.
  unsigned workers = 0;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  Tuning resolved;  // tuning actually used
  double truth_native = 0.0;
  double truth_p = 0.0;

  // Per replicate, in replicate order; empty entries are degenerate.
  std::vector<std::optional<double>> estimates = {};
  std::vector<std::optional<double>> p_scale = {};

  // Moments over valid replicates only.
  std::size_t valid = 0;
  std::size_t degenerate = 0;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;  // unbiased, divisor valid - 1
  double mse = 0.0;       // mean squared error = bias^2 + variance (v-1)/v
  std::optional<double> p_mse = std::nullopt;  // over replicates with a p-scale value
  std::size_t p_excluded = 0;   // valid replicates without one (gamma <= -1)

  // dpr only.
  std::optional<double> kappa_variance = std::nullopt;  // mean within-replicate var of ratios
  std::vector<double> standardized = {};      // sqrt(n) (p_hat - p) / sigma
  std::optional<double> clt_target_mean = std::nullopt;
  std::optional<KsResult> ks = std::nullopt;
};

/// Resolves the tuning of `cfg`, drawing on the theory module for the optimal
/// rule. Errc::degenerate when the optimum is undefined.
Tuning resolve_tuning(const ExperimentConfig& cfg);

/// Population value of the estimator's native scale.
double native_truth(Method method, const Tuning& tuning, double alpha);

/// Replicate r draws cfg.n_obs values with seed replicate_seed(base_seed, r).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// One-sample Kolmogorov-Smirnov test of `z` against N(target_mean, 1), with
/// the asymptotic Kolmogorov p-value. Errc::insufficient_data below 50 values.
KsResult ks_normal(std::span<const double> z, double target_mean);

/// P(K > lambda) for the Kolmogorov distribution, 100-term series.
double kolmogorov_survival(double lambda);

struct MseRatioResult {
  int j = 1;
  std::size_t m_opt = 0;
  std::size_t k_opt = 0;
  double mse_dpr = 0.0;
  double mse_classical = 0.0;  // p scale, 1 / (1 + gamma_hat)
  double empirical_ratio = 0.0;
  std::optional<double> theoretical_rmmse = std::nullopt;
  std::size_t dpr_valid = 0;
  std::size_t classical_valid = 0;
  std::size_t classical_excluded = 0;

  /// Empirical and closed-form ratios lie on the same side of 1.
  bool same_side() const;
};

/// MSE of p_hat at m_opt over MSE of classical estimator j at k_opt, both on
/// the p scale and computed on the same simulated samples.
MseRatioResult mse_ratio_experiment(const HallDistribution& dist,
                                    std::size_t n_obs, int j,
                                    std::size_t replicates,
                                    std::uint64_t base_seed,
                                    unsigned workers = 0);

}  // namespace tailix
