#include "tailix/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tailix/error.hpp"
#include "tailix/parallel.hpp"
#include "tailix/rng.hpp"
#include "tailix/theory.hpp"

namespace tailix {
namespace {

std::size_t min_k(Method method) {
  switch (method) {
    case Method::hill: return 1;
    case Method::pickands: return 4;
    default: return 2;
  }
}

std::size_t round_k(double k_opt, Method method, std::size_t n_obs) {
  const double clamped = std::clamp(std::round(k_opt),
                                    static_cast<double>(min_k(method)),
                                    static_cast<double>(n_obs - 1));
  return static_cast<std::size_t>(clamped);
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = pairwise_sum(xs) / static_cast<double>(xs.size());
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sq[i] = (xs[i] - mean) * (xs[i] - mean);
  }
  return pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace

Tuning resolve_tuning(const ExperimentConfig& cfg) {
  Tuning t = cfg.tuning;
  if (cfg.rule == TuningRule::explicit_value) return t;

  const auto params = SecondOrderParams::from(cfg.dist);
  const double n = static_cast<double>(cfg.n_obs);
  if (cfg.method == Method::dpr) {
    const auto a = dpr_asymptotics(params, n);
    if (a.degenerate()) {
      throw Error(Errc::degenerate,
                  "optimal block size undefined: bias constant is zero");
    }
    t.m = *a.m_opt_int;
    return t;
  }
  if (is_classical(cfg.method)) {
    const auto a =
        classical_asymptotics(classical_index(cfg.method), params, n);
    if (a.degenerate()) {
      throw Error(Errc::degenerate, "optimal k undefined for " +
                                        std::string(to_string(cfg.method)));
    }
    t.k = round_k(*a.k_opt, cfg.method, cfg.n_obs);
    return t;
  }
  throw Error(Errc::invalid_parameters,
              "no optimal tuning rule for " +
                  std::string(to_string(cfg.method)));
}

double native_truth(Method method, const Tuning& tuning, double alpha) {
  switch (method) {
    case Method::dpr:
      return alpha / (alpha + 1.0);
    case Method::gdpr:
      return tuning.kernel ? tuning.kernel->expected(alpha) : NAN;
    default:
      return 1.0 / alpha;
  }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.replicates < 1) {
    throw Error(Errc::invalid_parameters, "replicates must be >= 1");
  }
  if (cfg.n_obs < 2) {
    throw Error(Errc::invalid_parameters, "n_obs must be >= 2");
  }
  ExperimentReport rep{cfg, resolve_tuning(cfg)};
  const double alpha = cfg.dist.alpha();
  rep.truth_native = native_truth(cfg.method, rep.resolved, alpha);
  rep.truth_p = alpha / (alpha + 1.0);

  const std::size_t reps = cfg.replicates;
  rep.estimates.assign(reps, std::nullopt);
  rep.p_scale.assign(reps, std::nullopt);
  std::vector<double> kappa_var(reps, NAN);

  parallel_for(reps, cfg.workers, [&](std::size_t r) {
    const Sample s =
        sample(cfg.dist, replicate_seed(cfg.base_seed, r), cfg.n_obs);
    try {
      const EstimateResult est = estimate(s, cfg.method, rep.resolved);
      rep.estimates[r] = est.native;
      rep.p_scale[r] = est.p_hat;
      if (cfg.method == Method::dpr && est.block_ratios.size() >= 2) {
        kappa_var[r] = sample_variance(est.block_ratios);
      }
    } catch (const Error& e) {
      if (!e.is_estimator_degeneracy()) throw;
    }
  });

  // Fixed-order assembly.
  std::vector<double> valid;
  std::vector<double> sq_err;
  std::vector<double> p_sq_err;
  std::vector<double> kv;
  for (std::size_t r = 0; r < reps; ++r) {
    if (!rep.estimates[r]) continue;
    valid.push_back(*rep.estimates[r]);
    const double e = *rep.estimates[r] - rep.truth_native;
    sq_err.push_back(e * e);
    if (rep.p_scale[r]) {
      const double pe = *rep.p_scale[r] - rep.truth_p;
      p_sq_err.push_back(pe * pe);
    }
    if (!std::isnan(kappa_var[r])) kv.push_back(kappa_var[r]);
  }
  rep.valid = valid.size();
  rep.degenerate = reps - rep.valid;
  rep.p_excluded = rep.valid - p_sq_err.size();
  if (rep.valid == 0) {
    rep.mean = rep.bias = rep.variance = rep.mse = NAN;
    return rep;
  }
  const double v = static_cast<double>(rep.valid);
  rep.mean = pairwise_sum(valid) / v;
  rep.bias = rep.mean - rep.truth_native;
  rep.variance = sample_variance(valid);
  rep.mse = pairwise_sum(sq_err) / v;
  if (!p_sq_err.empty()) {
    rep.p_mse = pairwise_sum(p_sq_err) / static_cast<double>(p_sq_err.size());
  }
  if (!kv.empty()) {
    rep.kappa_variance = pairwise_sum(kv) / static_cast<double>(kv.size());
  }

  if (cfg.method == Method::dpr) {
    const double n_blocks =
        static_cast<double>(cfg.n_obs / rep.resolved.m);
    const double sigma = std::sqrt(dpr_variance_constant(alpha));
    rep.standardized.reserve(valid.size());
    for (double p_hat : valid) {
      rep.standardized.push_back(std::sqrt(n_blocks) * (p_hat - rep.truth_p) /
                                 sigma);
    }
    if (cfg.clt_mean) {
      rep.clt_target_mean = cfg.clt_mean;
    } else if (cfg.dist.is_pure_pareto()) {
      rep.clt_target_mean = 0.0;
    } else if (cfg.rule == TuningRule::optimal_from_theory) {
      const auto a = dpr_asymptotics(SecondOrderParams::from(cfg.dist),
                                     static_cast<double>(cfg.n_obs));
      rep.clt_target_mean = a.mu / std::sqrt(a.sigma2);
    }
    if (rep.clt_target_mean && rep.standardized.size() >= 50) {
      rep.ks = ks_normal(rep.standardized, *rep.clt_target_mean);
    }
  }
  return rep;
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr int kTerms = 100;
  double result = 0.0;
  if (lambda < 1.0) {
    // Theta-function form, which converges fast for small lambda:
    // K(l) = sqrt(2 pi)/l sum exp(-(2k-1)^2 pi^2 / (8 l^2)).
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= kTerms; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    result = 1.0 - cdf;
  } else {
    for (int k = 1; k <= kTerms; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      result += (k % 2 == 1 ? 2.0 : -2.0) * term;
    }
  }
  return std::clamp(result, 0.0, 1.0);
}

KsResult ks_normal(std::span<const double> z, double target_mean) {
  if (z.size() < 50) {
    throw Error(Errc::insufficient_data,
                "KS test needs at least 50 values, got " +
                    std::to_string(z.size()));
  }
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i] - target_mean);
    const double above = static_cast<double>(i + 1) / n - cdf;
    const double below = cdf - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

bool MseRatioResult::same_side() const {
  if (!theoretical_rmmse) return false;
  return (empirical_ratio > 1.0) == (*theoretical_rmmse > 1.0) &&
         empirical_ratio != 1.0;
}

MseRatioResult mse_ratio_experiment(const HallDistribution& dist,
                                    std::size_t n_obs, int j,
                                    std::size_t replicates,
                                    std::uint64_t base_seed,
                                    unsigned workers) {
  const Method classical = classical_method(j);
  const auto params = SecondOrderParams::from(dist);
  const double n = static_cast<double>(n_obs);
  const auto dpr_theory = dpr_asymptotics(params, n);
  const auto cls_theory = classical_asymptotics(j, params, n);
  if (dpr_theory.degenerate() || cls_theory.degenerate()) {
    throw Error(Errc::degenerate, "degenerate tuning: optimal m or k_opt(" +
                                      std::to_string(j) + ") undefined");
  }

  MseRatioResult out;
  out.j = j;
  out.m_opt = *dpr_theory.m_opt_int;
  out.k_opt = round_k(*cls_theory.k_opt, classical, n_obs);
  out.theoretical_rmmse = rmmse(j, params.alpha, params.beta);

  const double p = params.p();
  std::vector<std::optional<double>> dpr_err(replicates);
  std::vector<std::optional<double>> cls_err(replicates);
  std::vector<char> cls_valid(replicates, 0);
  const Tuning k_tuning{.k = out.k_opt};

  parallel_for(replicates, workers, [&](std::size_t r) {
    const Sample s = sample(dist, replicate_seed(base_seed, r), n_obs);
    try {
      dpr_err[r] = tailix::dpr(s, out.m_opt).native - p;
    } catch (const Error& e) {
      if (!e.is_estimator_degeneracy()) throw;
    }
    try {
      const EstimateResult est = estimate(s, classical, k_tuning);
      cls_valid[r] = 1;
      if (est.p_hat) cls_err[r] = *est.p_hat - p;
    } catch (const Error& e) {
      if (!e.is_estimator_degeneracy()) throw;
    }
  });

  std::vector<double> dsq;
  std::vector<double> csq;
  for (std::size_t r = 0; r < replicates; ++r) {
    if (dpr_err[r]) dsq.push_back(*dpr_err[r] * *dpr_err[r]);
    if (cls_err[r]) csq.push_back(*cls_err[r] * *cls_err[r]);
    if (cls_valid[r] && !cls_err[r]) ++out.classical_excluded;
  }
  out.dpr_valid = dsq.size();
  out.classical_valid = csq.size();
  if (dsq.empty() || csq.empty()) {
    throw Error(Errc::degenerate, "every replicate was degenerate");
  }
  out.mse_dpr = pairwise_sum(dsq) / static_cast<double>(dsq.size());
  out.mse_classical = pairwise_sum(csq) / static_cast<double>(csq.size());
  out.empirical_ratio = out.mse_dpr / out.mse_classical;
  return out;
}

}  // namespace tailix
