#pragma once

#include <cstddef>
#include <optional>

#include "tailix/distributions.hpp"

namespace tailix {

/// Second-order tail parameters (alpha, beta, c1, c2) of
/// 1 - F(x) = c1 x^-alpha + c2 x^-beta, beta finite.
struct SecondOrderParams {
  double alpha = 1.0;
  double beta = 2.0;
  double c1 = 1.0;
  double c2 = 1.0;

  /// alpha = 1 / gamma, beta = alpha - rho. Errc::domain unless gamma > 0 and
  /// rho < 0.
  static SecondOrderParams from_gamma_rho(double gamma, double rho,
                                          double c1 = 1.0, double c2 = 1.0);
  /// Errc::invalid_parameters for an infinite beta.
  static SecondOrderParams from(const HallDistribution& d);

  double gamma() const noexcept { return 1.0 / alpha; }
  double rho() const noexcept { return alpha - beta; }
  double zeta() const noexcept { return (beta - alpha) / alpha; }
  double p() const noexcept { return alpha / (alpha + 1.0); }

  /// Constants of the law of A*X: (c1 A^alpha, c2 A^beta).
  SecondOrderParams scaled(double factor) const;

  /// Errc::domain unless 0 < alpha < beta < inf and c1 > 0.
  void validate() const;
};

struct ParamViews {
  double gamma;
  double rho;
  double p;
  double zeta;
};

ParamViews param_views(const SecondOrderParams& params);

/// Limit variance of sqrt(n) (p_hat - p): alpha / ((alpha+1)^2 (alpha+2)).
double dpr_variance_constant(double alpha);

/// chi in E p_hat - p ~ chi m^-zeta. Zero when c2 = 0.
double dpr_bias_constant(const SecondOrderParams& params);

/// chi^2 m^-2zeta + sigma^2 m / N, the leading-order MSE at block size m.
double dpr_amse_at(const SecondOrderParams& params, double m, double n_total);

struct DprAsymptotics {
  double zeta = 0.0;
  double chi = 0.0;
  double sigma2 = 0.0;
  double mu = 0.0;  // mean of the limiting normal at m_opt
  // Empty in the pure-Pareto regime (chi == 0), where no finite optimum exists.
  std::optional<double> m_opt_real;
  std::optional<std::size_t> m_opt_int;
  std::optional<double> amse;

  bool degenerate() const noexcept { return !m_opt_real.has_value(); }
};

/// Errc::domain for invalid params or n_total < 4.
DprAsymptotics dpr_asymptotics(const SecondOrderParams& params,
                               double n_total);

/// Leading term of the second-order auxiliary function:
/// A(t) ~ -(zeta/alpha) (c2 / c1^(beta/alpha)) t^-zeta.
double auxiliary_leading(const SecondOrderParams& params, double t);

struct ClassicalAsymptotics {
  int j = 1;
  double d = 0.0;       // bias constant D_j
  double sigma2 = 0.0;  // limit variance sigma_j^2 on the gamma scale
  // Empty on a degenerate locus (D_j == 0, or c2 == 0).
  std::optional<double> k_opt;
  std::optional<double> amse_p;

  bool degenerate() const noexcept { return !k_opt.has_value(); }
};

/// j = 1..4 for hill, pickands, moment, devries.
ClassicalAsymptotics classical_asymptotics(int j,
                                           const SecondOrderParams& params,
                                           double n_total);

/// eta(alpha, beta) shared by every RMMSE expression.
double rmmse_eta(double alpha, double beta);

/// Limit ratio of minimal MSEs, block-ratio estimator over classical
/// estimator j. Empty where estimator j has a vanishing bias constant (the
/// ratio diverges). Errc::domain unless 0 < alpha < beta < inf.
std::optional<double> rmmse(int j, double alpha, double beta);

}  // namespace tailix
