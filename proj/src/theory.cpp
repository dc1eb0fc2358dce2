#include "tailix/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "tailix/error.hpp"

namespace tailix {
namespace {

using std::numbers::ln2;

// 2^x - 1 without cancellation near x = 0.
double pow2m1(double x) { return std::expm1(x * ln2); }

std::string pair_str(double alpha, double beta) {
  return "(alpha=" + std::to_string(alpha) + ", beta=" + std::to_string(beta) +
         ")";
}

void validate_shape(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > alpha) || !std::isfinite(beta)) {
    throw Error(Errc::domain,
                "need 0 < alpha < beta < inf " + pair_str(alpha, beta));
  }
}

// log K_j, the parameter-shape factor of k_opt^(j); the c1, c2 factor is
// added by the caller.
double log_kopt_constant(int j, double alpha, double zeta) {
  switch (j) {
    case 1:
      return 2.0 * std::log1p(zeta) - std::log(2.0) - 3.0 * std::log(zeta);
    case 2:
      return std::log1p(std::exp2(2.0 / alpha + 1.0)) - std::log(2.0 * zeta) -
             2.0 * std::log(-std::expm1(-zeta * ln2)) -
             2.0 * std::log(std::abs(pow2m1(1.0 / alpha - zeta)));
    case 3:
      return 4.0 * std::log1p(zeta) + std::log1p(alpha * alpha) -
             std::log(2.0) - 3.0 * std::log(zeta) -
             2.0 * std::log(std::abs(1.0 + zeta - zeta * alpha));
    case 4:
      return 4.0 * std::log1p(zeta) - 3.0 * std::log(zeta);
  }
  return 0.0;
}

}  // namespace

SecondOrderParams SecondOrderParams::from_gamma_rho(double gamma, double rho,
                                                    double c1, double c2) {
  if (!(gamma > 0.0) || !(rho < 0.0) || !std::isfinite(gamma) ||
      !std::isfinite(rho)) {
    throw Error(Errc::domain, "need gamma > 0 and rho < 0 (gamma=" +
                                  std::to_string(gamma) +
                                  ", rho=" + std::to_string(rho) + ")");
  }
  const double alpha = 1.0 / gamma;
  return {alpha, alpha - rho, c1, c2};
}

SecondOrderParams SecondOrderParams::from(const HallDistribution& d) {
  if (!d.has_finite_beta()) {
    throw Error(Errc::invalid_parameters,
                "second-order theory needs a finite beta");
  }
  return {d.alpha(), d.beta(), d.c1(), d.c2()};
}

SecondOrderParams SecondOrderParams::scaled(double factor) const {
  return {alpha, beta, c1 * std::pow(factor, alpha),
          c2 * std::pow(factor, beta)};
}

void SecondOrderParams::validate() const {
  validate_shape(alpha, beta);
  if (!(c1 > 0.0) || !std::isfinite(c2)) {
    throw Error(Errc::domain, "need c1 > 0 and finite c2");
  }
}

ParamViews param_views(const SecondOrderParams& params) {
  validate_shape(params.alpha, params.beta);
  return {params.gamma(), params.rho(), params.p(), params.zeta()};
}

double dpr_variance_constant(double alpha) {
  return alpha / ((alpha + 1.0) * (alpha + 1.0) * (alpha + 2.0));
}

double dpr_bias_constant(const SecondOrderParams& params) {
  params.validate();
  const double a = params.alpha;
  const double b = params.beta;
  const double z = params.zeta();
  return params.c2 * b * z * boost::math::tgamma(z + 1.0) /
         (std::pow(params.c1, z + 1.0) * (a + 1.0) * (b + 1.0));
}

double dpr_amse_at(const SecondOrderParams& params, double m,
                   double n_total) {
  const double chi = dpr_bias_constant(params);
  const double z = params.zeta();
  return chi * chi * std::pow(m, -2.0 * z) +
         dpr_variance_constant(params.alpha) * m / n_total;
}

DprAsymptotics dpr_asymptotics(const SecondOrderParams& params,
                               double n_total) {
  params.validate();
  if (!(n_total >= 4.0)) {
    throw Error(Errc::domain, "sample size must be at least 4");
  }
  DprAsymptotics out;
  out.zeta = params.zeta();
  out.chi = dpr_bias_constant(params);
  out.sigma2 = dpr_variance_constant(params.alpha);
  if (out.chi == 0.0) return out;

  const double z = out.zeta;
  const double sign = out.chi > 0.0 ? 1.0 : -1.0;
  out.mu = std::sqrt(out.sigma2 / (2.0 * z)) * sign;

  const double log_chi2 = 2.0 * std::log(std::abs(out.chi));
  const double log_n = std::log(n_total);
  const double inv = 1.0 / (1.0 + 2.0 * z);
  out.m_opt_real = std::exp(
      inv * (std::log(2.0 * z) + log_chi2 - std::log(out.sigma2) + log_n));
  const double rounded = std::max(2.0, std::round(*out.m_opt_real));
  out.m_opt_int = static_cast<std::size_t>(std::min(rounded, n_total));
  out.amse = (1.0 + 2.0 * z) *
             std::exp(inv * (log_chi2 + 2.0 * z * std::log(out.sigma2) -
                             2.0 * z * std::log(2.0 * z) - 2.0 * z * log_n));
  return out;
}

double auxiliary_leading(const SecondOrderParams& params, double t) {
  const double z = params.zeta();
  return -(z / params.alpha) *
         (params.c2 / std::pow(params.c1, params.beta / params.alpha)) *
         std::pow(t, -z);
}

ClassicalAsymptotics classical_asymptotics(int j,
                                           const SecondOrderParams& params,
                                           double n_total) {
  params.validate();
  if (j < 1 || j > 4) {
    throw Error(Errc::invalid_parameters, "classical index must be 1..4");
  }
  if (!(n_total >= 4.0)) {
    throw Error(Errc::domain, "sample size must be at least 4");
  }
  const double a = params.alpha;
  const double b = params.beta;
  const double z = params.zeta();

  ClassicalAsymptotics out;
  out.j = j;
  switch (j) {
    case 1:
      out.d = 1.0 / (1.0 + z);
      out.sigma2 = 1.0 / (a * a);
      break;
    case 2: {
      const double root = pow2m1(1.0 / a);
      out.d = (1.0 / (root * ln2)) * (-std::expm1(-z * ln2) / z) *
              pow2m1(1.0 / a - z);
      out.sigma2 =
          (1.0 + std::exp2(2.0 / a + 1.0)) / (a * a * root * root * ln2 * ln2);
      break;
    }
    case 3:
      out.d = 1.0 / (1.0 + z) - a * z / ((1.0 + z) * (1.0 + z));
      out.sigma2 = (1.0 + a * a) / (a * a);
      break;
    case 4:
      out.d = 1.0 / ((1.0 + z) * (1.0 + z));
      out.sigma2 = 2.0 / (a * a);
      break;
  }
  if (out.d == 0.0 || params.c2 == 0.0) return out;

  // k_opt = (K_j c1^(2 beta/alpha) / c2^2)^(1/(1+2 zeta)) N^(2 zeta/(1+2 zeta))
  const double inv = 1.0 / (1.0 + 2.0 * z);
  const double log_scale = 2.0 * (b / a) * std::log(params.c1) -
                           2.0 * std::log(std::abs(params.c2));
  out.k_opt = std::exp(inv * (log_kopt_constant(j, a, z) + log_scale +
                              2.0 * z * std::log(n_total)));
  const double p = a / (a + 1.0);
  out.amse_p = std::pow(p, 4) * (2.0 * b - a) / (2.0 * (b - a)) * out.sigma2 /
               *out.k_opt;
  return out;
}

double rmmse_eta(double alpha, double beta) {
  validate_shape(alpha, beta);
  const double z = (beta - alpha) / alpha;
  const double first = beta * (alpha + 1.0) / (alpha * (beta + 1.0));
  const double second =
      (alpha + 1.0) * (alpha + 1.0) / (alpha * (alpha + 2.0));
  return first * first * std::pow(second, 2.0 * z);
}

std::optional<double> rmmse(int j, double alpha, double beta) {
  validate_shape(alpha, beta);
  if (j < 1 || j > 4) {
    throw Error(Errc::invalid_parameters, "classical index must be 1..4");
  }
  const double a = alpha;
  const double z = (beta - alpha) / alpha;
  const double inv = 1.0 / (1.0 + 2.0 * z);
  const double log_eta =
      2.0 * std::log(beta * (a + 1.0) / (a * (beta + 1.0))) +
      2.0 * z * std::log((a + 1.0) * (a + 1.0) / (a * (a + 2.0)));
  const double log_g2z = 2.0 * boost::math::lgamma(2.0 + z);

  switch (j) {
    case 1:
      return std::exp(inv * (log_eta + log_g2z));
    case 2: {
      const double locus = pow2m1(1.0 / a - z);
      if (locus == 0.0) return std::nullopt;
      // log(2^(2/a+1) + 1), stable for small alpha
      const double log_var = (2.0 / a + 1.0) * ln2 +
                             std::log1p(std::exp2(-(2.0 / a + 1.0)));
      const double inner = log_eta + 2.0 * std::log(z) +
                           2.0 * boost::math::lgamma(1.0 + z) -
                           2.0 * std::log(-std::expm1(-z * ln2)) -
                           2.0 * z * log_var -
                           2.0 * std::log(std::abs(locus));
      return std::exp(2.0 * std::log(pow2m1(1.0 / a) * ln2) + inv * inner);
    }
    case 3: {
      const double locus = 1.0 + z - a * z;
      if (locus == 0.0) return std::nullopt;
      return std::exp(inv * (log_eta + 2.0 * std::log1p(z) + log_g2z -
                             2.0 * z * std::log1p(a * a) -
                             2.0 * std::log(std::abs(locus))));
    }
    case 4:
      return std::exp(inv * (log_eta + 2.0 * std::log1p(z) + log_g2z -
                             2.0 * z * ln2));
  }
  return std::nullopt;
}

}  // namespace tailix
