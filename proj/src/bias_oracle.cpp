#include "tailix/bias_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "tailix/error.hpp"

namespace tailix {
namespace {

struct Integrand {
  const HallDistribution* dist;
  double power;  // m - 1
  double w1;     // c1 alpha / (alpha + 1)
  double w2;     // c2 beta / (beta + 1)

  // F^(m-1)(x) g(x) / f(x) at x = quantile(v).
  double operator()(double v) const {
    const HallDistribution& d = *dist;
    const double x = d.quantile(v);
    double g = w1 * std::pow(x, -d.alpha() - 1.0);
    if (w2 != 0.0) g += w2 * std::pow(x, -d.beta() - 1.0);
    const double f = d.density(x);
    return std::exp(power * std::log1p(-v)) * g / f;
  }
};

struct Callback {
  const Integrand* integrand;
  std::string failure;
};

// No exception may cross the C frames of the integrator.
double call_integrand(double v, void* params) {
  auto* cb = static_cast<Callback*>(params);
  try {
    return (*cb->integrand)(v);
  } catch (const std::exception& e) {
    if (cb->failure.empty()) cb->failure = e.what();
    return NAN;
  }
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

QuadratureResult exact_mean_dpr_detailed(const HallDistribution& d,
                                         std::size_t m,
                                         const QuadratureSpec& spec) {
  if (m < 2) throw Error(Errc::tuning, "block size m must be >= 2");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) ||
      spec.max_subdivisions == 0) {
    throw Error(Errc::invalid_parameters,
                "quadrature tolerances must be positive");
  }
  silence_gsl();

  Integrand integrand{&d, static_cast<double>(m - 1),
                      d.c1() * d.alpha() / (d.alpha() + 1.0),
                      d.c2() == 0.0 ? 0.0 : d.c2() * d.beta() / (d.beta() + 1.0)};
  Callback callback{&integrand, {}};
  gsl_function fn{&call_integrand, &callback};

  // (1-v)^(m-1) lives on a scale of 1/m near v = 0; breakpoints there keep the
  // first panels from straddling the whole mass.
  std::vector<double> points{0.0};
  const double md = static_cast<double>(m);
  for (double c : {1.0, 10.0, 100.0}) {
    if (c / md < 1.0) points.push_back(c / md);
  }
  points.push_back(1.0);

  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> workspace(
      gsl_integration_workspace_alloc(spec.max_subdivisions));
  double integral = 0.0;
  double abs_error = 0.0;
  const int status = gsl_integration_qagp(
      &fn, points.data(), points.size(), spec.abs_tol, spec.rel_tol,
      spec.max_subdivisions, workspace.get(), &integral, &abs_error);
  if (!callback.failure.empty()) {
    throw Error(Errc::quadrature_failure,
                "integrand evaluation failed: " + callback.failure);
  }
  if (status != GSL_SUCCESS || !std::isfinite(integral)) {
    throw Error(Errc::quadrature_failure,
                std::string("quadrature did not reach tolerance: ") +
                    gsl_strerror(status) + " (m=" + std::to_string(m) + ")");
  }
  return {1.0 - md * integral, md * abs_error};
}

double exact_mean_dpr(const HallDistribution& d, std::size_t m,
                      const QuadratureSpec& spec) {
  return exact_mean_dpr_detailed(d, m, spec).value;
}

std::vector<BiasPoint> bias_curve(const HallDistribution& d,
                                  std::span<const std::size_t> m_list,
                                  const QuadratureSpec& spec) {
  const double p = d.alpha() / (d.alpha() + 1.0);
  const double zeta =
      d.has_finite_beta() ? (d.beta() - d.alpha()) / d.alpha() : NAN;
  std::vector<BiasPoint> out;
  out.reserve(m_list.size());
  for (std::size_t m : m_list) {
    const QuadratureResult r = exact_mean_dpr_detailed(d, m, spec);
    BiasPoint point;
    point.m = m;
    point.gamma_m = r.value - p;
    point.normalized = std::isnan(zeta)
                           ? NAN
                           : std::pow(static_cast<double>(m), zeta) * point.gamma_m;
    point.abs_error = r.abs_error;
    out.push_back(point);
  }
  return out;
}

}  // namespace tailix
