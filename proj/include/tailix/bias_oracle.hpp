#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailix/distributions.hpp"

namespace tailix {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_subdivisions = 100000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // error estimate on `value`
};

/// Exact E p_hat for block size m, i.e. the mean of the block ratio
/// M(2)/M(1) over m i.i.d. draws from `d`:
///
///   E p_hat = 1 - m * int_{x0}^inf F(x)^(m-1) g(x) dx,
///   g(x)    = int_x^inf dF(t)/t
///           = c1 alpha/(alpha+1) x^-(alpha+1) + c2 beta/(beta+1) x^-(beta+1),
///
/// integrated in v = S(x) over (0, 1] with Jacobian 1/f(x).
/// Errc::quadrature_failure when the tolerance is not met.
QuadratureResult exact_mean_dpr_detailed(const HallDistribution& d,
                                         std::size_t m,
                                         const QuadratureSpec& spec = {});

double exact_mean_dpr(const HallDistribution& d, std::size_t m,
                      const QuadratureSpec& spec = {});

struct BiasPoint {
  std::size_t m = 0;
  double gamma_m = 0.0;     // E p_hat - p
  double normalized = 0.0;  // m^zeta gamma_m; NaN when beta is infinite
  double abs_error = 0.0;
};

std::vector<BiasPoint> bias_curve(const HallDistribution& d,
                                  std::span<const std::size_t> m_list,
                                  const QuadratureSpec& spec = {});

}  // namespace tailix
