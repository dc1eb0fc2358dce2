#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "tailix/rng.hpp"
#include "tailix/sample.hpp"

namespace tailix {

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// Heavy-tailed law with the exact two-term tail
///
///     S(x) = 1 - F(x) = c1 x^-alpha + c2 x^-beta,   x >= x0,
///
/// where x0 is the point at which S reaches 1. Pure Pareto is c2 = 0; its
/// beta may be finite or kInfiniteBeta.
///
/// Internally the tail is handled in y = x^-alpha, where it reads
/// S = c1 y + c2 y^(beta/alpha) and is increasing in y on (0, y0].
class HallDistribution {
 public:
  /// Errc::invalid_parameters unless c1 > 0 and 0 < alpha < beta;
  /// Errc::infeasible_tail if c2 < 0 is so negative that S never reaches 1 on
  /// its decreasing branch.
  static HallDistribution make(double c1, double c2, double alpha, double beta);
  static HallDistribution pareto(double c1, double alpha);

  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double x0() const noexcept { return x0_; }
  bool is_pure_pareto() const noexcept { return c2_ == 0.0; }
  bool has_finite_beta() const noexcept { return beta_ < kInfiniteBeta; }

  /// Lower end of the region where S is decreasing; only meaningful for
  /// c2 < 0, otherwise 0.
  double monotone_threshold() const noexcept { return x_mono_; }

  // All three throw Errc::domain for x < x0.
  double survival(double x) const;
  double cdf(double x) const { return 1.0 - survival(x); }
  double density(double x) const;

  /// x with survival(x) == u, for 0 < u <= 1 (Errc::domain otherwise).
  /// Closed forms for pure Pareto and for beta == 2 alpha; safeguarded Newton
  /// in y otherwise.
  double quantile(double u) const;

  /// Same contract, always through the bracketed root finder.
  double quantile_by_root_finding(double u) const;

  /// Law of A*X: constants become (c1 A^alpha, c2 A^beta).
  HallDistribution scaled(double factor) const;

 private:
  HallDistribution(double c1, double c2, double alpha, double beta);

  double tail_in_y(double y) const noexcept;
  double solve_y(double u) const;

  double c1_;
  double c2_;
  double alpha_;
  double beta_;
  double ratio_;  // beta / alpha
  double y0_ = 1.0;
  double x0_ = 1.0;
  double x_mono_ = 0.0;
  bool quadratic_ = false;
};

inline HallDistribution make_hall(double c1, double c2, double alpha,
                                  double beta) {
  return HallDistribution::make(c1, c2, alpha, beta);
}

double survival(const HallDistribution& d, double x);
double density(const HallDistribution& d, double x);
double quantile(const HallDistribution& d, double u);

/// Fills `out` with i.i.d. draws by inverse transform of `uniform`.
void draw(const HallDistribution& d, UniformSource& uniform,
          std::span<double> out);

/// n i.i.d. draws from a UniformSource seeded with `seed`.
Sample sample(const HallDistribution& d, std::uint64_t seed, std::size_t n);

}  // namespace tailix
