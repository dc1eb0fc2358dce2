#include "tailix/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tailix/error.hpp"

namespace tailix {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxNewton = 50;
constexpr int kMaxBisection = 200;

std::string describe(double c1, double c2, double alpha, double beta) {
  return "(c1=" + std::to_string(c1) + ", c2=" + std::to_string(c2) +
         ", alpha=" + std::to_string(alpha) + ", beta=" + std::to_string(beta) +
         ")";
}

}  // namespace

HallDistribution::HallDistribution(double c1, double c2, double alpha,
                                   double beta)
    : c1_(c1), c2_(c2), alpha_(alpha), beta_(beta), ratio_(beta / alpha) {}

HallDistribution HallDistribution::make(double c1, double c2, double alpha,
                                        double beta) {
  if (!(c1 > 0.0) || !std::isfinite(c1) || !(alpha > 0.0) ||
      !std::isfinite(alpha) || !(beta > alpha) || std::isnan(c2) ||
      !std::isfinite(c2)) {
    throw Error(Errc::invalid_parameters,
                "Hall model needs c1 > 0 and 0 < alpha < beta " +
                    describe(c1, c2, alpha, beta));
  }
  if (c2 != 0.0 && !(beta < kInfiniteBeta)) {
    throw Error(Errc::invalid_parameters,
                "c2 != 0 requires a finite beta " +
                    describe(c1, c2, alpha, beta));
  }

  HallDistribution d(c1, c2, alpha, beta);
  if (c2 == 0.0) {
    d.y0_ = 1.0 / c1;
    d.x0_ = std::pow(c1, 1.0 / alpha);
    return d;
  }

  d.quadratic_ = (beta == 2.0 * alpha);
  double upper = 0.0;
  if (c2 > 0.0) {
    // c1 y alone already exceeds 1 at y = 1/c1.
    upper = 1.0 / c1;
  } else {
    const double q = d.ratio_;
    const double y_peak = std::pow(c1 / (-c2 * q), 1.0 / (q - 1.0));
    d.x_mono_ = std::pow(y_peak, -1.0 / alpha);
    if (d.tail_in_y(y_peak) < 1.0) {
      throw Error(Errc::infeasible_tail,
                  "survival never reaches 1 on its decreasing branch " +
                      describe(c1, c2, alpha, beta));
    }
    upper = y_peak;
  }
  d.y0_ = upper;  // solve_y brackets on (0, y0_]
  d.y0_ = d.solve_y(1.0);
  d.x0_ = std::pow(d.y0_, -1.0 / alpha);
  if (c2 < 0.0) d.x0_ = std::max(d.x0_, d.x_mono_);
  return d;
}

HallDistribution HallDistribution::pareto(double c1, double alpha) {
  return make(c1, 0.0, alpha, kInfiniteBeta);
}

double HallDistribution::tail_in_y(double y) const noexcept {
  return c2_ == 0.0 ? c1_ * y : c1_ * y + c2_ * std::pow(y, ratio_);
}

// Root of c1 y + c2 y^q = u on (0, y0_], where the left side increases from 0
// to at least u. Newton steps that leave the bracket fall back to bisection.
double HallDistribution::solve_y(double u) const {
  double lo = 0.0;
  double hi = y0_;
  double y = std::min(u / c1_, hi);

  int newton = 0;
  int bisection = 0;
  while (newton < kMaxNewton && bisection < kMaxBisection) {
    const double power = c2_ == 0.0 ? 0.0 : std::pow(y, ratio_ - 1.0);
    const double residual = c1_ * y + c2_ * power * y - u;
    if (residual == 0.0) return y;
    if (residual > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    if (std::abs(residual) <= 2.0 * kEps * u || hi - lo <= 2.0 * kEps * hi) {
      return y;
    }
    const double slope = c1_ + c2_ * ratio_ * power;
    double next = slope > 0.0 ? y - residual / slope : lo - 1.0;
    if (next > lo && next < hi) {
      ++newton;
      if (std::abs(next - y) <= kEps * y) return next;
    } else {
      ++bisection;
      next = 0.5 * (lo + hi);
    }
    y = next;
  }
  throw Error(Errc::numeric,
              "quantile root finder did not converge for u=" +
                  std::to_string(u) + " " + describe(c1_, c2_, alpha_, beta_));
}

double HallDistribution::survival(double x) const {
  if (!(x >= x0_)) {
    throw Error(Errc::domain, "survival evaluated below the support start x0=" +
                                  std::to_string(x0_));
  }
  double s = c1_ * std::pow(x, -alpha_);
  if (c2_ != 0.0) s += c2_ * std::pow(x, -beta_);
  return std::min(s, 1.0);
}

double HallDistribution::density(double x) const {
  if (!(x >= x0_)) {
    throw Error(Errc::domain, "density evaluated below the support start x0=" +
                                  std::to_string(x0_));
  }
  double f = c1_ * alpha_ * std::pow(x, -alpha_ - 1.0);
  if (c2_ != 0.0) f += c2_ * beta_ * std::pow(x, -beta_ - 1.0);
  return f;
}

double HallDistribution::quantile(double u) const {
  if (!(u > 0.0) || !(u <= 1.0)) {
    throw Error(Errc::domain,
                "quantile level must lie in (0, 1], got " + std::to_string(u));
  }
  if (u == 1.0) return x0_;
  double y = 0.0;
  if (c2_ == 0.0) {
    return std::max(x0_, std::pow(c1_ / u, 1.0 / alpha_));
  } else if (quadratic_) {
    // c2 y^2 + c1 y - u = 0, root continuous at u = 0.
    y = 2.0 * u / (c1_ + std::sqrt(c1_ * c1_ + 4.0 * c2_ * u));
  } else {
    y = solve_y(u);
  }
  const double x = alpha_ == 1.0 ? 1.0 / y : std::pow(y, -1.0 / alpha_);
  return std::max(x, x0_);
}

double HallDistribution::quantile_by_root_finding(double u) const {
  if (!(u > 0.0) || !(u <= 1.0)) {
    throw Error(Errc::domain,
                "quantile level must lie in (0, 1], got " + std::to_string(u));
  }
  if (u == 1.0) return x0_;
  return std::max(x0_, std::pow(solve_y(u), -1.0 / alpha_));
}

HallDistribution HallDistribution::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(Errc::invalid_parameters, "scale factor must be positive");
  }
  const double c2 = c2_ == 0.0 ? 0.0 : c2_ * std::pow(factor, beta_);
  return make(c1_ * std::pow(factor, alpha_), c2, alpha_, beta_);
}

double survival(const HallDistribution& d, double x) { return d.survival(x); }
double density(const HallDistribution& d, double x) { return d.density(x); }
double quantile(const HallDistribution& d, double u) { return d.quantile(u); }

void draw(const HallDistribution& d, UniformSource& uniform,
          std::span<double> out) {
  for (double& x : out) x = d.quantile(uniform());
}

Sample sample(const HallDistribution& d, std::uint64_t seed, std::size_t n) {
  UniformSource uniform(seed);
  std::vector<double> values(n);
  draw(d, uniform, values);
  return Sample(std::move(values), Provenance::from_seed(seed));
}

}  // namespace tailix
