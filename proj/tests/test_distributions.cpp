#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "tailix/distributions.hpp"
#include "tailix/error.hpp"
#include "tailix/sample.hpp"

using namespace tailix;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::numeric;
}

std::vector<HallDistribution> zoo() {
  return {HallDistribution::pareto(1, 1),
          HallDistribution::pareto(3, 0.4),
          HallDistribution::make(1, 1, 1, 2),
          HallDistribution::make(1, 1, 1, 3),
          HallDistribution::make(2, -0.3, 1.5, 2.5),
          HallDistribution::make(1, 0.5, 0.7, 1.9),
          HallDistribution::make(1, -0.2, 1, 2),
          HallDistribution::make(0.5, 4, 2, 2.2)};
}

}  // namespace

TEST_CASE("construction") {
  auto p = HallDistribution::make(1, 0, 1, kInfiniteBeta);
  CHECK(p.is_pure_pareto());
  CHECK(p.x0() == 1.0);
  CHECK(HallDistribution::pareto(8, 3).x0() == doctest::Approx(2.0).epsilon(1e-15));

  auto h = make_hall(1, 1, 1, 2);
  CHECK(h.x0() == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));

  CHECK(code_of([] { make_hall(1, -1, 1, 2); }) == Errc::infeasible_tail);
  CHECK(code_of([] { make_hall(0, 1, 1, 2); }) == Errc::invalid_parameters);
  CHECK(code_of([] { make_hall(1, 1, -1, 2); }) == Errc::invalid_parameters);
  CHECK(code_of([] { make_hall(1, 1, 2, 2); }) == Errc::invalid_parameters);
  CHECK(code_of([] { make_hall(1, 1, 2, 1); }) == Errc::invalid_parameters);
}

TEST_CASE("negative second term stays on the decreasing branch") {
  auto d = make_hall(1, -0.2, 1, 2);
  const double x_mono = std::pow(0.2 * 2 / 1.0, 1.0 / (2 - 1));
  CHECK(d.monotone_threshold() == doctest::Approx(x_mono));
  CHECK(d.x0() >= x_mono);
  CHECK(d.survival(d.x0()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.density(d.x0()) > 0);
  // x^-1 - 0.2 x^-2 = 1 has roots at x = (1 +- sqrt(0.2)) / 2, largest is x0
  CHECK(d.x0() == doctest::Approx((1 + std::sqrt(1 - 0.8)) / 2).epsilon(1e-13));
}

TEST_CASE("survival values") {
  auto p = HallDistribution::pareto(1, 1);
  CHECK(survival(p, 2) == 0.5);
  auto h = make_hall(1, 1, 1, 2);
  CHECK(survival(h, 2) == 0.75);
  CHECK(survival(h, h.x0()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.cdf(2) == 0.25);
  CHECK(code_of([&] { h.survival(1.0); }) == Errc::domain);
  CHECK(code_of([&] { h.density(1.0); }) == Errc::domain);
}

TEST_CASE("quantile values") {
  auto p = HallDistribution::pareto(1, 1);
  CHECK(quantile(p, 0.5) == 2.0);
  auto h = make_hall(1, 1, 1, 2);
  for (double u : {1.0, 0.9, 0.5, 1e-3, 1e-8, 1e-15}) {
    const double closed = (1 + std::sqrt(1 + 4 * u)) / (2 * u);
    CHECK(quantile(h, u) == doctest::Approx(closed).epsilon(1e-14));
  }
  CHECK(code_of([&] { h.quantile(0.0); }) == Errc::domain);
  CHECK(code_of([&] { h.quantile(1.5); }) == Errc::domain);
  CHECK(code_of([&] { h.quantile(-0.1); }) == Errc::domain);
}

TEST_CASE("roundtrip and monotonicity") {
  for (const auto& d : zoo()) {
    CAPTURE(d.c1());
    CAPTURE(d.c2());
    CAPTURE(d.alpha());
    CAPTURE(d.beta());
    double previous = 0.0;
    for (double u : {1.0, 0.999, 0.75, 0.5, 0.1, 1e-3, 1e-6, 1e-8, 1e-12}) {
      const double x = d.quantile(u);
      CHECK(x >= d.x0());
      CHECK(std::abs(d.survival(x) - u) <= 1e-10);
      CHECK(std::abs(d.survival(x) - u) <= 1e-12 * u + 1e-15);
      CHECK(x > previous);
      previous = x;
    }
    double s_prev = 2.0;
    for (double t = 0; t < 40; t += 0.5) {
      const double s = d.survival(d.x0() * std::exp(t / 4));
      CHECK(s < s_prev);
      s_prev = s;
    }
  }
}

TEST_CASE("density is minus the derivative of survival") {
  for (const auto& d : zoo()) {
    for (double scale : {1.01, 1.5, 3.0, 20.0, 500.0}) {
      const double x = d.x0() * scale;
      const double h = x * 1e-5;
      const double numeric = (d.survival(x - h) - d.survival(x + h)) / (2 * h);
      CHECK(d.density(x) == doctest::Approx(numeric).epsilon(1e-6));
    }
  }
}

TEST_CASE("closed form agrees with root finding for pure Pareto") {
  for (double alpha : {0.3, 1.0, 2.5}) {
    auto d = HallDistribution::pareto(2.0, alpha);
    for (double u : {1.0, 0.5, 1e-4, 1e-9}) {
      CHECK(d.quantile(u) ==
            doctest::Approx(d.quantile_by_root_finding(u)).epsilon(1e-12));
    }
  }
  auto h = make_hall(1, 1, 1, 2);
  for (double u : {1.0, 0.3, 1e-7}) {
    CHECK(h.quantile(u) ==
          doctest::Approx(h.quantile_by_root_finding(u)).epsilon(1e-12));
  }
}

TEST_CASE("scaled distribution") {
  auto d = make_hall(1, 1, 1, 3);
  auto s = d.scaled(3.0);
  CHECK(s.c1() == doctest::Approx(3.0));
  CHECK(s.c2() == doctest::Approx(27.0));
  CHECK(s.x0() == doctest::Approx(3 * d.x0()).epsilon(1e-13));
  CHECK(s.quantile(0.01) == doctest::Approx(3 * d.quantile(0.01)).epsilon(1e-13));
}

TEST_CASE("sampling") {
  auto p = HallDistribution::pareto(1, 1);
  Sample a = sample(p, 42, 1'000'000);
  Sample b = sample(p, 42, 1'000'000);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK(a.provenance().kind == Provenance::Kind::seed);
  CHECK(a.provenance().seed == 42);

  Sample c = sample(p, 43, 1000);
  CHECK_FALSE(std::equal(c.values().begin(), c.values().end(), a.values().begin()));

  const auto over =
      std::count_if(a.values().begin(), a.values().end(), [](double x) { return x > 10; });
  const double frac = static_cast<double>(over) / 1e6;
  CHECK(std::abs(frac - 0.1) <= 3 * std::sqrt(0.09 / 1e6));

  auto h = make_hall(1, 1, 1, 2);
  Sample s = sample(h, 7, 1'000'000);
  CHECK(*std::min_element(s.values().begin(), s.values().end()) >= h.x0());
  const auto over2 =
      std::count_if(s.values().begin(), s.values().end(), [](double x) { return x > 2; });
  CHECK(std::abs(over2 / 1e6 - 0.75) <= 4 * std::sqrt(0.75 * 0.25 / 1e6));

  auto g = make_hall(2, -0.3, 1.5, 2.5);
  Sample t = sample(g, 9, 400'000);
  const double x = g.quantile(0.2);
  const auto over3 =
      std::count_if(t.values().begin(), t.values().end(), [&](double v) { return v > x; });
  CHECK(std::abs(over3 / 4e5 - 0.2) <= 4 * std::sqrt(0.16 / 4e5));
}
