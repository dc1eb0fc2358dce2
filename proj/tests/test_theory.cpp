#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "tailix/distributions.hpp"
#include "tailix/error.hpp"
#include "tailix/theory.hpp"

using namespace tailix;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::numeric;
}

// Direct transcription with plain pow and tgamma.
double eta_ref(double a, double b) {
  const double z = (b - a) / a;
  return std::pow(b * (a + 1) / (a * (b + 1)), 2) *
         std::pow((a + 1) * (a + 1) / (a * (a + 2)), 2 * z);
}

double rmmse_ref(int j, double a, double b) {
  const double z = (b - a) / a;
  const double e = 1 / (1 + 2 * z);
  const double g2 = std::pow(std::tgamma(2 + z), 2);
  switch (j) {
    case 1:
      return std::pow(eta_ref(a, b) * g2, e);
    case 2: {
      const double t = std::pow(2, 1 / a) - 1;
      const double inner = eta_ref(a, b) * z * z * std::pow(std::tgamma(1 + z), 2) /
                           (std::pow(1 - std::pow(2, -z), 2) *
                            std::pow(std::pow(2, 2 / a + 1) + 1, 2 * z) *
                            std::pow(std::pow(2, 1 / a - z) - 1, 2));
      return t * t * std::log(2) * std::log(2) * std::pow(inner, e);
    }
    case 3:
      return std::pow(eta_ref(a, b) * (1 + z) * (1 + z) * g2 /
                          (std::pow(1 + a * a, 2 * z) * std::pow(1 + z - a * z, 2)),
                      e);
    default:
      return std::pow(eta_ref(a, b) * (1 + z) * (1 + z) * g2 / std::pow(2, 2 * z), e);
  }
}

}  // namespace

TEST_CASE("parameter views") {
  auto v = param_views({2, 3, 1, 1});
  CHECK(v.gamma == 0.5);
  CHECK(v.rho == -1);
  CHECK(v.zeta == 0.5);
  CHECK(v.p == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(param_views({1, 5, 1, 1}).p == 0.5);
  for (double g : {0.1, 0.5, 1.7}) {
    for (double r : {-0.2, -1.0, -3.3}) {
      auto back = param_views(SecondOrderParams::from_gamma_rho(g, r));
      CHECK(std::abs(back.gamma - g) <= 1e-15 * g);
      CHECK(std::abs(back.rho - r) <= 1e-15 * std::abs(r) * 4);
    }
  }
  CHECK(code_of([] { SecondOrderParams::from_gamma_rho(0, -1); }) == Errc::domain);
  CHECK(code_of([] { SecondOrderParams::from_gamma_rho(1, 0); }) == Errc::domain);
  CHECK(code_of([] { SecondOrderParams::from(HallDistribution::pareto(1, 1)); }) ==
        Errc::invalid_parameters);

  SecondOrderParams p{1.3, 2.9, 0.7, -0.4};
  for (double a : {0.5, 3.0, 10.0}) {
    auto q = p.scaled(a);
    CHECK(std::pow(q.c1, q.beta) / std::pow(std::abs(q.c2), q.alpha) ==
          doctest::Approx(std::pow(p.c1, p.beta) / std::pow(std::abs(p.c2), p.alpha))
              .epsilon(1e-13));
  }
}

TEST_CASE("dpr asymptotics at the reference point") {
  auto d = dpr_asymptotics({1, 2, 1, 1}, 1e6);
  CHECK(d.zeta == 1);
  CHECK(d.chi == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(d.sigma2 == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(*d.m_opt_real == doctest::Approx(std::cbrt(8.0 / 3) * 100).epsilon(1e-13));
  CHECK(*d.m_opt_real == doctest::Approx(138.67).epsilon(1e-4));
  CHECK(*d.m_opt_int == 139);
  CHECK(*d.amse == doctest::Approx(1.733e-5).epsilon(1e-3));
  CHECK(d.mu == doctest::Approx(std::sqrt(1.0 / 12) / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(dpr_asymptotics({1, 2, 1, -0.5}, 1e6).mu < 0);

  auto pure = dpr_asymptotics({1.5, 3, 1, 0}, 1e6);
  CHECK(pure.degenerate());
  CHECK(pure.chi == 0);
  CHECK(pure.sigma2 == doctest::Approx(1.5 / (2.5 * 2.5 * 3.5)).epsilon(1e-15));
  CHECK_FALSE(pure.m_opt_int.has_value());
  CHECK_FALSE(pure.amse.has_value());

  CHECK(dpr_variance_constant(2) == doctest::Approx(1.0 / 18).epsilon(1e-15));
}

TEST_CASE("m_opt minimises the asymptotic mse") {
  for (SecondOrderParams p : {SecondOrderParams{1, 2, 1, 1}, SecondOrderParams{0.6, 1.1, 2, -0.3},
                              SecondOrderParams{3, 10, 1, 5}, SecondOrderParams{1, 3, 1, 1}}) {
    for (double n : {1e4, 1e6, 1e9}) {
      auto d = dpr_asymptotics(p, n);
      const double m = *d.m_opt_real;
      const double direct = d.chi * d.chi * std::pow(m, -2 * d.zeta) + d.sigma2 * m / n;
      CHECK(*d.amse == doctest::Approx(direct).epsilon(1e-12));
      CHECK(dpr_amse_at(p, m, n) == doctest::Approx(direct).epsilon(1e-12));
      const double h = m * 1e-4;
      auto slope = [&](double x) {
        return (dpr_amse_at(p, x + h, n) - dpr_amse_at(p, x - h, n)) / (2 * h);
      };
      CHECK(slope(m * 0.99) < 0);
      CHECK(slope(m * 1.01) > 0);
    }
  }
}

TEST_CASE("theory is invariant under rescaling the data") {
  SecondOrderParams base{1.2, 2.7, 1.4, 0.8};
  auto d0 = dpr_asymptotics(base, 1e6);
  for (double a : {0.5, 3.0, 10.0}) {
    SecondOrderParams s{base.alpha, base.beta, base.c1 * std::pow(a, base.alpha),
                        base.c2 * std::pow(a, base.beta)};
    auto d = dpr_asymptotics(s, 1e6);
    CHECK(*d.amse == doctest::Approx(*d0.amse).epsilon(1e-12));
    CHECK(*d.m_opt_real == doctest::Approx(*d0.m_opt_real).epsilon(1e-12));
    for (int j = 1; j <= 4; ++j) {
      auto c0 = classical_asymptotics(j, base, 1e6);
      auto c = classical_asymptotics(j, s, 1e6);
      CHECK(*c.k_opt == doctest::Approx(*c0.k_opt).epsilon(1e-12));
    }
  }
}

TEST_CASE("classical constants") {
  SecondOrderParams p{1, 2, 1, 1};
  auto c1 = classical_asymptotics(1, p, 1e6);
  CHECK(c1.d == 0.5);
  CHECK(c1.sigma2 == 1);
  CHECK(*c1.k_opt == doctest::Approx(std::cbrt(2.0) * 1e4).epsilon(1e-12));
  CHECK(std::round(*c1.k_opt) == 12599);

  auto c2 = classical_asymptotics(2, p, 1e6);
  CHECK(c2.degenerate());
  CHECK(c2.d == 0);

  for (double a : {0.4, 1.0, 2.5}) {
    for (double b : {a * 1.3, a * 2.2, a + 5}) {
      SecondOrderParams q{a, b, 1, 1};
      const double z = q.zeta();
      CHECK(classical_asymptotics(1, q, 1e6).d == doctest::Approx(1 / (1 + z)));
      CHECK(classical_asymptotics(1, q, 1e6).sigma2 == doctest::Approx(1 / (a * a)));
      CHECK(classical_asymptotics(3, q, 1e6).d ==
            doctest::Approx(1 / (1 + z) - a * z / ((1 + z) * (1 + z))));
      CHECK(classical_asymptotics(3, q, 1e6).sigma2 == doctest::Approx((1 + a * a) / (a * a)));
      CHECK(classical_asymptotics(4, q, 1e6).d == doctest::Approx(1 / ((1 + z) * (1 + z))));
      CHECK(classical_asymptotics(4, q, 1e6).sigma2 == doctest::Approx(2 / (a * a)));
      const double t = std::pow(2, 1 / a) - 1;
      CHECK(classical_asymptotics(2, q, 1e6).sigma2 ==
            doctest::Approx((1 + std::pow(2, 2 / a + 1)) /
                            (a * a * t * t * std::log(2) * std::log(2))));
    }
  }
  CHECK(classical_asymptotics(1, {1, 2, 1, 0}, 1e6).degenerate());
}

TEST_CASE("k_opt solves the balance condition") {
  for (SecondOrderParams p : {SecondOrderParams{1, 3, 1, 1}, SecondOrderParams{0.7, 1.5, 2, -0.6},
                              SecondOrderParams{2.5, 4, 0.3, 1.7}}) {
    for (int j = 1; j <= 4; ++j) {
      auto c = classical_asymptotics(j, p, 1e8);
      if (c.degenerate()) continue;
      const double k = *c.k_opt;
      const double a = auxiliary_leading(p, 1e8 / k);
      const double expect_a =
          -(p.zeta() / p.alpha) * p.c2 / std::pow(p.c1, p.beta / p.alpha) *
          std::pow(1e8 / k, -p.zeta());
      CHECK(a == doctest::Approx(expect_a).epsilon(1e-12));
      CHECK(k * a * a == doctest::Approx(c.sigma2 / (2 * p.zeta() * c.d * c.d)).epsilon(1e-10));
      const double pp = p.p();
      CHECK(*c.amse_p == doctest::Approx(std::pow(pp, 4) * (2 * p.beta - p.alpha) /
                                         (2 * (p.beta - p.alpha)) * c.sigma2 / k)
                             .epsilon(1e-12));
    }
  }
}

TEST_CASE("rmmse closed forms") {
  CHECK(*rmmse(1, 1, 2) == doctest::Approx(std::cbrt(256.0 / 81 * 4)).epsilon(1e-13));
  CHECK(*rmmse(1, 1, 2) == doctest::Approx(2.3295).epsilon(1e-4));
  CHECK(*rmmse(2, 1, 3) == doctest::Approx(0.316).epsilon(1e-3));
  CHECK_FALSE(rmmse(2, 1, 2).has_value());
  CHECK_FALSE(rmmse(3, 2, 4).has_value());  // 1 + z - a z = 0 at z = 1
  CHECK(rmmse_eta(1, 2) == doctest::Approx(eta_ref(1, 2)).epsilon(1e-14));
  CHECK(code_of([] { rmmse(1, 2, 2); }) == Errc::domain);
  CHECK(code_of([] { rmmse(1, 2, 1); }) == Errc::domain);

  for (double a : {0.1, 0.3, 0.8, 1.0, 1.7, 3.0, 5.0}) {
    for (double f : {1.05, 1.5, 2.0, 2.9, 4.0}) {
      const double b = a * f;
      for (int j = 1; j <= 4; ++j) {
        auto r = rmmse(j, a, b);
        if (!r) continue;
        CAPTURE(j);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(*r == doctest::Approx(rmmse_ref(j, a, b)).epsilon(1e-11));
      }
      CHECK(*rmmse(1, a, b) > 1);
      CHECK(*rmmse(4, a, b) > 1);
      CHECK(std::pow(a + 1, 6) - 4 * std::pow(a, 3) * (a + 2) > 0);
    }
  }
}

TEST_CASE("rmmse matches the ratio of minimal mse at large N") {
  for (SecondOrderParams p : {SecondOrderParams{1, 3, 1, 1}, SecondOrderParams{0.5, 1.7, 2, 0.3},
                              SecondOrderParams{3, 10, 0.2, -4}, SecondOrderParams{0.3, 0.5, 1, 1}}) {
    auto d = dpr_asymptotics(p, 1e10);
    for (int j = 1; j <= 4; ++j) {
      auto c = classical_asymptotics(j, p, 1e10);
      auto r = rmmse(j, p.alpha, p.beta);
      if (!r) continue;
      CHECK(*d.amse / *c.amse_p == doctest::Approx(*r).epsilon(1e-3));
    }
  }
}
