#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "tailix/csv.hpp"
#include "tailix/error.hpp"
#include "tailix/regions.hpp"
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

}  // namespace

TEST_CASE("labels") {
  CHECK(classify(0.5, 0.9) == RegionLabel::dpr);
  CHECK(classify(1.5, 0.9) == RegionLabel::pickands);
  CHECK(classify(1.5, 2.5) == RegionLabel::moment);
  CHECK(classify(0.5, 2.5) == RegionLabel::moment);
  CHECK(classify(std::nullopt, 0.5) == RegionLabel::undefined);
  CHECK(classify(0.5, 2.5, Comparison::pickands) == RegionLabel::dpr);
  CHECK(classify(1.5, 0.5, Comparison::pickands) == RegionLabel::pickands);
  CHECK(classify(1.5, 0.5, Comparison::moment) == RegionLabel::dpr);
  CHECK(classify(0.5, std::nullopt, Comparison::moment) == RegionLabel::undefined);
  for (auto l : {RegionLabel::invalid, RegionLabel::dpr, RegionLabel::pickands,
                 RegionLabel::moment, RegionLabel::undefined}) {
    CHECK(parse_region_label(to_string(l)) == l);
  }
  CHECK(pgm_level(RegionLabel::invalid) == 255);
  CHECK(pgm_level(RegionLabel::dpr) == 96);
  CHECK(pgm_level(RegionLabel::pickands) == 0);
  CHECK(pgm_level(RegionLabel::moment) == 192);
  CHECK(pgm_level(RegionLabel::undefined) == 160);
}

TEST_CASE("alpha-beta grid") {
  auto g = compute_regions(Plane::alpha_beta, {0.5, 1.5, 3}, {1, 5, 5});
  const auto& c13 = g.at(1, 2);
  CHECK(*c13.alpha == 1);
  CHECK(*c13.beta == 3);
  CHECK(*c13.rmmse_2 < 1);
  CHECK(*c13.rmmse_2 == doctest::Approx(0.316).epsilon(1e-3));
  CHECK(c13.label == RegionLabel::moment);
  CHECK(compute_regions(Plane::alpha_beta, {0.5, 1.5, 3}, {1, 5, 5}, false,
                        Comparison::pickands)
            .at(1, 2)
            .label == RegionLabel::dpr);

  CHECK(g.at(1, 0).label == RegionLabel::invalid);  // beta = alpha
  CHECK(g.at(2, 0).label == RegionLabel::invalid);
  CHECK_FALSE(g.at(1, 0).rmmse_2.has_value());
  const auto& locus = g.at(1, 1);  // alpha 1, beta 2
  CHECK(locus.label == RegionLabel::undefined);
  CHECK_FALSE(locus.rmmse_2.has_value());
  CHECK(locus.rmmse_3.has_value());

  auto rel = compute_regions(Plane::alpha_beta, {0.5, 1.5, 3}, {1, 3, 3}, true);
  CHECK(rel.at(0, 0).label == RegionLabel::invalid);
  CHECK(*rel.at(2, 2).beta == doctest::Approx(4.5));
}

TEST_CASE("gamma-rho grid") {
  auto g = compute_regions(Plane::gamma_rho, {0.25, 1.0, 4}, {-2, 0, 5});
  for (std::size_t ix = 0; ix < 4; ++ix) CHECK(g.at(ix, 4).label == RegionLabel::invalid);
  const auto& c = g.at(3, 0);  // gamma 1, rho -2
  CHECK(*c.alpha == 1);
  CHECK(*c.beta == 3);
  CHECK(*c.rmmse_2 == *rmmse(2, 1, 3));
  CHECK(*c.rmmse_3 == *rmmse(3, 1, 3));
}

TEST_CASE("grid validation and determinism") {
  CHECK(code_of([] { compute_regions(Plane::alpha_beta, {1, 1, 5}, {1, 2, 5}); }) ==
        Errc::invalid_parameters);
  CHECK(code_of([] { compute_regions(Plane::alpha_beta, {1, 2, 1}, {1, 2, 5}); }) ==
        Errc::invalid_parameters);
  CHECK(code_of([] { compute_regions(Plane::gamma_rho, {1, 2, 3}, {-1, 0, 3}, true); }) ==
        Errc::invalid_parameters);
  auto a = compute_regions(Plane::alpha_beta, {0.05, 5, 40}, {1, 4, 30}, true,
                           Comparison::all, 1);
  auto b = compute_regions(Plane::alpha_beta, {0.05, 5, 40}, {1, 4, 30}, true,
                           Comparison::all, 4);
  CHECK(regions_csv(a) == regions_csv(b));
  CHECK(regions_pgm(a) == regions_pgm(b));
}

TEST_CASE("csv and pgm agree") {
  auto g = compute_regions(Plane::alpha_beta, {0.1, 5, 23}, {0.1, 20, 17});
  const std::string csv = regions_csv(g);
  auto rows = parse_csv(csv);
  CHECK(write_csv(rows) == csv);
  REQUIRE(rows.size() == 1 + 23 * 17);
  CHECK(rows[0] == CsvRow{"ix", "iy", "alpha_axis", "beta_axis", "alpha", "beta",
                          "rmmse_2", "rmmse_3", "label"});

  const std::string pgm = regions_pgm(g);
  const std::string header = "P5\n23 17\n255\n";
  REQUIRE(pgm.substr(0, header.size()) == header);
  REQUIRE(pgm.size() == header.size() + 23 * 17);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto ix = std::stoul(rows[r][0]);
    const auto iy = std::stoul(rows[r][1]);
    const auto level = static_cast<unsigned char>(
        pgm[header.size() + (16 - iy) * 23 + ix]);
    CHECK(level == pgm_level(parse_region_label(rows[r][8])));
    if (rows[r][8] == "invalid") CHECK(rows[r][6].empty());
  }
}

TEST_CASE("csv helpers") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
  CHECK(format_number(std::nullopt, "undefined") == "undefined");
  std::vector<CsvRow> rows{{"a", "b,c", "say \"hi\""}, {"", "x\ny", "3"}};
  const std::string text = write_csv(rows);
  CHECK(text == "a,\"b,c\",\"say \"\"hi\"\"\"\n,\"x\ny\",3\n");
  CHECK(parse_csv(text) == rows);
  CHECK(parse_csv("a,b\r\nc,d\r\n") == std::vector<CsvRow>{{"a", "b"}, {"c", "d"}});
  CHECK(code_of([] { parse_csv("\"open"); }) == Errc::parse);
}
