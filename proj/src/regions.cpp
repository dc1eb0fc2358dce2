#include "tailix/regions.hpp"

#include <cmath>

#include "tailix/csv.hpp"
#include "tailix/error.hpp"
#include "tailix/parallel.hpp"
#include "tailix/theory.hpp"

namespace tailix {

std::string_view to_string(Plane plane) {
  return plane == Plane::alpha_beta ? "alpha-beta" : "gamma-rho";
}

Plane parse_plane(std::string_view name) {
  if (name == "alpha-beta") return Plane::alpha_beta;
  if (name == "gamma-rho") return Plane::gamma_rho;
  throw Error(Errc::invalid_parameters,
              "unknown plane '" + std::string(name) + "'");
}

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::invalid: return "invalid";
    case RegionLabel::dpr: return "dpr-dominates";
    case RegionLabel::pickands: return "pickands-dominates";
    case RegionLabel::moment: return "moment-dominates";
    case RegionLabel::undefined: return "undefined";
  }
  return "undefined";
}

RegionLabel parse_region_label(std::string_view name) {
  for (auto label : {RegionLabel::invalid, RegionLabel::dpr,
                     RegionLabel::pickands, RegionLabel::moment,
                     RegionLabel::undefined}) {
    if (to_string(label) == name) return label;
  }
  throw Error(Errc::parse, "unknown region label '" + std::string(name) + "'");
}

std::uint8_t pgm_level(RegionLabel label) {
  switch (label) {
    case RegionLabel::invalid: return 255;
    case RegionLabel::dpr: return 96;
    case RegionLabel::pickands: return 0;
    case RegionLabel::moment: return 192;
    case RegionLabel::undefined: return 160;
  }
  return 160;
}

double AxisSpec::value(std::size_t i) const {
  if (i + 1 == steps) return max;
  return min + (max - min) * static_cast<double>(i) /
                   static_cast<double>(steps - 1);
}

std::string_view to_string(Comparison comparison) {
  switch (comparison) {
    case Comparison::all: return "all";
    case Comparison::pickands: return "pickands";
    case Comparison::moment: return "moment";
  }
  return "all";
}

Comparison parse_comparison(std::string_view name) {
  for (auto c : {Comparison::all, Comparison::pickands, Comparison::moment}) {
    if (to_string(c) == name) return c;
  }
  throw Error(Errc::invalid_parameters,
              "unknown comparison '" + std::string(name) + "'");
}

RegionLabel classify(const std::optional<double>& rmmse_2,
                     const std::optional<double>& rmmse_3,
                     Comparison comparison) {
  auto usable = [](const std::optional<double>& r) {
    return r && std::isfinite(*r);
  };
  if (comparison == Comparison::pickands) {
    if (!usable(rmmse_2)) return RegionLabel::undefined;
    return *rmmse_2 < 1.0 ? RegionLabel::dpr : RegionLabel::pickands;
  }
  if (comparison == Comparison::moment) {
    if (!usable(rmmse_3)) return RegionLabel::undefined;
    return *rmmse_3 < 1.0 ? RegionLabel::dpr : RegionLabel::moment;
  }
  if (!usable(rmmse_2) || !usable(rmmse_3)) return RegionLabel::undefined;
  // rmmse_j = MSE(dpr) / MSE(j): the largest ratio names the smallest MSE.
  if (*rmmse_2 < 1.0 && *rmmse_3 < 1.0) return RegionLabel::dpr;
  return *rmmse_2 > *rmmse_3 ? RegionLabel::pickands : RegionLabel::moment;
}

RegionGrid compute_regions(Plane plane, const AxisSpec& x_axis,
                           const AxisSpec& y_axis, bool beta_relative,
                           Comparison comparison, unsigned workers) {
  for (const AxisSpec* axis : {&x_axis, &y_axis}) {
    if (!(axis->max > axis->min) || axis->steps < 2 ||
        !std::isfinite(axis->min) || !std::isfinite(axis->max)) {
      throw Error(Errc::invalid_parameters,
                  "axis needs min < max and at least 2 steps");
    }
  }
  if (beta_relative && plane != Plane::alpha_beta) {
    throw Error(Errc::invalid_parameters,
                "a relative beta axis exists only in the alpha-beta plane");
  }

  RegionGrid grid{plane, x_axis, y_axis, beta_relative, comparison, {}};
  grid.cells.resize(x_axis.steps * y_axis.steps);
  parallel_for(grid.cells.size(), workers, [&](std::size_t idx) {
    RegionCell& cell = grid.cells[idx];
    cell.ix = idx % x_axis.steps;
    cell.iy = idx / x_axis.steps;
    cell.x = x_axis.value(cell.ix);
    cell.y = y_axis.value(cell.iy);

    double alpha = 0.0;
    double beta = 0.0;
    if (plane == Plane::alpha_beta) {
      alpha = cell.x;
      beta = beta_relative ? cell.x * cell.y : cell.y;
      if (!(alpha > 0.0) || !(beta > alpha)) return;
    } else {
      if (!(cell.x > 0.0) || !(cell.y < 0.0)) return;
      const auto params = SecondOrderParams::from_gamma_rho(cell.x, cell.y);
      alpha = params.alpha;
      beta = params.beta;
    }
    cell.alpha = alpha;
    cell.beta = beta;
    cell.rmmse_2 = rmmse(2, alpha, beta);
    cell.rmmse_3 = rmmse(3, alpha, beta);
    cell.label = classify(cell.rmmse_2, cell.rmmse_3, comparison);
  });
  return grid;
}

std::string regions_csv(const RegionGrid& grid) {
  std::vector<CsvRow> rows;
  rows.reserve(grid.cells.size() + 1);
  const bool ab = grid.plane == Plane::alpha_beta;
  rows.push_back({"ix", "iy", ab ? "alpha_axis" : "gamma",
                  ab ? (grid.beta_relative ? "beta_over_alpha" : "beta_axis")
                     : "rho",
                  "alpha", "beta", "rmmse_2", "rmmse_3", "label"});
  for (const RegionCell& c : grid.cells) {
    const bool valid = c.label != RegionLabel::invalid;
    const std::string_view missing = valid ? "degenerate" : "";
    rows.push_back({std::to_string(c.ix), std::to_string(c.iy),
                    format_number(c.x), format_number(c.y),
                    format_number(c.alpha, ""), format_number(c.beta, ""),
                    format_number(c.rmmse_2, missing),
                    format_number(c.rmmse_3, missing),
                    std::string(to_string(c.label))});
  }
  return write_csv(rows);
}

std::string regions_pgm(const RegionGrid& grid) {
  const std::size_t w = grid.x_axis.steps;
  const std::size_t h = grid.y_axis.steps;
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) +
                    "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + w * h);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t iy = h - 1 - row;
    for (std::size_t ix = 0; ix < w; ++ix) {
      out[header + row * w + ix] =
          static_cast<char>(pgm_level(grid.at(ix, iy).label));
    }
  }
  return out;
}

}  // namespace tailix
