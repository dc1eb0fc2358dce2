#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailix {

enum class Plane { alpha_beta, gamma_rho };

std::string_view to_string(Plane plane);
Plane parse_plane(std::string_view name);

/// Which estimator has the smallest asymptotic MSE among the block-ratio
/// estimator, Pickands and the moment estimator.
enum class RegionLabel { invalid, dpr, pickands, moment, undefined };

std::string_view to_string(RegionLabel label);
RegionLabel parse_region_label(std::string_view name);
/// Grey level of a label in the PGM raster.
std::uint8_t pgm_level(RegionLabel label);

/// Inclusive, evenly spaced axis: value(i) = min + (max - min) i / (steps - 1).
/// Which estimators compete for a cell: dpr against Pickands, dpr against
/// the moment estimator, or all three.
enum class Comparison { all, pickands, moment };
std::string_view to_string(Comparison comparison);
Comparison parse_comparison(std::string_view name);

struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 2;

  double value(std::size_t i) const;
};

struct RegionCell {
  std::size_t ix = 0;
  std::size_t iy = 0;
  double x = 0.0;  // alpha or gamma
  double y = 0.0;  // beta, beta/alpha (relative) or rho
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> rmmse_2;  // empty: invalid cell or degenerate locus
  std::optional<double> rmmse_3;
  RegionLabel label = RegionLabel::invalid;
};

struct RegionGrid {
  Plane plane = Plane::alpha_beta;
  AxisSpec x_axis;
  AxisSpec y_axis;
  /// alpha-beta plane only: the y axis holds beta / alpha.
  bool beta_relative = false;
  Comparison comparison = Comparison::all;
  std::vector<RegionCell> cells;  // iy major, ix minor

  const RegionCell& at(std::size_t ix, std::size_t iy) const {
    return cells[iy * x_axis.steps + ix];
  }
};

/// Label from the two ratios MSE(dpr)/MSE(j), j = 2 (Pickands), 3 (moment).
RegionLabel classify(const std::optional<double>& rmmse_2,
                     const std::optional<double>& rmmse_3,
                     Comparison comparison = Comparison::all);

/// Errc::invalid_parameters for empty ranges or fewer than 2 steps.
RegionGrid compute_regions(Plane plane, const AxisSpec& x_axis,
                           const AxisSpec& y_axis, bool beta_relative = false,
                           Comparison comparison = Comparison::all,
                           unsigned workers = 0);

/// One row per cell: ix,iy,x,y,alpha,beta,rmmse_2,rmmse_3,label.
std::string regions_csv(const RegionGrid& grid);

/// Binary P5 raster, x_axis.steps wide, y_axis.steps high, largest y on the
/// top row.
std::string regions_pgm(const RegionGrid& grid);

}  // namespace tailix
