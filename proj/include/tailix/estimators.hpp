#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tailix/sample.hpp"

namespace tailix {

enum class Method { hill, pickands, moment, devries, dpr, gdpr, qi };

std::string_view to_string(Method method);
/// Errc::invalid_parameters on an unknown name.
Method parse_method(std::string_view name);

/// True for the four order-statistic estimators of gamma.
bool is_classical(Method method);
/// 1..4 for hill, pickands, moment, devries.
int classical_index(Method method);
Method classical_method(int j);

/// Kernel f applied to block ratios by the generalized block-ratio estimator,
/// together with h_f(alpha) = E f(W) for the standard Pareto ratio W.
class Kernel {
 public:
  enum class Kind { power, log, negpower };

  static Kernel power(double r);     // f(x) = x^r,     h = alpha / (r + alpha)
  static Kernel log();               // f(x) = -log x,  h = 1 / alpha
  static Kernel negpower(double r);  // f(x) = x^-r,    h = alpha / (alpha - r)

  Kind kind() const noexcept { return kind_; }
  double r() const noexcept { return r_; }

  double operator()(double ratio) const;
  double expected(double alpha) const;
  /// alpha with expected(alpha) == value; Errc::inversion outside the range.
  double invert(double value) const;

  std::string describe() const;

 private:
  Kernel(Kind kind, double r) : kind_(kind), r_(r) {}
  Kind kind_;
  double r_;
};

/// Kernel by name ("power", "log", "negpower") and exponent.
Kernel parse_kernel(std::string_view name, double r);

struct Tuning {
  std::size_t k = 0;  // classical estimators
  std::size_t m = 0;  // block size
  std::size_t s = 0;  // Qi: order statistics per block
  std::optional<Kernel> kernel = std::nullopt;

  std::string describe() const;
};

struct EstimateResult {
  Method method;
  Tuning tuning;
  double native = 0.0;  // p for dpr, h_f(alpha) for gdpr, gamma otherwise
  std::optional<double> alpha_hat = std::nullopt;
  std::optional<double> gamma_hat = std::nullopt;
  std::optional<double> p_hat = std::nullopt;
  std::vector<double> block_ratios = {};  // dpr only
};

/// Conversions between gamma = 1/alpha and p = alpha / (1 + alpha). Each
/// leaves a field empty where the map is undefined: p needs gamma > -1,
/// alpha needs gamma > 0.
void fill_from_gamma(EstimateResult& r, double gamma);
void fill_from_p(EstimateResult& r, double p);
void fill_from_alpha(EstimateResult& r, double alpha);

/// Consecutive, non-overlapping blocks of size m (trailing N - n m values are
/// dropped) with the `depth` largest values of each block, largest first.
class BlockView {
 public:
  BlockView(std::size_t m, std::size_t depth, std::vector<double> tops)
      : m_(m), depth_(depth), tops_(std::move(tops)) {}

  std::size_t block_size() const noexcept { return m_; }
  std::size_t block_count() const noexcept { return tops_.size() / depth_; }
  std::size_t depth() const noexcept { return depth_; }

  std::span<const double> tops(std::size_t block) const {
    return std::span<const double>(tops_).subspan(block * depth_, depth_);
  }
  /// Second largest over largest.
  double ratio(std::size_t block) const {
    return tops_[block * depth_ + 1] / tops_[block * depth_];
  }

 private:
  std::size_t m_;
  std::size_t depth_;
  std::vector<double> tops_;
};

/// Keeps the s_top + 1 largest values of each block in one pass per block.
/// Errc::tuning unless m >= 2, 1 <= s_top <= m - 1 and N >= m.
BlockView block_partition(std::span<const double> values, std::size_t m,
                          std::size_t s_top = 1);
BlockView block_partition(const Sample& sample, std::size_t m,
                          std::size_t s_top = 1);

/// Summation in a fixed pairwise order, independent of how the input was
/// produced.
double pairwise_sum(std::span<const double> terms);

EstimateResult hill(const Sample& sample, std::size_t k);
EstimateResult pickands(const Sample& sample, std::size_t k);
EstimateResult moment(const Sample& sample, std::size_t k);
EstimateResult devries(const Sample& sample, std::size_t k);

EstimateResult dpr(const Sample& sample, std::size_t m);
EstimateResult gdpr(const Sample& sample, std::size_t m, const Kernel& kernel);
EstimateResult qi(const Sample& sample, std::size_t m, std::size_t s_top);

/// Dispatch on `method`, reading the fields of `tuning` it needs.
EstimateResult estimate(const Sample& sample, Method method,
                        const Tuning& tuning);

}  // namespace tailix
