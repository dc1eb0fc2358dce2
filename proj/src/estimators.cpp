#include "tailix/estimators.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tailix/error.hpp"

namespace tailix {
namespace {

constexpr std::array<std::string_view, 7> kMethodNames = {
    "hill", "pickands", "moment", "devries", "dpr", "gdpr", "qi"};

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_k(std::size_t k, std::size_t min_k, std::size_t n,
               std::string_view who) {
  if (k < min_k || k + 1 > n) {
    throw Error(Errc::tuning, std::string(who) + " needs " +
                                  std::to_string(min_k) + " <= k <= N-1 (k=" +
                                  std::to_string(k) + ", N=" +
                                  std::to_string(n) + ")");
  }
}

// Hill statistic and second log-moment over the k largest relative to the
// (k+1)-th largest.
struct LogMoments {
  double first;
  double second;
};

LogMoments log_moments(const std::vector<double>& top, std::size_t k) {
  std::vector<double> logs(k);
  std::vector<double> squares(k);
  for (std::size_t i = 0; i < k; ++i) {
    logs[i] = std::log(top[i] / top[k]);
    squares[i] = logs[i] * logs[i];
  }
  const double kd = static_cast<double>(k);
  return {pairwise_sum(logs) / kd, pairwise_sum(squares) / kd};
}

}  // namespace

std::string_view to_string(Method method) {
  return kMethodNames[static_cast<std::size_t>(method)];
}

Method parse_method(std::string_view name) {
  for (std::size_t i = 0; i < kMethodNames.size(); ++i) {
    if (kMethodNames[i] == name) return static_cast<Method>(i);
  }
  throw Error(Errc::invalid_parameters,
              "unknown method '" + std::string(name) + "'");
}

bool is_classical(Method method) {
  return method == Method::hill || method == Method::pickands ||
         method == Method::moment || method == Method::devries;
}

int classical_index(Method method) {
  if (!is_classical(method)) {
    throw Error(Errc::invalid_parameters,
                std::string(to_string(method)) + " is not a classical method");
  }
  return static_cast<int>(method) + 1;
}

Method classical_method(int j) {
  if (j < 1 || j > 4) {
    throw Error(Errc::invalid_parameters,
                "classical estimator index must be 1..4, got " +
                    std::to_string(j));
  }
  return static_cast<Method>(j - 1);
}

// --- kernels ---------------------------------------------------------------

Kernel Kernel::power(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(Errc::invalid_parameters, "power kernel needs r > 0");
  }
  return Kernel(Kind::power, r);
}

Kernel Kernel::log() { return Kernel(Kind::log, 0.0); }

Kernel Kernel::negpower(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(Errc::invalid_parameters, "negpower kernel needs r > 0");
  }
  return Kernel(Kind::negpower, r);
}

double Kernel::operator()(double ratio) const {
  switch (kind_) {
    case Kind::power:
      return r_ == 1.0 ? ratio : std::pow(ratio, r_);
    case Kind::log:
      if (!(ratio > 0.0)) throw Error(Errc::kernel, "log kernel at ratio 0");
      return -std::log(ratio);
    case Kind::negpower:
      if (!(ratio > 0.0)) {
        throw Error(Errc::kernel, "negpower kernel at ratio 0");
      }
      return std::pow(ratio, -r_);
  }
  return 0.0;
}

double Kernel::expected(double alpha) const {
  switch (kind_) {
    case Kind::power:
      return alpha / (r_ + alpha);
    case Kind::log:
      return 1.0 / alpha;
    case Kind::negpower:
      if (!(alpha > r_)) {
        throw Error(Errc::domain, "E W^-r is finite only for alpha > r");
      }
      return alpha / (alpha - r_);
  }
  return 0.0;
}

double Kernel::invert(double value) const {
  switch (kind_) {
    case Kind::power:
      if (value > 0.0 && value < 1.0) return r_ * value / (1.0 - value);
      break;
    case Kind::log:
      if (value > 0.0 && std::isfinite(value)) return 1.0 / value;
      break;
    case Kind::negpower:
      if (value > 1.0 && std::isfinite(value)) {
        return r_ * value / (value - 1.0);
      }
      break;
  }
  throw Error(Errc::inversion, "kernel mean " + fmt_num(value) +
                                   " is outside the range of h_f for " +
                                   describe());
}

std::string Kernel::describe() const {
  switch (kind_) {
    case Kind::power:
      return "power;r=" + fmt_num(r_);
    case Kind::log:
      return "log";
    case Kind::negpower:
      return "negpower;r=" + fmt_num(r_);
  }
  return {};
}

Kernel parse_kernel(std::string_view name, double r) {
  if (name == "power") return Kernel::power(r);
  if (name == "log") return Kernel::log();
  if (name == "negpower") return Kernel::negpower(r);
  throw Error(Errc::invalid_parameters,
              "unknown kernel '" + std::string(name) + "'");
}

std::string Tuning::describe() const {
  std::string out;
  auto add = [&out](const std::string& item) {
    if (!out.empty()) out += ';';
    out += item;
  };
  if (k != 0) add("k=" + std::to_string(k));
  if (m != 0) add("m=" + std::to_string(m));
  if (s != 0) add("s=" + std::to_string(s));
  if (kernel) add("kernel=" + kernel->describe());
  return out;
}

// --- conversions -----------------------------------------------------------

void fill_from_gamma(EstimateResult& r, double gamma) {
  r.gamma_hat = gamma;
  r.alpha_hat.reset();
  r.p_hat.reset();
  if (gamma > 0.0) r.alpha_hat = 1.0 / gamma;
  if (gamma > -1.0) r.p_hat = 1.0 / (1.0 + gamma);
}

void fill_from_p(EstimateResult& r, double p) {
  r.p_hat = p;
  r.alpha_hat.reset();
  r.gamma_hat.reset();
  if (p > 0.0) r.gamma_hat = (1.0 - p) / p;
  if (p > 0.0 && p < 1.0) r.alpha_hat = p / (1.0 - p);
}

void fill_from_alpha(EstimateResult& r, double alpha) {
  r.alpha_hat = alpha;
  r.gamma_hat = 1.0 / alpha;
  r.p_hat = alpha / (1.0 + alpha);
}

// --- blocks ----------------------------------------------------------------

BlockView block_partition(std::span<const double> values, std::size_t m,
                          std::size_t s_top) {
  if (m < 2) throw Error(Errc::tuning, "block size m must be >= 2");
  if (s_top < 1 || s_top > m - 1) {
    throw Error(Errc::tuning, "s must satisfy 1 <= s <= m-1 (s=" +
                                  std::to_string(s_top) +
                                  ", m=" + std::to_string(m) + ")");
  }
  const std::size_t n = values.size() / m;
  if (n == 0) {
    throw Error(Errc::tuning, "block size m=" + std::to_string(m) +
                                  " exceeds the sample size " +
                                  std::to_string(values.size()));
  }
  const std::size_t depth = s_top + 1;
  std::vector<double> tops(n * depth);

  for (std::size_t b = 0; b < n; ++b) {
    const double* block = values.data() + b * m;
    double* best = tops.data() + b * depth;
    if (depth == 2) {
      double first = block[0];
      double second = block[1];
      if (second > first) std::swap(first, second);
      for (std::size_t i = 2; i < m; ++i) {
        const double x = block[i];
        if (x > first) {
          second = first;
          first = x;
        } else if (x > second) {
          second = x;
        }
      }
      best[0] = first;
      best[1] = second;
      continue;
    }
    // Sorted insertion into a buffer of the `depth` largest seen so far.
    std::size_t filled = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = block[i];
      if (filled == depth && !(x > best[depth - 1])) continue;
      std::size_t pos = filled < depth ? filled++ : depth - 1;
      while (pos > 0 && best[pos - 1] < x) {
        best[pos] = best[pos - 1];
        --pos;
      }
      best[pos] = x;
    }
  }
  return BlockView(m, depth, std::move(tops));
}

BlockView block_partition(const Sample& sample, std::size_t m,
                          std::size_t s_top) {
  return block_partition(sample.values(), m, s_top);
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

// --- order-statistic estimators ---------------------------------------------

EstimateResult hill(const Sample& sample, std::size_t k) {
  require_k(k, 1, sample.size(), "hill");
  const auto top = sample.top(k + 1);
  EstimateResult r{Method::hill, Tuning{.k = k}};
  r.native = log_moments(top, k).first;
  fill_from_gamma(r, r.native);
  return r;
}

EstimateResult pickands(const Sample& sample, std::size_t k) {
  require_k(k, 4, sample.size(), "pickands");
  const auto top = sample.top(k + 1);
  const double upper = top[k / 4] - top[k / 2];
  const double lower = top[k / 2] - top[k];
  if (!(upper > 0.0) || !(lower > 0.0)) {
    throw Error(Errc::degenerate_gap,
                "pickands: tied order statistics give a zero gap (k=" +
                    std::to_string(k) + ")");
  }
  EstimateResult r{Method::pickands, Tuning{.k = k}};
  r.native = std::log(upper / lower) / std::numbers::ln2;
  fill_from_gamma(r, r.native);
  return r;
}

EstimateResult moment(const Sample& sample, std::size_t k) {
  require_k(k, 2, sample.size(), "moment");
  const auto top = sample.top(k + 1);
  const auto [g1, m2] = log_moments(top, k);
  if (!(m2 > 0.0)) {
    throw Error(Errc::degenerate, "moment: second log-moment M_N is zero");
  }
  const double denom = 1.0 - g1 * g1 / m2;
  if (!(denom > 0.0)) {
    throw Error(Errc::degenerate, "moment: hill^2 equals M_N (pole)");
  }
  EstimateResult r{Method::moment, Tuning{.k = k}};
  r.native = g1 + 1.0 - 0.5 / denom;
  fill_from_gamma(r, r.native);
  return r;
}

EstimateResult devries(const Sample& sample, std::size_t k) {
  require_k(k, 2, sample.size(), "devries");
  const auto top = sample.top(k + 1);
  const auto [g1, m2] = log_moments(top, k);
  if (g1 == 0.0) {
    throw Error(Errc::degenerate, "devries: hill statistic is zero");
  }
  EstimateResult r{Method::devries, Tuning{.k = k}};
  r.native = m2 / (2.0 * g1);
  fill_from_gamma(r, r.native);
  return r;
}

// --- block estimators ---------------------------------------------------------

EstimateResult dpr(const Sample& sample, std::size_t m) {
  const BlockView view = block_partition(sample, m, 1);
  const std::size_t n = view.block_count();
  EstimateResult r{Method::dpr, Tuning{.m = m}};
  r.block_ratios.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.block_ratios[i] = view.ratio(i);
  r.native = pairwise_sum(r.block_ratios) / static_cast<double>(n);
  fill_from_p(r, r.native);
  return r;
}

EstimateResult gdpr(const Sample& sample, std::size_t m, const Kernel& kernel) {
  const BlockView view = block_partition(sample, m, 1);
  const std::size_t n = view.block_count();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = kernel(view.ratio(i));
  EstimateResult r{Method::gdpr, Tuning{.m = m, .kernel = kernel}};
  r.native = pairwise_sum(terms) / static_cast<double>(n);
  fill_from_alpha(r, kernel.invert(r.native));
  return r;
}

EstimateResult qi(const Sample& sample, std::size_t m, std::size_t s_top) {
  const BlockView view = block_partition(sample, m, s_top);
  const std::size_t n = view.block_count();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tops = view.tops(i);
    double acc = 0.0;
    // -log(M(s+1)/M(j)) is the log kernel term when s = 1.
    for (std::size_t j = 0; j < s_top; ++j) {
      acc += -std::log(tops[s_top] / tops[j]);
    }
    terms[i] = acc / static_cast<double>(s_top);
  }
  EstimateResult r{Method::qi, Tuning{.m = m, .s = s_top}};
  r.native = pairwise_sum(terms) / static_cast<double>(n);
  fill_from_gamma(r, r.native);
  return r;
}

EstimateResult estimate(const Sample& sample, Method method,
                        const Tuning& tuning) {
  switch (method) {
    case Method::hill:
      return hill(sample, tuning.k);
    case Method::pickands:
      return pickands(sample, tuning.k);
    case Method::moment:
      return moment(sample, tuning.k);
    case Method::devries:
      return devries(sample, tuning.k);
    case Method::dpr:
      return dpr(sample, tuning.m);
    case Method::gdpr:
      if (!tuning.kernel) {
        throw Error(Errc::invalid_parameters, "gdpr needs a kernel");
      }
      return gdpr(sample, tuning.m, *tuning.kernel);
    case Method::qi:
      return qi(sample, tuning.m, tuning.s);
  }
  throw Error(Errc::invalid_parameters, "unknown method");
}

}  // namespace tailix
