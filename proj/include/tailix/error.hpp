#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tailix {

enum class Errc {
  invalid_parameters,
  infeasible_tail,
  domain,
  numeric,
  tuning,
  positivity,
  degenerate_gap,
  degenerate,
  kernel,
  inversion,
  quadrature_failure,
  insufficient_data,
  parse,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // Failures that come from the data rather than from the caller: a degenerate
  // replicate is counted and skipped by the simulation harness.
  bool is_estimator_degeneracy() const noexcept {
    return code_ == Errc::degenerate || code_ == Errc::degenerate_gap ||
           code_ == Errc::inversion || code_ == Errc::kernel;
  }

 private:
  Errc code_;
};

}  // namespace tailix
