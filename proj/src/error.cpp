#include "tailix/error.hpp"

namespace tailix {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_parameters: return "invalid-parameters";
    case Errc::infeasible_tail: return "infeasible-tail";
    case Errc::domain: return "domain-error";
    case Errc::numeric: return "numeric-error";
    case Errc::tuning: return "tuning-error";
    case Errc::positivity: return "positivity-error";
    case Errc::degenerate_gap: return "degenerate-gap";
    case Errc::degenerate: return "degenerate";
    case Errc::kernel: return "kernel-error";
    case Errc::inversion: return "inversion-error";
    case Errc::quadrature_failure: return "quadrature-failure";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::parse: return "parse-error";
  }
  return "unknown";
}

}  // namespace tailix
