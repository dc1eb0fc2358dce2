#include "tailix/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tailix/bias_oracle.hpp"
#include "tailix/csv.hpp"
#include "tailix/error.hpp"
#include "tailix/estimators.hpp"
#include "tailix/montecarlo.hpp"
#include "tailix/regions.hpp"
#include "tailix/report.hpp"
#include "tailix/theory.hpp"

namespace tailix {
namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::parse:
    case Errc::positivity:
    case Errc::insufficient_data:
      return kExitParse;
    case Errc::degenerate:
    case Errc::degenerate_gap:
    case Errc::inversion:
    case Errc::kernel:
      return kExitDegenerate;
    case Errc::quadrature_failure:
    case Errc::numeric:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content) || !f.flush()) {
    throw Error(Errc::invalid_parameters, "cannot write '" + path + "'");
  }
}

std::string num(const std::optional<double>& v) {
  return format_number(v, "degenerate");
}

std::vector<std::size_t> parse_m_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 2) {
      throw Error(Errc::invalid_parameters,
                  "malformed --m-list entry '" + item +
                      "' (integers >= 2, comma separated)");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Error(Errc::invalid_parameters, "empty --m-list");
  return out;
}

HallDistribution make_dist(double c1, double c2, double alpha,
                           const std::optional<double>& beta) {
  return HallDistribution::make(c1, c2, alpha, beta.value_or(kInfiniteBeta));
}

// --- estimate ---------------------------------------------------------------

struct EstimateArgs {
  std::string input;
  std::string method;
  std::optional<std::size_t> k, m, s;
  std::optional<double> r;
  std::optional<std::string> kernel;
};

Tuning tuning_for(Method method, const EstimateArgs& a) {
  auto need = [](auto& opt, const char* flag, Method who) {
    if (!opt) {
      throw Error(Errc::invalid_parameters,
                  std::string(to_string(who)) + " requires " + flag);
    }
    return *opt;
  };
  Tuning t;
  if (is_classical(method)) {
    t.k = need(a.k, "--k", method);
  } else {
    t.m = need(a.m, "--m", method);
  }
  if (method == Method::qi) t.s = need(a.s, "--s", method);
  if (method == Method::gdpr) {
    const std::string kind = need(a.kernel, "--kernel", method);
    t.kernel = parse_kernel(kind, kind == "log" ? 0.0 : need(a.r, "--r", method));
  }
  return t;
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  const Method method = parse_method(a.method);
  const Tuning tuning = tuning_for(method, a);
  const Sample data =
      a.input == "-" ? Sample::parse(std::cin, "<stdin>") : Sample::read_file(a.input);
  const EstimateResult r = estimate(data, method, tuning);
  std::vector<CsvRow> rows{
      {"method", "tuning", "native", "alpha_hat", "gamma_hat", "p_hat"},
      {std::string(to_string(method)), tuning.describe(),
       format_number(r.native), format_number(r.alpha_hat, "undefined"),
       format_number(r.gamma_hat, "undefined"),
       format_number(r.p_hat, "undefined")}};
  out << write_csv(rows);
  return kExitOk;
}

// --- theory -----------------------------------------------------------------

struct TheoryArgs {
  double alpha = 0, beta = 0, c1 = 1, c2 = 1, n = 0;
};

int cmd_theory(const TheoryArgs& a, std::ostream& out) {
  const SecondOrderParams params{a.alpha, a.beta, a.c1, a.c2};
  const auto views = param_views(params);
  const auto dpr = dpr_asymptotics(params, a.n);
  out << "gamma=" << format_number(views.gamma) << '\n'
      << "rho=" << format_number(views.rho) << '\n'
      << "p=" << format_number(views.p) << '\n'
      << "zeta=" << format_number(dpr.zeta) << '\n'
      << "chi=" << format_number(dpr.chi) << '\n'
      << "sigma2=" << format_number(dpr.sigma2) << '\n'
      << "mu=" << format_number(dpr.mu) << '\n'
      << "m_opt_real=" << num(dpr.m_opt_real) << '\n'
      << "m_opt="
      << (dpr.m_opt_int ? std::to_string(*dpr.m_opt_int) : "degenerate")
      << '\n'
      << "amse=" << num(dpr.amse) << '\n';
  for (int j = 1; j <= 4; ++j) {
    const auto c = classical_asymptotics(j, params, a.n);
    const std::string sfx = "_" + std::to_string(j);
    out << "D" << sfx << '=' << format_number(c.d) << '\n'
        << "sigma2" << sfx << '=' << format_number(c.sigma2) << '\n'
        << "k_opt" << sfx << '=' << num(c.k_opt) << '\n'
        << "amse_p" << sfx << '=' << num(c.amse_p) << '\n'
        << "rmmse" << sfx << '=' << num(rmmse(j, a.alpha, a.beta)) << '\n';
  }
  return kExitOk;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  double alpha = 0, c1 = 1, c2 = 0;
  std::optional<double> beta;
  std::size_t n = 0;
  std::string method;
  std::optional<std::size_t> k, m, s;
  std::optional<double> r;
  std::optional<std::string> kernel;
  bool optimal = false;
  std::size_t replicates = 1;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::optional<double> clt_mean;
  std::optional<std::string> out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  if (!a.seed) {
    throw Error(Errc::invalid_parameters, "--seed is required");
  }
  const Method method = parse_method(a.method);
  Tuning tuning;
  if (!a.optimal) {
    EstimateArgs ea{"", a.method, a.k, a.m, a.s, a.r, a.kernel};
    tuning = tuning_for(method, ea);
  } else {
    if (method == Method::gdpr || method == Method::qi) {
      throw Error(Errc::invalid_parameters,
                  "--optimal is available for dpr and the classical methods");
    }
  }
  ExperimentConfig cfg{
      .dist = make_dist(a.c1, a.c2, a.alpha, a.beta),
      .n_obs = a.n,
      .method = method,
      .tuning = tuning,
      .rule = a.optimal ? TuningRule::optimal_from_theory
                        : TuningRule::explicit_value,
      .replicates = a.replicates,
      .base_seed = *a.seed,
      .clt_mean = a.clt_mean,
      .workers = a.workers,
  };
  const ExperimentReport rep = run_experiment(cfg);
  if (a.out) write_file(*a.out, serialize_report(rep));

  out << "method=" << to_string(method)
      << " tuning=" << rep.resolved.describe() << " valid=" << rep.valid
      << " degenerate=" << rep.degenerate
      << " mean=" << format_number(rep.mean)
      << " mse=" << format_number(rep.mse)
      << " kappa_var=" << format_number(rep.kappa_variance, "undefined") << " ks_p="
      << (rep.ks ? format_number(rep.ks->p_value) : std::string("undefined"))
      << '\n';
  if (rep.valid == 0) {
    throw Error(Errc::degenerate, "every replicate was degenerate");
  }
  return kExitOk;
}

// --- regions ----------------------------------------------------------------

struct RegionsArgs {
  std::string plane = "alpha-beta";
  std::optional<double> x_min, x_max, y_min, y_max;
  std::size_t steps = 400;
  std::optional<std::size_t> x_steps, y_steps;
  std::string beta_axis = "relative";
  std::string compare = "all";
  std::string out;
  std::optional<std::string> pgm;
  unsigned workers = 0;
};

int cmd_regions(const RegionsArgs& a) {
  const Plane plane = parse_plane(a.plane);
  bool relative = false;
  AxisSpec x, y;
  if (plane == Plane::alpha_beta) {
    if (a.beta_axis != "relative" && a.beta_axis != "absolute") {
      throw Error(Errc::invalid_parameters,
                  "--beta-axis must be relative or absolute");
    }
    relative = a.beta_axis == "relative";
    x = {0.05, 5.0, a.steps};
    y = relative ? AxisSpec{1.0, 4.0, a.steps} : AxisSpec{0.05, 20.0, a.steps};
  } else {
    x = {0.02, 2.0, a.steps};
    y = {-4.0, 0.0, a.steps};
  }
  x.min = a.x_min.value_or(x.min);
  x.max = a.x_max.value_or(x.max);
  y.min = a.y_min.value_or(y.min);
  y.max = a.y_max.value_or(y.max);
  x.steps = a.x_steps.value_or(a.steps);
  y.steps = a.y_steps.value_or(a.steps);

  const RegionGrid grid = compute_regions(plane, x, y, relative,
                                         parse_comparison(a.compare), a.workers);
  write_file(a.out, regions_csv(grid));
  if (a.pgm) write_file(*a.pgm, regions_pgm(grid));
  return kExitOk;
}

// --- bias-curve ---------------------------------------------------------------

struct BiasArgs {
  double alpha = 0, c1 = 1, c2 = 0;
  std::optional<double> beta;
  std::string m_list;
  std::optional<std::string> out;
  QuadratureSpec quad;
};

int cmd_bias_curve(const BiasArgs& a, std::ostream& out) {
  const auto ms = parse_m_list(a.m_list);
  const HallDistribution d = make_dist(a.c1, a.c2, a.alpha, a.beta);
  const double chi =
      d.has_finite_beta() ? dpr_bias_constant(SecondOrderParams::from(d)) : 0.0;
  const auto curve = bias_curve(d, ms, a.quad);

  std::vector<CsvRow> rows{{"# chi=" + format_number(chi)},
                           {"m", "gamma_m", "normalized"}};
  for (const BiasPoint& p : curve) {
    rows.push_back({std::to_string(p.m), format_number(p.gamma_m),
                    std::isnan(p.normalized) ? "undefined"
                                             : format_number(p.normalized)});
  }
  const std::string text = write_csv(rows);
  if (a.out) {
    write_file(*a.out, text);
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Tail-index estimation with block-ratio and order-statistic "
               "estimators",
               "tailix"};
  app.require_subcommand(1);

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Estimate from a data file");
  est->add_option("input", ea.input, "one positive number per line, '-' for stdin")
      ->required();
  est->add_option("--method", ea.method,
                  "hill|pickands|moment|devries|dpr|gdpr|qi")
      ->required();
  est->add_option("--k", ea.k, "upper order statistics");
  est->add_option("--m", ea.m, "block size");
  est->add_option("--s", ea.s, "qi: order statistics per block");
  est->add_option("--r", ea.r, "gdpr kernel exponent");
  est->add_option("--kernel", ea.kernel, "gdpr kernel: power|log|negpower");

  TheoryArgs ta;
  auto* th = app.add_subcommand("theory", "Asymptotic constants and optima");
  th->add_option("--alpha", ta.alpha)->required();
  th->add_option("--beta", ta.beta)->required();
  th->add_option("--c1", ta.c1)->capture_default_str();
  th->add_option("--c2", ta.c2)->capture_default_str();
  th->add_option("--n", ta.n, "total sample size N")->required();

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Seeded Monte Carlo experiment");
  sim->add_option("--alpha", sa.alpha)->required();
  sim->add_option("--beta", sa.beta, "omit for pure Pareto");
  sim->add_option("--c1", sa.c1)->capture_default_str();
  sim->add_option("--c2", sa.c2)->capture_default_str();
  sim->add_option("--n", sa.n, "observations per replicate")->required();
  sim->add_option("--method", sa.method)->required();
  sim->add_option("--k", sa.k);
  sim->add_option("--m", sa.m);
  sim->add_option("--s", sa.s);
  sim->add_option("--r", sa.r);
  sim->add_option("--kernel", sa.kernel);
  sim->add_flag("--optimal", sa.optimal, "tune m or k from the theory optimum");
  sim->add_option("--replicates", sa.replicates)->capture_default_str();
  sim->add_option("--seed", sa.seed, "base seed (required)");
  sim->add_option("--workers", sa.workers, "threads, 0 = all cores");
  sim->add_option("--clt-mean", sa.clt_mean,
                  "mean of the normal law for the KS test");
  sim->add_option("--out", sa.out, "JSON report path");

  RegionsArgs ra;
  auto* reg = app.add_subcommand("regions", "RMMSE domination map");
  reg->add_option("--plane", ra.plane, "alpha-beta|gamma-rho")
      ->capture_default_str();
  reg->add_option("--x-min", ra.x_min);
  reg->add_option("--x-max", ra.x_max);
  reg->add_option("--y-min", ra.y_min);
  reg->add_option("--y-max", ra.y_max);
  reg->add_option("--steps", ra.steps, "cells per axis")->capture_default_str();
  reg->add_option("--x-steps", ra.x_steps);
  reg->add_option("--y-steps", ra.y_steps);
  reg->add_option("--beta-axis", ra.beta_axis,
                  "alpha-beta plane: relative (beta/alpha) or absolute")
      ->capture_default_str();
  reg->add_option("--compare", ra.compare,
                  "all (three-way), pickands or moment (pairwise with dpr)")
      ->capture_default_str();
  reg->add_option("--out", ra.out, "CSV path")->required();
  reg->add_option("--pgm", ra.pgm, "PGM (P5) path");
  reg->add_option("--workers", ra.workers);

  BiasArgs ba;
  auto* bias = app.add_subcommand("bias-curve", "Exact bias of p_hat by quadrature");
  bias->add_option("--alpha", ba.alpha)->required();
  bias->add_option("--beta", ba.beta, "omit for pure Pareto");
  bias->add_option("--c1", ba.c1)->capture_default_str();
  bias->add_option("--c2", ba.c2)->capture_default_str();
  bias->add_option("--m-list", ba.m_list, "comma separated block sizes")
      ->required();
  bias->add_option("--out", ba.out, "CSV path (default stdout)");
  bias->add_option("--rel-tol", ba.quad.rel_tol)->capture_default_str();
  bias->add_option("--abs-tol", ba.quad.abs_tol)->capture_default_str();
  bias->add_option("--max-subdivisions", ba.quad.max_subdivisions)
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (est->parsed()) return cmd_estimate(ea, out);
    if (th->parsed()) return cmd_theory(ta, out);
    if (sim->parsed()) return cmd_simulate(sa, out);
    if (reg->parsed()) return cmd_regions(ra);
    if (bias->parsed()) return cmd_bias_curve(ba, out);
  } catch (const Error& e) {
    err << "tailix: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "tailix: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tailix
