#include "tailix/report.hpp"

#include <cmath>

#include "tailix/csv.hpp"
#include "tailix/error.hpp"

namespace tailix {
namespace {

using nlohmann::json;

json opt(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json opt_vector(const std::vector<std::optional<double>>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(opt(x));
  return arr;
}

std::vector<std::optional<double>> opt_vector_from(const json& arr) {
  std::vector<std::optional<double>> out;
  out.reserve(arr.size());
  for (const auto& x : arr) out.push_back(opt_from(x));
  return out;
}

// NaN moments (all replicates degenerate) become null.
json finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

double finite_from(const json& j) {
  return j.is_null() ? NAN : j.get<double>();
}

json tuning_to_json(const Tuning& t) {
  json j = json::object();
  j["k"] = t.k;
  j["m"] = t.m;
  j["s"] = t.s;
  if (t.kernel) {
    static constexpr const char* kinds[] = {"power", "log", "negpower"};
    j["kernel"] = kinds[static_cast<int>(t.kernel->kind())];
    j["r"] = t.kernel->r();
  } else {
    j["kernel"] = nullptr;
  }
  return j;
}

Tuning tuning_from_json(const json& j) {
  Tuning t;
  t.k = j.at("k").get<std::size_t>();
  t.m = j.at("m").get<std::size_t>();
  t.s = j.at("s").get<std::size_t>();
  if (!j.at("kernel").is_null()) {
    t.kernel = parse_kernel(j.at("kernel").get<std::string>(),
                            j.at("r").get<double>());
  }
  return t;
}

bool scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void dump(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && scalar(e);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += '\n' + inner;
        dump(e, out, indent + 1);
      }
      if (!flat) out += '\n' + pad;
      out += ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += '\n' + inner + json(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 1);
      }
      out += '\n' + pad + '}';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const json& doc) {
  std::string out;
  dump(doc, out, 0);
  out += '\n';
  return out;
}

json report_to_json(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  json doc = json::object();
  doc["schema"] = kReportSchema;

  json dist = json::object();
  dist["c1"] = c.dist.c1();
  dist["c2"] = c.dist.c2();
  dist["alpha"] = c.dist.alpha();
  dist["beta"] = c.dist.has_finite_beta() ? json(c.dist.beta()) : json(nullptr);
  dist["x0"] = c.dist.x0();

  json cfg = json::object();
  cfg["distribution"] = dist;
  cfg["n_obs"] = c.n_obs;
  cfg["method"] = to_string(c.method);
  cfg["tuning_rule"] = c.rule == TuningRule::explicit_value
                           ? "explicit"
                           : "optimal-from-theory";
  cfg["tuning"] = tuning_to_json(c.tuning);
  cfg["replicates"] = c.replicates;
  cfg["base_seed"] = c.base_seed;
  cfg["clt_mean"] = opt(c.clt_mean);
  doc["config"] = cfg;

  doc["resolved_tuning"] = tuning_to_json(r.resolved);
  doc["truth"] = {{"native", r.truth_native}, {"p", r.truth_p}};
  doc["estimates"] = opt_vector(r.estimates);
  doc["p_scale"] = opt_vector(r.p_scale);

  json summary = json::object();
  summary["moments_over"] = "valid replicates only";
  summary["valid"] = r.valid;
  summary["degenerate"] = r.degenerate;
  summary["mean"] = finite_or_null(r.mean);
  summary["bias_vs_truth"] = finite_or_null(r.bias);
  summary["variance"] = finite_or_null(r.variance);
  summary["mse"] = finite_or_null(r.mse);
  summary["p_mse"] = opt(r.p_mse);
  summary["p_excluded"] = r.p_excluded;
  summary["kappa_variance"] = opt(r.kappa_variance);
  doc["summary"] = summary;

  json clt = json::object();
  clt["standardized"] = r.standardized;
  clt["target_mean"] = opt(r.clt_target_mean);
  clt["ks_statistic"] = r.ks ? json(r.ks->statistic) : json(nullptr);
  clt["ks_p_value"] = r.ks ? json(r.ks->p_value) : json(nullptr);
  doc["clt"] = clt;

  // Deterministic facts only, so identical runs give identical files.
  doc["runtime"] = {
      {"generator", "std::mt19937_64 seeded with splitmix64(seed)"},
      {"uniform", "((bits >> 11) + 0.5) * 2^-53"},
      {"replicate_seed", "splitmix64(base_seed + (r + 1) * 0x9E3779B97F4A7C15)"},
      {"summation", "fixed-order pairwise"}};
  return doc;
}

ExperimentReport report_from_json(const json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kReportSchema) {
      throw Error(Errc::parse, "unsupported report schema");
    }
    const json& cfg = doc.at("config");
    const json& dist = cfg.at("distribution");
    const double beta =
        dist.at("beta").is_null() ? kInfiniteBeta : dist.at("beta").get<double>();
    ExperimentConfig c{
        .dist = HallDistribution::make(dist.at("c1").get<double>(),
                                       dist.at("c2").get<double>(),
                                       dist.at("alpha").get<double>(), beta),
        .n_obs = cfg.at("n_obs").get<std::size_t>(),
        .method = parse_method(cfg.at("method").get<std::string>()),
        .tuning = tuning_from_json(cfg.at("tuning")),
        .rule = cfg.at("tuning_rule").get<std::string>() == "explicit"
                    ? TuningRule::explicit_value
                    : TuningRule::optimal_from_theory,
        .replicates = cfg.at("replicates").get<std::size_t>(),
        .base_seed = cfg.at("base_seed").get<std::uint64_t>(),
        .clt_mean = opt_from(cfg.at("clt_mean")),
    };
    ExperimentReport r{c, tuning_from_json(doc.at("resolved_tuning"))};
    r.truth_native = doc.at("truth").at("native").get<double>();
    r.truth_p = doc.at("truth").at("p").get<double>();
    r.estimates = opt_vector_from(doc.at("estimates"));
    r.p_scale = opt_vector_from(doc.at("p_scale"));

    const json& s = doc.at("summary");
    r.valid = s.at("valid").get<std::size_t>();
    r.degenerate = s.at("degenerate").get<std::size_t>();
    r.mean = finite_from(s.at("mean"));
    r.bias = finite_from(s.at("bias_vs_truth"));
    r.variance = finite_from(s.at("variance"));
    r.mse = finite_from(s.at("mse"));
    r.p_mse = opt_from(s.at("p_mse"));
    r.p_excluded = s.at("p_excluded").get<std::size_t>();
    r.kappa_variance = opt_from(s.at("kappa_variance"));

    const json& clt = doc.at("clt");
    r.standardized = clt.at("standardized").get<std::vector<double>>();
    r.clt_target_mean = opt_from(clt.at("target_mean"));
    if (!clt.at("ks_statistic").is_null()) {
      r.ks = KsResult{clt.at("ks_statistic").get<double>(),
                      clt.at("ks_p_value").get<double>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("malformed report: ") + e.what());
  }
}

std::string serialize_report(const ExperimentReport& report) {
  return dump_json(report_to_json(report));
}

ExperimentReport parse_report(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("invalid JSON: ") + e.what());
  }
  return report_from_json(doc);
}

}  // namespace tailix
