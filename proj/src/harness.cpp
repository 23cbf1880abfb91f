#include "speclab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "speclab/concentration.hpp"
#include "speclab/improved_cheeger.hpp"
#include "speclab/isoperimetry.hpp"

namespace speclab {

namespace {

std::string sanitize_label(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

double parse_double_token(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw Error(ErrorCode::ConfigError, "bad number for " + what + ": '" + s + "'");
  return v;
}

long parse_int_token(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw Error(ErrorCode::ConfigError, "bad integer for " + what + ": '" + s + "'");
  return v;
}

void require_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw Error(ErrorCode::ConfigError, "unknown key '" + it.key() + "' in " + where);
  }
}

int get_int(const nlohmann::json& j, const char* key, int def, const std::string& where) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer())
    throw Error(ErrorCode::ConfigError, std::string(key) + " must be an integer in " + where);
  return j.at(key).get<int>();
}

double get_double(const nlohmann::json& j, const char* key, double def, const std::string& where) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number())
    throw Error(ErrorCode::ConfigError, std::string(key) + " must be a number in " + where);
  return j.at(key).get<double>();
}

std::string get_string(const nlohmann::json& j, const char* key, const std::string& def,
                       const std::string& where) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_string())
    throw Error(ErrorCode::ConfigError, std::string(key) + " must be a string in " + where);
  return j.at(key).get<std::string>();
}

ModelConfig model_from_json(const nlohmann::json& jm, const std::string& where) {
  if (jm.is_string()) return parse_model_string(jm.get<std::string>());
  require_keys(jm, {"name", "kind", "a", "dim", "counts", "points_per_unit", "path"}, where);
  ModelConfig mc;
  mc.name = get_string(jm, "name", "", where);
  mc.kind = get_string(jm, "kind", "", where);
  if (mc.kind != "circle" && mc.kind != "torus" && mc.kind != "file")
    throw Error(ErrorCode::ConfigError, "kind must be circle, torus, or file in " + where);
  mc.a = get_double(jm, "a", 0.0, where);
  mc.dim = get_int(jm, "dim", mc.kind == "circle" ? 1 : 0, where);
  if (jm.contains("counts")) {
    if (!jm.at("counts").is_array())
      throw Error(ErrorCode::ConfigError, "counts must be an array in " + where);
    for (const auto& c : jm.at("counts")) {
      if (!c.is_number_integer() || c.get<int>() < 1)
        throw Error(ErrorCode::ConfigError, "counts entries must be positive integers in " + where);
      mc.counts.push_back(c.get<int>());
    }
  }
  mc.points_per_unit = get_double(jm, "points_per_unit", 0.0, where);
  mc.path = get_string(jm, "path", "", where);

  if (mc.kind == "file") {
    if (mc.path.empty()) throw Error(ErrorCode::ConfigError, "file model needs a path in " + where);
  } else {
    if (!(mc.a > 0.0)) throw Error(ErrorCode::ConfigError, "model needs a > 0 in " + where);
    if (mc.kind == "circle" && mc.counts.empty() && !(mc.points_per_unit > 0.0))
      throw Error(ErrorCode::ConfigError, "circle needs counts or points_per_unit in " + where);
    if (mc.kind == "torus" && mc.dim < 1)
      throw Error(ErrorCode::ConfigError, "torus needs dim >= 1 in " + where);
  }
  return mc;
}

std::vector<double> default_a_values() {
  std::vector<double> out;
  for (int i = 1; i <= 9; ++i) out.push_back(i / 10.0);
  return out;
}

std::string scan_label(int dim, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "torus(dim=%d;a=%.6g)", dim, a);
  return buf;
}

// Exact h1 values carried by the model grids: the cycle optimum is an arc of
// floor(n/2) points; the torus optimum is the half cut across the longest
// side, exact when that side has even resolution (the half cut then matches
// the continuum optimum that every discrete cut dominates).
std::optional<double> proven_model_h1(const MeasuredGraph& g, std::string* why) {
  if (!g.model()) {
    *why = "exact h1 needs a model grid";
    return std::nullopt;
  }
  const ModelInfo& info = *g.model();
  if (info.kind == ModelInfo::Kind::Circle) {
    const int n = info.counts[0];
    return 2.0 * n / (info.a * (n / 2));
  }
  const size_t longest = static_cast<size_t>(
      std::max_element(info.sides.begin(), info.sides.end()) - info.sides.begin());
  if (info.counts[longest] % 2 != 0) {
    *why = "longest side needs even resolution for exact h1";
    return std::nullopt;
  }
  return 4.0 / info.sides[longest];
}

double coarea_worst_deviation(const MeasuredGraph& g, int samples, std::uint64_t seed) {
  const int n = g.vertex_count();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    VertexFunction f(static_cast<size_t>(n));
    for (double& x : f) x = uni(rng);
    const double direct = total_variation(g, f);

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (f[static_cast<size_t>(a)] != f[static_cast<size_t>(b)])
        return f[static_cast<size_t>(a)] > f[static_cast<size_t>(b)];
      return a < b;
    });
    std::vector<std::uint8_t> in_set(static_cast<size_t>(n), 0);
    double boundary = 0.0, integral = 0.0;
    int i = 0;
    while (i < n) {
      const double v = f[static_cast<size_t>(order[static_cast<size_t>(i)])];
      for (; i < n && f[static_cast<size_t>(order[static_cast<size_t>(i)])] == v; ++i) {
        const int u = order[static_cast<size_t>(i)];
        in_set[static_cast<size_t>(u)] = 1;
        for (const auto& [nbr, ei] : g.adjacency(u)) {
          const Edge& e = g.edges()[static_cast<size_t>(ei)];
          boundary += in_set[static_cast<size_t>(nbr)] ? -e.p : e.p;
        }
      }
      if (i < n)
        integral += boundary * (v - f[static_cast<size_t>(order[static_cast<size_t>(i)])]);
    }
    worst = std::max(worst, std::abs(integral - direct) / std::max(1.0, std::abs(direct)));
  }
  return worst;
}

struct SuiteBuilder {
  SuiteResult result;

  void add(InequalityReport r) {
    if (r.status == CheckStatus::Fail) ++result.fail_count;
    if (r.status == CheckStatus::Error) ++result.error_count;
    result.reports.push_back(std::move(r));
  }

  static InequalityReport base(const char* name, const std::string& model, int k) {
    InequalityReport r;
    r.name = name;
    r.model = model;
    r.k = k;
    return r;
  }

  void add_skip(const char* name, const std::string& model, int k, const std::string& note) {
    InequalityReport r = base(name, model, k);
    r.asserted = false;
    r.status = CheckStatus::Skip;
    r.note = note;
    add(std::move(r));
  }

  void add_error(const char* name, const std::string& model, int k, const std::exception& e) {
    InequalityReport r = base(name, model, k);
    r.status = CheckStatus::Error;
    const Error* se = dynamic_cast<const Error*>(&e);
    r.note = se ? std::string(error_code_name(se->code())) + ": " + se->what() : e.what();
    add(std::move(r));
  }
};

}  // namespace

std::string ModelConfig::display_name() const {
  if (!name.empty()) return sanitize_label(name);
  char buf[192];
  if (kind == "circle") {
    if (counts.size() == 1)
      std::snprintf(buf, sizeof buf, "circle(a=%.6g;n=%d)", a, counts[0]);
    else
      std::snprintf(buf, sizeof buf, "circle(a=%.6g;ppu=%.6g)", a, points_per_unit);
    return buf;
  }
  if (kind == "torus") {
    std::string cs;
    for (size_t i = 0; i < counts.size(); ++i) {
      if (i) cs += 'x';
      cs += std::to_string(counts[i]);
    }
    if (!counts.empty())
      std::snprintf(buf, sizeof buf, "torus(dim=%d;a=%.6g;counts=%s)", dim, a, cs.c_str());
    else
      std::snprintf(buf, sizeof buf, "torus(dim=%d;a=%.6g;ppu=%.6g)", dim, a, points_per_unit);
    return buf;
  }
  if (kind == "file")
    return "file(" + sanitize_label(std::filesystem::path(path).filename().string()) + ")";
  return sanitize_label(kind.empty() ? std::string("model") : kind);
}

ModelConfig parse_model_string(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::ConfigError, "empty model string");
  const auto colon = text.find(':');
  const std::string head = colon == std::string::npos ? "" : text.substr(0, colon);

  ModelConfig mc;
  if (head == "file") {
    mc.kind = "file";
    mc.path = text.substr(colon + 1);
    if (mc.path.empty()) throw Error(ErrorCode::ConfigError, "file model needs a path");
    return mc;
  }
  if (head != "circle" && head != "torus") {
    mc.kind = "file";
    mc.path = text;
    return mc;
  }

  mc.kind = head;
  const std::string body = text.substr(colon + 1);
  size_t pos = 0;
  while (pos < body.size()) {
    const size_t comma = body.find(',', pos);
    const std::string part =
        body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::ConfigError, "expected key=value in model string: '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);

    if (mc.kind == "circle") {
      if (key == "a")
        mc.a = parse_double_token(value, "a");
      else if (key == "n")
        mc.counts = {static_cast<int>(parse_int_token(value, "n"))};
      else
        throw Error(ErrorCode::ConfigError, "unknown circle key '" + key + "'");
    } else {
      if (key == "dim")
        mc.dim = static_cast<int>(parse_int_token(value, "dim"));
      else if (key == "a")
        mc.a = parse_double_token(value, "a");
      else if (key == "ppu")
        mc.points_per_unit = parse_double_token(value, "ppu");
      else if (key == "counts") {
        size_t p2 = 0;
        while (p2 <= value.size()) {
          const size_t x = value.find('x', p2);
          const std::string tok =
              value.substr(p2, x == std::string::npos ? std::string::npos : x - p2);
          mc.counts.push_back(static_cast<int>(parse_int_token(tok, "counts")));
          if (x == std::string::npos) break;
          p2 = x + 1;
        }
      } else {
        throw Error(ErrorCode::ConfigError, "unknown torus key '" + key + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  if (mc.kind == "circle") {
    mc.dim = 1;
    if (!(mc.a > 0.0) || mc.counts.size() != 1)
      throw Error(ErrorCode::ConfigError, "circle model needs a=<v>,n=<int>");
  } else {
    if (mc.dim < 1 || !(mc.a > 0.0))
      throw Error(ErrorCode::ConfigError, "torus model needs dim=<d>,a=<v>");
    if (mc.counts.empty() && !(mc.points_per_unit > 0.0))
      throw Error(ErrorCode::ConfigError, "torus model needs counts=... or ppu=...");
    if (!mc.counts.empty() && static_cast<int>(mc.counts.size()) != mc.dim)
      throw Error(ErrorCode::ConfigError, "torus counts must list one entry per dimension");
  }
  return mc;
}

MeasuredGraph model_graph(const ModelConfig& mc) {
  if (mc.kind == "circle") {
    int n = 0;
    if (mc.counts.size() == 1)
      n = mc.counts[0];
    else if (mc.points_per_unit > 0.0)
      n = std::max(8, static_cast<int>(std::ceil(mc.points_per_unit * mc.a)));
    else
      throw Error(ErrorCode::ConfigError, "circle model needs a point count");
    return circle_graph(mc.a, n);
  }
  if (mc.kind == "torus") {
    TorusSpec spec;
    spec.dim = mc.dim;
    spec.a = mc.a;
    spec.counts = mc.counts;
    if (mc.points_per_unit > 0.0) spec.points_per_unit = mc.points_per_unit;
    return torus_graph(spec);
  }
  if (mc.kind == "file") return read_graph_file(mc.path);
  throw Error(ErrorCode::ConfigError, "unknown model kind '" + mc.kind + "'");
}

MeasuredGraph graph_from_model_string(const std::string& text) {
  return model_graph(parse_model_string(text));
}

InequalityReport ratio_bound_check(const std::vector<double>& eigenvalues, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (k >= static_cast<int>(eigenvalues.size()))
    throw Error(ErrorCode::KTooLarge, "spectrum does not reach the requested index");
  if (!(eigenvalues[1] > 0.0))
    throw Error(ErrorCode::DegenerateSpectrum, "lambda_1 must be positive");
  InequalityReport r;
  r.name = "eigenvalue-ratio";
  r.k = k;
  r.lhs = eigenvalues[static_cast<size_t>(k)] / eigenvalues[1];
  r.rhs = constants::ratio_bound() * k * k;
  r.constants["ratio_bound"] = constants::ratio_bound();
  r.finalize();
  return r;
}

std::vector<ScanRow> optimality_scan(const std::vector<int>& dims,
                                     const std::vector<double>& a_values) {
  const std::vector<double> grid = a_values.empty() ? default_a_values() : a_values;
  std::vector<ScanRow> rows;
  for (int dim : dims) {
    for (double a : grid) {
      const RatioWitness w = ratio_witness(dim, a);
      ScanRow row;
      row.dim = dim;
      row.a = a;
      row.k = w.k;
      row.ratio = w.ratio;
      row.lower = w.lower_bound;
      row.pass = InequalityReport::passes(w.lower_bound, w.ratio);
      rows.push_back(row);
    }
  }
  return rows;
}

WeylFit weyl_diagnostic(const std::vector<double>& eigenvalues, int dim) {
  WeylFit fit;
  if (dim < 1) {
    fit.note = "dimension must be positive";
    return fit;
  }
  fit.expected = 2.0 / dim;
  const int top = static_cast<int>(eigenvalues.size()) - 1;
  int positive = 0;
  for (int k = 1; k <= top; ++k)
    if (eigenvalues[static_cast<size_t>(k)] > 0.0) ++positive;
  if (positive < 20) {
    fit.note = "needs at least 20 positive eigenvalues";
    return fit;
  }
  const int k_lo = std::max(1, top / 2);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (int k = k_lo; k <= top; ++k) {
    if (!(eigenvalues[static_cast<size_t>(k)] > 0.0)) continue;
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(eigenvalues[static_cast<size_t>(k)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double det = m * sxx - sx * sx;
  if (m < 2 || det <= 0.0) {
    fit.note = "degenerate fit window";
    return fit;
  }
  fit.exponent = (m * sxy - sx * sy) / det;
  fit.coefficient = std::exp((sy - fit.exponent * sx) / m);
  fit.k_lo = k_lo;
  fit.k_hi = top;
  fit.valid = true;
  return fit;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  require_keys(j,
               {"models", "k_max", "kappa", "method", "coarea_samples", "exact_cap", "scan",
                "run_scan", "seed", "out_dir"},
               "config");
  ExperimentConfig cfg;
  if (!j.contains("models") || !j.at("models").is_array() || j.at("models").empty())
    throw Error(ErrorCode::ConfigError, "config needs a nonempty models array");
  int idx = 0;
  for (const auto& jm : j.at("models")) {
    cfg.models.push_back(model_from_json(jm, "models[" + std::to_string(idx) + "]"));
    ++idx;
  }
  cfg.k_max = get_int(j, "k_max", cfg.k_max, "config");
  if (cfg.k_max < 1) throw Error(ErrorCode::ConfigError, "k_max must be at least 1");
  if (j.contains("kappa")) {
    if (!j.at("kappa").is_array() || j.at("kappa").empty())
      throw Error(ErrorCode::ConfigError, "kappa must be a nonempty array");
    cfg.kappa.clear();
    for (const auto& v : j.at("kappa")) {
      if (!v.is_number()) throw Error(ErrorCode::ConfigError, "kappa entries must be numbers");
      cfg.kappa.push_back(v.get<double>());
    }
  }
  for (double kp : cfg.kappa)
    if (!(kp > 0.0 && kp < 1.0))
      throw Error(ErrorCode::ConfigError, "kappa entries must lie strictly between 0 and 1");
  cfg.method = get_string(j, "method", cfg.method, "config");
  try {
    spectrum_method_from_string(cfg.method);
  } catch (const Error&) {
    throw Error(ErrorCode::ConfigError, "method must be dense, iterative, or auto");
  }
  cfg.coarea_samples = get_int(j, "coarea_samples", cfg.coarea_samples, "config");
  if (cfg.coarea_samples < 1)
    throw Error(ErrorCode::ConfigError, "coarea_samples must be at least 1");
  cfg.exact_cap = get_int(j, "exact_cap", cfg.exact_cap, "config");
  if (cfg.exact_cap < 0 || cfg.exact_cap > 12)
    throw Error(ErrorCode::ConfigError, "exact_cap must lie in [0, 12]");
  if (j.contains("scan")) {
    const auto& js = j.at("scan");
    require_keys(js, {"dims", "a_values"}, "scan");
    if (js.contains("dims")) {
      cfg.scan.dims.clear();
      for (const auto& d : js.at("dims")) {
        if (!d.is_number_integer() || d.get<int>() < 2)
          throw Error(ErrorCode::ConfigError, "scan dims must be integers >= 2");
        cfg.scan.dims.push_back(d.get<int>());
      }
    }
    if (js.contains("a_values")) {
      cfg.scan.a_values.clear();
      for (const auto& v : js.at("a_values")) {
        if (!v.is_number() || !(v.get<double>() > 0.0 && v.get<double>() < 1.0))
          throw Error(ErrorCode::ConfigError, "scan a_values must lie strictly between 0 and 1");
        cfg.scan.a_values.push_back(v.get<double>());
      }
    }
  }
  if (j.contains("run_scan")) {
    if (!j.at("run_scan").is_boolean())
      throw Error(ErrorCode::ConfigError, "run_scan must be a boolean");
    cfg.run_scan = j.at("run_scan").get<bool>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw Error(ErrorCode::ConfigError, "seed must be a nonnegative integer");
    const auto s = j.at("seed").get<long long>();
    if (s < 0) throw Error(ErrorCode::ConfigError, "seed must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  cfg.out_dir = get_string(j, "out_dir", cfg.out_dir, "config");
  if (cfg.out_dir.empty()) throw Error(ErrorCode::ConfigError, "out_dir must not be empty");
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, "config parse error in '" + path + "': " + e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json jmodels = nlohmann::json::array();
  for (const ModelConfig& mc : models) {
    nlohmann::json jm{{"kind", mc.kind}};
    if (!mc.name.empty()) jm["name"] = mc.name;
    if (mc.a > 0.0) jm["a"] = mc.a;
    if (mc.dim > 0) jm["dim"] = mc.dim;
    if (!mc.counts.empty()) jm["counts"] = mc.counts;
    if (mc.points_per_unit > 0.0) jm["points_per_unit"] = mc.points_per_unit;
    if (!mc.path.empty()) jm["path"] = mc.path;
    jmodels.push_back(std::move(jm));
  }
  return nlohmann::json{{"models", std::move(jmodels)},
                        {"k_max", k_max},
                        {"kappa", kappa},
                        {"method", method},
                        {"coarea_samples", coarea_samples},
                        {"exact_cap", exact_cap},
                        {"scan", {{"dims", scan.dims}, {"a_values", scan.a_values}}},
                        {"run_scan", run_scan},
                        {"seed", seed},
                        {"out_dir", out_dir}};
}

SuiteResult run_suite(const ExperimentConfig& cfg) {
  SuiteBuilder sb;
  const SpectrumMethod method = spectrum_method_from_string(cfg.method);

  int model_index = 0;
  for (const ModelConfig& mc : cfg.models) {
    const std::string label = mc.display_name();
    const MeasuredGraph g = model_graph(mc);
    const int n = g.vertex_count();
    const bool is_model = g.model().has_value();

    const int K_spec = std::min(cfg.k_max + 1, n - 1);
    int K_goal = K_spec;
    if (is_model) K_goal = std::max(K_spec, std::min(48, n - 1));  // reused by the Weyl fit
    const Spectrum spectrum = compute_spectrum(g, K_goal, method);
    const int K_use = std::min(cfg.k_max, K_spec - 1);

    std::vector<double> exact;
    if (is_model) {
      const ModelInfo& info = *g.model();
      exact = info.kind == ModelInfo::Kind::Circle
                  ? circle_exact_spectrum(info.a, K_use)
                  : torus_exact_spectrum(info.dim, info.a, K_use);
    }

    // --- co-area identity on random functions ---
    {
      InequalityReport r = SuiteBuilder::base("coarea-identity", label, -1);
      try {
        r.lhs = coarea_worst_deviation(g, cfg.coarea_samples, cfg.seed + model_index);
        r.rhs = 1e-10;
        r.details["samples"] = cfg.coarea_samples;
        r.finalize();
        sb.add(std::move(r));
      } catch (const std::exception& e) {
        sb.add_error("coarea-identity", label, -1, e);
      }
    }

    // --- eigenfunction splits ---
    std::vector<VertexFunction> pos_parts(static_cast<size_t>(K_use) + 1);
    for (int k = 1; k <= K_use; ++k) {
      try {
        const auto [pos, neg] =
            eigenfunction_split(g, spectrum.eigenfunctions[static_cast<size_t>(k)],
                                spectrum.eigenvalues[static_cast<size_t>(k)]);
        InequalityReport r = SuiteBuilder::base("eigenfunction-split", label, k);
        r.lhs = std::max(rayleigh_quotient(g, pos), rayleigh_quotient(g, neg));
        r.rhs = spectrum.eigenvalues[static_cast<size_t>(k)];
        r.finalize();
        sb.add(std::move(r));
        pos_parts[static_cast<size_t>(k)] = pos;
      } catch (const std::exception& e) {
        sb.add_error("eigenfunction-split", label, k, e);
      }
    }

    // --- functional inequality + step approximation ---
    for (int k = 1; k <= K_use; ++k) {
      if (pos_parts[static_cast<size_t>(k)].empty()) {
        sb.add_skip("improved-cheeger", label, k, "no eigenfunction split available");
        sb.add_skip("step-approximation", label, k, "no eigenfunction split available");
        continue;
      }
      try {
        const ImprovedCheegerCertificate cert =
            functional_certificate(g, pos_parts[static_cast<size_t>(k)], k, spectrum);
        InequalityReport r = SuiteBuilder::base("improved-cheeger", label, k);
        r.lhs = cert.phi_f;
        r.rhs = cert.rhs;
        r.constants["factor"] = constants::improved_cheeger();
        r.details["intermediate_rhs"] = cert.intermediate_rhs;
        r.details["rayleigh"] = cert.rayleigh;
        r.details["lambda_k"] = cert.lambda_k;
        r.finalize();
        sb.add(std::move(r));

        InequalityReport s = step_error_bound_check(g, pos_parts[static_cast<size_t>(k)],
                                                    cert.step, k, cert.lambda_k);
        s.model = label;
        sb.add(std::move(s));
      } catch (const std::exception& e) {
        sb.add_error("improved-cheeger", label, k, e);
        sb.add_skip("step-approximation", label, k, "certificate construction failed");
      }
    }

    // --- eigenvalue ratio bound (continuum statement: exact spectra assert,
    //     data graphs report) ---
    for (int k = 1; k <= K_use; ++k) {
      try {
        InequalityReport r = ratio_bound_check(is_model ? exact : spectrum.eigenvalues, k);
        r.model = label;
        if (!is_model) {
          r.asserted = false;
          r.note = "reported for data graphs; asserted on exact model spectra";
          r.finalize();
        }
        sb.add(std::move(r));
      } catch (const std::exception& e) {
        sb.add_error("eigenvalue-ratio", label, k, e);
      }
    }

    // --- Buser-type lower bounds (need an exactly known h1) ---
    std::string h1_why = "exact h1 unavailable";
    const std::optional<double> h1 = proven_model_h1(g, &h1_why);
    if (h1) {
      InequalityReport r = buser_ledoux_check(*h1, exact[1]);
      r.model = label;
      sb.add(std::move(r));
      for (int k = 1; k <= K_use; ++k) {
        InequalityReport hr = higher_buser_ledoux_check(*h1, k, exact[static_cast<size_t>(k)]);
        hr.model = label;
        sb.add(std::move(hr));
      }
    } else {
      sb.add_skip("buser-lower", label, 1, h1_why);
      for (int k = 1; k <= K_use; ++k) sb.add_skip("multiway-buser-lower", label, k, h1_why);
    }

    // --- multiway partitions: trend report + functional certificate ---
    std::optional<double> h1_small;
    if (!h1 && n <= 16) h1_small = h1_exact(g).value;
    for (int k = 1; k <= K_use; ++k) {
      try {
        const bool exact_partition = n <= cfg.exact_cap;
        const MultiwayCut cut =
            exact_partition ? hk_bruteforce(g, k) : hk_spectral_heuristic(g, k, spectrum);

        const std::optional<double> h1_for_ratio = h1 ? h1 : h1_small;
        if (h1_for_ratio) {
          InequalityReport r = hk_ratio_check(cut.value, k, *h1_for_ratio);
          r.model = label;
          r.note = exact_partition ? "exact partition" : "heuristic partition";
          sb.add(std::move(r));
        } else {
          sb.add_skip("multiway-ratio", label, k, "no exact h1 available");
        }

        std::vector<std::vector<std::uint8_t>> sets;
        sets.reserve(cut.sets.size());
        for (const CutCertificate& c : cut.sets) sets.push_back(c.members);
        const std::vector<VertexFunction> fns = disjoint_functions_from_partition(g, sets);
        const MultiwayCertificate cert = higher_order_certificate(g, k, k + 1, fns, spectrum);
        InequalityReport r = SuiteBuilder::base("multiway-functional", label, k);
        r.lhs = cert.hk_upper;
        r.rhs = cert.rhs;
        r.constants["factor"] = constants::improved_cheeger();
        r.details["l"] = cert.l;
        r.details["max_rayleigh"] = cert.max_rayleigh;
        r.details["lambda_l"] = cert.lambda_l;
        r.details["empirical_c"] = cert.empirical_c;
        r.details["partition"] = exact_partition ? "exact" : "heuristic";
        r.finalize();
        sb.add(std::move(r));
      } catch (const std::exception& e) {
        sb.add_error("multiway-functional", label, k, e);
      }
    }

    // --- observable diameter ---
    if (g.has_edge_lengths()) {
      for (double kappa : cfg.kappa) {
        try {
          const ObsDiamEstimate obs = obs_diameter_lower(g, kappa);
          for (int k = 1; k <= K_use; ++k) {
            const double lam =
                is_model ? exact[static_cast<size_t>(k)] : spectrum.eigenvalues[static_cast<size_t>(k)];
            InequalityReport r = cheng_dimension_free_check(obs.value, k, kappa, lam);
            r.model = label;
            r.details["witness"] = obs.witness_kind;
            r.details["candidates"] = obs.candidates;
            sb.add(std::move(r));
          }
        } catch (const std::exception& e) {
          sb.add_error("obsdiam-bound", label, -1, e);
        }
      }
    } else {
      sb.add_skip("obsdiam-bound", label, -1, "graph has no edge lengths");
    }

    // --- geometric diameter bound (models only) ---
    if (is_model) {
      const double diam = model_diameter(*g.model());
      for (int k = 1; k <= K_use; ++k) {
        InequalityReport r =
            cheng_classical_check(diam, g.model()->dim, k, exact[static_cast<size_t>(k)]);
        r.model = label;
        sb.add(std::move(r));
      }
    } else {
      sb.add_skip("diameter-bound", label, -1, "needs a model space");
    }

    // --- Weyl growth diagnostic (reported) ---
    if (!is_model) {
      sb.add_skip("weyl-exponent", label, -1, "needs a model dimension");
    } else {
      try {
        const WeylFit fit = weyl_diagnostic(spectrum.eigenvalues, g.model()->dim);
        if (!fit.valid) {
          sb.add_skip("weyl-exponent", label, -1, fit.note);
        } else {
          InequalityReport r = SuiteBuilder::base("weyl-exponent", label, -1);
          r.asserted = false;
          r.lhs = fit.exponent;
          r.rhs = fit.expected;
          r.constants["coefficient"] = fit.coefficient;
          r.details["k_lo"] = fit.k_lo;
          r.details["k_hi"] = fit.k_hi;
          r.finalize();
          sb.add(std::move(r));
        }
      } catch (const std::exception& e) {
        sb.add_error("weyl-exponent", label, -1, e);
      }
    }

    ++model_index;
  }

  if (cfg.run_scan) {
    for (const ScanRow& row : optimality_scan(cfg.scan.dims, cfg.scan.a_values)) {
      InequalityReport r =
          SuiteBuilder::base("ratio-optimality", scan_label(row.dim, row.a), row.k);
      r.lhs = row.lower;
      r.rhs = row.ratio;
      r.finalize();
      sb.add(std::move(r));
    }
  }

  std::string csv = csv_header() + "\n";
  for (const InequalityReport& r : sb.result.reports) csv += to_csv_row(r) + "\n";
  sb.result.csv = std::move(csv);
  return std::move(sb.result);
}

void write_suite_outputs(const SuiteResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (out_dir.empty()) throw Error(ErrorCode::IoError, "output directory must not be empty");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + out_dir + "'");

  {
    std::ofstream out(fs::path(out_dir) / "summary.csv", std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write summary.csv");
    out << result.csv;
    if (!out.good()) throw Error(ErrorCode::IoError, "failed writing summary.csv");
  }

  std::map<std::string, nlohmann::json> by_name;
  for (const InequalityReport& r : result.reports) by_name[r.name].push_back(to_json(r));
  for (const auto& [name, rows] : by_name) {
    std::ofstream out(fs::path(out_dir) / (name + ".json"), std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write report for " + name);
    const nlohmann::json doc{{"check", name}, {"rows", rows}};
    out << doc.dump(2) << "\n";
    if (!out.good()) throw Error(ErrorCode::IoError, "failed writing report for " + name);
  }
}

}  // namespace speclab
