#include "conelab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "conelab/test_fields.hpp"

namespace conelab {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError("'" + key + "' must be a number");
}

std::vector<double> number_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("'" + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, key));
  return out;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  try {
    domain.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  if (domain.variant == ConeVariant::Quadrant && domain.n != 2) throw ConfigError("the quadrant variant is planar");
  for (const auto& s : suite) {
    try {
      TestFieldSpec::parse(s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("suite: " + std::string(e.what()));
    }
  }
  auto nonempty = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string("sweeps.") + name + " must not be empty");
  };
  nonempty(sweeps.eps, "eps");
  nonempty(sweeps.k, "k");
  nonempty(sweeps.t, "t");
  nonempty(sweeps.p, "p");
  for (double e : sweeps.eps)
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("sweeps.eps values must lie in (0, 1)");
  for (double k : sweeps.k)
    if (!(k >= 1.0)) throw ConfigError("sweeps.k values must be >= 1");
  for (double a : sweeps.alpha)
    if (!(a > 0.0)) throw ConfigError("sweeps.alpha values must be positive");
  for (double t : sweeps.t)
    if (!(t > 0.0)) throw ConfigError("sweeps.t values must be positive");
  for (double p : sweeps.p)
    if (!(p >= 1.0)) throw ConfigError("sweeps.p values must be >= 1");
  for (double v : {tol.hardy, tol.slope, tol.cauchy, tol.roundtrip, tol.drift, tol.reconstruction})
    if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
    cfg.validate();
    return cfg;
  }
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, "", {"domain", "grid", "suite", "sweeps", "output_dir", "tolerances"});

  if (root.contains("domain")) {
    const auto& d = root["domain"];
    check_keys(d, "domain", {"n", "omega", "variant"});
    if (d.contains("variant")) {
      const auto v = d["variant"].get<std::string>();
      if (v == "axisymmetric")
        cfg.domain.variant = ConeVariant::Axisymmetric;
      else if (v == "quadrant")
        cfg.domain = ConeDomain::quadrant();
      else
        throw ConfigError("domain.variant must be 'axisymmetric' or 'quadrant'");
    }
    if (d.contains("n")) {
      if (!d["n"].is_number_integer()) throw ConfigError("domain.n must be an integer");
      cfg.domain.n = d["n"].get<int>();
    }
    if (d.contains("omega")) cfg.domain.half_angle = number(d["omega"], "domain.omega");
  }
  if (root.contains("grid")) {
    const auto& g = root["grid"];
    check_keys(g, "grid", {"q", "r_max", "r_min", "K", "J"});
    if (g.contains("q")) cfg.grid.q = number(g["q"], "grid.q");
    if (g.contains("r_max")) cfg.grid.r_max = number(g["r_max"], "grid.r_max");
    if (g.contains("r_min")) cfg.grid.r_min = number(g["r_min"], "grid.r_min");
    if (g.contains("K")) cfg.grid.K = g["K"].get<int>();
    if (g.contains("J")) cfg.grid.J = g["J"].get<int>();
  }
  if (root.contains("suite")) {
    if (!root["suite"].is_array()) throw ConfigError("'suite' must be a list of field names");
    for (const auto& s : root["suite"]) cfg.suite.push_back(s.get<std::string>());
  }
  if (root.contains("sweeps")) {
    const auto& s = root["sweeps"];
    check_keys(s, "sweeps", {"eps", "k", "alpha", "t", "p"});
    if (s.contains("eps")) cfg.sweeps.eps = number_list(s["eps"], "sweeps.eps");
    if (s.contains("k")) cfg.sweeps.k = number_list(s["k"], "sweeps.k");
    if (s.contains("alpha")) cfg.sweeps.alpha = number_list(s["alpha"], "sweeps.alpha");
    if (s.contains("t")) cfg.sweeps.t = number_list(s["t"], "sweeps.t");
    if (s.contains("p")) cfg.sweeps.p = number_list(s["p"], "sweeps.p");
  }
  if (root.contains("output_dir")) cfg.output_dir = root["output_dir"].get<std::string>();
  if (root.contains("tolerances")) {
    const auto& t = root["tolerances"];
    check_keys(t, "tolerances", {"hardy", "slope", "cauchy", "roundtrip", "drift", "reconstruction"});
    if (t.contains("hardy")) cfg.tol.hardy = number(t["hardy"], "tolerances.hardy");
    if (t.contains("slope")) cfg.tol.slope = number(t["slope"], "tolerances.slope");
    if (t.contains("cauchy")) cfg.tol.cauchy = number(t["cauchy"], "tolerances.cauchy");
    if (t.contains("roundtrip")) cfg.tol.roundtrip = number(t["roundtrip"], "tolerances.roundtrip");
    if (t.contains("drift")) cfg.tol.drift = number(t["drift"], "tolerances.drift");
    if (t.contains("reconstruction"))
      cfg.tol.reconstruction = number(t["reconstruction"], "tolerances.reconstruction");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace conelab
