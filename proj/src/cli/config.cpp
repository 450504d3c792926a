// Copyright 2026 The qskyrmion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace qsky::cli {

namespace {

using nlohmann::json;

class Context {
 public:
  Context(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& message) const {
    std::string dotted;
    for (const auto& p : path) dotted += (dotted.empty() ? "" : ".") + p;
    throw ConfigError(source_ + ":" + std::to_string(line_of(path)) + ": '" + dotted + "': " + message);
  }

  void check_keys(const json& obj, const std::vector<std::string>& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) {
        auto p = path;
        p.push_back(key);
        fail(p, "unknown key");
      }
    }
  }

  template <typename T>
  T get(const json& v, const std::vector<std::string>& path) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) fail(path, "expected a number");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) fail(path, "expected an integer");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail(path, "expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(path, "expected a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      fail(path, e.what());
    }
  }

  std::vector<double> numbers(const json& v, const std::vector<std::string>& path) const {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) fail(path, "expected a number or an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(get<double>(e, path));
    return out;
  }

 private:
  // Line of the innermost key, found by scanning for the quoted key names in order.
  int line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const auto& key : path) {
      const std::size_t found = text_.find("\"" + key + "\"", pos);
      if (found == std::string::npos) break;
      pos = found;
    }
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  const std::string& text_;
  std::string source_;
};

OamProjection parse_projection_json(const Context& ctx, const json& v, const std::vector<std::string>& path) {
  if (v.is_number_integer()) return {{v.get<int>(), 1.0}};
  if (!v.is_array() || v.empty()) ctx.fail(path, "expected an integer or a non-empty array");
  OamProjection out;
  for (const auto& e : v) {
    if (e.is_number_integer()) {
      out.emplace_back(e.get<int>(), 1.0);
    } else if (e.is_object()) {
      ctx.check_keys(e, path, {"ell", "re", "im"});
      if (!e.contains("ell")) ctx.fail(path, "projection entries need 'ell'");
      const double re = e.contains("re") ? ctx.get<double>(e["re"], path) : 1.0;
      const double im = e.contains("im") ? ctx.get<double>(e["im"], path) : 0.0;
      out.emplace_back(ctx.get<int>(e["ell"], path), Complex(re, im));
    } else {
      ctx.fail(path, "projection entries must be integers or {ell, re, im} objects");
    }
  }
  return out;
}

double normalise_projection(OamProjection& p) {
  double n = 0.0;
  for (const auto& [ell, c] : p) n += std::norm(c);
  if (n <= 0.0) return 0.0;
  for (auto& [ell, c] : p) c /= std::sqrt(n);
  return n;
}

}  // namespace

void apply_config_json(RunConfig& cfg, const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
    throw ConfigError(source + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  const Context ctx(text, source);
  ctx.check_keys(root, {}, {"state", "grid", "angles", "sweep", "analysis", "tomography", "bell", "output_dir", "seed"});

  if (root.contains("state")) {
    const json& s = root["state"];
    ctx.check_keys(s, {"state"}, {"file", "ell_a", "q", "tuning", "ells", "extract"});
    if (s.contains("file")) cfg.state.file = ctx.get<std::string>(s["file"], {"state", "file"});
    if (s.contains("ell_a")) {
      cfg.state.ell_a = parse_projection_json(ctx, s["ell_a"], {"state", "ell_a"});
      if (normalise_projection(cfg.state.ell_a) == 0.0) ctx.fail({"state", "ell_a"}, "projection has zero norm");
    }
    if (s.contains("q")) cfg.state.q = ctx.get<double>(s["q"], {"state", "q"});
    if (s.contains("tuning")) cfg.state.tuning = ctx.get<double>(s["tuning"], {"state", "tuning"});
    if (s.contains("ells")) {
      const json& e = s["ells"];
      if (!e.is_array() || e.size() != 3) ctx.fail({"state", "ells"}, "expected three integers");
      std::vector<int> ells;
      for (const auto& x : e) ells.push_back(ctx.get<int>(x, {"state", "ells"}));
      cfg.state.ells = ells;
    }
    if (s.contains("extract")) cfg.state.extract = ctx.get<std::string>(s["extract"], {"state", "extract"});
  }
  if (root.contains("grid")) {
    const json& g = root["grid"];
    ctx.check_keys(g, {"grid"}, {"n", "nx", "ny", "half_extent", "waist"});
    if (g.contains("n")) cfg.grid.nx = cfg.grid.ny = ctx.get<int>(g["n"], {"grid", "n"});
    if (g.contains("nx")) cfg.grid.nx = ctx.get<int>(g["nx"], {"grid", "nx"});
    if (g.contains("ny")) cfg.grid.ny = ctx.get<int>(g["ny"], {"grid", "ny"});
    if (g.contains("half_extent")) cfg.grid.half_extent = ctx.get<double>(g["half_extent"], {"grid", "half_extent"});
    if (g.contains("waist")) cfg.grid.waist = ctx.get<double>(g["waist"], {"grid", "waist"});
    try {
      cfg.grid.validate();
    } catch (const Error& e) {
      ctx.fail({"grid"}, e.what());
    }
  }
  if (root.contains("angles")) {
    const json& a = root["angles"];
    ctx.check_keys(a, {"angles"}, {"theta", "alpha"});
    if (a.contains("theta")) cfg.angles.theta = ctx.get<double>(a["theta"], {"angles", "theta"});
    if (a.contains("alpha")) cfg.angles.alpha = ctx.get<double>(a["alpha"], {"angles", "alpha"});
    if (!(cfg.angles.theta >= 0.0 && cfg.angles.theta <= kPi)) ctx.fail({"angles", "theta"}, "theta must lie in [0, pi]");
    if (!(cfg.angles.alpha >= 0.0 && cfg.angles.alpha <= kTwoPi)) ctx.fail({"angles", "alpha"}, "alpha must lie in [0, 2pi]");
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    ctx.check_keys(s, {"sweep"}, {"theta", "alpha"});
    if (s.contains("theta")) cfg.theta_samples = ctx.numbers(s["theta"], {"sweep", "theta"});
    if (s.contains("alpha")) cfg.alpha_samples = ctx.numbers(s["alpha"], {"sweep", "alpha"});
    for (double t : cfg.theta_samples)
      if (!(t >= 0.0 && t <= kPi)) ctx.fail({"sweep", "theta"}, "theta samples must lie in [0, pi]");
    for (double a : cfg.alpha_samples)
      if (!(a >= 0.0 && a <= kTwoPi)) ctx.fail({"sweep", "alpha"}, "alpha samples must lie in [0, 2pi]");
  }
  if (root.contains("analysis")) {
    const json& a = root["analysis"];
    ctx.check_keys(a, {"analysis"}, {"central_radius", "stokes_format", "rasters"});
    if (a.contains("central_radius")) cfg.central_radius = ctx.get<double>(a["central_radius"], {"analysis", "central_radius"});
    if (a.contains("stokes_format")) cfg.stokes_format = ctx.get<std::string>(a["stokes_format"], {"analysis", "stokes_format"});
    if (a.contains("rasters")) cfg.rasters = ctx.get<bool>(a["rasters"], {"analysis", "rasters"});
  }
  if (root.contains("tomography")) {
    const json& t = root["tomography"];
    ctx.check_keys(t, {"tomography"}, {"counts_per_setting", "noiseless", "witnesses_only", "rho_file", "target_file"});
    if (t.contains("counts_per_setting"))
      cfg.counts_per_setting = ctx.get<std::int64_t>(t["counts_per_setting"], {"tomography", "counts_per_setting"});
    if (t.contains("noiseless")) cfg.noiseless = ctx.get<bool>(t["noiseless"], {"tomography", "noiseless"});
    if (t.contains("witnesses_only")) cfg.witnesses_only = ctx.get<bool>(t["witnesses_only"], {"tomography", "witnesses_only"});
    if (t.contains("rho_file")) cfg.rho_file = ctx.get<std::string>(t["rho_file"], {"tomography", "rho_file"});
    if (t.contains("target_file")) cfg.target_file = ctx.get<std::string>(t["target_file"], {"tomography", "target_file"});
  }
  if (root.contains("bell")) {
    const json& b = root["bell"];
    ctx.check_keys(b, {"bell"}, {"pol_b", "ell_i", "ell_j", "samples", "werner_p"});
    if (b.contains("pol_b")) cfg.pol_b = ctx.get<std::string>(b["pol_b"], {"bell", "pol_b"});
    if (b.contains("ell_i")) cfg.ell_i = ctx.get<int>(b["ell_i"], {"bell", "ell_i"});
    if (b.contains("ell_j")) cfg.ell_j = ctx.get<int>(b["ell_j"], {"bell", "ell_j"});
    if (b.contains("samples")) cfg.fringe_samples = ctx.get<int>(b["samples"], {"bell", "samples"});
    if (b.contains("werner_p")) cfg.werner_p = ctx.get<double>(b["werner_p"], {"bell", "werner_p"});
  }
  if (root.contains("output_dir")) cfg.output_dir = ctx.get<std::string>(root["output_dir"], {"output_dir"});
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) ctx.fail({"seed"}, "expected a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  if (!std::filesystem::exists(path)) throw MissingInputError("config file '" + path + "' does not exist");
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_json(cfg, ss.str(), path);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) throw ConfigError("empty entry in number list '" + text + "'");
    // Accepts "x", "pi", "kpi", "pi/k", "kpi/m".
    const auto p = tok.find("pi");
    try {
      if (p == std::string::npos) {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
        continue;
      }
      const std::string head = tok.substr(0, p);
      std::string tail = tok.substr(p + 2);
      double v = kPi * (head.empty() ? 1.0 : head == "-" ? -1.0 : std::stod(head));
      if (!tail.empty()) {
        if (tail[0] != '/') throw std::invalid_argument(tok);
        v /= std::stod(tail.substr(1));
      }
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse number '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

OamProjection parse_projection(const std::string& text) {
  OamProjection out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      const auto colon = tok.find(':');
      const int ell = std::stoi(tok.substr(0, colon));
      const double amp = colon == std::string::npos ? 1.0 : std::stod(tok.substr(colon + 1));
      out.emplace_back(ell, amp);
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse projection entry '" + tok + "'");
    }
  }
  if (out.empty() || normalise_projection(out) == 0.0) throw ConfigError("projection '" + text + "' is empty");
  return out;
}

void validate(const RunConfig& cfg) {
  try {
    cfg.grid.validate();
    cfg.angles.validate();
    QPlateParams{cfg.state.q, cfg.state.tuning}.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (double t : cfg.theta_samples)
    if (!(t >= 0.0 && t <= kPi)) throw ConfigError("theta samples must lie in [0, pi]");
  for (double a : cfg.alpha_samples)
    if (!(a >= 0.0 && a <= kTwoPi)) throw ConfigError("alpha samples must lie in [0, 2pi]");
  if (cfg.state.extract != "none" && cfg.state.extract != "ghz" && cfg.state.extract != "reference")
    throw ConfigError("state.extract must be none, ghz or reference");
  if (cfg.stokes_format != "csv" && cfg.stokes_format != "binary" && cfg.stokes_format != "both")
    throw ConfigError("stokes_format must be csv, binary or both");
  if (cfg.counts_per_setting < 1) throw ConfigError("counts_per_setting must be at least 1");
  if (cfg.pol_b != "R" && cfg.pol_b != "L") throw ConfigError("bell pol_b must be R or L");
  if (cfg.fringe_samples < 3) throw ConfigError("bell samples must be at least 3");
  if (cfg.werner_p && !(*cfg.werner_p >= 0.0 && *cfg.werner_p <= 1.0)) throw ConfigError("werner_p must lie in [0, 1]");
  if (!std::isnan(cfg.central_radius) && !(cfg.central_radius >= 0.0)) throw ConfigError("central_radius must be non-negative");
}

nlohmann::json canonical_json(const RunConfig& cfg) {
  json ell_a = json::array();
  for (const auto& [ell, c] : cfg.state.ell_a) ell_a.push_back({{"ell", ell}, {"re", c.real()}, {"im", c.imag()}});
  json state = {{"ell_a", ell_a}, {"q", cfg.state.q}, {"tuning", cfg.state.tuning}, {"extract", cfg.state.extract}};
  if (cfg.state.file) state["file"] = *cfg.state.file;
  if (cfg.state.ells) state["ells"] = *cfg.state.ells;
  json j = {
      {"state", state},
      {"grid", {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}, {"half_extent", cfg.grid.half_extent}, {"waist", cfg.grid.waist}}},
      {"angles", {{"theta", cfg.angles.theta}, {"alpha", cfg.angles.alpha}}},
      {"sweep", {{"theta", cfg.theta_samples}, {"alpha", cfg.alpha_samples}}},
      {"analysis", {{"central_radius", std::isnan(cfg.central_radius) ? json(nullptr) : json(cfg.central_radius)},
                    {"stokes_format", cfg.stokes_format}, {"rasters", cfg.rasters}}},
      {"tomography", {{"counts_per_setting", cfg.counts_per_setting}, {"noiseless", cfg.noiseless},
                      {"witnesses_only", cfg.witnesses_only}}},
      {"bell", {{"pol_b", cfg.pol_b}, {"samples", cfg.fringe_samples}}},
      {"seed", cfg.seed},
  };
  if (cfg.rho_file) j["tomography"]["rho_file"] = *cfg.rho_file;
  if (cfg.target_file) j["tomography"]["target_file"] = *cfg.target_file;
  if (cfg.ell_i) j["bell"]["ell_i"] = *cfg.ell_i;
  if (cfg.ell_j) j["bell"]["ell_j"] = *cfg.ell_j;
  if (cfg.werner_p) j["bell"]["werner_p"] = *cfg.werner_p;
  return j;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace qsky::cli
