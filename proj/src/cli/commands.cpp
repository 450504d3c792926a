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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "qsky/bell.hpp"
#include "qsky/cli.hpp"
#include "qsky/io.hpp"
#include "qsky/serialization.hpp"
#include "qsky/tomography.hpp"
#include "qsky/topology.hpp"

#ifndef QSKY_VERSION
#define QSKY_VERSION "0.0.0"
#endif

namespace qsky::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutputDirEnv = "QSKY_OUTPUT_DIR";

// Default sweep lists for quasiparticle dynamics.
const std::vector<double> kDefaultAlphaSweep = {0, 0.62, 1.26, 1.88, 3.14, 3.77, 5.03, 6.28};
constexpr double kDefaultAlphaSweepTheta = 1.26;

struct Flags {
  std::string config, output_dir;
  std::uint64_t seed = 0;
  int grid_n = 0;
  double half_extent = 0.0, waist = 0.0;

  std::string state_file, ell_a, ells, extract, out_name = "state.json";
  double q = 0.0, tuning = 0.0;
  std::string theta, alpha;
  double central_radius = 0.0;
  std::string format;
  bool no_rasters = false;
  std::int64_t counts = 0;
  bool noiseless = false, witnesses_only = false;
  std::string rho_file, target_file;
  std::string pol_b;
  int ell_i = 0, ell_j = 0, samples = 0;
  double werner_p = 0.0;
};

struct Context {
  std::string command;
  RunConfig cfg;
  fs::path out_dir;
  std::ostream& out;

  json provenance() const {
    const std::string canonical = canonical_json(cfg).dump();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical)));
    return {{"toolkit", "qsky"}, {"version", QSKY_VERSION}, {"command", command}, {"config_hash", hex}};
  }

  fs::path path(const std::string& name) const { return out_dir / name; }

  void write_json(const std::string& name, json j) const {
    j["provenance"] = provenance();
    io::write_text(path(name), dump_exact(j) + "\n");
  }
};

// --- state resolution ------------------------------------------------------

TripartiteState load_state_file(const std::string& file) {
  if (!fs::exists(file)) throw MissingInputError("state file '" + file + "' does not exist");
  json j;
  try {
    j = json::parse(io::read_text(file));
  } catch (const json::parse_error& e) {
    throw ConfigError("state file '" + file + "' is not valid JSON: " + e.what());
  }
  try {
    return tripartite_from_json(j);
  } catch (const Error& e) {
    throw ConfigError("state file '" + file + "': " + e.what());
  }
}

TripartiteState resolve_state(const RunConfig& cfg) {
  TripartiteState state = [&] {
    if (cfg.state.file) return load_state_file(*cfg.state.file);
    try {
      if (cfg.state.ells) return make_skyrmion_state((*cfg.state.ells)[0], (*cfg.state.ells)[1], (*cfg.state.ells)[2]);
      return build_spin_skyrmion_state(cfg.state.ell_a, {cfg.state.q, cfg.state.tuning});
    } catch (const RangeError& e) {
      throw ConfigError(e.what());
    }
  }();
  if (cfg.state.extract == "ghz") return extract_ghz(state);
  if (cfg.state.extract == "reference") return extract_reference(state);
  return state;
}

json basis_json(const OamBasis& b) { return b.ells(); }

// --- commands --------------------------------------------------------------

int cmd_build_state(const Context& ctx, const TripartiteState& state, const std::string& out_name) {
  json j = to_json(state);
  ctx.write_json(out_name, j);
  ctx.out << "basis " << basis_json(state.basis()).dump() << " -> " << ctx.path(out_name).string() << "\n";
  return kExitSuccess;
}

std::vector<double> linspace(double a, double b, int n, bool endpoint) {
  std::vector<double> v;
  const int div = endpoint ? n - 1 : n;
  for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / div);
  return v;
}

int cmd_sphere(const Context& ctx, const TripartiteState& state) {
  const std::vector<double> thetas = ctx.cfg.theta_samples.empty() ? linspace(0.0, kPi, 9, true) : ctx.cfg.theta_samples;
  const std::vector<double> alphas = ctx.cfg.alpha_samples.empty() ? linspace(0.0, kTwoPi, 8, false) : ctx.cfg.alpha_samples;
  const SphereMap map = sphere_sweep(state, thetas, alphas, ctx.cfg.grid);
  io::write_text(ctx.path("sphere.csv"), io::sphere_csv(map));
  json j = io::to_json(map);
  j["oam_basis"] = basis_json(state.basis());
  ctx.write_json("sphere.json", j);
  ctx.out << "plateaus:";
  for (const Plateau& p : plateaus(map)) ctx.out << ' ' << p.value;
  ctx.out << "\n";
  return kExitSuccess;
}

int cmd_stokes_field(const Context& ctx, const TripartiteState& state) {
  const HeraldResult h = herald_polarization(state, ctx.cfg.angles);
  const StokesField f = stokes_field<double>(h.state, make_mode_stack(state.basis(), ctx.cfg.grid));
  if (ctx.cfg.stokes_format != "binary") io::write_stokes_csv(ctx.path("stokes.csv"), f);
  if (ctx.cfg.stokes_format != "csv") io::write_stokes_binary(ctx.path("stokes.f64"), f);
  if (ctx.cfg.rasters) {
    io::write_pgm(ctx.path("s0.pgm"), f.s0, f.grid, "S0");
    io::write_pgm(ctx.path("psi.pgm"), orientation_psi(f).psi, f.grid, "psi");
  }
  ctx.write_json("stokes_meta.json", {{"theta", ctx.cfg.angles.theta}, {"alpha", ctx.cfg.angles.alpha},
                                      {"heralding_probability", h.probability}, {"grid", io::to_json(f.grid)}});
  ctx.out << "heralding probability " << h.probability << "\n";
  return kExitSuccess;
}

struct Analysed {
  HeraldResult herald;
  StokesField stokes;
  UnitStokesField unit;
  SkyrmionDensityField density;
};

Analysed analyse(const Context& ctx, const TripartiteState& state, const ProjectionAngles& angles) {
  HeraldResult h = herald_polarization(state, angles);
  StokesField f = stokes_field<double>(h.state, make_mode_stack(state.basis(), ctx.cfg.grid));
  UnitStokesField u = normalize_stokes(f);
  SkyrmionDensityField d = skyrmion_density(u);
  return {std::move(h), std::move(f), std::move(u), std::move(d)};
}

int cmd_skyrmion_number(const Context& ctx, const TripartiteState& state) {
  const Analysed a = analyse(ctx, state, ctx.cfg.angles);
  const double n = skyrmion_number(a.density);
  ctx.write_json("skyrmion_number.json", {{"n", n}, {"rounded", std::lround(n)}, {"theta", ctx.cfg.angles.theta},
                                          {"alpha", ctx.cfg.angles.alpha}, {"heralding_probability", a.herald.probability},
                                          {"coverage", a.unit.coverage()}});
  ctx.out << std::setprecision(6) << "n = " << n << "\n";
  return kExitSuccess;
}

QuasiparticleOptions qp_options(const RunConfig& cfg) {
  QuasiparticleOptions o;
  o.central_radius = cfg.central_radius;
  return o;
}

int cmd_quasiparticles(const Context& ctx, const TripartiteState& state) {
  const Analysed a = analyse(ctx, state, ctx.cfg.angles);
  const QuasiparticleReport r = locate_quasiparticles(a.unit, a.density, qp_options(ctx.cfg));
  json j = io::to_json(r);
  j["skyrmion_number"] = skyrmion_number(a.density);
  j["theta"] = ctx.cfg.angles.theta;
  j["alpha"] = ctx.cfg.angles.alpha;
  ctx.write_json("quasiparticles.json", j);
  if (ctx.cfg.rasters) {
    io::write_pgm(ctx.path("sigma.pgm"), a.density.sigma, a.density.grid, "sigma");
    io::write_pgm(ctx.path("labels.pgm"), r.labels.cast<double>(), a.density.grid, "basin label");
  }
  ctx.out << "count " << r.count << ", central " << r.central_charge << ", total " << r.total << "\n";
  return kExitSuccess;
}

std::vector<ProjectionAngles> dynamics_sweep(const RunConfig& cfg) {
  const auto& th = cfg.theta_samples;
  const auto& al = cfg.alpha_samples;
  std::vector<ProjectionAngles> sweep;
  if (th.empty() && al.empty()) {
    for (double a : kDefaultAlphaSweep) sweep.push_back({kDefaultAlphaSweepTheta, a});
  } else if (th.size() > 1 && al.size() > 1) {
    throw ConfigError("dynamics sweep must vary exactly one of theta, alpha");
  } else if (th.size() > 1 || (al.size() <= 1 && !th.empty() && al.empty())) {
    const double a = al.empty() ? cfg.angles.alpha : al.front();
    for (double t : th) sweep.push_back({t, a});
  } else {
    const double t = th.empty() ? cfg.angles.theta : th.front();
    for (double a : al) sweep.push_back({t, a});
  }
  if (sweep.size() < 5) throw ConfigError("dynamics sweep needs at least 5 samples, got " + std::to_string(sweep.size()));
  return sweep;
}

int cmd_dynamics(const Context& ctx, const TripartiteState& state) {
  const std::vector<ProjectionAngles> sweep = dynamics_sweep(ctx.cfg);
  const DynamicsTrace trace = track_dynamics(state, sweep, ctx.cfg.grid, qp_options(ctx.cfg));
  io::write_text(ctx.path("dynamics.csv"), io::dynamics_csv(trace));
  ctx.write_json("dynamics.json", io::to_json(trace));
  if (ctx.cfg.rasters) {
    const ModeStack stack = make_mode_stack(state.basis(), ctx.cfg.grid);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const StokesField f = conditional_stokes<double>(state, sweep[k], stack);
      const SkyrmionDensityField d = skyrmion_density(normalize_stokes(f));
      char name[32];
      std::snprintf(name, sizeof name, "frames/%03zu_", k);
      io::write_pgm(ctx.path(std::string(name) + "sigma.pgm"), d.sigma, f.grid, "sigma");
      io::write_pgm(ctx.path(std::string(name) + "psi.pgm"), orientation_psi(f).psi, f.grid, "psi");
    }
  }
  ctx.out << trace.num_tracks << " tracks over " << trace.samples.size() << " samples (" << to_string(trace.sweep_param) << ")\n";
  for (std::size_t t = 0; t < trace.num_tracks; ++t)
    ctx.out << "  track " << t << ": orbit " << trace.orbit_change(t) << ", spin " << trace.spin_change(t) << "\n";
  return kExitSuccess;
}

int cmd_tomography(const Context& ctx, const std::function<TripartiteState()>& state_fn) {
  const RunConfig& cfg = ctx.cfg;
  std::optional<TripartiteState> target;
  if (cfg.target_file) target = load_state_file(*cfg.target_file);

  if (cfg.witnesses_only) {
    if (!cfg.rho_file) throw ConfigError("--witnesses-only needs --rho");
    const TripartiteState rho = load_state_file(*cfg.rho_file);
    json j = {{"purity", purity(rho)}};
    if (!target) target = state_fn();
    if (target->dim() != rho.dim()) throw ConfigError("target and rho dimensions differ");
    j["fidelity_vs_target"] = fidelity(rho, *target);
    ctx.write_json("witnesses.json", j);
    ctx.out << "purity " << j["purity"].get<double>() << ", fidelity " << j["fidelity_vs_target"].get<double>() << "\n";
    return kExitSuccess;
  }

  const TripartiteState state = state_fn();
  if (!target) target = state;
  const ProjectorSet set = build_projector_set(static_cast<int>(state.basis().size()));
  MeasurementRecord record = forward_model(state, set);
  if (!cfg.noiseless) record = simulate_counts(record, cfg.counts_per_setting, cfg.seed);
  io::write_text(ctx.path("measurements.csv"), io::measurement_csv(record, set));
  const ReconstructionResult r = reconstruct(record, set, cfg.seed, state.basis(), target);
  json j = io::to_json(r);
  j["settings"] = set.size();
  j["noiseless"] = cfg.noiseless;
  if (!cfg.noiseless) j["counts_per_setting"] = cfg.counts_per_setting;
  ctx.write_json("tomography.json", j);
  ctx.out << "fidelity " << *r.fidelity_vs_target << ", purity " << r.purity << ", iterations " << r.iterations
          << (r.converged ? "" : " (iteration cap reached)") << "\n";
  return kExitSuccess;
}

int cmd_bell(const Context& ctx, const TripartiteState& state) {
  const RunConfig& cfg = ctx.cfg;
  BellSubspace sub;
  sub.pol_b = cfg.pol_b == "L" ? Pol::L : Pol::R;
  if (state.basis().size() < 2 && !(cfg.ell_i && cfg.ell_j)) throw ConfigError("bell needs two OAM modes");
  sub.ell_i = cfg.ell_i.value_or(state.basis()[0]);
  sub.ell_j = cfg.ell_j.value_or(state.basis()[1]);
  Eigen::Matrix4cd rho;
  try {
    rho = subspace_density(state, sub);
  } catch (const RangeError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.werner_p) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    const Eigen::Vector4cd psi = es.eigenvectors().col(3);
    const double p = *cfg.werner_p;
    rho = p * psi * psi.adjoint() + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0;
  }
  std::vector<double> angles;
  for (int k = 0; k < cfg.fringe_samples; ++k) angles.push_back(kTwoPi * k / cfg.fringe_samples);
  const BellCurveSet curves = bell_curves(rho, angles, sub);
  const ChshResult direct = chsh_parameter(rho);
  const ChshResult fitted = chsh_parameter(curves);
  io::write_text(ctx.path("bell_fringes.csv"), io::fringe_csv(curves));
  json j = io::to_json(direct);
  j["S_from_fringes"] = fitted.s;
  j["subspace"] = {{"pol_b", cfg.pol_b}, {"ell_i", sub.ell_i}, {"ell_j", sub.ell_j}};
  if (cfg.werner_p) j["werner_p"] = *cfg.werner_p;
  ctx.write_json("chsh.json", j);
  ctx.out << std::setprecision(10) << "S = " << direct.s << "\n";
  return kExitSuccess;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kZeroProbability:
    case ErrorKind::kEmptyState:
    case ErrorKind::kEmptyField:
    case ErrorKind::kInsufficientCoverage:
      return kExitNumericalFailure;
    default:
      return kExitConfigError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qsky: spin-skyrmion entangled photon toolkit", "qsky"};
  app.set_version_flag("--version", QSKY_VERSION);
  app.require_subcommand(1, 1);
  app.fallthrough();
  Flags f;
  auto* o_config = app.add_option("--config", f.config, "JSON run configuration");
  auto* o_out = app.add_option("-o,--output-dir", f.output_dir, "output directory (default $QSKY_OUTPUT_DIR or .)");
  auto* o_seed = app.add_option("--seed", f.seed, "random seed");
  auto* o_grid = app.add_option("--grid-n", f.grid_n, "grid cells per axis");
  auto* o_he = app.add_option("--half-extent", f.half_extent, "grid half extent in waists");
  auto* o_waist = app.add_option("--waist", f.waist, "beam waist");

  std::map<std::string, CLI::Option*> opt;
  auto state_opts = [&](CLI::App* sub) {
    opt[sub->get_name() + "state"] = sub->add_option("--state", f.state_file, "state JSON file");
    opt[sub->get_name() + "q"] = sub->add_option("--q", f.q, "q-plate charge");
    opt[sub->get_name() + "tuning"] = sub->add_option("--tuning", f.tuning, "q-plate tuning");
    opt[sub->get_name() + "ell-a"] = sub->add_option("--ell-a", f.ell_a, "photon-A OAM projection, e.g. 0 or 0,-1");
    opt[sub->get_name() + "ells"] = sub->add_option("--ells", f.ells, "explicit l1,l2,l3 skyrmion state");
    opt[sub->get_name() + "extract"] = sub->add_option("--extract", f.extract, "none, ghz or reference");
  };
  auto angle_opts = [&](CLI::App* sub, const std::string& what) {
    opt[sub->get_name() + "theta"] = sub->add_option("--theta", f.theta, "theta " + what + " (accepts pi, pi/2, ...)");
    opt[sub->get_name() + "alpha"] = sub->add_option("--alpha", f.alpha, "alpha " + what);
  };

  CLI::App* build = app.add_subcommand("build-state", "construct and serialise a tripartite state");
  state_opts(build);
  opt["build-stateout"] = build->add_option("--out", f.out_name, "output file name");
  CLI::App* sphere = app.add_subcommand("sphere", "skyrmion number over the (theta, alpha) sphere");
  state_opts(sphere);
  angle_opts(sphere, "samples");
  CLI::App* stokes = app.add_subcommand("stokes-field", "heralded Stokes field");
  state_opts(stokes);
  angle_opts(stokes, "value");
  opt["stokes-fieldformat"] = stokes->add_option("--format", f.format, "csv, binary or both");
  opt["stokes-fieldno-rasters"] = stokes->add_flag("--no-rasters", f.no_rasters, "skip P5 rasters");
  CLI::App* number = app.add_subcommand("skyrmion-number", "skyrmion number of one heralded texture");
  state_opts(number);
  angle_opts(number, "value");
  CLI::App* qp = app.add_subcommand("quasiparticles", "segment a heralded texture into quasiparticles");
  state_opts(qp);
  angle_opts(qp, "value");
  opt["quasiparticlescentral-radius"] = qp->add_option("--central-radius", f.central_radius, "central structure radius");
  opt["quasiparticlesno-rasters"] = qp->add_flag("--no-rasters", f.no_rasters, "skip P5 rasters");
  CLI::App* dyn = app.add_subcommand("dynamics", "track quasiparticles across an angle sweep");
  state_opts(dyn);
  angle_opts(dyn, "samples; exactly one list may have several entries");
  opt["dynamicscentral-radius"] = dyn->add_option("--central-radius", f.central_radius, "central structure radius");
  opt["dynamicsno-rasters"] = dyn->add_flag("--no-rasters", f.no_rasters, "skip per-frame rasters");
  CLI::App* tomo = app.add_subcommand("tomography", "synthetic tomography round trip");
  state_opts(tomo);
  opt["tomographycounts"] = tomo->add_option("--counts", f.counts, "counts per setting");
  opt["tomographynoiseless"] = tomo->add_flag("--noiseless", f.noiseless, "fit exact probabilities");
  opt["tomographywitnesses-only"] = tomo->add_flag("--witnesses-only", f.witnesses_only, "purity and fidelity of --rho");
  opt["tomographyrho"] = tomo->add_option("--rho", f.rho_file, "density matrix state file");
  opt["tomographytarget"] = tomo->add_option("--target", f.target_file, "target state file for fidelity");
  CLI::App* bell = app.add_subcommand("bell", "CHSH test in a heralded two-qubit sector");
  state_opts(bell);
  opt["bellpol-b"] = bell->add_option("--pol-b", f.pol_b, "photon-B polarization sector, R or L");
  opt["bellell-i"] = bell->add_option("--ell-i", f.ell_i, "first OAM mode");
  opt["bellell-j"] = bell->add_option("--ell-j", f.ell_j, "second OAM mode");
  opt["bellsamples"] = bell->add_option("--samples", f.samples, "analyser angles per fringe");
  opt["bellwerner-p"] = bell->add_option("--werner-p", f.werner_p, "replace the sector state by a Werner mixture");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::CallForVersion&) {
    out << QSKY_VERSION << "\n";
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  auto given = [&](const std::string& key) {
    auto it = opt.find(name + key);
    return it != opt.end() && it->second->count() > 0;
  };

  RunConfig cfg;
  std::optional<TripartiteState> state;
  try {
    if (o_config->count()) apply_config_file(cfg, f.config);
    if (cfg.output_dir.empty())
      if (const char* env = std::getenv(kOutputDirEnv)) cfg.output_dir = env;
    if (o_out->count()) cfg.output_dir = f.output_dir;
    if (cfg.output_dir.empty()) cfg.output_dir = ".";
    if (o_seed->count()) cfg.seed = f.seed;
    if (o_grid->count()) cfg.grid.nx = cfg.grid.ny = f.grid_n;
    if (o_he->count()) cfg.grid.half_extent = f.half_extent;
    if (o_waist->count()) cfg.grid.waist = f.waist;

    if (given("state")) cfg.state.file = f.state_file;
    if (given("q")) cfg.state.q = f.q;
    if (given("tuning")) cfg.state.tuning = f.tuning;
    if (given("ell-a")) cfg.state.ell_a = parse_projection(f.ell_a);
    if (given("ells")) {
      std::vector<int> ells;
      for (double v : parse_number_list(f.ells)) ells.push_back(static_cast<int>(std::lround(v)));
      if (ells.size() != 3) throw ConfigError("--ells needs three integers");
      cfg.state.ells = ells;
    }
    if (given("extract")) cfg.state.extract = f.extract;
    const bool single_angle = name == "stokes-field" || name == "skyrmion-number" || name == "quasiparticles";
    if (given("theta")) {
      const auto v = parse_number_list(f.theta);
      if (single_angle) {
        if (v.size() != 1) throw ConfigError("--theta takes one value for " + name);
        cfg.angles.theta = v.front();
      } else {
        cfg.theta_samples = v;
      }
    }
    if (given("alpha")) {
      const auto v = parse_number_list(f.alpha);
      if (single_angle) {
        if (v.size() != 1) throw ConfigError("--alpha takes one value for " + name);
        cfg.angles.alpha = v.front();
      } else {
        cfg.alpha_samples = v;
      }
    }
    if (given("format")) cfg.stokes_format = f.format;
    if (given("no-rasters")) cfg.rasters = false;
    if (given("central-radius")) cfg.central_radius = f.central_radius;
    if (given("counts")) cfg.counts_per_setting = f.counts;
    if (given("noiseless")) cfg.noiseless = true;
    if (given("witnesses-only")) cfg.witnesses_only = true;
    if (given("rho")) cfg.rho_file = f.rho_file;
    if (given("target")) cfg.target_file = f.target_file;
    if (given("pol-b")) cfg.pol_b = f.pol_b;
    if (given("ell-i")) cfg.ell_i = f.ell_i;
    if (given("ell-j")) cfg.ell_j = f.ell_j;
    if (given("samples")) cfg.fringe_samples = f.samples;
    if (given("werner-p")) cfg.werner_p = f.werner_p;

    validate(cfg);
    if (name == "dynamics") dynamics_sweep(cfg);
    // Everything except a witnesses-only run needs the state up front.
    if (!(name == "tomography" && cfg.witnesses_only)) state = resolve_state(cfg);
    if (name == "tomography" && cfg.witnesses_only && !cfg.rho_file) throw ConfigError("--witnesses-only needs --rho");
    if (name == "tomography" && state && state->basis().size() != 2 && state->basis().size() != 3)
      throw ConfigError("tomography supports 2 or 3 OAM modes, state has " + std::to_string(state->basis().size()));
  } catch (const MissingInputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  }

  const Context ctx{name, cfg, fs::path(cfg.output_dir), out};
  try {
    if (name == "build-state") return cmd_build_state(ctx, *state, f.out_name);
    if (name == "sphere") return cmd_sphere(ctx, *state);
    if (name == "stokes-field") return cmd_stokes_field(ctx, *state);
    if (name == "skyrmion-number") return cmd_skyrmion_number(ctx, *state);
    if (name == "quasiparticles") return cmd_quasiparticles(ctx, *state);
    if (name == "dynamics") return cmd_dynamics(ctx, *state);
    if (name == "tomography") return cmd_tomography(ctx, [&] { return state ? *state : resolve_state(cfg); });
    if (name == "bell") return cmd_bell(ctx, *state);
  } catch (const MissingInputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  err << "error: unknown command " << name << "\n";
  return kExitConfigError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qsky::cli
