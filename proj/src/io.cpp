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

#include "qsky/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qsky/serialization.hpp"

namespace qsky::io {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json num_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::filesystem::path sidecar(const std::filesystem::path& path) { return path.string() + ".json"; }

void write_f64_le(std::ostream& out, const RealRaster<double>& r) {
  for (Eigen::Index j = 0; j < r.rows(); ++j)
    for (Eigen::Index i = 0; i < r.cols(); ++i) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(r(j, i));
      unsigned char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
      out.write(reinterpret_cast<const char*>(bytes), 8);
    }
}

RealRaster<double> read_f64_le(std::istream& in, int ny, int nx) {
  RealRaster<double> r(ny, nx);
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      unsigned char bytes[8];
      if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw FormatError("binary Stokes file is truncated");
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
      r(j, i) = std::bit_cast<double>(bits);
    }
  return r;
}

}  // namespace

nlohmann::json to_json(const GridSpec& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"half_extent", g.half_extent}, {"waist", g.waist}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
  GridSpec g;
  try {
    g = {j.at("nx").get<int>(), j.at("ny").get<int>(), j.at("half_extent").get<double>(), j.at("waist").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed grid: ") + e.what());
  }
  g.validate();
  return g;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_stokes_csv(const std::filesystem::path& path, const StokesField& f) {
  std::ofstream out = open_out(path);
  out << "x,y,S0,S1,S2,S3\n";
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i)
      out << num(f.grid.x(i)) << ',' << num(f.grid.y(j)) << ',' << num(f.s0(j, i)) << ',' << num(f.s1(j, i)) << ','
          << num(f.s2(j, i)) << ',' << num(f.s3(j, i)) << '\n';
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

void write_stokes_binary(const std::filesystem::path& path, const StokesField& f) {
  {
    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    for (const auto* plane : {&f.s0, &f.s1, &f.s2, &f.s3}) write_f64_le(out, *plane);
    if (!out) throw FormatError("failed writing '" + path.string() + "'");
  }
  nlohmann::json meta = {
      {"format", "qsky-stokes-f64"},
      {"byte_order", "little-endian"},
      {"dtype", "float64"},
      {"planes", {"S0", "S1", "S2", "S3"}},
      {"layout", "plane-major; each plane row-major with ny rows (y ascending) of nx columns (x ascending)"},
      {"convention", "circular basis; |R> at S3=+1, H at S1=+1, D at S2=+1"},
      {"grid", to_json(f.grid)},
  };
  write_text(sidecar(path), meta.dump(2) + "\n");
}

StokesField read_stokes_binary(const std::filesystem::path& path) {
  const nlohmann::json meta = nlohmann::json::parse(read_text(sidecar(path)));
  if (meta.at("format") != "qsky-stokes-f64") throw FormatError("unexpected Stokes sidecar format");
  const GridSpec g = grid_from_json(meta.at("grid"));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  StokesField f{g, {}, {}, {}, {}};
  f.s0 = read_f64_le(in, g.ny, g.nx);
  f.s1 = read_f64_le(in, g.ny, g.nx);
  f.s2 = read_f64_le(in, g.ny, g.nx);
  f.s3 = read_f64_le(in, g.ny, g.nx);
  return f;
}

void write_pgm(const std::filesystem::path& path, const RealRaster<double>& raster, const GridSpec& grid,
               const std::string& quantity) {
  const double lo = raster.minCoeff(), hi = raster.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  {
    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out << "P5\n" << raster.cols() << ' ' << raster.rows() << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(raster.cols()));
    for (Eigen::Index j = raster.rows(); j-- > 0;) {
      for (Eigen::Index i = 0; i < raster.cols(); ++i)
        row[static_cast<std::size_t>(i)] = static_cast<unsigned char>(std::lround(255.0 * (raster(j, i) - lo) / span));
      out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw FormatError("failed writing '" + path.string() + "'");
  }
  nlohmann::json meta = {{"quantity", quantity}, {"min", lo}, {"max", hi},
                         {"scaling", "linear; 0 -> min, 255 -> max"}, {"row_order", "top row = largest y"},
                         {"grid", to_json(grid)}};
  write_text(sidecar(path), meta.dump(2) + "\n");
}

Graymap read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::string magic;
  int maxval = 0;
  Graymap g;
  in >> magic >> g.width >> g.height >> maxval;
  if (magic != "P5" || maxval != 255 || g.width <= 0 || g.height <= 0) throw FormatError("not an 8-bit P5 graymap");
  in.get();
  g.pixels.resize(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height));
  if (!in.read(reinterpret_cast<char*>(g.pixels.data()), static_cast<std::streamsize>(g.pixels.size())))
    throw FormatError("graymap is truncated");
  return g;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Plateau& p) { return {{"value", p.value}, {"mean", p.mean}, {"samples", p.samples}}; }

nlohmann::json to_json(const SphereMap& map) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < map.n_values.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < map.n_values.cols(); ++j) row.push_back(map.valid(i, j) ? num_or_null(map.n_values(i, j)) : nullptr);
    rows.push_back(std::move(row));
  }
  nlohmann::json ps = nlohmann::json::array();
  for (const Plateau& p : plateaus(map)) ps.push_back(to_json(p));
  return {{"theta_samples", map.theta_samples}, {"alpha_samples", map.alpha_samples}, {"n_values", rows}, {"plateaus", ps}};
}

std::string sphere_csv(const SphereMap& map) {
  std::ostringstream out;
  out << "theta,alpha,n,valid\n";
  for (Eigen::Index i = 0; i < map.n_values.rows(); ++i)
    for (Eigen::Index j = 0; j < map.n_values.cols(); ++j)
      out << num(map.theta_samples[static_cast<std::size_t>(i)]) << ',' << num(map.alpha_samples[static_cast<std::size_t>(j)])
          << ',' << num(map.n_values(i, j)) << ',' << (map.valid(i, j) ? 1 : 0) << '\n';
  return out.str();
}

namespace {

nlohmann::json region_json(const QuasiparticleRegion& r) {
  return {{"label", r.label}, {"core", {r.core.x(), r.core.y()}}, {"centroid", {r.centroid.x(), r.centroid.y()}},
          {"charge", r.charge}, {"area", r.area}, {"significant", r.significant}};
}

}  // namespace

nlohmann::json to_json(const QuasiparticleReport& report) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& r : report.regions) regions.push_back(region_json(r));
  return {{"count", report.count},
          {"central_charge", report.central_charge},
          {"central", report.central ? region_json(*report.central) : nlohmann::json(nullptr)},
          {"total", report.total},
          {"core_direction", {report.core_direction.x(), report.core_direction.y(), report.core_direction.z()}},
          {"regions", regions}};
}

nlohmann::json to_json(const DynamicsTrace& trace) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : trace.samples) {
    nlohmann::json tracks = nlohmann::json::array();
    for (const auto& c : s.tracks) {
      if (!c.present) {
        tracks.push_back(nullptr);
        continue;
      }
      tracks.push_back({{"r", c.r}, {"phi", c.phi}, {"spin", c.spin}, {"psi_mean", c.psi_mean}, {"charge", c.charge}, {"winding", c.winding}});
    }
    samples.push_back({{"param", s.param}, {"theta", s.angles.theta}, {"alpha", s.angles.alpha},
                       {"central_charge", s.central_charge}, {"total", s.total}, {"ambiguous", s.ambiguous}, {"tracks", tracks}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (std::size_t t = 0; t < trace.num_tracks; ++t)
    summary.push_back({{"track", t}, {"orbit_change", num_or_null(trace.orbit_change(t))}, {"spin_change", num_or_null(trace.spin_change(t))}});
  return {{"sweep_param", to_string(trace.sweep_param)}, {"num_tracks", trace.num_tracks}, {"samples", samples}, {"summary", summary}};
}

std::string dynamics_csv(const DynamicsTrace& trace) {
  std::ostringstream out;
  out << "sample," << to_string(trace.sweep_param) << ",track,r,phi,spin,psi_mean,charge,ambiguous\n";
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const auto& s = trace.samples[k];
    for (std::size_t t = 0; t < s.tracks.size(); ++t) {
      const auto& c = s.tracks[t];
      if (!c.present) continue;
      out << k << ',' << num(s.param) << ',' << t << ',' << num(c.r) << ',' << num(c.phi) << ',' << num(c.spin) << ','
          << num(c.psi_mean) << ',' << num(c.charge) << ',' << (s.ambiguous ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string measurement_csv(const MeasurementRecord& record, const ProjectorSet& set) {
  if (record.values.size() != set.size()) throw DimensionMismatchError("record length does not match projector set");
  std::ostringstream out;
  out << "index,pol_a,pol_b,spatial," << (record.is_counts ? "count" : "probability") << '\n';
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto& s = set.settings[k];
    out << k << ',' << to_string(s.pol_a) << ',' << to_string(s.pol_b) << ",\"" << set.spatial[s.spatial].label << "\","
        << num(record.values[k]) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const ReconstructionResult& r) {
  return {{"rho_hat", qsky::to_json(r.rho_hat)},
          {"residual", r.residual},
          {"gradient_norm", r.gradient_norm},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"purity", r.purity},
          {"fidelity_vs_target", r.fidelity_vs_target ? nlohmann::json(*r.fidelity_vs_target) : nlohmann::json(nullptr)}};
}

std::string fringe_csv(const BellCurveSet& curves) {
  std::ostringstream out;
  out << "setting,theta_b,rate\n";
  for (const auto& c : curves.curves)
    for (std::size_t k = 0; k < curves.analyzer_angles.size(); ++k)
      out << to_string(c.herald) << ',' << num(curves.analyzer_angles[k]) << ',' << num(c.rates[k]) << '\n';
  return out.str();
}

nlohmann::json to_json(const ChshResult& r) {
  auto basis = [](PolBasis b) { return b == PolBasis::kSigma1 ? "sigma1" : b == PolBasis::kSigma2 ? "sigma2" : "sigma3"; };
  return {{"S", r.s},
          {"settings", {{"a", basis(r.settings.a)}, {"a_prime", basis(r.settings.a_prime)}, {"b", r.settings.b}, {"b_prime", r.settings.b_prime}}},
          {"correlations", {{"E_ab", r.correlations[0]}, {"E_ab_prime", r.correlations[1]}, {"E_a_prime_b", r.correlations[2]}, {"E_a_prime_b_prime", r.correlations[3]}}}};
}

}  // namespace qsky::io
