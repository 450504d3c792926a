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

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsky/topology.hpp"

namespace qsky {

const char* to_string(SweepParam p) { return p == SweepParam::kTheta ? "theta" : "alpha"; }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double wrap_to(double x, double period) {
  // into (-period/2, period/2]
  double r = std::fmod(x + 0.5 * period, period);
  if (r <= 0.0) r += period;
  return r - 0.5 * period;
}

double bilinear(const RealRaster<double>& f, double fj, double fi) {
  const Eigen::Index ny = f.rows(), nx = f.cols();
  fj = std::clamp(fj, 0.0, static_cast<double>(ny - 1));
  fi = std::clamp(fi, 0.0, static_cast<double>(nx - 1));
  const auto j0 = std::min<Eigen::Index>(static_cast<Eigen::Index>(fj), ny - 2);
  const auto i0 = std::min<Eigen::Index>(static_cast<Eigen::Index>(fi), nx - 2);
  const double tj = fj - j0, ti = fi - i0;
  return (1 - tj) * ((1 - ti) * f(j0, i0) + ti * f(j0, i0 + 1)) + tj * ((1 - ti) * f(j0 + 1, i0) + ti * f(j0 + 1, i0 + 1));
}

// Winding of arg(s1 + i s2) on a small loop around a core.
int in_plane_winding(const UnitStokesField& f, const Eigen::Vector2d& core, double radius_cells) {
  const GridSpec& g = f.grid;
  const double ci = (core.x() / g.waist + g.half_extent) / (2.0 * g.half_extent) * g.nx - 0.5;
  const double cj = (core.y() / g.waist + g.half_extent) / (2.0 * g.half_extent) * g.ny - 0.5;
  constexpr int kSteps = 32;
  double total = 0.0, prev = 0.0;
  for (int k = 0; k <= kSteps; ++k) {
    const double t = kTwoPi * k / kSteps;
    const double fi = ci + radius_cells * std::cos(t), fj = cj + radius_cells * std::sin(t);
    const double phase = std::atan2(bilinear(f.s2, fj, fi), bilinear(f.s1, fj, fi));
    if (k > 0) total += wrap_to(phase - prev, kTwoPi);
    prev = phase;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

struct Particle {
  Eigen::Vector2d pos;
  QuasiparticleCoord coord;
};

std::vector<Particle> measure_particles(const UnitStokesField& field, const SkyrmionDensityField& density,
                                        const QuasiparticleReport& report) {
  const GridSpec& g = field.grid;
  std::vector<Particle> out;
  for (const QuasiparticleRegion& region : report.regions) {
    if (!region.significant) continue;
    int w = in_plane_winding(field, region.core, 3.0);
    if (w == 0) w = static_cast<int>(std::lround(region.charge));
    if (w == 0) w = 1;
    Complex texture{}, orient{};
    for (Eigen::Index j = 0; j < field.s1.rows(); ++j)
      for (Eigen::Index i = 0; i < field.s1.cols(); ++i) {
        if (report.labels(j, i) != region.label) continue;
        const double a = std::abs(density.sigma(j, i));
        const Complex s(field.s1(j, i), field.s2(j, i));
        const double az = std::atan2(g.y(static_cast<int>(j)) - region.centroid.y(),
                                     g.x(static_cast<int>(i)) - region.centroid.x());
        orient += a * s;
        texture += a * s * std::polar(1.0, -w * az);
      }
    Particle p;
    p.pos = region.centroid;
    p.coord.present = true;
    p.coord.r = region.centroid.norm();
    p.coord.phi = std::atan2(region.centroid.y(), region.centroid.x());
    p.coord.spin = -std::arg(texture) / w;
    p.coord.psi_mean = 0.5 * std::arg(orient);
    p.coord.charge = region.charge;
    p.coord.winding = w;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Particle& a, const Particle& b) { return a.coord.phi < b.coord.phi; });
  return out;
}

double min_spacing(const std::vector<Eigen::Vector2d>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::min(best, (pts[a] - pts[b]).norm());
  return best;
}

SweepParam classify_sweep(const std::vector<ProjectionAngles>& sweep) {
  if (sweep.size() < 5) throw PreconditionError("dynamics sweep needs at least 5 samples");
  bool theta_varies = false, alpha_varies = false;
  for (const auto& a : sweep) {
    a.validate();
    theta_varies |= std::abs(a.theta - sweep.front().theta) > 1e-12;
    alpha_varies |= std::abs(a.alpha - sweep.front().alpha) > 1e-12;
  }
  if (theta_varies == alpha_varies) throw PreconditionError("dynamics sweep must vary exactly one of theta, alpha");
  return theta_varies ? SweepParam::kTheta : SweepParam::kAlpha;
}

}  // namespace

double DynamicsTrace::orbit_change(std::size_t track) const {
  if (samples.empty() || track >= num_tracks) return kNaN;
  const auto& a = samples.front().tracks[track];
  const auto& b = samples.back().tracks[track];
  return a.present && b.present ? b.phi - a.phi : kNaN;
}

double DynamicsTrace::spin_change(std::size_t track) const {
  if (samples.empty() || track >= num_tracks) return kNaN;
  const auto& a = samples.front().tracks[track];
  const auto& b = samples.back().tracks[track];
  return a.present && b.present ? b.spin - a.spin : kNaN;
}

std::vector<double> DynamicsTrace::radii(std::size_t track) const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(track < s.tracks.size() && s.tracks[track].present ? s.tracks[track].r : kNaN);
  return out;
}

DynamicsTrace track_dynamics(const TripartiteState& state, const std::vector<ProjectionAngles>& sweep,
                             const GridSpec& grid, const QuasiparticleOptions& options) {
  DynamicsTrace trace;
  trace.sweep_param = classify_sweep(sweep);
  const ModeStack stack = make_mode_stack(state.basis(), grid);

  // Per-track history: last two positions and the last unwrapped coordinates.
  struct History {
    std::vector<Eigen::Vector2d> positions;
    QuasiparticleCoord last;
  };
  std::vector<History> history;

  for (const ProjectionAngles& angles : sweep) {
    const UnitStokesField unit = normalize_stokes(conditional_stokes<double>(state, angles, stack));
    const SkyrmionDensityField density = skyrmion_density(unit);
    const QuasiparticleReport report = locate_quasiparticles(unit, density, options);
    std::vector<Particle> particles = measure_particles(unit, density, report);

    DynamicsSample sample;
    sample.param = trace.sweep_param == SweepParam::kTheta ? angles.theta : angles.alpha;
    sample.angles = angles;
    sample.central_charge = report.central_charge;
    sample.total = report.total;

    std::vector<int> owner(particles.size(), -1);
    if (!history.empty()) {
      std::vector<Eigen::Vector2d> prev_pts, cur_pts;
      for (const auto& h : history) prev_pts.push_back(h.positions.back());
      for (const auto& p : particles) cur_pts.push_back(p.pos);
      const double bound = 0.5 * std::min(min_spacing(prev_pts), min_spacing(cur_pts));

      // Reference point per track; equidistant candidates fall back to
      // constant-velocity extrapolation.
      std::vector<Eigen::Vector2d> ref(history.size());
      for (std::size_t t = 0; t < history.size(); ++t) {
        ref[t] = history[t].positions.back();
        std::vector<double> d;
        for (const auto& p : particles) d.push_back((p.pos - ref[t]).norm());
        std::sort(d.begin(), d.end());
        if (d.size() >= 2 && d[1] - d[0] <= 1e-9 * (1.0 + d[0])) {
          sample.ambiguous = true;
          const auto& pos = history[t].positions;
          if (pos.size() >= 2) ref[t] = 2.0 * pos.back() - pos[pos.size() - 2];
        }
      }
      struct Pair {
        double d;
        std::size_t t, p;
      };
      std::vector<Pair> pairs;
      for (std::size_t t = 0; t < history.size(); ++t)
        for (std::size_t p = 0; p < particles.size(); ++p) {
          const double d = (particles[p].pos - ref[t]).norm();
          if (d <= bound) pairs.push_back({d, t, p});
        }
      std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
      std::vector<bool> track_used(history.size(), false);
      for (const Pair& pr : pairs) {
        if (track_used[pr.t] || owner[pr.p] >= 0) continue;
        track_used[pr.t] = true;
        owner[pr.p] = static_cast<int>(pr.t);
      }
    }
    for (std::size_t p = 0; p < particles.size(); ++p)
      if (owner[p] < 0) {
        owner[p] = static_cast<int>(history.size());
        history.push_back({});
      }

    sample.tracks.assign(history.size(), {});
    for (std::size_t p = 0; p < particles.size(); ++p) {
      History& h = history[static_cast<std::size_t>(owner[p])];
      QuasiparticleCoord c = particles[p].coord;
      if (h.last.present) {
        c.phi = h.last.phi + wrap_to(c.phi - h.last.phi, kTwoPi);
        const double period = kTwoPi / std::abs(c.winding);
        c.spin = h.last.spin + wrap_to(c.spin - h.last.spin, period);
        c.psi_mean = h.last.psi_mean + wrap_to(c.psi_mean - h.last.psi_mean, kPi);
      }
      h.last = c;
      h.positions.push_back(particles[p].pos);
      sample.tracks[static_cast<std::size_t>(owner[p])] = c;
    }
    trace.samples.push_back(std::move(sample));
  }
  trace.num_tracks = history.size();
  for (auto& s : trace.samples) s.tracks.resize(trace.num_tracks);
  return trace;
}

}  // namespace qsky
