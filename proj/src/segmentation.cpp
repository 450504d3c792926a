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
#include <cstdint>
#include <queue>
#include <tuple>

#include "qsky/topology.hpp"

namespace qsky {

namespace {

// Mean direction of s along the grid border, which sets the background.
Eigen::Vector3d border_direction(const UnitStokesField& f) {
  const Eigen::Index ny = f.s1.rows(), nx = f.s1.cols();
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  auto add = [&](Eigen::Index j, Eigen::Index i) { sum += Eigen::Vector3d(f.s1(j, i), f.s2(j, i), f.s3(j, i)); };
  for (Eigen::Index i = 0; i < nx; ++i) {
    add(0, i);
    add(ny - 1, i);
  }
  for (Eigen::Index j = 1; j + 1 < ny; ++j) {
    add(j, 0);
    add(j, nx - 1);
  }
  if (sum.norm() < 1e-6 * static_cast<double>(2 * (nx + ny))) return Eigen::Vector3d(0.0, 0.0, -1.0);
  return sum.normalized();
}

struct Seed {
  Eigen::Index j, i;
  double value;
};

}  // namespace

QuasiparticleReport locate_quasiparticles(const UnitStokesField& field, const SkyrmionDensityField& density,
                                          const QuasiparticleOptions& options) {
  const GridSpec& grid = field.grid;
  if (!(grid == density.grid)) throw DimensionMismatchError("field and density grids differ");
  const Eigen::Index ny = field.s1.rows(), nx = field.s1.cols();
  const double central_radius = std::isnan(options.central_radius) ? grid.waist : options.central_radius;

  QuasiparticleReport report;
  report.core_direction = -border_direction(field);
  const Eigen::Vector3d& core = report.core_direction;
  const RealRaster<double> align = field.s1 * core(0) + field.s2 * core(1) + field.s3 * core(2);
  report.labels = Eigen::ArrayXXi::Zero(ny, nx);
  const double cell = grid.cell_area();

  // Markers: 8-connected components of the pixels aligned with the core
  // polarization; each component's best-aligned pixel is its core.
  std::vector<Seed> seeds;
  std::vector<int> seed_label;
  std::vector<Seed> cores;
  {
    constexpr int kUnvisited = -1;
    Eigen::ArrayXXi comp = Eigen::ArrayXXi::Constant(ny, nx, kUnvisited);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
    for (Eigen::Index j0 = 0; j0 < ny; ++j0)
      for (Eigen::Index i0 = 0; i0 < nx; ++i0) {
        if (comp(j0, i0) != kUnvisited || align(j0, i0) < options.seed_alignment) continue;
        const int label = static_cast<int>(cores.size()) + 1;
        Seed best{j0, i0, align(j0, i0)};
        comp(j0, i0) = label;
        stack.emplace_back(j0, i0);
        while (!stack.empty()) {
          const auto [j, i] = stack.back();
          stack.pop_back();
          seeds.push_back({j, i, align(j, i)});
          seed_label.push_back(label);
          if (align(j, i) > best.value) best = {j, i, align(j, i)};
          for (Eigen::Index dj = -1; dj <= 1; ++dj)
            for (Eigen::Index di = -1; di <= 1; ++di) {
              const Eigen::Index jj = j + dj, ii = i + di;
              if (jj < 0 || jj >= ny || ii < 0 || ii >= nx || comp(jj, ii) != kUnvisited) continue;
              if (align(jj, ii) < options.seed_alignment) continue;
              comp(jj, ii) = label;
              stack.emplace_back(jj, ii);
            }
        }
        cores.push_back(best);
      }
  }
  if (seeds.empty()) {
    report.total = skyrmion_number(density);
    report.central_charge = report.total;
    return report;
  }

  // Priority flood from the markers in order of decreasing alignment; the
  // counter makes equal-priority pixels FIFO so the result is deterministic.
  using Entry = std::tuple<double, std::uint64_t, Eigen::Index, Eigen::Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::uint64_t counter = 0;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    report.labels(seeds[s].j, seeds[s].i) = seed_label[s];
    heap.emplace(-seeds[s].value, counter++, seeds[s].j, seeds[s].i);
  }
  constexpr int kDj[4] = {-1, 1, 0, 0};
  constexpr int kDi[4] = {0, 0, -1, 1};
  while (!heap.empty()) {
    const auto [p, order, j, i] = heap.top();
    heap.pop();
    for (int n = 0; n < 4; ++n) {
      const Eigen::Index jj = j + kDj[n], ii = i + kDi[n];
      if (jj < 0 || jj >= ny || ii < 0 || ii >= nx || report.labels(jj, ii) != 0) continue;
      report.labels(jj, ii) = report.labels(j, i);
      heap.emplace(-align(jj, ii), counter++, jj, ii);
    }
  }

  // Basin integrals.
  const std::size_t nb = cores.size();
  std::vector<double> charge(nb, 0.0), weight(nb, 0.0), cx(nb, 0.0), cy(nb, 0.0);
  std::vector<std::size_t> pixels(nb, 0);
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      const auto b = static_cast<std::size_t>(report.labels(j, i) - 1);
      const double s = density.sigma(j, i);
      charge[b] += s * cell;
      weight[b] += std::abs(s);
      cx[b] += std::abs(s) * grid.x(static_cast<int>(i));
      cy[b] += std::abs(s) * grid.y(static_cast<int>(j));
      ++pixels[b];
    }

  std::vector<QuasiparticleRegion> basins(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    QuasiparticleRegion& r = basins[b];
    r.label = static_cast<int>(b) + 1;
    r.core = {grid.x(static_cast<int>(cores[b].i)), grid.y(static_cast<int>(cores[b].j))};
    r.centroid = weight[b] > 0.0 ? Eigen::Vector2d(cx[b] / weight[b], cy[b] / weight[b]) : r.core;
    r.charge = charge[b];
    r.area = static_cast<double>(pixels[b]) * cell;
    r.significant = std::abs(r.charge) >= options.min_charge;
  }

  std::size_t nearest = 0;
  for (std::size_t b = 1; b < nb; ++b)
    if (basins[b].core.norm() < basins[nearest].core.norm()) nearest = b;
  const bool has_central = basins[nearest].core.norm() <= central_radius;

  for (std::size_t b = 0; b < nb; ++b) {
    report.total += basins[b].charge;
    if (has_central && b == nearest) {
      report.central = basins[b];
      report.central_charge = basins[b].charge;
      continue;
    }
    if (basins[b].significant) ++report.count;
    report.regions.push_back(basins[b]);
  }
  return report;
}

}  // namespace qsky
