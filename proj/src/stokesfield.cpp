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

#include "qsky/stokesfield.hpp"

#include <algorithm>
#include <queue>

namespace qsky {

ModeStack make_mode_stack(const OamBasis& basis, const GridSpec& grid) {
  ModeStack stack{grid, basis, {}};
  stack.modes.reserve(basis.size());
  for (int ell : basis.ells()) stack.modes.push_back(eval_lg<double>(ell, grid).values);
  return stack;
}

namespace {

struct FieldAccumulator {
  RealRaster<double> s0, s1, s2, s3;

  explicit FieldAccumulator(const GridSpec& g)
      : s0(RealRaster<double>::Zero(g.ny, g.nx)),
        s1(RealRaster<double>::Zero(g.ny, g.nx)),
        s2(RealRaster<double>::Zero(g.ny, g.nx)),
        s3(RealRaster<double>::Zero(g.ny, g.nx)) {}

  // Adds weight * Stokes(E) for the pure photon-B ket `v` over pol-B x OAM-B.
  void add_pure(const Eigen::VectorXcd& v, const ModeStack& stack, double weight) {
    const auto d = static_cast<Eigen::Index>(stack.modes.size());
    ComplexRaster<double> er = ComplexRaster<double>::Zero(stack.grid.ny, stack.grid.nx);
    ComplexRaster<double> el = ComplexRaster<double>::Zero(stack.grid.ny, stack.grid.nx);
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto& mode = stack.modes[static_cast<std::size_t>(k)];
      if (v(k) != Complex{}) er += v(k) * mode;
      if (v(d + k) != Complex{}) el += v(d + k) * mode;
    }
    const RealRaster<double> ir = er.abs2();
    const RealRaster<double> il = el.abs2();
    const ComplexRaster<double> cross = er.conjugate() * el;
    s0 += weight * (ir + il);
    s1 += (2.0 * weight) * cross.real();
    s2 += (2.0 * weight) * cross.imag();
    s3 += weight * (ir - il);
  }

  template <typename Scalar>
  BasicStokesField<Scalar> finish(const GridSpec& grid) const {
    return {grid, s0.cast<Scalar>(), s1.cast<Scalar>(), s2.cast<Scalar>(), s3.cast<Scalar>()};
  }
};

void check_stack(const HeraldedState& state, const ModeStack& stack) {
  if (!(state.basis() == stack.basis)) throw DimensionMismatchError("mode stack basis differs from state basis");
}

}  // namespace

template <typename Scalar>
BasicStokesField<Scalar> stokes_field(const HeraldedState& state, const ModeStack& stack) {
  check_stack(state, stack);
  FieldAccumulator acc(stack.grid);
  if (state.is_pure()) {
    acc.add_pure(state.vector(), stack, 1.0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(state.density_matrix());
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      const double lambda = eig.eigenvalues()(i);
      if (lambda > 1e-15) acc.add_pure(eig.eigenvectors().col(i), stack, lambda);
    }
  }
  return acc.finish<Scalar>(stack.grid);
}

template BasicStokesField<double> stokes_field<double>(const HeraldedState&, const ModeStack&);
template BasicStokesField<float> stokes_field<float>(const HeraldedState&, const ModeStack&);

template <typename Scalar>
BasicStokesField<Scalar> conditional_stokes(const TripartiteState& state, const ProjectionAngles& angles,
                                            const ModeStack& stack) {
  return stokes_field<Scalar>(herald_polarization(state, angles).state, stack);
}

template <typename Scalar>
BasicStokesField<Scalar> conditional_stokes(const TripartiteState& state, const ProjectionAngles& angles,
                                            const GridSpec& grid) {
  const HeraldResult h = herald_polarization(state, angles);
  return stokes_field<Scalar>(h.state, make_mode_stack(state.basis(), grid));
}

template BasicStokesField<double> conditional_stokes<double>(const TripartiteState&, const ProjectionAngles&, const ModeStack&);
template BasicStokesField<float> conditional_stokes<float>(const TripartiteState&, const ProjectionAngles&, const ModeStack&);
template BasicStokesField<double> conditional_stokes<double>(const TripartiteState&, const ProjectionAngles&, const GridSpec&);
template BasicStokesField<float> conditional_stokes<float>(const TripartiteState&, const ProjectionAngles&, const GridSpec&);

Eigen::Vector4d stokes_at(const HeraldedState& state, double x, double y, double waist) {
  const OamBasis& basis = state.basis();
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXcd lg(d);
  for (Eigen::Index k = 0; k < d; ++k) lg(k) = lg_value(basis[static_cast<std::size_t>(k)], x, y, waist);
  // rho_B(r)_{jm} = sum_{kn} sigma[(j,k),(m,n)] LG_k LG_n^*
  const Eigen::MatrixXcd sigma = state.density_matrix();
  Eigen::Matrix2cd rho;
  for (int j = 0; j < 2; ++j)
    for (int m = 0; m < 2; ++m) rho(j, m) = lg.transpose() * sigma.block(j * d, m * d, d, d) * lg.conjugate();
  Eigen::Vector4d s;
  s(0) = (rho(0, 0) + rho(1, 1)).real();
  s(1) = 2.0 * rho(0, 1).real();
  s(2) = -2.0 * rho(0, 1).imag();
  s(3) = (rho(0, 0) - rho(1, 1)).real();
  return s;
}

template <typename Scalar>
BasicUnitStokesField<Scalar> normalize_stokes(const BasicStokesField<Scalar>& field, double intensity_floor) {
  if (!(intensity_floor >= 0.0)) throw RangeError("intensity floor must be non-negative");
  const Eigen::Index ny = field.s0.rows();
  const Eigen::Index nx = field.s0.cols();
  const double threshold = intensity_floor * static_cast<double>(field.s0.maxCoeff());

  BasicUnitStokesField<Scalar> out{field.grid, RealRaster<Scalar>::Zero(ny, nx), RealRaster<Scalar>::Zero(ny, nx),
                                   RealRaster<Scalar>::Zero(ny, nx), MaskRaster::Constant(ny, nx, false)};
  std::queue<std::pair<Eigen::Index, Eigen::Index>> frontier;
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double s0 = field.s0(j, i);
      const double a = field.s1(j, i), b = field.s2(j, i), c = field.s3(j, i);
      const double p = std::sqrt(a * a + b * b + c * c);
      if (!(s0 > 0.0) || s0 < threshold || !(p > 0.0) || !std::isfinite(p)) continue;
      out.s1(j, i) = static_cast<Scalar>(a / p);
      out.s2(j, i) = static_cast<Scalar>(b / p);
      out.s3(j, i) = static_cast<Scalar>(c / p);
      out.mask(j, i) = true;
      frontier.emplace(j, i);
    }
  if (frontier.empty()) throw EmptyFieldError("no pixel above the intensity floor");

  // Breadth-first nearest-neighbour fill of the masked-out pixels.
  MaskRaster filled = out.mask;
  constexpr int kDj[4] = {-1, 1, 0, 0};
  constexpr int kDi[4] = {0, 0, -1, 1};
  while (!frontier.empty()) {
    const auto [j, i] = frontier.front();
    frontier.pop();
    for (int n = 0; n < 4; ++n) {
      const Eigen::Index jj = j + kDj[n], ii = i + kDi[n];
      if (jj < 0 || jj >= ny || ii < 0 || ii >= nx || filled(jj, ii)) continue;
      filled(jj, ii) = true;
      out.s1(jj, ii) = out.s1(j, i);
      out.s2(jj, ii) = out.s2(j, i);
      out.s3(jj, ii) = out.s3(j, i);
      frontier.emplace(jj, ii);
    }
  }
  return out;
}

template BasicUnitStokesField<double> normalize_stokes<double>(const BasicStokesField<double>&, double);
template BasicUnitStokesField<float> normalize_stokes<float>(const BasicStokesField<float>&, double);

template <typename Scalar>
OrientationMap<Scalar> orientation_psi(const BasicStokesField<Scalar>& field) {
  const Eigen::Index ny = field.s0.rows();
  const Eigen::Index nx = field.s0.cols();
  OrientationMap<Scalar> out{RealRaster<Scalar>::Zero(ny, nx), MaskRaster::Constant(ny, nx, false)};
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double a = field.s1(j, i), b = field.s2(j, i);
      if (a == 0.0 && b == 0.0) continue;
      double psi = 0.5 * std::atan2(b, a);
      if (psi <= -0.5 * kPi) psi += kPi;
      out.psi(j, i) = static_cast<Scalar>(psi);
      out.defined(j, i) = true;
    }
  return out;
}

template OrientationMap<double> orientation_psi<double>(const BasicStokesField<double>&);
template OrientationMap<float> orientation_psi<float>(const BasicStokesField<float>&);

}  // namespace qsky
