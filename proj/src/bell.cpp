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

#include "qsky/bell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsky {

Eigen::Matrix4cd subspace_density(const TripartiteState& state, const BellSubspace& subspace) {
  const auto ki = state.basis().index_of(subspace.ell_i);
  const auto kj = state.basis().index_of(subspace.ell_j);
  if (!ki || !kj) throw RangeError("Bell subspace modes are not in the state basis");
  if (*ki == *kj) throw RangeError("Bell subspace needs two distinct modes");
  const std::array<std::size_t, 2> modes{*ki, *kj};
  std::array<Eigen::Index, 4> idx{};
  for (int a = 0; a < 2; ++a)
    for (int m = 0; m < 2; ++m) idx[2 * a + m] = state.index({Pol(a), subspace.pol_b}, modes[m]);
  const Eigen::MatrixXcd rho = state.density_matrix();
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = rho(idx[r], idx[c]);
  const double tr = out.trace().real();
  if (tr < kMinProbability) throw ZeroProbabilityError("Bell subspace has no overlap with the state");
  return out / tr;
}

Eigen::Vector2cd analyzer_ket(double theta_b) {
  const double h = 1.0 / std::sqrt(2.0);
  return {h, std::polar(h, -theta_b)};
}

namespace {

double joint(const Eigen::Matrix4cd& rho, const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  Eigen::Vector4cd v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return std::max(0.0, v.dot(rho * v).real());
}

std::pair<PolSetting, PolSetting> basis_settings(PolBasis b) {
  switch (b) {
    case PolBasis::kSigma1: return {PolSetting::H, PolSetting::V};
    case PolBasis::kSigma2: return {PolSetting::D, PolSetting::A};
    case PolBasis::kSigma3: return {PolSetting::R, PolSetting::L};
  }
  return {PolSetting::H, PolSetting::V};
}

}  // namespace

const BellCurve& BellCurveSet::curve(PolSetting s) const {
  for (const auto& c : curves)
    if (c.herald == s) return c;
  throw RangeError(std::string("no fringe for setting ") + to_string(s));
}

BellCurveSet bell_curves(const Eigen::Matrix4cd& rho, const std::vector<double>& analyzer_angles,
                         const BellSubspace& subspace) {
  BellCurveSet out{subspace, analyzer_angles, {}};
  for (PolSetting s : kBellHeraldSettings) {
    BellCurve c{s, {}};
    for (double t : analyzer_angles) c.rates.push_back(joint(rho, pol_ket(s), analyzer_ket(t)));
    out.curves.push_back(std::move(c));
  }
  return out;
}

BellCurveSet bell_curves(const TripartiteState& state, const BellSubspace& subspace,
                         const std::vector<double>& analyzer_angles) {
  return bell_curves(subspace_density(state, subspace), analyzer_angles, subspace);
}

double correlation(const Eigen::Matrix4cd& rho, PolBasis a, double theta_b) {
  const auto [plus, minus] = basis_settings(a);
  const Eigen::Vector2cd ap = pol_ket(plus), am = pol_ket(minus);
  const Eigen::Vector2cd bp = analyzer_ket(theta_b), bm = analyzer_ket(theta_b + kPi);
  const double pp = joint(rho, ap, bp), pm = joint(rho, ap, bm), mp = joint(rho, am, bp), mm = joint(rho, am, bm);
  const double total = pp + pm + mp + mm;
  if (total < kMinProbability) throw ZeroProbabilityError("no coincidences for correlation");
  return (pp - pm - mp + mm) / total;
}

namespace {

ChshResult combine(const ChshSettings& settings, const std::array<double, 4>& e) {
  return {std::abs(e[0] - e[1] + e[2] + e[3]), settings, e};
}

// Exact fit f(theta) = A + B cos(theta) + C sin(theta).
Eigen::Vector3d fit_fringe(const std::vector<double>& angles, const std::vector<double>& rates) {
  if (angles.size() < 3) throw PreconditionError("fringe fit needs at least three analyser angles");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(angles.size()), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(angles.size()));
  for (std::size_t k = 0; k < angles.size(); ++k) {
    m.row(static_cast<Eigen::Index>(k)) << 1.0, std::cos(angles[k]), std::sin(angles[k]);
    y(static_cast<Eigen::Index>(k)) = rates[k];
  }
  return m.colPivHouseholderQr().solve(y);
}

}  // namespace

ChshResult chsh_parameter(const Eigen::Matrix4cd& rho, const ChshSettings& settings) {
  return combine(settings, {correlation(rho, settings.a, settings.b), correlation(rho, settings.a, settings.b_prime),
                            correlation(rho, settings.a_prime, settings.b),
                            correlation(rho, settings.a_prime, settings.b_prime)});
}

ChshResult chsh_parameter(const TripartiteState& state, const BellSubspace& subspace, const ChshSettings& settings) {
  return chsh_parameter(subspace_density(state, subspace), settings);
}

ChshResult chsh_parameter(const BellCurveSet& curves, const ChshSettings& settings) {
  auto e = [&](PolBasis basis, double theta) {
    const auto [plus, minus] = basis_settings(basis);
    const Eigen::Vector3d fp = fit_fringe(curves.analyzer_angles, curves.curve(plus).rates);
    const Eigen::Vector3d fm = fit_fringe(curves.analyzer_angles, curves.curve(minus).rates);
    // f(theta + pi) = A - B cos - C sin, so the A terms cancel in the numerator.
    const double denom = fp(0) + fm(0);
    if (denom < kMinProbability) throw ZeroProbabilityError("no coincidences in fringes");
    return ((fp(1) - fm(1)) * std::cos(theta) + (fp(2) - fm(2)) * std::sin(theta)) / denom;
  };
  return combine(settings, {e(settings.a, settings.b), e(settings.a, settings.b_prime), e(settings.a_prime, settings.b),
                            e(settings.a_prime, settings.b_prime)});
}

}  // namespace qsky
