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

#include <gtest/gtest.h>

#include <random>

#include "qsky/bell.hpp"

namespace qsky {
namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);

Eigen::Matrix4cd ideal_sector() { return subspace_density(make_skyrmion_state(0, -2, -4), {Pol::R, 0, -2}); }

Eigen::Matrix4cd werner(double p) {
  return p * ideal_sector() + (1 - p) * Eigen::Matrix4cd::Identity() / 4.0;
}

std::vector<double> angles(int n) {
  std::vector<double> a(n);
  for (int k = 0; k < n; ++k) a[k] = 2.0 * kPi * k / n;
  return a;
}

TEST(SubspaceDensity, IdealSectorIsMaximallyEntangledPure) {
  const Eigen::Matrix4cd rho = ideal_sector();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-12);
  // Reduced state of photon A is I/2.
  Eigen::Matrix2cd ra;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) ra(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  EXPECT_LT((ra - Eigen::Matrix2cd::Identity() / 2.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SubspaceDensity, Errors) {
  const TripartiteState s = make_skyrmion_state(0, -2, -4);
  EXPECT_THROW(subspace_density(s, {Pol::R, 0, 7}), RangeError);
  EXPECT_THROW(subspace_density(s, {Pol::R, 0, 0}), RangeError);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(12);
  v(0) = 1.0;
  EXPECT_THROW(subspace_density(TripartiteState::pure(s.basis(), v), {Pol::L, 0, -2}), ZeroProbabilityError);
}

TEST(Chsh, IdealSectorReachesTsirelson) {
  EXPECT_NEAR(std::abs(chsh_parameter(ideal_sector()).s), kTsirelson, 1e-6);
  const ChshResult r = chsh_parameter(make_skyrmion_state(0, -2, -4), {Pol::R, 0, -2});
  EXPECT_NEAR(std::abs(r.s), kTsirelson, 1e-6);
  EXPECT_NEAR(r.s, std::abs(r.correlations[0] - r.correlations[1] + r.correlations[2] + r.correlations[3]), 1e-12);
}

TEST(Chsh, WernerScalesLinearly) {
  double prev = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double p = k / 20.0;
    const double s = std::abs(chsh_parameter(werner(p)).s);
    EXPECT_NEAR(s, kTsirelson * p, 1e-6);
    if (k > 0) EXPECT_GT(s, prev);
    prev = s;
  }
}

TEST(Chsh, ProductAndRandomStatesObeyBounds) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  auto ket2 = [&] {
    Eigen::Vector2cd v(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
    return Eigen::Vector2cd(v.normalized());
  };
  for (int t = 0; t < 50; ++t) {
    const Eigen::Vector2cd a = ket2(), b = ket2();
    Eigen::Vector4cd v;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
    EXPECT_LE(std::abs(chsh_parameter(Eigen::Matrix4cd(v * v.adjoint())).s), 2.0 + 1e-12);

    Eigen::Matrix4cd g;
    for (Eigen::Index i = 0; i < 16; ++i) g.data()[i] = Complex(n(rng), n(rng));
    Eigen::Matrix4cd rho = g * g.adjoint();
    rho /= rho.trace().real();
    EXPECT_LE(std::abs(chsh_parameter(rho).s), kTsirelson + 1e-9);
  }
}

TEST(Correlation, PeriodicInAnalyserAngle) {
  const Eigen::Matrix4cd rho = werner(0.7);
  for (double th : {0.1, 1.3, 2.9})
    for (PolBasis b : {PolBasis::kSigma1, PolBasis::kSigma2, PolBasis::kSigma3})
      EXPECT_NEAR(correlation(rho, b, th), correlation(rho, b, th + 2 * kPi), 1e-12);
}

TEST(Fringes, FullVisibilityAndComplementarity) {
  const std::vector<double> th = angles(64);
  const BellCurveSet set = bell_curves(ideal_sector(), th);
  ASSERT_EQ(set.curves.size(), 4u);
  const auto& h = set.curve(PolSetting::H).rates;
  const auto& v = set.curve(PolSetting::V).rates;
  const auto& d = set.curve(PolSetting::D).rates;
  const double hmax = *std::max_element(h.begin(), h.end()), hmin = *std::min_element(h.begin(), h.end());
  EXPECT_GT((hmax - hmin) / (hmax + hmin), 0.99);
  for (std::size_t k = 0; k < th.size(); ++k) EXPECT_NEAR(h[k] + v[k], h[0] + v[0], 1e-12);
  // The diagonal herald is the horizontal fringe displaced by a quarter turn.
  double fwd = 0.0, back = 0.0;
  for (std::size_t k = 0; k < th.size(); ++k) {
    fwd = std::max(fwd, std::abs(d[k] - h[(k + 16) % 64]));
    back = std::max(back, std::abs(d[k] - h[(k + 48) % 64]));
  }
  EXPECT_LT(std::min(fwd, back), 1e-12);
  EXPECT_THROW(set.curve(PolSetting::R), RangeError);
}

TEST(Fringes, FitReproducesDirectChsh) {
  for (double p : {1.0, 0.6}) {
    const BellCurveSet set = bell_curves(werner(p), angles(24));
    EXPECT_NEAR(chsh_parameter(set).s, chsh_parameter(werner(p)).s, 1e-9);
  }
  EXPECT_THROW(chsh_parameter(bell_curves(ideal_sector(), {0.0, 1.0})), PreconditionError);
}

TEST(Fringes, StateOverloadMatchesMatrix) {
  const TripartiteState s = make_skyrmion_state(0, -2, -4);
  const BellCurveSet a = bell_curves(s, {Pol::R, 0, -2}, angles(8));
  const BellCurveSet b = bell_curves(ideal_sector(), angles(8));
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(a.curves[c].rates[k], b.curves[c].rates[k], 1e-12);
}

}  // namespace
}  // namespace qsky
