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

#include "qsky/stokesfield.hpp"

namespace qsky {
namespace {

const GridSpec kSmall{96, 96, 4.0, 1.0};

double wrap_pi(double x) { return std::remainder(x, kPi); }

TEST(ConditionalStokes, SeparableRightCircularIsUniform) {
  const TripartiteState s = TripartiteState::pure(OamBasis({0}), Eigen::Vector4cd(1, 0, 0, 0));
  const StokesField f = conditional_stokes(s, {0.7, 1.0}, kSmall);
  EXPECT_LT((f.s3 / f.s0 - 1.0).abs().maxCoeff(), 1e-12);
  EXPECT_LT(f.s1.abs().maxCoeff(), 1e-300);
}

TEST(ConditionalStokes, OriginPointsNorthForFirstBranch) {
  const HeraldResult h = herald_polarization(make_skyrmion_state(0, -2, -4), {0.0, 0.0});
  const Eigen::Vector4d s = stokes_at(h.state, 0.0, 0.0, 1.0);
  EXPECT_GT(s(0), 0.0);
  EXPECT_NEAR(s(1) / s(0), 0.0, 1e-15);
  EXPECT_NEAR(s(2) / s(0), 0.0, 1e-15);
  EXPECT_NEAR(s(3) / s(0), 1.0, 1e-15);
}

TEST(ConditionalStokes, PointEvaluationMatchesRaster) {
  const TripartiteState st = make_skyrmion_state(0, -3, -6);
  const ProjectionAngles a{1.2, 0.4};
  const StokesField f = conditional_stokes(st, a, kSmall);
  const HeraldResult h = herald_polarization(st, a);
  for (auto [j, i] : {std::pair{10, 20}, {48, 40}, {70, 90}}) {
    const Eigen::Vector4d p = stokes_at(h.state, kSmall.x(i), kSmall.y(j), kSmall.waist);
    EXPECT_NEAR(p(0), f.s0(j, i), 1e-13);
    EXPECT_NEAR(p(1), f.s1(j, i), 1e-13);
    EXPECT_NEAR(p(2), f.s2(j, i), 1e-13);
    EXPECT_NEAR(p(3), f.s3(j, i), 1e-13);
  }
}

TEST(ConditionalStokes, GhzPhaseRotatesTexture) {
  const TripartiteState ghz = extract_ghz(make_skyrmion_state(0, -3, -6));
  const double alpha = 0.9, delta = 0.6;
  const HeraldedState h0 = herald_polarization(ghz, {0.5 * kPi, alpha}).state;
  const HeraldedState h1 = herald_polarization(ghz, {0.5 * kPi, alpha + delta}).state;
  for (double r : {0.4, 1.0, 1.7})
    for (double phi : {0.0, 1.0, 2.5, 4.0}) {
      // Shifting alpha by delta rotates the pattern by delta/6 about the origin.
      const Eigen::Vector4d rotated = stokes_at(h1, r * std::cos(phi - delta / 6), r * std::sin(phi - delta / 6), 1.0);
      const Eigen::Vector4d ref = stokes_at(h0, r * std::cos(phi), r * std::sin(phi), 1.0);
      EXPECT_LT((rotated - ref).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ConditionalStokes, PointwisePurity) {
  const StokesField f = conditional_stokes(make_skyrmion_state(0, -2, -4), {1.0, 2.0}, kSmall);
  const RealRaster<double> pol2 = f.s1.square() + f.s2.square() + f.s3.square();
  EXPECT_LT(((pol2 - f.s0.square()).abs() / f.s0.square().max(1e-300)).maxCoeff(), 1e-9);

  const TripartiteState pure = make_skyrmion_state(0, -2, -4);
  const TripartiteState mixed = mix({{0.6, pure}, {0.4, TripartiteState::density(pure.basis(), Eigen::MatrixXcd::Identity(12, 12) / 12.0)}});
  const StokesField m = conditional_stokes(mixed, {1.0, 2.0}, kSmall);
  EXPECT_TRUE(((m.s1.square() + m.s2.square() + m.s3.square()) <= m.s0.square() * (1 + 1e-12)).all());
}

TEST(ConditionalStokes, LinearInDensityMatrix) {
  const TripartiteState a = make_skyrmion_state(0, -2, -4);
  const TripartiteState b = reorder_basis(build_spin_skyrmion_state({{2, 1.0}}, {1.0, 0.5}), OamBasis({-2, -4, -6, 0}));
  const TripartiteState a4 = reorder_basis(a, OamBasis({-2, -4, -6, 0}));
  const ProjectionAngles angles{0.8, 1.3};
  const double w = 0.35;
  const double pa = herald_polarization(a4, angles).probability, pb = herald_polarization(b, angles).probability;
  const ModeStack stack = make_mode_stack(a4.basis(), kSmall);
  const StokesField fm = conditional_stokes(mix({{w, a4}, {1 - w, b}}), angles, stack);
  const StokesField fa = conditional_stokes(a4, angles, stack), fb = conditional_stokes(b, angles, stack);
  const double ca = w * pa / (w * pa + (1 - w) * pb), cb = 1 - ca;
  EXPECT_LT((fm.s0 - (ca * fa.s0 + cb * fb.s0)).abs().maxCoeff(), 1e-9);
  EXPECT_LT((fm.s1 - (ca * fa.s1 + cb * fb.s1)).abs().maxCoeff(), 1e-9);
  EXPECT_LT((fm.s2 - (ca * fa.s2 + cb * fb.s2)).abs().maxCoeff(), 1e-9);
  EXPECT_LT((fm.s3 - (ca * fa.s3 + cb * fb.s3)).abs().maxCoeff(), 1e-9);
}

TEST(ConditionalStokes, TotalIntensityIsOne) {
  const StokesField f = conditional_stokes(make_skyrmion_state(0, -3, -6), {1.3, 0.2}, GridSpec{});
  EXPECT_NEAR(f.s0.sum() * f.grid.cell_area(), 1.0, 1e-3);
}

TEST(ConditionalStokes, StackMustMatchBasis) {
  const ModeStack stack = make_mode_stack(OamBasis({0, 1}), kSmall);
  EXPECT_THROW(conditional_stokes(make_skyrmion_state(0, -2, -4), {0.0, 0.0}, stack), DimensionMismatchError);
}

TEST(ConditionalStokes, FloatMatchesDouble) {
  const TripartiteState st = make_skyrmion_state(0, -2, -4);
  const auto d = conditional_stokes<double>(st, {0.5, 0.5}, kSmall);
  const auto f = conditional_stokes<float>(st, {0.5, 0.5}, kSmall);
  EXPECT_LT((d.s3.cast<float>() - f.s3).abs().maxCoeff(), 1e-6f);
}

StokesField uniform_s3(int n) {
  const GridSpec g{n, n, 2.0, 1.0};
  return {g, RealRaster<double>::Ones(n, n), RealRaster<double>::Zero(n, n), RealRaster<double>::Zero(n, n),
          RealRaster<double>::Ones(n, n)};
}

TEST(NormalizeStokes, UniformFieldIsFullyMasked) {
  const UnitStokesField u = normalize_stokes(uniform_s3(16));
  EXPECT_EQ(u.coverage(), 1.0);
  EXPECT_TRUE((u.s3 == 1.0).all());
  EXPECT_TRUE((u.s1 == 0.0).all());
}

TEST(NormalizeStokes, VortexCoreMaskedAndFilled) {
  StokesField f = uniform_s3(16);
  f.s0(5, 7) = 0.0;
  f.s3(5, 7) = 0.0;
  f.s1(5, 8) = 1.0;  // neighbour carries a distinct direction (unnormalised)
  const UnitStokesField u = normalize_stokes(f, 1e-6);
  EXPECT_FALSE(u.mask(5, 7));
  EXPECT_EQ(u.mask.count(), 16 * 16 - 1);
  const Eigen::Vector3d filled(u.s1(5, 7), u.s2(5, 7), u.s3(5, 7));
  EXPECT_NEAR(filled.norm(), 1.0, 1e-12);
}

TEST(NormalizeStokes, UnitLengthOnMaskAndCoverage) {
  const StokesField f = conditional_stokes(make_skyrmion_state(0, -2, -4), {0.0, 0.0}, GridSpec{});
  const UnitStokesField u = normalize_stokes(f);
  const RealRaster<double> n = (u.s1.square() + u.s2.square() + u.s3.square()).sqrt();
  EXPECT_LT((n - 1.0).abs().maxCoeff(), 1e-9);
  int inside = 0, kept = 0;
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i)
      if (std::hypot(f.grid.x(i), f.grid.y(j)) < 3.0) {
        ++inside;
        kept += u.mask(j, i);
      }
  EXPECT_GT(kept / static_cast<double>(inside), 0.99);
}

TEST(NormalizeStokes, EmptyFieldAndBadFloor) {
  StokesField f = uniform_s3(16);
  f.s0.setZero();
  EXPECT_THROW(normalize_stokes(f), EmptyFieldError);
  EXPECT_THROW(normalize_stokes(uniform_s3(16), -1.0), RangeError);
}

TEST(OrientationPsi, QuadrantsAndUndefinedPoints) {
  StokesField f = uniform_s3(16);
  f.s1(0, 0) = 1.0;
  f.s2(0, 1) = 1.0;
  f.s1(0, 2) = -1.0;
  f.s1(0, 3) = -1.0;
  f.s2(0, 3) = -1e-18;
  const auto o = orientation_psi(f);
  EXPECT_DOUBLE_EQ(o.psi(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(o.psi(0, 1), 0.25 * kPi);
  EXPECT_DOUBLE_EQ(o.psi(0, 2), 0.5 * kPi);
  EXPECT_LE(o.psi(0, 3), 0.5 * kPi);
  EXPECT_GT(o.psi(0, 3), -0.5 * kPi);
  EXPECT_FALSE(o.defined(1, 1));
  EXPECT_EQ(o.psi(1, 1), 0.0);
  EXPECT_TRUE(o.defined(0, 0));
}

TEST(OrientationPsi, GhzQuarterPhaseStepTurnsOrientation) {
  const TripartiteState ghz = extract_ghz(make_skyrmion_state(0, -3, -6));
  const auto a = orientation_psi(conditional_stokes(ghz, {0.5 * kPi, 0.3}, kSmall));
  const auto b = orientation_psi(conditional_stokes(ghz, {0.5 * kPi, 0.3 + 0.5 * kPi}, kSmall));
  // S1 + i S2 ~ exp(-i alpha): psi turns by -pi/4 everywhere it is defined.
  for (int j = 30; j < 66; j += 7)
    for (int i = 30; i < 66; i += 5)
      if (a.defined(j, i)) EXPECT_NEAR(wrap_pi(b.psi(j, i) - a.psi(j, i) + 0.25 * kPi), 0.0, 1e-9);
}

}  // namespace
}  // namespace qsky
