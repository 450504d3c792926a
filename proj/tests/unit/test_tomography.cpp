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
#include <set>

#include "qsky/tomography.hpp"

namespace qsky {
namespace {

Eigen::MatrixXcd random_density(int dim, int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd g(dim, rank);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(n(rng), n(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

TEST(ProjectorSet, SizesAndGroups) {
  const ProjectorSet three = build_projector_set(3);
  EXPECT_EQ(three.size(), 540u);
  EXPECT_EQ(three.dim(), 12);
  EXPECT_EQ(three.groups.size(), 63u);
  EXPECT_EQ(std::count(three.group_complete.begin(), three.group_complete.end(), true), 9);
  const ProjectorSet two = build_projector_set(2);
  EXPECT_EQ(two.size(), 216u);
  EXPECT_THROW(build_projector_set(4), RangeError);
}

TEST(ProjectorSet, RankOneUnitTraceProjectors) {
  const ProjectorSet set = build_projector_set(3);
  std::set<std::string> labels;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const Eigen::MatrixXcd p = set.projector(k);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
    EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
    labels.insert(set.settings[k].label);
  }
  EXPECT_EQ(labels.size(), set.size());
}

TEST(ProjectorSet, CompleteGroupsResolveIdentity) {
  const ProjectorSet set = build_projector_set(3);
  for (std::size_t g = 0; g < set.groups.size(); ++g) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(12, 12);
    for (std::size_t k : set.groups[g]) sum += set.projector(k);
    const double dev = (sum - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff();
    if (set.group_complete[g]) EXPECT_LT(dev, 1e-12);
    else EXPECT_GT(dev, 0.1);
    // Members of a group are mutually orthogonal.
    for (std::size_t a : set.groups[g])
      for (std::size_t b : set.groups[g])
        if (a != b) EXPECT_LT(std::abs(set.kets.col(a).dot(set.kets.col(b))), 1e-12);
  }
}

TEST(ForwardModel, MaximallyMixedAndMatchedProjector) {
  const ProjectorSet set = build_projector_set(3);
  const MeasurementRecord flat = forward_model(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(12, 12) / 12.0), set);
  for (double p : flat.values) EXPECT_NEAR(p, 1.0 / 12.0, 1e-12);
  const Eigen::VectorXcd v = set.kets.col(123);
  const MeasurementRecord m = forward_model(Eigen::MatrixXcd(v * v.adjoint()), set);
  EXPECT_NEAR(m.values[123], 1.0, 1e-12);
  EXPECT_THROW(forward_model(Eigen::MatrixXcd::Identity(8, 8), set), DimensionMismatchError);
}

TEST(ForwardModel, LinearInRho) {
  const ProjectorSet set = build_projector_set(2);
  const Eigen::MatrixXcd a = random_density(8, 2, 1), b = random_density(8, 8, 2);
  const auto pa = forward_model(a, set), pb = forward_model(b, set), pm = forward_model(Eigen::MatrixXcd(0.3 * a + 0.7 * b), set);
  for (std::size_t k = 0; k < set.size(); ++k) EXPECT_NEAR(pm.values[k], 0.3 * pa.values[k] + 0.7 * pb.values[k], 1e-12);
}

TEST(SimulateCounts, DeterministicAndUnbiased) {
  const ProjectorSet set = build_projector_set(3);
  const MeasurementRecord p = forward_model(make_skyrmion_state(0, -2, -4), set);
  const MeasurementRecord a = simulate_counts(p, 10000, 42), b = simulate_counts(p, 10000, 42);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, simulate_counts(p, 10000, 43).values);
  double expected = 0.0, observed = 0.0;
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    expected += 10000 * p.values[k];
    observed += a.values[k];
    EXPECT_EQ(a.values[k], std::floor(a.values[k]));
  }
  EXPECT_LT(std::abs(observed - expected), 5.0 * std::sqrt(expected));
  EXPECT_THROW(simulate_counts(p, 0, 1), RangeError);
}

TEST(Cholesky, ParametrisationIsPhysical) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXd x(cholesky::num_params(8));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = n(rng);
  const Eigen::MatrixXcd rho = cholesky::density(x, 8);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(Cholesky, GradientMatchesFiniteDifferences) {
  const ProjectorSet set = build_projector_set(2);
  const MeasurementRecord rec = forward_model(random_density(8, 1, 11), set);
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(rec.values.data(), static_cast<Eigen::Index>(rec.values.size()));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 0.5);
  Eigen::VectorXd x(cholesky::num_params(8));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = n(rng);
  Eigen::VectorXd g;
  cholesky::objective(x, set.kets, p, &g);
  ASSERT_EQ(g.size(), x.size());
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    const double fd = (cholesky::objective(xp, set.kets, p, nullptr) - cholesky::objective(xm, set.kets, p, nullptr)) / (2 * h);
    EXPECT_NEAR(g(i), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Reconstruct, NoiselessPureStateRoundTrip) {
  const ProjectorSet set = build_projector_set(3);
  const OamBasis basis({0, -2, -4});
  const TripartiteState target = make_skyrmion_state(0, -2, -4);
  const ReconstructionResult r = reconstruct(forward_model(target, set), set, 1, basis, target);
  ASSERT_TRUE(r.fidelity_vs_target.has_value());
  EXPECT_GE(*r.fidelity_vs_target, 0.999);
  EXPECT_GT(r.purity, 0.99);
  EXPECT_EQ(r.rho_hat.basis(), basis);
  const Eigen::MatrixXcd rho = r.rho_hat.density_matrix();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(Reconstruct, MaximallyMixedState) {
  const ProjectorSet set = build_projector_set(3);
  const ReconstructionResult r =
      reconstruct(forward_model(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(12, 12) / 12.0), set), set, 2, OamBasis({0, 1, 2}));
  EXPECT_NEAR(r.purity, 1.0 / 12.0, 1e-3);
  EXPECT_FALSE(r.fidelity_vs_target.has_value());
}

TEST(Reconstruct, NoisyCountsAreDeterministic) {
  const ProjectorSet set = build_projector_set(2);
  const TripartiteState t2 = TripartiteState::density(OamBasis({0, -2}), random_density(8, 1, 9));
  const MeasurementRecord counts = simulate_counts(forward_model(t2, set), 10000, 7);
  ReconstructionOptions opt;
  opt.max_iterations = 300;
  const ReconstructionResult a = reconstruct(counts, set, 7, t2.basis(), t2, opt);
  const ReconstructionResult b = reconstruct(counts, set, 7, t2.basis(), t2, opt);
  EXPECT_EQ(a.rho_hat.density_matrix(), b.rho_hat.density_matrix());
  EXPECT_GT(*a.fidelity_vs_target, 0.95);
}

TEST(Metrics, PurityAndFidelity) {
  const Eigen::MatrixXcd a = random_density(12, 3, 21), b = random_density(12, 12, 22);
  // Square roots of rounding-level eigenvalues limit the general formula to ~1e-8.
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-7);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-9);
  const double pa = purity(a);
  EXPECT_GE(pa, 1.0 / 12.0 - 1e-12);
  EXPECT_LE(pa, 1.0 + 1e-12);
  EXPECT_NEAR(purity(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(12, 12) / 12.0)), 1.0 / 12.0, 1e-12);

  const TripartiteState psi = make_skyrmion_state(0, -2, -4);
  for (double p : {0.0, 0.4, 0.9}) {
    const TripartiteState w = mix({{p, psi}, {1 - p, TripartiteState::density(psi.basis(), Eigen::MatrixXcd::Identity(12, 12) / 12.0)}});
    EXPECT_NEAR(fidelity(w, psi), p + (1 - p) / 12.0, 1e-12);
    EXPECT_NEAR(fidelity(w.density_matrix(), psi.density_matrix()), p + (1 - p) / 12.0, 1e-7);
  }
}

}  // namespace
}  // namespace qsky
