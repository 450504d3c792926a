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

#include "qsky/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <tuple>

namespace qsky {

const char* to_string(PolSetting s) {
  switch (s) {
    case PolSetting::H: return "H";
    case PolSetting::V: return "V";
    case PolSetting::D: return "D";
    case PolSetting::A: return "A";
    case PolSetting::R: return "R";
    case PolSetting::L: return "L";
  }
  return "?";
}

Eigen::Vector2cd pol_ket(PolSetting s) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  switch (s) {
    case PolSetting::H: return {h, h};
    case PolSetting::V: return {h, -h};
    case PolSetting::D: return {h, i * h};
    case PolSetting::A: return {h, -i * h};
    case PolSetting::R: return {1.0, 0.0};
    case PolSetting::L: return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

int pol_basis(PolSetting s) { return static_cast<int>(s) / 2; }

std::vector<SpatialSetting> spatial_settings(int d_sp) {
  if (d_sp < 2 || d_sp > 3) throw RangeError("spatial dimension must be 2 or 3");
  std::vector<SpatialSetting> out;
  for (int k = 0; k < d_sp; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d_sp);
    v(k) = 1.0;
    out.push_back({"m" + std::to_string(k), v, 0});
  }
  static const char* kPhase[] = {"0", "pi/2", "pi", "3pi/2"};
  int pair = 0;
  for (int i = 0; i < d_sp; ++i)
    for (int j = i + 1; j < d_sp; ++j, ++pair)
      for (int p = 0; p < 4; ++p) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d_sp);
        v(i) = 1.0 / std::sqrt(2.0);
        v(j) = std::polar(1.0 / std::sqrt(2.0), 0.5 * kPi * p);
        // phases 0 and pi are one orthogonal pair, pi/2 and 3pi/2 the other
        out.push_back({"m" + std::to_string(i) + "+e^{i" + kPhase[p] + "}m" + std::to_string(j), v, 1 + 2 * pair + p % 2});
      }
  return out;
}

ProjectorSet build_projector_set(int d_sp) {
  ProjectorSet set;
  set.d_sp = d_sp;
  set.spatial = spatial_settings(d_sp);
  const int dim = 4 * d_sp;
  const auto n = static_cast<Eigen::Index>(36 * set.spatial.size());
  set.kets.resize(dim, n);
  std::map<std::tuple<int, int, int>, std::size_t> group_of;
  Eigen::Index k = 0;
  for (PolSetting a : kPolSettings)
    for (PolSetting b : kPolSettings)
      for (std::size_t s = 0; s < set.spatial.size(); ++s, ++k) {
        const Eigen::Vector2cd pa = pol_ket(a), pb = pol_ket(b);
        const Eigen::VectorXcd& ps = set.spatial[s].ket;
        for (int ia = 0; ia < 2; ++ia)
          for (int ib = 0; ib < 2; ++ib) set.kets.col(k).segment((2 * ia + ib) * d_sp, d_sp) = pa(ia) * pb(ib) * ps;
        const auto key = std::make_tuple(pol_basis(a), pol_basis(b), set.spatial[s].group);
        auto [it, inserted] = group_of.try_emplace(key, set.groups.size());
        if (inserted) set.groups.emplace_back();
        set.groups[it->second].push_back(static_cast<std::size_t>(k));
        set.settings.push_back({a, b, s, it->second, std::string(to_string(a)) + "," + to_string(b) + "," + set.spatial[s].label});
      }
  for (const auto& g : set.groups) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t idx : g) sum += set.projector(idx);
    set.group_complete.push_back((sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
  }
  return set;
}

MeasurementRecord forward_model(const Eigen::MatrixXcd& rho, const ProjectorSet& set) {
  if (rho.rows() != set.dim() || rho.cols() != set.dim())
    throw DimensionMismatchError("density matrix dimension " + std::to_string(rho.rows()) + " does not match projector set dimension " + std::to_string(set.dim()));
  MeasurementRecord rec;
  const Eigen::MatrixXcd rv = rho * set.kets;
  rec.values.resize(set.size());
  for (Eigen::Index k = 0; k < set.kets.cols(); ++k)
    rec.values[static_cast<std::size_t>(k)] = std::max(0.0, set.kets.col(k).dot(rv.col(k)).real());
  return rec;
}

MeasurementRecord forward_model(const TripartiteState& rho, const ProjectorSet& set) {
  return forward_model(rho.density_matrix(), set);
}

MeasurementRecord simulate_counts(const MeasurementRecord& probabilities, std::int64_t total_per_setting,
                                  std::uint64_t seed) {
  if (total_per_setting < 1) throw RangeError("total counts per setting must be at least 1");
  if (probabilities.is_counts) throw UnsupportedInputError("record already holds counts");
  std::mt19937_64 rng(seed);
  MeasurementRecord out;
  out.is_counts = true;
  out.total_per_setting = total_per_setting;
  out.seed = seed;
  out.values.reserve(probabilities.values.size());
  for (double p : probabilities.values) {
    const double mean = static_cast<double>(total_per_setting) * p;
    if (mean <= 0.0) {
      out.values.push_back(0.0);
      continue;
    }
    std::poisson_distribution<std::int64_t> poisson(mean);
    out.values.push_back(static_cast<double>(poisson(rng)));
  }
  return out;
}

Eigen::VectorXd estimate_probabilities(const MeasurementRecord& record, const ProjectorSet& set) {
  if (record.values.size() != set.size()) throw DimensionMismatchError("record length does not match projector set");
  Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(record.values.data(), static_cast<Eigen::Index>(record.values.size()));
  if (!record.is_counts) return p;
  double complete_total = 0.0;
  int complete_groups = 0;
  for (std::size_t g = 0; g < set.groups.size(); ++g) {
    if (!set.group_complete[g]) continue;
    double sum = 0.0;
    for (std::size_t k : set.groups[g]) sum += p(static_cast<Eigen::Index>(k));
    complete_total += sum;
    ++complete_groups;
  }
  if (complete_groups == 0 || complete_total <= 0.0) throw ZeroProbabilityError("no counts in complete measurement groups");
  const double mean_total = complete_total / complete_groups;
  Eigen::VectorXd out(p.size());
  for (std::size_t g = 0; g < set.groups.size(); ++g) {
    double norm = mean_total;
    if (set.group_complete[g]) {
      norm = 0.0;
      for (std::size_t k : set.groups[g]) norm += p(static_cast<Eigen::Index>(k));
      if (norm <= 0.0) norm = mean_total;
    }
    for (std::size_t k : set.groups[g]) out(static_cast<Eigen::Index>(k)) = p(static_cast<Eigen::Index>(k)) / norm;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace cholesky {

// Layout: x_0..x_{d-1} (log diagonal), then (Re, Im) of L_ij for i > j in row order.
Eigen::MatrixXcd lower_factor(const Eigen::VectorXd& params, int dim) {
  if (params.size() != num_params(dim)) throw DimensionMismatchError("parameter vector has the wrong length");
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) l(i, i) = std::exp(params(i));
  Eigen::Index k = dim;
  for (int i = 1; i < dim; ++i)
    for (int j = 0; j < i; ++j, k += 2) l(i, j) = Complex(params(k), params(k + 1));
  return l;
}

Eigen::MatrixXcd density(const Eigen::VectorXd& params, int dim) {
  const Eigen::MatrixXcd l = lower_factor(params, dim);
  Eigen::MatrixXcd rho = l * l.adjoint();
  return rho / rho.trace().real();
}

double objective(const Eigen::VectorXd& params, const Eigen::MatrixXcd& kets, const Eigen::VectorXd& p,
                 Eigen::VectorXd* gradient) {
  const int dim = static_cast<int>(kets.rows());
  const Eigen::MatrixXcd l = lower_factor(params, dim);
  const Eigen::MatrixXcd llh = l * l.adjoint();
  const double t = llh.trace().real();
  const Eigen::MatrixXcd rho = llh / t;
  const Eigen::MatrixXcd rv = rho * kets;
  Eigen::VectorXd r(kets.cols());
  for (Eigen::Index k = 0; k < kets.cols(); ++k) r(k) = kets.col(k).dot(rv.col(k)).real() - p(k);
  const double f = r.squaredNorm();
  if (gradient == nullptr) return f;

  // df = Tr(G drho), G = sum_k 2 r_k v_k v_k^dag; through rho = LL^dag/t this
  // becomes 2 Re Tr(H^dag dL) with H = (G - Tr(G rho) I) L / t.
  const Eigen::MatrixXcd g = kets * (2.0 * r).asDiagonal() * kets.adjoint();
  const Complex g_rho = (g * rho).trace();
  Eigen::MatrixXcd gp = g;
  gp.diagonal().array() -= g_rho.real();
  const Eigen::MatrixXcd h = gp * l / t;
  gradient->resize(params.size());
  for (int i = 0; i < dim; ++i) (*gradient)(i) = 2.0 * h(i, i).real() * std::exp(params(i));
  Eigen::Index k = dim;
  for (int i = 1; i < dim; ++i)
    for (int j = 0; j < i; ++j, k += 2) {
      (*gradient)(k) = 2.0 * h(i, j).real();
      (*gradient)(k + 1) = 2.0 * h(i, j).imag();
    }
  return f;
}

}  // namespace cholesky

namespace {

struct Minimum {
  Eigen::VectorXd x;
  double f = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Limited-memory BFGS with Armijo backtracking.
template <typename F>
Minimum lbfgs(const F& func, Eigen::VectorXd x, const ReconstructionOptions& opt) {
  Eigen::VectorXd g;
  double f = func(x, &g);
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> memory;  // (s, y)
  Minimum out;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (g.norm() < opt.gradient_tolerance) {
      out.converged = true;
      break;
    }
    // Two-loop recursion.
    Eigen::VectorXd q = g;
    std::vector<double> alpha(memory.size());
    for (std::size_t m = memory.size(); m-- > 0;) {
      const auto& [s, y] = memory[m];
      alpha[m] = s.dot(q) / y.dot(s);
      q -= alpha[m] * y;
    }
    if (!memory.empty()) {
      const auto& [s, y] = memory.back();
      q *= s.dot(y) / y.squaredNorm();
    }
    for (std::size_t m = 0; m < memory.size(); ++m) {
      const auto& [s, y] = memory[m];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[m] - beta) * s;
    }
    Eigen::VectorXd dir = -q;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      memory.clear();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = memory.empty() ? std::min(1.0, 1.0 / g.norm()) : 1.0;
    Eigen::VectorXd x_new, g_new;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      x_new = x + step * dir;
      f_new = func(x_new, &g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const Eigen::VectorXd s = x_new - x, y = g_new - g;
    if (s.dot(y) > 1e-16 * s.norm() * y.norm()) {
      memory.emplace_back(s, y);
      if (static_cast<int>(memory.size()) > opt.memory) memory.pop_front();
    }
    x = std::move(x_new);
    g = std::move(g_new);
    f = f_new;
  }
  if (!out.converged && g.norm() < opt.gradient_tolerance) out.converged = true;
  out.x = std::move(x);
  out.f = f;
  out.gradient_norm = g.norm();
  out.iterations = it;
  return out;
}

}  // namespace

ReconstructionResult reconstruct(const MeasurementRecord& record, const ProjectorSet& set, std::uint64_t init_seed,
                                 const OamBasis& basis, const std::optional<TripartiteState>& target,
                                 const ReconstructionOptions& options) {
  if (static_cast<int>(basis.size()) != set.d_sp) throw DimensionMismatchError("basis size does not match projector set");
  const Eigen::VectorXd p = estimate_probabilities(record, set);
  const int dim = set.dim();

  std::mt19937_64 rng(init_seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::VectorXd x0(cholesky::num_params(dim));
  for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = options.init_noise * noise(rng);

  const Minimum m = lbfgs(
      [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) { return cholesky::objective(x, set.kets, p, g); }, x0, options);

  ReconstructionResult out{TripartiteState::density(basis, cholesky::density(m.x, dim)), 0.0, 0.0, 0.0, std::nullopt, 0, false};
  out.residual = std::sqrt(m.f);
  out.gradient_norm = m.gradient_norm;
  out.iterations = m.iterations;
  out.converged = m.converged;
  out.purity = purity(out.rho_hat);
  if (target) out.fidelity_vs_target = fidelity(out.rho_hat, *target);
  return out;
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }
double purity(const TripartiteState& rho) {
  if (rho.is_pure()) return std::pow(rho.vector().squaredNorm(), 2);
  return purity(rho.density_matrix());
}

double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw DimensionMismatchError("fidelity of mismatched matrices");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd root = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::MatrixXcd inner = root * rho * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ei(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double tr = ei.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity(const TripartiteState& rho, const TripartiteState& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatchError("fidelity of mismatched states");
  if (sigma.is_pure()) {
    const Eigen::VectorXcd& v = sigma.vector();
    return std::clamp(v.dot(rho.density_matrix() * v).real(), 0.0, 1.0);
  }
  if (rho.is_pure()) return fidelity(sigma, rho);
  return fidelity(rho.density_matrix(), sigma.density_matrix());
}

}  // namespace qsky
