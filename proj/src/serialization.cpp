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

#include "qsky/serialization.hpp"

namespace qsky {

namespace {

constexpr const char* kBasisOrder = "polA,polB,oamB";

nlohmann::json complex_pair(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

Complex parse_pair(const nlohmann::json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw FormatError("complex entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

nlohmann::json to_json(const TripartiteState& state) {
  nlohmann::json j;
  j["basis_order"] = kBasisOrder;
  j["oam_basis"] = state.basis().ells();
  j["kind"] = state.is_pure() ? "pure" : "density";
  nlohmann::json entries = nlohmann::json::array();
  if (state.is_pure()) {
    for (Eigen::Index i = 0; i < state.dim(); ++i) entries.push_back(complex_pair(state.vector()(i)));
  } else {
    const Eigen::MatrixXcd rho = state.density_matrix();
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      for (Eigen::Index c = 0; c < rho.cols(); ++c) entries.push_back(complex_pair(rho(r, c)));
  }
  j["entries"] = std::move(entries);
  return j;
}

TripartiteState tripartite_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw FormatError("state must be a JSON object");
    if (j.at("basis_order").get<std::string>() != kBasisOrder)
      throw FormatError("unsupported basis_order '" + j.at("basis_order").get<std::string>() + "'");
    OamBasis basis(j.at("oam_basis").get<std::vector<int>>());
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json& entries = j.at("entries");
    const auto dim = 4 * static_cast<Eigen::Index>(basis.size());
    if (kind == "pure") {
      if (entries.size() != static_cast<std::size_t>(dim)) throw FormatError("entry count does not match basis");
      Eigen::VectorXcd v(dim);
      for (Eigen::Index i = 0; i < dim; ++i) v(i) = parse_pair(entries[static_cast<std::size_t>(i)]);
      return TripartiteState::pure(std::move(basis), std::move(v));
    }
    if (kind == "density") {
      if (entries.size() != static_cast<std::size_t>(dim * dim)) throw FormatError("entry count does not match basis");
      Eigen::MatrixXcd m(dim, dim);
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = parse_pair(entries[static_cast<std::size_t>(r * dim + c)]);
      return TripartiteState::density(std::move(basis), std::move(m));
    }
    throw FormatError("unknown state kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed state JSON: ") + e.what());
  }
}

nlohmann::json to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw FormatError("matrix must be a nested array");
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto m = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd out(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) throw FormatError("ragged matrix rows");
    for (Eigen::Index c = 0; c < m; ++c) out(r, c) = parse_pair(row[static_cast<std::size_t>(c)]);
  }
  return out;
}

std::string dump_exact(const nlohmann::json& j) { return j.dump(2); }

}  // namespace qsky
