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

#ifndef QSKY_SERIALIZATION_HPP
#define QSKY_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "qsky/hilbert.hpp"

namespace qsky {

/// {basis_order, oam_basis, kind, entries}; entries are [re, im] pairs in
/// storage order (row-major for density matrices).
nlohmann::json to_json(const TripartiteState& state);
TripartiteState tripartite_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

/// Indented text; numbers use the shortest form that round-trips exactly.
std::string dump_exact(const nlohmann::json& j);

}  // namespace qsky

#endif  // QSKY_SERIALIZATION_HPP
