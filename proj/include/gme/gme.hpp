// Copyright 2026 The gme-maps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gme/maps.hpp"
#include "gme/states.hpp"

namespace gme {

/// One representative per unordered bipartition A|rest: the smaller side,
/// or the side holding party 0 when both halves have n/2 parties. Ordered
/// by size, then lexicographically. 2^{n-1} - 1 entries.
std::vector<PartySubset> bipartitions(int n);

/// Closed-form value attached to a constructed map.
struct Claim {
  enum class Basis {
    analytic,   ///< proven closed form
    numerical,  ///< closed form fitted to brute-force evaluation
  };
  std::string key;
  double value;
  Basis basis = Basis::analytic;
};

/// A map that stays positive on every biseparable state of `dims`.
struct GmeMap {
  MapExpr expr;
  SiteDims dims;
  std::string label;
  std::vector<Claim> claims;

  [[nodiscard]] std::optional<double> claim(const std::string& key) const;
};

/// Sum of T_A over all representative bipartitions plus c Tr(.) I with
/// c = (2^{n-1} - 2)/2. `compensation` overrides c (used to probe optimality).
GmeMap phi_T(int n, int d = 2, std::optional<double> compensation = std::nullopt);

/// Like phi_T but every T_A is followed by conjugation with sigma_x on A.
GmeMap phi_Tx(int n);

/// Schur mask onto the GHZ-cyclic pattern: entry (i, j) survives iff
/// i_k - i_0 = j_k - j_0 (mod d) for every party k.
MapExpr x_projector(int n, int d);

/// The same projector as a composition over parties j = 1..n-1 of uniform
/// mixtures of the d local unitaries Z_k (x) Z_k^dag on parties (0, j).
MapExpr x_projector_mixture(int n, int d);

/// sigma_x^{(x) k} o T on k qubits.
MapExpr tx_primitive(int k);

/// Sum over bipartitions of sigma_x^A o T_A, without compensation.
MapExpr tx_sum(int n);

/// eta o X_n with eta = phi + (2^{n-1} - 2) Diag o phi, phi = tx_sum(n).
GmeMap eta_map(int n);

/// Reduction maps on every representative side plus (2^{n-1} - 2)/d Tr(.) I.
GmeMap phi_R(int d, int n = 3);

/// Breuer-Hall maps on every representative side plus (2^{n-1} - 2)/d Tr(.) I.
GmeMap phi_B(int d, int n = 3);

/// Sum over bipartitions of the Choi map acting on the A side.
MapExpr choi_sum(int n, int d);

/// mu o X_n^d with mu = phi + (2^{n-1} - 2)(Diag o phi - (2^{n-1} - 1) Diag),
/// phi = choi_sum(n, d).
GmeMap mu_map(int n, int d);

/// rho -> Tr(W rho) I.
GmeMap witness_to_map(const MpOperator& w);

/// dual(m)[|psi><psi|], so that Tr(W rho) = <psi| m[rho] |psi>.
MpOperator map_to_witness(const GmeMap& m, const PureState& psi);

/// Catalog ids accepted by `catalog_map`.
const std::vector<std::string>& catalog_ids();

/// Builds a cataloged map ("phi-t", "phi-tx", "eta", "phi-r", "phi-b",
/// "mu-choi") for n parties of local dimension d.
GmeMap catalog_map(const std::string& id, int n, int d);

/// Smallest (n, d) at which a cataloged map is defined.
std::pair<int, int> catalog_minimal_size(const std::string& id);

}  // namespace gme
