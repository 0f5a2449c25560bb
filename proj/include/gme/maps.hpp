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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gme/tensor.hpp"

namespace gme {

/// Exact rational coefficient, evaluated in floating point on application.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] Rational reduced() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct MapNode;
struct LiftPlan;

/// Immutable expression tree of a Hermiticity-preserving linear map on
/// dim x dim matrices. Cheap to copy (shared, immutable nodes).
class MapExpr {
 public:
  MapExpr(std::shared_ptr<const MapNode> node, std::size_t dim) : node_(std::move(node)), dim_(dim) {}

  [[nodiscard]] const MapNode& node() const { return *node_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  /// Short tag of the root node ("transpose", "lift", ...).
  [[nodiscard]] std::string kind() const;

 private:
  std::shared_ptr<const MapNode> node_;
  std::size_t dim_;
};

namespace node {

struct Identity {};
struct Transpose {};
/// (Tr(rho) I - rho) / (dim - 1)
struct Reduction {};
/// (Tr(rho) I - rho - V rho^T V^dag) / (dim - 2), V unitary and skew-symmetric.
struct BreuerHall {
  Matrix v;
};
/// 2 Diag + sum_{j=1}^{d-2} S^j Diag S^-j - rho with S = X_d^{(x) copies}.
/// `adjoint` reverses the shift direction (the Hilbert-Schmidt dual).
struct Choi {
  int d = 3;
  int copies = 1;
  bool adjoint = false;
};
/// rho -> U rho U^dag
struct Conjugate {
  Matrix u;
};
struct DiagAll {};
/// rho -> c Tr(rho) I
struct TraceIdentity {
  Rational c;
};
/// rho -> M o rho (entrywise)
struct SchurMask {
  Matrix mask;
};
/// rho -> Tr(W rho) I
struct WitnessContraction {
  Matrix w;
};
/// rho -> Tr(rho) W
struct TraceEmbed {
  Matrix w;
};
/// child (x) identity, with the child acting on the parties in `subset`.
struct Lift {
  MapExpr child;
  PartySubset subset;
  SiteDims dims;
  std::shared_ptr<const LiftPlan> plan;
};
struct Sum {
  std::vector<MapExpr> terms;
};
struct Scale {
  double factor;
  MapExpr child;
};
/// outer o inner
struct Compose {
  MapExpr outer;
  MapExpr inner;
};

}  // namespace node

struct MapNode {
  std::variant<node::Identity, node::Transpose, node::Reduction, node::BreuerHall, node::Choi, node::Conjugate,
               node::DiagAll, node::TraceIdentity, node::SchurMask, node::WitnessContraction, node::TraceEmbed,
               node::Lift, node::Sum, node::Scale, node::Compose>
      value;
};

// ---------------------------------------------------------------- builders

MapExpr identity_map(std::size_t dim);
MapExpr transpose_map(std::size_t dim);
/// Trace-preserving reduction map, d >= 2.
MapExpr reduction_map(int d);
/// Breuer-Hall map for even d >= 4. Defaults to V = [[0, I], [-I, 0]].
MapExpr breuer_hall_map(int d, const std::optional<Matrix>& v = std::nullopt);
/// Choi map of dimension d >= 3. With copies > 1 the map acts on
/// (C^d)^{(x) copies} and shifts every factor at once.
MapExpr choi_map(int d, int copies = 1);
MapExpr conjugate_map(const Matrix& u);
MapExpr diag_map(std::size_t dim);
MapExpr trace_identity_map(std::size_t dim, Rational c);
MapExpr schur_mask_map(const Matrix& mask);
MapExpr witness_contraction_map(const Matrix& w);
MapExpr trace_embed_map(const Matrix& w);
MapExpr lift(const MapExpr& child, const PartySubset& subset, const SiteDims& dims);
MapExpr sum(const std::vector<MapExpr>& terms);
MapExpr scale(double factor, const MapExpr& child);
MapExpr compose(const MapExpr& outer, const MapExpr& inner);

/// The block skew-symmetric unitary [[0, I], [-I, 0]] of even size d.
Matrix default_skew_unitary(int d);

// -------------------------------------------------------------- evaluation

/// Evaluates the map on `op`; dims of the output equal those of the input.
MpOperator apply(const MapExpr& m, const MpOperator& op);
Matrix apply(const MapExpr& m, const Matrix& x);

/// Hilbert-Schmidt dual, built structurally: Tr(s m[r]) = Tr(dual(m)[s] r).
MapExpr dual(const MapExpr& m);

/// Nodes in the tree (for diagnostics and tests).
std::size_t node_count(const MapExpr& m);

// ----------------------------------------------- minimal output eigenvalue

struct MuValue {
  double value = 0.0;
};

/// Closed-form minimal output eigenvalue of a transpose, reduction or
/// Breuer-Hall primitive: 1/2, 1/d and 1/d respectively.
MuValue mu_constant(const MapExpr& primitive);

struct MuEstimate {
  double value = 0.0;          ///< max over everything evaluated, clamped at 0
  double ansatz = 0.0;         ///< best maximally entangled state of any Schmidt rank
  double best_sampled = 0.0;   ///< max over the Haar samples alone
  std::size_t samples = 0;
};

/// Lower bound on mu(m): max of -min_eig((m (x) I)[psi]) over Haar samples of
/// psi in C^d (x) C^c and the maximally entangled states sum_{i<r} |ii>/sqrt r
/// for every Schmidt rank r. `companion_dim` defaults to d.
MuEstimate estimate_mu(const MapExpr& m, int samples, std::uint64_t seed, int companion_dim = 0);

}  // namespace gme
