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

#include "gme/tensor.hpp"

namespace gme {

/// Normalised state vector on a multipartite space.
class PureState {
 public:
  /// Normalises `amplitudes`; throws on a zero vector or a length mismatch.
  PureState(SiteDims dims, Vector amplitudes);

  [[nodiscard]] const SiteDims& dims() const { return dims_; }
  [[nodiscard]] const Vector& amplitudes() const { return amps_; }
  [[nodiscard]] MpOperator density() const { return MpOperator::projector(dims_, amps_); }

 private:
  SiteDims dims_;
  Vector amps_;
};

/// (1/sqrt d) sum_i |i...i>, n >= 2, d >= 2.
PureState ghz(int n, int d);

/// Uniform superposition of the weight-one bit strings on n >= 3 qubits.
PureState w_state(int n);

/// p |psi><psi| + (1 - p) I / D.
MpOperator depolarized(const PureState& psi, double p);

/// p rho + (1 - p) I / D for an arbitrary target state.
MpOperator depolarized(const MpOperator& rho, double p);

MpOperator maximally_mixed(const SiteDims& dims);

/// Cyclic shift X_d with X_d |j> = |j - 1 mod d> (ones on the superdiagonal
/// and in the bottom-left corner).
Matrix shift_matrix(int d);

/// Z_k = diag(1, w^k, w^2k, ...), w = exp(2 pi i / d), 0 <= k < d.
Matrix clock_matrix(int d, int k);

/// Parameters of the three-qutrit PPT family; all strictly positive.
struct PptFamilyParams {
  double lambda1;
  double lambda2;
  double lambda3;

  static PptFamilyParams equal(double lambda) { return {lambda, lambda, lambda}; }
};

/// Normalised 27x27 state built from ten unnormalised vectors. For every
/// cyclically ordered level pair (x, y) in {(0,1), (1,2), (2,0)}, weighted by
/// lambda1, lambda2, lambda3 respectively, and every party i:
///   sqrt(l) |party i at y, others at x> + sqrt(1/l) |party i at x, others at y>
/// plus |000> + |111> + |222>. Invariant under the partial transpose of any
/// single party when all lambdas coincide.
MpOperator ppt_family(const PptFamilyParams& params);

/// Haar-random pure state.
PureState random_pure(const SiteDims& dims, std::uint64_t seed);

/// |phi_A> (x) |phi_rest> with independent Haar factors.
PureState random_product_pure(const SiteDims& dims, const PartySubset& subset, std::uint64_t seed);

/// Convex mixture of k product pure states, each across an independently
/// uniform bipartition, with Dirichlet(1,...,1) weights.
MpOperator random_biseparable(const SiteDims& dims, int k, std::uint64_t seed);

/// Random density matrix (Hilbert-Schmidt measure), used by tests.
MpOperator random_density(const SiteDims& dims, std::uint64_t seed);

/// Random Hermitian matrix with standard normal entries, used by tests.
MpOperator random_hermitian(const SiteDims& dims, std::uint64_t seed);

/// Embeds a state of the parties in `subset` tensored with one of the rest
/// into the full party ordering.
Vector embed_product(const SiteDims& dims, const PartySubset& subset, const Vector& on_subset,
                     const Vector& on_rest);

}  // namespace gme
