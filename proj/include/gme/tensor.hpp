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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gme {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised for every violated precondition (bad dimensions, invalid subsets,
/// out-of-range parameters). The message is user-facing.
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered local dimensions of a multipartite Hilbert space. Party 0 is the
/// most significant digit of the computational product-basis index.
class SiteDims {
 public:
  SiteDims() = default;
  explicit SiteDims(std::vector<int> dims);
  SiteDims(std::initializer_list<int> dims) : SiteDims(std::vector<int>(dims)) {}

  /// n parties of equal local dimension d.
  static SiteDims uniform(int n, int d);

  [[nodiscard]] std::size_t parties() const { return dims_.size(); }
  [[nodiscard]] int operator[](std::size_t i) const { return dims_[i]; }
  [[nodiscard]] const std::vector<int>& values() const { return dims_; }
  [[nodiscard]] std::size_t total() const { return total_; }

  /// Product of the local dimensions over the listed parties.
  [[nodiscard]] std::size_t total_over(std::span<const int> parties) const;

  /// Local dimensions of the listed parties, in the listed order.
  [[nodiscard]] SiteDims restricted(std::span<const int> parties) const;

  /// Mixed-radix digits of a product-basis index.
  [[nodiscard]] std::vector<int> digits(std::size_t index) const;
  [[nodiscard]] std::size_t index(std::span<const int> digits) const;

  friend bool operator==(const SiteDims&, const SiteDims&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<int> dims_;
  std::size_t total_ = 1;
};

SiteDims concat(const SiteDims& a, const SiteDims& b);

/// Proper, nonempty, sorted subset of party indices.
class PartySubset {
 public:
  PartySubset(std::vector<int> members, std::size_t parties);

  [[nodiscard]] const std::vector<int>& members() const { return members_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] std::size_t parties() const { return parties_; }
  [[nodiscard]] bool contains(int party) const;

  /// The remaining parties, sorted.
  [[nodiscard]] PartySubset complement() const;

  friend bool operator==(const PartySubset&, const PartySubset&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<int> members_;
  std::size_t parties_ = 0;
};

/// Dense square complex matrix tagged with the multipartite structure of the
/// space it acts on. Values are immutable after construction.
class MpOperator {
 public:
  MpOperator(SiteDims dims, Matrix entries);

  static MpOperator identity(const SiteDims& dims);
  static MpOperator zero(const SiteDims& dims);
  static MpOperator projector(const SiteDims& dims, const Vector& v);

  [[nodiscard]] const SiteDims& dims() const { return dims_; }
  [[nodiscard]] const Matrix& matrix() const { return entries_; }
  [[nodiscard]] std::size_t side() const { return dims_.total(); }
  [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  [[nodiscard]] cplx trace() const { return entries_.trace(); }
  [[nodiscard]] MpOperator adjoint() const { return {dims_, entries_.adjoint()}; }
  [[nodiscard]] MpOperator transpose() const { return {dims_, entries_.transpose()}; }

  /// max |a_ij - conj(a_ji)| <= tol * max(1, max |a_ij|)
  [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
  /// Hermitian, unit trace (1e-10) and no eigenvalue below -1e-10.
  [[nodiscard]] bool is_density(double tol = 1e-10) const;

  MpOperator operator+(const MpOperator& o) const;
  MpOperator operator-(const MpOperator& o) const;
  MpOperator operator*(cplx s) const;

 private:
  SiteDims dims_;
  Matrix entries_;
};

/// Tr(a * b).
cplx trace_product(const MpOperator& a, const MpOperator& b);
double frobenius_distance(const MpOperator& a, const MpOperator& b);

MpOperator kron(const MpOperator& a, const MpOperator& b);
Vector kron(const Vector& a, const Vector& b);

/// Transposes the indices of the parties in `subset` in the computational basis.
MpOperator partial_transpose(const MpOperator& op, const PartySubset& subset);

/// Traces out the parties in `subset`.
MpOperator partial_trace(const MpOperator& op, const PartySubset& subset);

MpOperator diag_part(const MpOperator& op);
MpOperator od_part(const MpOperator& op);

/// Entrywise product; shapes must agree.
MpOperator schur_product(const MpOperator& a, const MpOperator& b);

struct EigenPair {
  double value;
  Vector vector;
};

/// Smallest eigenvalue and a unit eigenvector of a Hermitian operator.
/// The input is symmetrised before diagonalisation.
EigenPair min_eig(const MpOperator& op);

/// All eigenvalues, ascending.
Eigen::VectorXd eigenvalues(const MpOperator& op);

/// Permutation helper used by the subsystem routines: maps every full index
/// to (index within `front` parties, index within the remaining parties).
struct SplitIndex {
  std::size_t front_dim = 1;
  std::size_t back_dim = 1;
  std::vector<std::size_t> front;  // full index -> front index
  std::vector<std::size_t> back;   // full index -> back index
  std::vector<std::size_t> full;   // front * back_dim + back -> full index
};

SplitIndex split_index(const SiteDims& dims, std::span<const int> front_parties);

}  // namespace gme
