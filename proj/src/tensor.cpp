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

#include "gme/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gme {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

}  // namespace

// ---------------------------------------------------------------- SiteDims

SiteDims::SiteDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error("SiteDims: at least one party is required");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw Error("SiteDims: every local dimension must be >= 2");
    total_ *= static_cast<std::size_t>(d);
  }
}

SiteDims SiteDims::uniform(int n, int d) {
  if (n < 1) throw Error("SiteDims: party count must be >= 1");
  return SiteDims(std::vector<int>(static_cast<std::size_t>(n), d));
}

std::size_t SiteDims::total_over(std::span<const int> parties) const {
  std::size_t t = 1;
  for (int p : parties) t *= static_cast<std::size_t>(dims_.at(static_cast<std::size_t>(p)));
  return t;
}

SiteDims SiteDims::restricted(std::span<const int> parties) const {
  std::vector<int> out;
  out.reserve(parties.size());
  for (int p : parties) out.push_back(dims_.at(static_cast<std::size_t>(p)));
  return SiteDims(std::move(out));
}

std::vector<int> SiteDims::digits(std::size_t index) const {
  std::vector<int> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = static_cast<int>(index % static_cast<std::size_t>(dims_[k]));
    index /= static_cast<std::size_t>(dims_[k]);
  }
  return out;
}

std::size_t SiteDims::index(std::span<const int> digits) const {
  std::size_t out = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    out = out * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(digits[k]);
  }
  return out;
}

std::string SiteDims::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ']';
  return os.str();
}

SiteDims concat(const SiteDims& a, const SiteDims& b) {
  std::vector<int> v = a.values();
  v.insert(v.end(), b.values().begin(), b.values().end());
  return SiteDims(std::move(v));
}

// ------------------------------------------------------------- PartySubset

PartySubset::PartySubset(std::vector<int> members, std::size_t parties)
    : members_(std::move(members)), parties_(parties) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw Error("PartySubset: duplicate party index");
  }
  if (members_.empty() || members_.size() >= parties_) {
    throw Error("PartySubset: subset must be proper and nonempty");
  }
  if (members_.front() < 0 || static_cast<std::size_t>(members_.back()) >= parties_) {
    throw Error("PartySubset: party index out of range");
  }
}

bool PartySubset::contains(int party) const {
  return std::binary_search(members_.begin(), members_.end(), party);
}

PartySubset PartySubset::complement() const {
  std::vector<int> rest;
  for (int p = 0; p < static_cast<int>(parties_); ++p) {
    if (!contains(p)) rest.push_back(p);
  }
  return {std::move(rest), parties_};
}

std::string PartySubset::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) os << (i ? "," : "") << members_[i];
  os << '}';
  return os.str();
}

// -------------------------------------------------------------- MpOperator

MpOperator::MpOperator(SiteDims dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || static_cast<std::size_t>(entries_.rows()) != dims_.total()) {
    std::ostringstream os;
    os << "MpOperator: matrix is " << entries_.rows() << "x" << entries_.cols()
       << " but dims " << dims_.to_string() << " need side " << dims_.total();
    throw Error(os.str());
  }
}

MpOperator MpOperator::identity(const SiteDims& dims) {
  return {dims, Matrix::Identity(ix(dims.total()), ix(dims.total()))};
}

MpOperator MpOperator::zero(const SiteDims& dims) {
  return {dims, Matrix::Zero(ix(dims.total()), ix(dims.total()))};
}

MpOperator MpOperator::projector(const SiteDims& dims, const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != dims.total()) throw Error("projector: vector length mismatch");
  return {dims, v * v.adjoint()};
}

bool MpOperator::is_hermitian(double tol) const {
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool MpOperator::is_density(double tol) const {
  if (!is_hermitian()) return false;
  if (std::abs(trace() - cplx(1.0)) > tol) return false;
  return min_eig(*this).value >= -tol;
}

MpOperator MpOperator::operator+(const MpOperator& o) const {
  if (!(dims_ == o.dims_)) throw Error("MpOperator +: dims mismatch");
  return {dims_, entries_ + o.entries_};
}

MpOperator MpOperator::operator-(const MpOperator& o) const {
  if (!(dims_ == o.dims_)) throw Error("MpOperator -: dims mismatch");
  return {dims_, entries_ - o.entries_};
}

MpOperator MpOperator::operator*(cplx s) const { return {dims_, entries_ * s}; }

cplx trace_product(const MpOperator& a, const MpOperator& b) {
  if (a.side() != b.side()) throw Error("trace_product: size mismatch");
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.matrix().array() * b.matrix().transpose().array()).sum();
}

double frobenius_distance(const MpOperator& a, const MpOperator& b) {
  if (a.side() != b.side()) throw Error("frobenius_distance: size mismatch");
  return (a.matrix() - b.matrix()).norm();
}

// ---------------------------------------------------------- tensor algebra

MpOperator kron(const MpOperator& a, const MpOperator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return {concat(a.dims(), b.dims()), std::move(out)};
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

SplitIndex split_index(const SiteDims& dims, std::span<const int> front_parties) {
  const std::size_t n = dims.parties();
  std::vector<bool> in_front(n, false);
  for (int p : front_parties) {
    if (p < 0 || static_cast<std::size_t>(p) >= n) throw Error("split_index: party out of range");
    in_front[static_cast<std::size_t>(p)] = true;
  }
  std::vector<int> back_parties;
  for (std::size_t p = 0; p < n; ++p) {
    if (!in_front[p]) back_parties.push_back(static_cast<int>(p));
  }

  SplitIndex s;
  s.front_dim = dims.total_over(front_parties);
  s.back_dim = dims.total_over(back_parties);
  const std::size_t total = dims.total();
  s.front.resize(total);
  s.back.resize(total);
  s.full.resize(total);
  std::vector<int> digit(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t f = 0;
    for (int p : front_parties) f = f * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) + static_cast<std::size_t>(digit[static_cast<std::size_t>(p)]);
    std::size_t b = 0;
    for (int p : back_parties) b = b * static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]) + static_cast<std::size_t>(digit[static_cast<std::size_t>(p)]);
    s.front[idx] = f;
    s.back[idx] = b;
    s.full[f * s.back_dim + b] = idx;
    // odometer increment, last party fastest
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < dims[k]) break;
      digit[k] = 0;
    }
  }
  return s;
}

MpOperator partial_transpose(const MpOperator& op, const PartySubset& subset) {
  if (subset.parties() != op.dims().parties()) throw Error("partial_transpose: subset does not match party count");
  const SplitIndex s = split_index(op.dims(), subset.members());
  const Matrix& x = op.matrix();
  const std::size_t total = op.side();
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      // swap the front (transposed) halves of the row and column labels
      const std::size_t ii = s.full[s.front[j] * s.back_dim + s.back[i]];
      const std::size_t jj = s.full[s.front[i] * s.back_dim + s.back[j]];
      out(ix(ii), ix(jj)) = x(ix(i), ix(j));
    }
  }
  return {op.dims(), std::move(out)};
}

MpOperator partial_trace(const MpOperator& op, const PartySubset& subset) {
  if (subset.parties() != op.dims().parties()) throw Error("partial_trace: subset does not match party count");
  const PartySubset keep = subset.complement();
  const SplitIndex s = split_index(op.dims(), subset.members());
  const Matrix& x = op.matrix();
  Matrix out = Matrix::Zero(ix(s.back_dim), ix(s.back_dim));
  for (std::size_t a = 0; a < s.front_dim; ++a) {
    for (std::size_t r = 0; r < s.back_dim; ++r) {
      for (std::size_t c = 0; c < s.back_dim; ++c) {
        out(ix(r), ix(c)) += x(ix(s.full[a * s.back_dim + r]), ix(s.full[a * s.back_dim + c]));
      }
    }
  }
  return {op.dims().restricted(keep.members()), std::move(out)};
}

MpOperator diag_part(const MpOperator& op) {
  Matrix out = op.matrix().diagonal().asDiagonal();
  return {op.dims(), std::move(out)};
}

MpOperator od_part(const MpOperator& op) {
  Matrix out = op.matrix();
  out.diagonal().setZero();
  return {op.dims(), std::move(out)};
}

MpOperator schur_product(const MpOperator& a, const MpOperator& b) {
  if (a.side() != b.side()) throw Error("schur_product: shape mismatch");
  return {a.dims(), a.matrix().cwiseProduct(b.matrix())};
}

// ------------------------------------------------------------ eigensolver

namespace {

void require_hermitian(const MpOperator& op, const char* who) {
  if (!op.is_hermitian(1e-12)) throw Error(std::string(who) + ": operator is not Hermitian");
}

}  // namespace

EigenPair min_eig(const MpOperator& op) {
  require_hermitian(op, "min_eig");
  const Matrix sym = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("min_eig: eigensolver did not converge");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

Eigen::VectorXd eigenvalues(const MpOperator& op) {
  require_hermitian(op, "eigenvalues");
  const Matrix sym = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

}  // namespace gme
