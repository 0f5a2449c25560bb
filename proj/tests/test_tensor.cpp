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

#include <gtest/gtest.h>

#include <cmath>

#include "gme/states.hpp"
#include "gme/tensor.hpp"
#include "oracles.hpp"

namespace gme {
namespace {

MpOperator diag_op(const SiteDims& dims, std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return {dims, v.cast<cplx>().asDiagonal()};
}

MpOperator bell_projector() { return ghz(2, 2).density(); }

TEST(SiteDims, RejectsBadDims) {
  EXPECT_THROW(SiteDims({2, 1}), Error);
  EXPECT_THROW(SiteDims(std::vector<int>{}), Error);
  EXPECT_EQ(SiteDims({2, 3, 4}).total(), 24u);
}

TEST(SiteDims, DigitsRoundTrip) {
  const SiteDims dims{2, 3, 4};
  for (std::size_t i = 0; i < dims.total(); ++i) EXPECT_EQ(dims.index(dims.digits(i)), i);
  EXPECT_EQ(dims.digits(23), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(dims.digits(4), (std::vector<int>{0, 1, 0}));
}

TEST(PartySubset, ProperNonempty) {
  EXPECT_THROW(PartySubset({}, 3), Error);
  EXPECT_THROW(PartySubset({0, 1, 2}, 3), Error);
  EXPECT_THROW(PartySubset({3}, 3), Error);
  EXPECT_THROW(PartySubset({1, 1}, 3), Error);
  const PartySubset a({2, 0}, 4);
  EXPECT_EQ(a.members(), (std::vector<int>{0, 2}));
  EXPECT_EQ(a.complement().members(), (std::vector<int>{1, 3}));
}

TEST(MpOperator, SideMustMatchDims) {
  EXPECT_THROW(MpOperator(SiteDims{2, 2}, Matrix::Identity(3, 3)), Error);
  EXPECT_THROW(MpOperator(SiteDims{2, 2}, Matrix::Identity(4, 2)), Error);
}

TEST(Kron, Examples) {
  const MpOperator i2 = MpOperator::identity(SiteDims{2});
  const MpOperator k = kron(i2, i2);
  EXPECT_EQ(k.dims(), (SiteDims{2, 2}));
  EXPECT_LT(oracle::max_abs(k.matrix() - Matrix::Identity(4, 4)), 1e-15);

  const MpOperator a = diag_op(SiteDims{2}, {1, 0});
  const MpOperator b = diag_op(SiteDims{2}, {0, 1});
  EXPECT_LT(oracle::max_abs(kron(a, b).matrix() - diag_op(SiteDims{2, 2}, {0, 1, 0, 0}).matrix()), 1e-15);

  const MpOperator x(SiteDims{2}, shift_matrix(2));
  EXPECT_EQ(kron(x, x)(0, 3), cplx(1.0));
  EXPECT_EQ(kron(x, x)(0, 0), cplx(0.0));
}

TEST(Kron, Associative) {
  const auto a = random_hermitian(SiteDims{2}, 1);
  const auto b = random_hermitian(SiteDims{3}, 2);
  const auto c = random_hermitian(SiteDims{2}, 3);
  const auto left = kron(kron(a, b), c);
  const auto right = kron(a, kron(b, c));
  EXPECT_EQ(left.dims(), right.dims());
  EXPECT_LT(frobenius_distance(left, right), 1e-12);
}

TEST(PartialTranspose, BellEigenvalues) {
  const auto pt = partial_transpose(bell_projector(), PartySubset({0}, 2));
  const Eigen::VectorXd ev = eigenvalues(pt);
  ASSERT_EQ(ev.size(), 4);
  EXPECT_NEAR(ev(0), -0.5, 1e-12);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.5, 1e-12);
  EXPECT_NEAR(min_eig(pt).value, -0.5, 1e-12);
}

TEST(PartialTranspose, DiagonalUnchanged) {
  const auto d = diag_op(SiteDims{2, 3}, {1, 2, 3, 4, 5, 6});
  EXPECT_LT(frobenius_distance(partial_transpose(d, PartySubset({1}, 2)), d), 1e-15);
}

TEST(PartialTranspose, ComplementIdentity) {
  const SiteDims dims = SiteDims::uniform(3, 2);
  const auto rho = random_hermitian(dims, 11);
  const auto lhs = partial_transpose(rho, PartySubset({0, 1}, 3));
  const auto rhs = partial_transpose(rho, PartySubset({2}, 3)).transpose();
  EXPECT_LT(frobenius_distance(lhs, rhs), 1e-12);
}

TEST(PartialTranspose, MatchesDigitOracle) {
  const SiteDims dims{2, 3, 2};
  const auto rho = random_hermitian(dims, 5);
  for (const std::vector<int>& a : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    const auto got = partial_transpose(rho, PartySubset(a, 3));
    EXPECT_LT(oracle::max_abs(got.matrix() - oracle::partial_transpose_digits(rho.matrix(), dims, a)), 1e-15);
  }
}

TEST(PartialTranspose, InvolutionTraceHermiticity) {
  const SiteDims dims{3, 2, 2};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_hermitian(dims, seed);
    const PartySubset a({static_cast<int>(seed % 3)}, 3);
    const auto once = partial_transpose(rho, a);
    EXPECT_LT(frobenius_distance(partial_transpose(once, a), rho), 1e-12);
    EXPECT_NEAR(std::abs(once.trace() - rho.trace()), 0.0, 1e-12);
    EXPECT_TRUE(once.is_hermitian(1e-12));
  }
}

TEST(PartialTrace, Examples) {
  const auto rho = random_density(SiteDims{2}, 3);
  const auto sigma = random_density(SiteDims{3}, 4) * cplx(0.5);
  const auto traced = partial_trace(kron(rho, sigma), PartySubset({1}, 2));
  EXPECT_EQ(traced.dims(), (SiteDims{2}));
  EXPECT_LT(frobenius_distance(traced, rho * sigma.trace()), 1e-12);

  const auto marginal = partial_trace(bell_projector(), PartySubset({0}, 2));
  EXPECT_LT(oracle::max_abs(marginal.matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-12);

  const auto big = random_density(SiteDims{2, 3, 2}, 8);
  for (const std::vector<int>& a : {std::vector<int>{0}, {1, 2}, {0, 2}}) {
    EXPECT_NEAR(std::abs(partial_trace(big, PartySubset(a, 3)).trace() - big.trace()), 0.0, 1e-12);
  }
}

TEST(DiagSplit, Examples) {
  const auto d = diag_part(bell_projector());
  EXPECT_LT(frobenius_distance(d, diag_op(SiteDims{2, 2}, {0.5, 0, 0, 0.5})), 1e-15);
  const auto diag = diag_op(SiteDims{3}, {1, 2, 3});
  EXPECT_EQ(oracle::max_abs(od_part(diag).matrix()), 0.0);
  const auto rho = random_density(SiteDims{2, 3}, 2);
  EXPECT_EQ(oracle::max_abs(diag_part(od_part(rho)).matrix()), 0.0);
}

TEST(DiagSplit, ReconstructsExactly) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_hermitian(SiteDims{3, 3}, seed);
    const Matrix back = diag_part(rho).matrix() + od_part(rho).matrix();
    EXPECT_EQ(oracle::max_abs(back - rho.matrix()), 0.0);
  }
}

TEST(Schur, Examples) {
  const SiteDims dims{2, 3};
  const auto rho = random_density(dims, 6);
  const MpOperator ones(dims, Matrix::Ones(6, 6));
  EXPECT_LT(frobenius_distance(schur_product(rho, ones), rho), 1e-15);
  EXPECT_LT(frobenius_distance(schur_product(rho, MpOperator::identity(dims)), diag_part(rho)), 1e-15);

  const auto mask = random_hermitian(dims, 7);
  const auto a = random_hermitian(dims, 8);
  EXPECT_LT(frobenius_distance(schur_product(a, mask).adjoint(), schur_product(a.adjoint(), mask.adjoint())), 1e-14);
  EXPECT_THROW(schur_product(rho, MpOperator::identity(SiteDims{2})), Error);
}

TEST(MinEig, Examples) {
  const auto a = min_eig(diag_op(SiteDims{3}, {1, 2, 3}));
  EXPECT_NEAR(a.value, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(a.vector(0)), 1.0, 1e-14);

  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = -1.0;
  const auto b = min_eig(MpOperator(SiteDims{2}, m));
  EXPECT_NEAR(b.value, -1.0, 1e-14);
  EXPECT_NEAR(std::abs(b.vector(0)), 1.0, 1e-14);
}

TEST(MinEig, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(min_eig(MpOperator(SiteDims{2}, m)), Error);
}

TEST(MinEig, ResidualAndTrace) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = random_hermitian(SiteDims{3, 3}, seed);
    const auto e = min_eig(h);
    EXPECT_NEAR(e.vector.norm(), 1.0, 1e-12);
    const double scale = h.matrix().operatorNorm();
    EXPECT_LE((h.matrix() * e.vector - e.value * e.vector).norm(), 1e-9 * scale);

    const auto rho = random_density(SiteDims{2, 3}, seed);
    EXPECT_NEAR(eigenvalues(rho).sum(), rho.trace().real(), 1e-9);
  }
}

TEST(SplitIndex, PermutationConsistent) {
  const SiteDims dims{2, 3, 2};
  const std::vector<int> front{2, 0};
  const auto s = split_index(dims, front);
  EXPECT_EQ(s.front_dim, 4u);
  EXPECT_EQ(s.back_dim, 3u);
  for (std::size_t i = 0; i < dims.total(); ++i) EXPECT_EQ(s.full[s.front[i] * s.back_dim + s.back[i]], i);
}

}  // namespace
}  // namespace gme
