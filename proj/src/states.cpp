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

#include "gme/states.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "gme/random.hpp"

namespace gme {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

Vector haar_vector(std::size_t dim, Rng& rng) {
  Vector v(ix(dim));
  for (Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = cplx(re, im);
  }
  return v.normalized();
}

}  // namespace

PureState::PureState(SiteDims dims, Vector amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != dims_.total()) throw Error("PureState: amplitude count does not match dims");
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error("PureState: zero or non-finite vector");
  amps_ /= norm;
}

PureState ghz(int n, int d) {
  if (n < 2 || d < 2) throw Error("ghz: need n >= 2 and d >= 2");
  const SiteDims dims = SiteDims::uniform(n, d);
  Vector v = Vector::Zero(ix(dims.total()));
  std::vector<int> digit(static_cast<std::size_t>(n));
  for (int i = 0; i < d; ++i) {
    std::fill(digit.begin(), digit.end(), i);
    v(ix(dims.index(digit))) = 1.0;
  }
  return {dims, std::move(v)};
}

PureState w_state(int n) {
  if (n < 3) throw Error("w_state: need n >= 3");
  const SiteDims dims = SiteDims::uniform(n, 2);
  Vector v = Vector::Zero(ix(dims.total()));
  for (int k = 0; k < n; ++k) v(Index{1} << k) = 1.0;
  return {dims, std::move(v)};
}

MpOperator maximally_mixed(const SiteDims& dims) {
  return MpOperator::identity(dims) * cplx(1.0 / static_cast<double>(dims.total()));
}

MpOperator depolarized(const MpOperator& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("depolarized: visibility must lie in [0, 1]");
  return {rho.dims(), p * rho.matrix() + (1.0 - p) * maximally_mixed(rho.dims()).matrix()};
}

MpOperator depolarized(const PureState& psi, double p) { return depolarized(psi.density(), p); }

Matrix shift_matrix(int d) {
  if (d < 2) throw Error("shift_matrix: need d >= 2");
  Matrix x = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) x(j, (j + 1) % d) = 1.0;
  return x;
}

Matrix clock_matrix(int d, int k) {
  if (d < 2) throw Error("clock_matrix: need d >= 2");
  if (k < 0 || k >= d) throw Error("clock_matrix: need 0 <= k < d");
  Matrix z = Matrix::Zero(d, d);
  for (int l = 0; l < d; ++l) {
    z(l, l) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(l * k) / static_cast<double>(d));
  }
  return z;
}

MpOperator ppt_family(const PptFamilyParams& params) {
  const std::array<double, 3> weights{params.lambda1, params.lambda2, params.lambda3};
  for (double l : weights) {
    if (!(l > 0.0) || !std::isfinite(l)) throw Error("ppt_family: all lambda parameters must be strictly positive");
  }
  const SiteDims dims = SiteDims::uniform(3, 3);
  // cyclically ordered level pairs (x, y); pair k carries weight lambda_{k+1}
  constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};

  Matrix e = Matrix::Zero(27, 27);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int x = pairs[k][0];
    const int y = pairs[k][1];
    const double l = weights[k];
    for (int flipped = 0; flipped < 3; ++flipped) {
      std::array<int, 3> up{x, x, x};
      std::array<int, 3> down{y, y, y};
      up[static_cast<std::size_t>(flipped)] = y;
      down[static_cast<std::size_t>(flipped)] = x;
      Vector v = Vector::Zero(27);
      v(ix(dims.index(up))) = std::sqrt(l);
      v(ix(dims.index(down))) = std::sqrt(1.0 / l);
      e += v * v.adjoint();
    }
  }
  Vector g = Vector::Zero(27);
  g(0) = g(13) = g(26) = 1.0;
  e += g * g.adjoint();
  e /= e.trace();
  return {dims, std::move(e)};
}

PureState random_pure(const SiteDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return {dims, haar_vector(dims.total(), rng)};
}

Vector embed_product(const SiteDims& dims, const PartySubset& subset, const Vector& on_subset,
                     const Vector& on_rest) {
  const SplitIndex s = split_index(dims, subset.members());
  if (static_cast<std::size_t>(on_subset.size()) != s.front_dim || static_cast<std::size_t>(on_rest.size()) != s.back_dim) {
    throw Error("embed_product: factor sizes do not match the bipartition");
  }
  Vector out(ix(dims.total()));
  for (std::size_t i = 0; i < dims.total(); ++i) out(ix(i)) = on_subset(ix(s.front[i])) * on_rest(ix(s.back[i]));
  return out;
}

namespace {

Vector product_sample(const SiteDims& dims, const PartySubset& subset, Rng& rng) {
  const std::size_t da = dims.total_over(subset.members());
  const std::size_t db = dims.total() / da;
  const Vector a = haar_vector(da, rng);
  const Vector b = haar_vector(db, rng);
  return embed_product(dims, subset, a, b);
}

/// Subsets of {0..n-1} containing party 0 and missing at least one party:
/// one per unordered bipartition.
PartySubset bipartition_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<int> members;
  for (std::size_t p = 0; p < n; ++p) {
    if (p == 0 || ((mask >> (p - 1)) & 1U)) members.push_back(static_cast<int>(p));
  }
  return {std::move(members), n};
}

}  // namespace

PureState random_product_pure(const SiteDims& dims, const PartySubset& subset, std::uint64_t seed) {
  if (subset.parties() != dims.parties()) throw Error("random_product_pure: subset does not match party count");
  Rng rng(seed);
  return {dims, product_sample(dims, subset, rng)};
}

MpOperator random_biseparable(const SiteDims& dims, int k, std::uint64_t seed) {
  if (k < 1) throw Error("random_biseparable: need k >= 1");
  const std::size_t n = dims.parties();
  if (n < 2) throw Error("random_biseparable: need at least two parties");
  Rng rng(seed);
  // masks over parties 1..n-1 with at least one bit clear -> 2^{n-1} - 1 cuts
  const std::uint64_t cuts = (std::uint64_t{1} << (n - 1)) - 1;

  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& x : w) total += (x = rng.exponential());

  Matrix rho = Matrix::Zero(ix(dims.total()), ix(dims.total()));
  for (int t = 0; t < k; ++t) {
    const PartySubset cut = bipartition_from_mask(rng.below(cuts), n);
    const Vector v = product_sample(dims, cut, rng);
    rho += (w[static_cast<std::size_t>(t)] / total) * (v * v.adjoint());
  }
  return {dims, std::move(rho)};
}

MpOperator random_density(const SiteDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const Index n = ix(dims.total());
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cplx(re, im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return {dims, std::move(rho)};
}

MpOperator random_hermitian(const SiteDims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const Index n = ix(dims.total());
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cplx(re, im);
    }
  }
  Matrix h = 0.5 * (g + g.adjoint());
  return {dims, std::move(h)};
}

}  // namespace gme
