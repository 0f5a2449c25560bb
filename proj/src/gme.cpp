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

#include "gme/gme.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <functional>

namespace gme {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

std::int64_t pow2(int k) { return std::int64_t{1} << k; }

void require_parties(int n, const char* who) {
  if (n < 3) throw Error(std::string(who) + ": need n >= 3 parties");
  if (n > 20) throw Error(std::string(who) + ": more than 20 parties is not supported");
}

/// Sum over representative bipartitions of lift(make(|A|), A).
MapExpr lifted_sum(const SiteDims& dims, const std::function<MapExpr(const PartySubset&)>& make) {
  std::vector<MapExpr> terms;
  for (const auto& a : bipartitions(static_cast<int>(dims.parties()))) terms.push_back(lift(make(a), a, dims));
  return sum(terms);
}

/// sigma_x on each of k qubits: flips every bit of the index.
Matrix sigma_x_power(std::size_t k) {
  const std::size_t dim = std::size_t{1} << k;
  Matrix out = Matrix::Zero(ix(dim), ix(dim));
  for (std::size_t i = 0; i < dim; ++i) out(ix(i ^ (dim - 1)), ix(i)) = 1.0;
  return out;
}

/// Single-party-diagonal unitary on the full space: product over parties of
/// the given local diagonal factors.
Matrix local_diagonal(const SiteDims& dims, const std::vector<Eigen::VectorXcd>& factors) {
  const std::size_t total = dims.total();
  Eigen::VectorXcd diag(ix(total));
  for (std::size_t i = 0; i < total; ++i) {
    const auto digits = dims.digits(i);
    cplx v = 1.0;
    for (std::size_t p = 0; p < digits.size(); ++p) v *= factors[p](digits[p]);
    diag(ix(i)) = v;
  }
  return diag.asDiagonal();
}

/// (I + c Diag) o inner
MapExpr with_diag_boost(const MapExpr& inner, double c) {
  const std::size_t dim = inner.dim();
  return compose(sum({identity_map(dim), scale(c, diag_map(dim))}), inner);
}

GmeMap compensated(const std::string& label, const SiteDims& dims, const MapExpr& body, Rational c) {
  return {sum({body, trace_identity_map(dims.total(), c)}), dims, label, {}};
}

}  // namespace

std::vector<PartySubset> bipartitions(int n) {
  if (n < 2) throw Error("bipartitions: need n >= 2");
  if (n > 30) throw Error("bipartitions: too many parties");
  std::vector<std::vector<int>> reps;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < all; ++mask) {
    const int size = std::popcount(mask);
    const bool smaller = 2 * size < n;
    const bool tie_with_zero = 2 * size == n && (mask & 1U);
    if (!smaller && !tie_with_zero) continue;
    std::vector<int> members;
    for (int p = 0; p < n; ++p) {
      if ((mask >> p) & 1U) members.push_back(p);
    }
    reps.push_back(std::move(members));
  }
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<PartySubset> out;
  out.reserve(reps.size());
  for (auto& r : reps) out.emplace_back(std::move(r), static_cast<std::size_t>(n));
  return out;
}

std::optional<double> GmeMap::claim(const std::string& key) const {
  for (const auto& c : claims) {
    if (c.key == key) return c.value;
  }
  return std::nullopt;
}

GmeMap phi_T(int n, int d, std::optional<double> compensation) {
  require_parties(n, "phi_T");
  if (d < 2) throw Error("phi_T: need d >= 2");
  const SiteDims dims = SiteDims::uniform(n, d);
  const MapExpr body = lifted_sum(dims, [&](const PartySubset& a) {
    return transpose_map(dims.total_over(a.members()));
  });
  GmeMap m = compensation
                 ? GmeMap{sum({body, scale(*compensation, trace_identity_map(dims.total(), {1, 1}))}), dims, "phi-t", {}}
                 : compensated("phi-t", dims, body, {pow2(n - 1) - 2, 2});
  if (d == 2 && !compensation) {
    if (n == 3) {
      m.claims.push_back({"min_eig.w", 1.0 - 2.0 / std::sqrt(3.0)});
      m.claims.push_back({"threshold.w", 11.0 * std::sqrt(3.0) / (16.0 + 3.0 * std::sqrt(3.0))});
    }
    if (n == 4) m.claims.push_back({"detects.w", 0.0});
  }
  return m;
}

MapExpr tx_primitive(int k) {
  if (k < 1 || k > 20) throw Error("tx_primitive: need 1 <= k <= 20");
  const auto uk = static_cast<std::size_t>(k);
  return compose(conjugate_map(sigma_x_power(uk)), transpose_map(std::size_t{1} << uk));
}

MapExpr tx_sum(int n) {
  require_parties(n, "tx_sum");
  const SiteDims dims = SiteDims::uniform(n, 2);
  return lifted_sum(dims, [](const PartySubset& a) { return tx_primitive(static_cast<int>(a.size())); });
}

GmeMap phi_Tx(int n) {
  require_parties(n, "phi_Tx");
  const SiteDims dims = SiteDims::uniform(n, 2);
  GmeMap m = compensated("phi-tx", dims, tx_sum(n), {pow2(n - 1) - 2, 2});
  m.claims.push_back({"min_eig.ghz", -0.5});
  const double q = static_cast<double>(pow2(2 * n - 2));
  m.claims.push_back({"threshold.ghz", (q - static_cast<double>(pow2(n - 1)) - 1.0) / (q - 1.0), Claim::Basis::numerical});
  return m;
}

MapExpr x_projector(int n, int d) {
  if (n < 2 || d < 2) throw Error("x_projector: need n >= 2 and d >= 2");
  const SiteDims dims = SiteDims::uniform(n, d);
  const std::size_t total = dims.total();
  // the cyclic class of an index is its digit offsets relative to party 0
  std::vector<std::size_t> cls(total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto dg = dims.digits(i);
    std::size_t key = 0;
    for (int k = 1; k < n; ++k) key = key * static_cast<std::size_t>(d) + static_cast<std::size_t>(((dg[k] - dg[0]) % d + d) % d);
    cls[i] = key;
  }
  Matrix mask = Matrix::Zero(ix(total), ix(total));
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (cls[i] == cls[j]) mask(ix(i), ix(j)) = 1.0;
    }
  }
  return schur_mask_map(mask);
}

MapExpr x_projector_mixture(int n, int d) {
  if (n < 2 || d < 2) throw Error("x_projector_mixture: need n >= 2 and d >= 2");
  const SiteDims dims = SiteDims::uniform(n, d);
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(d);
  std::vector<MapExpr> factors;
  for (int j = 1; j < n; ++j) {
    std::vector<MapExpr> terms;
    for (int k = 0; k < d; ++k) {
      const Eigen::VectorXcd z = clock_matrix(d, k).diagonal();
      std::vector<Eigen::VectorXcd> local(static_cast<std::size_t>(n), ones);
      local[0] = z;
      local[static_cast<std::size_t>(j)] = z.conjugate();
      terms.push_back(conjugate_map(local_diagonal(dims, local)));
    }
    factors.push_back(scale(1.0 / d, sum(terms)));
  }
  MapExpr out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = compose(factors[i], out);
  return out;
}

GmeMap eta_map(int n) {
  require_parties(n, "eta_map");
  const SiteDims dims = SiteDims::uniform(n, 2);
  const auto c = static_cast<double>(pow2(n - 1) - 2);
  GmeMap m{compose(with_diag_boost(tx_sum(n), c), x_projector(n, 2)), dims, "eta", {}};
  m.claims.push_back({"threshold.ghz", static_cast<double>(pow2(n - 1) - 1) / static_cast<double>(pow2(n) - 1)});
  return m;
}

namespace {

void add_ghz_claims(GmeMap& m, int n, int d) {
  if (n != 3) return;
  const double dd = d;
  m.claims.push_back({"min_eig.ghz", -1.0 / dd});
  m.claims.push_back({"threshold.ghz", 1.0 - dd * dd / (3.0 * (dd * dd + 1.0))});
}

}  // namespace

GmeMap phi_R(int d, int n) {
  require_parties(n, "phi_R");
  if (d < 2) throw Error("phi_R: need d >= 2");
  const SiteDims dims = SiteDims::uniform(n, d);
  const MapExpr body = lifted_sum(dims, [&](const PartySubset& a) {
    return reduction_map(static_cast<int>(dims.total_over(a.members())));
  });
  GmeMap m = compensated("phi-r", dims, body, {pow2(n - 1) - 2, d});
  add_ghz_claims(m, n, d);
  return m;
}

GmeMap phi_B(int d, int n) {
  require_parties(n, "phi_B");
  if (d < 4 || d % 2 != 0) throw Error("phi_B: need even d >= 4");
  const SiteDims dims = SiteDims::uniform(n, d);
  const MapExpr body = lifted_sum(dims, [&](const PartySubset& a) {
    return breuer_hall_map(static_cast<int>(dims.total_over(a.members())));
  });
  GmeMap m = compensated("phi-b", dims, body, {pow2(n - 1) - 2, d});
  add_ghz_claims(m, n, d);
  return m;
}

MapExpr choi_sum(int n, int d) {
  require_parties(n, "choi_sum");
  if (d < 3) throw Error("choi_sum: need d >= 3");
  const SiteDims dims = SiteDims::uniform(n, d);
  return lifted_sum(dims, [&](const PartySubset& a) { return choi_map(d, static_cast<int>(a.size())); });
}

GmeMap mu_map(int n, int d) {
  require_parties(n, "mu_map");
  if (d < 3) throw Error("mu_map: need d >= 3");
  const SiteDims dims = SiteDims::uniform(n, d);
  const auto c = static_cast<double>(pow2(n - 1) - 2);
  const auto cuts = static_cast<double>(pow2(n - 1) - 1);
  const MapExpr mu = sum({with_diag_boost(choi_sum(n, d), c), scale(-c * cuts, diag_map(dims.total()))});
  GmeMap m{compose(mu, x_projector(n, d)), dims, "mu-choi", {}};
  const double a = (d - 2.0) * cuts + 1.0;
  m.claims.push_back({"threshold.ghz", a / (a + (d - 2.0) * std::pow(static_cast<double>(d), n - 1))});
  return m;
}

GmeMap witness_to_map(const MpOperator& w) {
  if (!w.is_hermitian()) throw Error("witness_to_map: witness must be Hermitian");
  return {witness_contraction_map(w.matrix()), w.dims(), "witness", {}};
}

MpOperator map_to_witness(const GmeMap& m, const PureState& psi) {
  if (psi.dims() != m.dims) {
    throw Error("map_to_witness: state dims " + psi.dims().to_string() + " do not match map dims " + m.dims.to_string());
  }
  return apply(dual(m.expr), psi.density());
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids{"phi-t", "phi-tx", "eta", "phi-r", "phi-b", "mu-choi"};
  return ids;
}

GmeMap catalog_map(const std::string& id, int n, int d) {
  auto qubits_only = [&](const char* who) {
    if (d != 2) throw Error(std::string(who) + ": defined for qubits only (d = 2)");
  };
  if (id == "phi-t") return phi_T(n, d);
  if (id == "phi-tx") {
    qubits_only("phi-tx");
    return phi_Tx(n);
  }
  if (id == "eta") {
    qubits_only("eta");
    return eta_map(n);
  }
  if (id == "phi-r") return phi_R(d, n);
  if (id == "phi-b") return phi_B(d, n);
  if (id == "mu-choi") return mu_map(n, d);
  std::string known;
  for (const auto& k : catalog_ids()) known += (known.empty() ? "" : ", ") + k;
  throw Error("unknown map id '" + id + "' (known: " + known + ")");
}

std::pair<int, int> catalog_minimal_size(const std::string& id) {
  if (id == "phi-b") return {3, 4};
  if (id == "mu-choi") return {3, 3};
  if (id == "phi-t" || id == "phi-tx" || id == "eta" || id == "phi-r") return {3, 2};
  throw Error("unknown map id '" + id + "'");
}

}  // namespace gme
