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
#include <vector>

#include "gme/detector.hpp"
#include "gme/gme.hpp"
#include "gme/states.hpp"
#include "oracles.hpp"

namespace gme {
namespace {

double min_out(const GmeMap& m, const MpOperator& rho) { return min_eig(gme::apply(m.expr, rho)).value; }

std::vector<std::vector<int>> members(const std::vector<PartySubset>& cuts) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cuts) out.push_back(c.members());
  return out;
}

TEST(Bipartitions, Enumeration) {
  EXPECT_EQ(members(bipartitions(2)), (std::vector<std::vector<int>>{{0}}));
  EXPECT_EQ(members(bipartitions(3)), (std::vector<std::vector<int>>{{0}, {1}, {2}}));
  EXPECT_EQ(members(bipartitions(4)),
            (std::vector<std::vector<int>>{{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}}));
  for (int n = 2; n <= 8; ++n) {
    const auto cuts = bipartitions(n);
    EXPECT_EQ(cuts.size(), (std::size_t{1} << (n - 1)) - 1);
    for (const auto& c : cuts) {
      EXPECT_LE(2 * c.size(), static_cast<std::size_t>(n));
      if (2 * c.size() == static_cast<std::size_t>(n)) EXPECT_TRUE(c.contains(0));
    }
  }
  EXPECT_THROW(bipartitions(1), Error);
}

TEST(PhiT, Examples) {
  const auto m = phi_T(3);
  EXPECT_NEAR(min_out(m, w_state(3).density()), 1 - 2 / std::sqrt(3.0), 1e-12);
  Vector zero = Vector::Zero(8);
  zero(0) = 1.0;
  EXPECT_NEAR(min_out(m, MpOperator::projector(m.dims, zero)), 1.0, 1e-12);
  EXPECT_GE(min_out(phi_T(4), w_state(4).density()), -1e-12);
  EXPECT_THROW(phi_T(2), Error);
}

TEST(PhiT, CompensationIsOptimal) {
  // Bell pair on parties 0,1 with party 2 in |0>
  Vector bell = Vector::Zero(8);
  bell(0) = bell(6) = 1 / std::sqrt(2.0);
  const auto rho = MpOperator::projector(SiteDims::uniform(3, 2), bell);
  for (double c : {0.5, 0.9, 0.99}) EXPECT_NEAR(min_out(phi_T(3, 2, c), rho), c - 1.0, 1e-12);
  EXPECT_GE(min_out(phi_T(3), rho), -1e-12);
}

TEST(PhiTx, GhzMinimum) {
  for (int n = 3; n <= 6; ++n) EXPECT_NEAR(min_out(phi_Tx(n), ghz(n, 2).density()), -0.5, 1e-10) << n;
  // three terms each give 1/8 plus the unit compensation
  EXPECT_NEAR(min_out(phi_Tx(3), maximally_mixed(SiteDims::uniform(3, 2))), 11.0 / 8.0, 1e-12);
  EXPECT_THROW(phi_Tx(2), Error);
}

TEST(XProjector, TwoQubitSupport) {
  const Matrix out = gme::apply(x_projector(2, 2), Matrix(Matrix::Ones(4, 4)));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool on = ((i == 0 || i == 3) && (j == 0 || j == 3)) || ((i == 1 || i == 2) && (j == 1 || j == 2));
      EXPECT_EQ(out(i, j), on ? cplx(1.0) : cplx(0.0)) << i << "," << j;
    }
  }
}

TEST(XProjector, RoutesAgreeAndIdempotent) {
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}, {4, 2}}) {
    const SiteDims dims = SiteDims::uniform(n, d);
    const auto rho = random_density(dims, static_cast<std::uint64_t>(10 * n + d));
    const MapExpr mask = x_projector(n, d);
    const MapExpr mix = x_projector_mixture(n, d);
    const auto a = gme::apply(mask, rho);
    EXPECT_LE(frobenius_distance(a, gme::apply(mix, rho)), 1e-10) << n << "," << d;
    EXPECT_LE(frobenius_distance(gme::apply(mask, a), a), 1e-12);
  }
  EXPECT_THROW(x_projector(1, 2), Error);
  EXPECT_THROW(x_projector_mixture(2, 1), Error);
}

TEST(Eta, Thresholds) {
  for (int n = 3; n <= 5; ++n) {
    const auto m = eta_map(n);
    const double want = (std::pow(2.0, n - 1) - 1) / (std::pow(2.0, n) - 1);
    EXPECT_NEAR(noise_threshold(m, ghz(n, 2)).p_star, want, 1e-6) << n;
    EXPECT_NEAR(*m.claim("threshold.ghz"), want, 1e-15);
    EXPECT_GE(min_out(m, maximally_mixed(m.dims)), -1e-12);
  }
}

TEST(PhiR, GhzAndThreshold) {
  for (int d = 2; d <= 4; ++d) {
    const auto m = phi_R(d);
    const auto g = ghz(3, d);
    const auto e = min_eig(gme::apply(m.expr, g.density()));
    EXPECT_NEAR(e.value, -1.0 / d, 1e-10);
    EXPECT_NEAR(std::abs(g.amplitudes().dot(e.vector)), 1.0, 1e-8);
    EXPECT_NEAR(noise_threshold(m, g).p_star, 1 - d * d / (3.0 * (d * d + 1)), 1e-6);
  }
  EXPECT_NEAR(noise_threshold(phi_R(2), ghz(3, 2)).p_star, 11.0 / 15.0, 1e-6);
}

TEST(PhiB, Ghz) {
  EXPECT_NEAR(min_out(phi_B(4), ghz(3, 4).density()), -0.25, 1e-10);
  EXPECT_THROW(phi_B(5), Error);
  EXPECT_THROW(phi_B(2), Error);
}

TEST(MuMap, CriticalVisibilities) {
  EXPECT_NEAR(noise_threshold(mu_map(3, 3), ghz(3, 3)).p_star, 4.0 / 13.0, 1e-6);
  EXPECT_NEAR(noise_threshold(mu_map(4, 3), ghz(4, 3)).p_star, 8.0 / 35.0, 1e-6);
  EXPECT_NEAR(noise_threshold(mu_map(3, 4), ghz(3, 4)).p_star, 7.0 / 39.0, 1e-6);
  EXPECT_NEAR(*mu_map(3, 3).claim("threshold.ghz"), 4.0 / 13.0, 1e-15);
  EXPECT_THROW(mu_map(3, 2), Error);
  EXPECT_THROW(mu_map(2, 3), Error);
}

TEST(MuMap, PptFamilyPoints) {
  const auto m = mu_map(3, 3);
  EXPECT_LT(min_out(m, ppt_family(PptFamilyParams::equal(0.1))), -1e-9);
  EXPECT_LT(min_out(m, ppt_family(PptFamilyParams::equal(0.3))), -1e-9);
  EXPECT_GE(min_out(m, ppt_family(PptFamilyParams::equal(0.34))), -1e-9);
}

TEST(OffDiagonalIdentity, ChoiSum) {
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 3}}) {
    const SiteDims dims = SiteDims::uniform(n, d);
    const MapExpr phi = choi_sum(n, d);
    const MapExpr proj = x_projector(n, d);
    const double cuts = std::pow(2.0, n - 1) - 1;
    const auto rho = random_hermitian(dims, static_cast<std::uint64_t>(n * d));
    const auto projected = gme::apply(proj, rho);
    const auto lhs = od_part(gme::apply(phi, projected));
    for (const auto& a : bipartitions(n)) {
      const MapExpr one = lift(choi_map(d, static_cast<int>(a.size())), a, dims);
      const auto rhs = od_part(gme::apply(one, projected)) * cplx(cuts);
      EXPECT_LE(frobenius_distance(lhs, rhs), 1e-10) << n << "," << d << " " << a.to_string();
    }
  }
}

TEST(OffDiagonalIdentity, QubitTransposeFlip) {
  for (int n : {3, 4}) {
    const SiteDims dims = SiteDims::uniform(n, 2);
    const auto rho = random_hermitian(dims, static_cast<std::uint64_t>(n));
    const auto projected = gme::apply(x_projector(n, 2), rho);
    const auto lhs = od_part(gme::apply(tx_sum(n), projected));
    const double cuts = std::pow(2.0, n - 1) - 1;
    for (const auto& a : bipartitions(n)) {
      const auto one = gme::apply(lift(tx_primitive(static_cast<int>(a.size())), a, dims), projected);
      EXPECT_LE(frobenius_distance(lhs, od_part(one) * cplx(cuts)), 1e-10) << a.to_string();
    }
  }
}

TEST(Witness, FromMap) {
  const auto w = witness_to_map(MpOperator::identity(SiteDims::uniform(3, 2)));
  const auto rho = random_density(w.dims, 3);
  EXPECT_NEAR(min_out(w, rho), 1.0, 1e-12);

  const MpOperator w0(SiteDims{2, 2}, Matrix::Identity(4, 4) * -0.2);
  EXPECT_NEAR(min_out(witness_to_map(w0), random_density(SiteDims{2, 2}, 1)), -0.2, 1e-12);

  Matrix nh = Matrix::Zero(4, 4);
  nh(0, 1) = 1.0;
  EXPECT_THROW(witness_to_map(MpOperator(SiteDims{2, 2}, nh)), Error);
}

TEST(Witness, PhiTxGhzWitness) {
  const auto m = phi_Tx(3);
  Vector minus = Vector::Zero(8);
  minus(0) = 1 / std::sqrt(2.0);
  minus(7) = -1 / std::sqrt(2.0);
  const PureState psi(m.dims, minus);
  const auto w = map_to_witness(m, psi);
  EXPECT_NEAR(trace_product(w, ghz(3, 2).density()).real(), -0.5, 1e-12);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto sigma = random_biseparable(m.dims, 1 + static_cast<int>(s % 4), s);
    EXPECT_GE(trace_product(w, sigma).real(), -1e-9);
  }
  EXPECT_THROW(map_to_witness(m, ghz(3, 3)), Error);
}

TEST(Witness, Consistency) {
  for (const auto& id : catalog_ids()) {
    const auto [n, d] = catalog_minimal_size(id);
    const auto m = catalog_map(id, n, d);
    const auto psi = random_pure(m.dims, 1);
    const auto rho = random_density(m.dims, 2);
    const auto w = map_to_witness(m, psi);
    const cplx lhs = trace_product(w, rho);
    const cplx rhs = psi.amplitudes().dot(gme::apply(m.expr, rho).matrix() * psi.amplitudes());
    EXPECT_LT(std::abs(lhs - rhs), 1e-10) << id;
  }
}

TEST(Witness, RoundTripThroughContraction) {
  const auto w0 = random_hermitian(SiteDims{2, 2}, 5);
  const auto m = witness_to_map(w0);
  const auto back = map_to_witness(m, random_pure(m.dims, 8));
  EXPECT_LT(frobenius_distance(back, w0), 1e-12);
}

TEST(Catalog, IdsAndSizes) {
  EXPECT_EQ(catalog_ids(), (std::vector<std::string>{"phi-t", "phi-tx", "eta", "phi-r", "phi-b", "mu-choi"}));
  for (const auto& id : catalog_ids()) {
    const auto [n, d] = catalog_minimal_size(id);
    const auto m = catalog_map(id, n, d);
    EXPECT_EQ(m.label, id);
    EXPECT_EQ(m.dims, SiteDims::uniform(n, d));
  }
  EXPECT_THROW(catalog_map("nope", 3, 2), Error);
  EXPECT_THROW(catalog_map("mu-choi", 3, 2), Error);
  EXPECT_THROW(catalog_map("phi-b", 3, 5), Error);
  EXPECT_THROW(catalog_map("phi-tx", 3, 3), Error);
}

TEST(Catalog, ClaimsMatchEvaluation) {
  for (const auto& id : catalog_ids()) {
    const auto [n, d] = catalog_minimal_size(id);
    const auto m = catalog_map(id, n, d);
    if (const auto v = m.claim("min_eig.ghz")) EXPECT_NEAR(min_out(m, ghz(n, d).density()), *v, 1e-10) << id;
    if (const auto v = m.claim("min_eig.w")) EXPECT_NEAR(min_out(m, w_state(n).density()), *v, 1e-10) << id;
    if (const auto v = m.claim("threshold.ghz")) EXPECT_NEAR(noise_threshold(m, ghz(n, d)).p_star, *v, 1e-6) << id;
    if (const auto v = m.claim("threshold.w")) EXPECT_NEAR(noise_threshold(m, w_state(n)).p_star, *v, 1e-6) << id;
  }
}

TEST(Catalog, PhiTxThresholdFormulaByBruteForce) {
  for (int n = 3; n <= 5; ++n) {
    const double q = std::pow(2.0, 2 * n - 2);
    const double want = (q - std::pow(2.0, n - 1) - 1) / (q - 1);
    EXPECT_NEAR(noise_threshold(phi_Tx(n), ghz(n, 2)).p_star, want, 1e-6) << n;
  }
}

TEST(BiseparablePositivity, AllCatalogMaps) {
  for (const auto& id : catalog_ids()) {
    const auto [n, d] = catalog_minimal_size(id);
    const auto m = catalog_map(id, n, d);
    const auto report = verify_biseparable_positivity(m, 300, 4, 17, 1e-9, 4);
    EXPECT_EQ(report.violations, 0u) << id << " worst " << report.worst_sample;
    EXPECT_GE(report.min_eig, -1e-9) << id;
  }
  for (const auto& m : {phi_T(4), phi_Tx(4), phi_R(3, 4), eta_map(4), mu_map(4, 3)}) {
    EXPECT_EQ(verify_biseparable_positivity(m, 100, 3, 5, 1e-9, 4).violations, 0u) << m.label;
  }
}

}  // namespace
}  // namespace gme
