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

#include "gme/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gme/random.hpp"

namespace gme {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class N>
MapExpr make(N n, std::size_t dim) {
  return {std::make_shared<const MapNode>(MapNode{std::move(n)}), dim};
}

std::size_t checked_dim(std::size_t dim, const char* who) {
  if (dim < 1) throw Error(std::string(who) + ": dimension must be positive");
  return dim;
}

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(std::string(who) + ": matrix must be square and nonempty");
}

bool hermitian(const Matrix& m, double tol) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

std::size_t int_pow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

/// Index of |m> after adding `shift` (mod d) to each of the `copies` base-d digits.
std::size_t shifted(std::size_t m, int d, int copies, int shift) {
  std::size_t out = 0;
  std::size_t place = 1;
  const auto ud = static_cast<std::size_t>(d);
  for (int c = 0; c < copies; ++c) {
    const auto digit = static_cast<int>(m % ud);
    m /= ud;
    out += static_cast<std::size_t>(((digit + shift) % d + d) % d) * place;
    place *= ud;
  }
  return out;
}

}  // namespace

/// Nonzero coefficients of a child map on the computational matrix units.
struct SparseSuperop {
  struct Entry {
    std::uint32_t a, b, c, d;
    cplx coef;
  };
  std::vector<Entry> entries;
};

struct LiftPlan {
  SplitIndex split;
  SparseSuperop superop;
  bool has_superop = false;
};

namespace {

constexpr std::size_t kSuperopMaxDim = 32;

Matrix eval(const MapExpr& m, const Matrix& x);

Matrix eval_lift(const node::Lift& l, const Matrix& x);

Matrix eval(const MapExpr& m, const Matrix& x) {
  const Index dim = ix(m.dim());
  return std::visit(
      overloaded{
          [&](const node::Identity&) -> Matrix { return x; },
          [&](const node::Transpose&) -> Matrix { return x.transpose(); },
          [&](const node::Reduction&) -> Matrix {
            Matrix out = -x;
            out.diagonal().array() += x.trace();
            return out / static_cast<double>(dim - 1);
          },
          [&](const node::BreuerHall& b) -> Matrix {
            Matrix out = -x - b.v * x.transpose() * b.v.adjoint();
            out.diagonal().array() += x.trace();
            return out / static_cast<double>(dim - 2);
          },
          [&](const node::Choi& c) -> Matrix {
            Matrix out = -x;
            for (Index i = 0; i < dim; ++i) out(i, i) += 2.0 * x(i, i);
            const int sign = c.adjoint ? 1 : -1;
            for (int j = 1; j <= c.d - 2; ++j) {
              for (Index i = 0; i < dim; ++i) {
                const std::size_t t = shifted(static_cast<std::size_t>(i), c.d, c.copies, sign * j);
                out(ix(t), ix(t)) += x(i, i);
              }
            }
            return out;
          },
          [&](const node::Conjugate& c) -> Matrix { return c.u * x * c.u.adjoint(); },
          [&](const node::DiagAll&) -> Matrix { return Matrix(x.diagonal().asDiagonal()); },
          [&](const node::TraceIdentity& t) -> Matrix {
            return Matrix::Identity(dim, dim) * (t.c.value() * x.trace());
          },
          [&](const node::SchurMask& s) -> Matrix { return s.mask.cwiseProduct(x); },
          [&](const node::WitnessContraction& w) -> Matrix {
            return Matrix::Identity(dim, dim) * (w.w * x).trace();
          },
          [&](const node::TraceEmbed& w) -> Matrix { return w.w * x.trace(); },
          [&](const node::Lift& l) -> Matrix { return eval_lift(l, x); },
          [&](const node::Sum& s) -> Matrix {
            Matrix out = eval(s.terms.front(), x);
            for (std::size_t i = 1; i < s.terms.size(); ++i) out += eval(s.terms[i], x);
            return out;
          },
          [&](const node::Scale& s) -> Matrix { return s.factor * eval(s.child, x); },
          [&](const node::Compose& c) -> Matrix { return eval(c.outer, eval(c.inner, x)); },
      },
      m.node().value);
}

SparseSuperop build_superop(const MapExpr& child) {
  const std::size_t da = child.dim();
  SparseSuperop s;
  Matrix unit = Matrix::Zero(ix(da), ix(da));
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < da; ++b) {
      unit(ix(a), ix(b)) = 1.0;
      const Matrix img = eval(child, unit);
      unit(ix(a), ix(b)) = 0.0;
      for (std::size_t c = 0; c < da; ++c) {
        for (std::size_t d = 0; d < da; ++d) {
          const cplx v = img(ix(c), ix(d));
          if (v != cplx(0.0)) {
            s.entries.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                 static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d), v});
          }
        }
      }
    }
  }
  return s;
}

Matrix eval_lift(const node::Lift& l, const Matrix& x) {
  const LiftPlan& cache = *l.plan;
  const SplitIndex& s = cache.split;
  const std::size_t da = s.front_dim;
  const std::size_t dr = s.back_dim;
  const std::size_t full = da * dr;

  // reorder so that the lifted parties form the slow index
  Matrix y(ix(full), ix(full));
  for (std::size_t k = 0; k < full; ++k) {
    for (std::size_t q = 0; q < full; ++q) y(ix(k), ix(q)) = x(ix(s.full[k]), ix(s.full[q]));
  }

  Matrix out = Matrix::Zero(ix(full), ix(full));
  const Index r = ix(dr);
  if (cache.has_superop) {
    for (const auto& e : cache.superop.entries) {
      out.block(ix(e.c * dr), ix(e.d * dr), r, r) += e.coef * y.block(ix(e.a * dr), ix(e.b * dr), r, r);
    }
  } else {
    Matrix block(ix(da), ix(da));
    for (std::size_t i = 0; i < dr; ++i) {
      for (std::size_t j = 0; j < dr; ++j) {
        for (std::size_t a = 0; a < da; ++a) {
          for (std::size_t b = 0; b < da; ++b) block(ix(a), ix(b)) = y(ix(a * dr + i), ix(b * dr + j));
        }
        const Matrix img = eval(l.child, block);
        for (std::size_t a = 0; a < da; ++a) {
          for (std::size_t b = 0; b < da; ++b) out(ix(a * dr + i), ix(b * dr + j)) = img(ix(a), ix(b));
        }
      }
    }
  }

  Matrix result(ix(full), ix(full));
  for (std::size_t k = 0; k < full; ++k) {
    for (std::size_t q = 0; q < full; ++q) result(ix(s.full[k]), ix(s.full[q])) = out(ix(k), ix(q));
  }
  return result;
}

}  // namespace

Rational Rational::reduced() const {
  if (den == 0) throw Error("Rational: zero denominator");
  const std::int64_t g = std::gcd(num, den);
  std::int64_t n = num / g;
  std::int64_t d = den / g;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return {n, d};
}

std::string MapExpr::kind() const {
  return std::visit(overloaded{
                        [](const node::Identity&) { return "identity"; },
                        [](const node::Transpose&) { return "transpose"; },
                        [](const node::Reduction&) { return "reduction"; },
                        [](const node::BreuerHall&) { return "breuer_hall"; },
                        [](const node::Choi&) { return "choi"; },
                        [](const node::Conjugate&) { return "conjugate"; },
                        [](const node::DiagAll&) { return "diag"; },
                        [](const node::TraceIdentity&) { return "trace_identity"; },
                        [](const node::SchurMask&) { return "schur_mask"; },
                        [](const node::WitnessContraction&) { return "witness_contraction"; },
                        [](const node::TraceEmbed&) { return "trace_embed"; },
                        [](const node::Lift&) { return "lift"; },
                        [](const node::Sum&) { return "sum"; },
                        [](const node::Scale&) { return "scale"; },
                        [](const node::Compose&) { return "compose"; },
                    },
                    node().value);
}

MapExpr identity_map(std::size_t dim) { return make(node::Identity{}, checked_dim(dim, "identity_map")); }

MapExpr transpose_map(std::size_t dim) { return make(node::Transpose{}, checked_dim(dim, "transpose_map")); }

MapExpr reduction_map(int d) {
  if (d < 2) throw Error("reduction_map: need d >= 2");
  return make(node::Reduction{}, static_cast<std::size_t>(d));
}

Matrix default_skew_unitary(int d) {
  if (d < 2 || d % 2 != 0) throw Error("default_skew_unitary: need even d >= 2");
  const Index h = d / 2;
  Matrix v = Matrix::Zero(d, d);
  v.topRightCorner(h, h) = Matrix::Identity(h, h);
  v.bottomLeftCorner(h, h) = -Matrix::Identity(h, h);
  return v;
}

MapExpr breuer_hall_map(int d, const std::optional<Matrix>& v) {
  if (d < 4 || d % 2 != 0) throw Error("breuer_hall_map: need even d >= 4");
  Matrix u = v ? *v : default_skew_unitary(d);
  if (u.rows() != d || u.cols() != d) throw Error("breuer_hall_map: V must be d x d");
  if ((u * u.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error("breuer_hall_map: V must be unitary");
  }
  if ((u + u.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw Error("breuer_hall_map: V must be skew-symmetric");
  return make(node::BreuerHall{std::move(u)}, static_cast<std::size_t>(d));
}

MapExpr choi_map(int d, int copies) {
  if (d < 3) throw Error("choi_map: need d >= 3");
  if (copies < 1) throw Error("choi_map: need copies >= 1");
  return make(node::Choi{d, copies, false}, int_pow(d, copies));
}

MapExpr conjugate_map(const Matrix& u) {
  require_square(u, "conjugate_map");
  return make(node::Conjugate{u}, static_cast<std::size_t>(u.rows()));
}

MapExpr diag_map(std::size_t dim) { return make(node::DiagAll{}, checked_dim(dim, "diag_map")); }

MapExpr trace_identity_map(std::size_t dim, Rational c) {
  return make(node::TraceIdentity{c.reduced()}, checked_dim(dim, "trace_identity_map"));
}

MapExpr schur_mask_map(const Matrix& mask) {
  require_square(mask, "schur_mask_map");
  return make(node::SchurMask{mask}, static_cast<std::size_t>(mask.rows()));
}

MapExpr witness_contraction_map(const Matrix& w) {
  require_square(w, "witness_contraction_map");
  if (!hermitian(w, 1e-10)) throw Error("witness_contraction_map: W must be Hermitian");
  return make(node::WitnessContraction{w}, static_cast<std::size_t>(w.rows()));
}

MapExpr trace_embed_map(const Matrix& w) {
  require_square(w, "trace_embed_map");
  if (!hermitian(w, 1e-10)) throw Error("trace_embed_map: W must be Hermitian");
  return make(node::TraceEmbed{w}, static_cast<std::size_t>(w.rows()));
}

MapExpr lift(const MapExpr& child, const PartySubset& subset, const SiteDims& dims) {
  if (subset.parties() != dims.parties()) throw Error("lift: subset does not match the party count");
  if (dims.total_over(subset.members()) != child.dim()) {
    throw Error("lift: child dimension " + std::to_string(child.dim()) + " does not match parties " +
                subset.to_string() + " of " + dims.to_string());
  }
  auto cache = std::make_shared<LiftPlan>();
  cache->split = split_index(dims, subset.members());
  if (child.dim() <= kSuperopMaxDim) {
    cache->superop = build_superop(child);
    cache->has_superop = true;
  }
  return make(node::Lift{child, subset, dims, std::move(cache)}, dims.total());
}

MapExpr sum(const std::vector<MapExpr>& terms) {
  if (terms.empty()) throw Error("sum: need at least one term");
  for (const auto& t : terms) {
    if (t.dim() != terms.front().dim()) throw Error("sum: terms act on different dimensions");
  }
  return make(node::Sum{terms}, terms.front().dim());
}

MapExpr scale(double factor, const MapExpr& child) {
  if (!std::isfinite(factor)) throw Error("scale: factor must be finite");
  return make(node::Scale{factor, child}, child.dim());
}

MapExpr compose(const MapExpr& outer, const MapExpr& inner) {
  if (outer.dim() != inner.dim()) throw Error("compose: maps act on different dimensions");
  return make(node::Compose{outer, inner}, outer.dim());
}

Matrix apply(const MapExpr& m, const Matrix& x) {
  if (x.rows() != x.cols() || static_cast<std::size_t>(x.rows()) != m.dim()) {
    throw Error("apply: operator size " + std::to_string(x.rows()) + " does not match map dimension " +
                std::to_string(m.dim()));
  }
  return eval(m, x);
}

MpOperator apply(const MapExpr& m, const MpOperator& op) { return {op.dims(), apply(m, op.matrix())}; }

MapExpr dual(const MapExpr& m) {
  const std::size_t dim = m.dim();
  return std::visit(
      overloaded{
          [&](const node::Identity&) { return m; },
          [&](const node::Transpose&) { return m; },
          [&](const node::Reduction&) { return m; },
          [&](const node::BreuerHall& b) {
            // (V o T)^* = T o Conj(V^dag)
            const MapExpr vt = compose(transpose_map(dim), conjugate_map(b.v.adjoint()));
            const MapExpr inner = sum({trace_identity_map(dim, {1, 1}), scale(-1.0, identity_map(dim)), scale(-1.0, vt)});
            return scale(1.0 / static_cast<double>(dim - 2), inner);
          },
          [&](const node::Choi& c) { return make(node::Choi{c.d, c.copies, !c.adjoint}, dim); },
          [&](const node::Conjugate& c) { return conjugate_map(c.u.adjoint()); },
          [&](const node::DiagAll&) { return m; },
          [&](const node::TraceIdentity&) { return m; },
          [&](const node::SchurMask& s) { return schur_mask_map(s.mask.transpose()); },
          [&](const node::WitnessContraction& w) { return trace_embed_map(w.w); },
          [&](const node::TraceEmbed& w) { return witness_contraction_map(w.w); },
          [&](const node::Lift& l) { return lift(dual(l.child), l.subset, l.dims); },
          [&](const node::Sum& s) {
            std::vector<MapExpr> terms;
            terms.reserve(s.terms.size());
            for (const auto& t : s.terms) terms.push_back(dual(t));
            return sum(terms);
          },
          [&](const node::Scale& s) { return scale(s.factor, dual(s.child)); },
          [&](const node::Compose& c) { return compose(dual(c.inner), dual(c.outer)); },
      },
      m.node().value);
}

std::size_t node_count(const MapExpr& m) {
  return 1 + std::visit(overloaded{
                            [](const node::Lift& l) { return node_count(l.child); },
                            [](const node::Sum& s) {
                              std::size_t c = 0;
                              for (const auto& t : s.terms) c += node_count(t);
                              return c;
                            },
                            [](const node::Scale& s) { return node_count(s.child); },
                            [](const node::Compose& c) { return node_count(c.outer) + node_count(c.inner); },
                            [](const auto&) { return std::size_t{0}; },
                        },
                        m.node().value);
}

MuValue mu_constant(const MapExpr& primitive) {
  const auto d = static_cast<double>(primitive.dim());
  return std::visit(overloaded{
                        [](const node::Transpose&) { return MuValue{0.5}; },
                        [&](const node::Reduction&) { return MuValue{1.0 / d}; },
                        [&](const node::BreuerHall&) { return MuValue{1.0 / d}; },
                        [](const auto&) -> MuValue {
                          throw Error("mu_constant: closed form known only for transpose, reduction and "
                                      "breuer_hall primitives");
                        },
                    },
                    primitive.node().value);
}

MuEstimate estimate_mu(const MapExpr& m, int samples, std::uint64_t seed, int companion_dim) {
  if (samples < 1) throw Error("estimate_mu: need at least one sample");
  const int d = static_cast<int>(m.dim());
  const int c = companion_dim == 0 ? d : companion_dim;
  if (d < 2 || c < 2) throw Error("estimate_mu: map and companion dimensions must be at least 2");
  const SiteDims dims{d, c};
  const MapExpr lifted = lift(m, PartySubset({0}, 2), dims);

  auto negativity = [&](const Vector& v) {
    const MpOperator out = apply(lifted, MpOperator::projector(dims, v));
    return -min_eig(out).value;
  };

  MuEstimate est;
  est.ansatz = -std::numeric_limits<double>::infinity();
  for (int r = 1; r <= std::min(d, c); ++r) {
    Vector omega = Vector::Zero(ix(dims.total()));
    for (int i = 0; i < r; ++i) omega(i * c + i) = 1.0;
    est.ansatz = std::max(est.ansatz, negativity(omega.normalized()));
  }

  est.best_sampled = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(s));
    Vector v(ix(dims.total()));
    for (Index i = 0; i < v.size(); ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      v(i) = cplx(re, im);
    }
    est.best_sampled = std::max(est.best_sampled, negativity(v.normalized()));
  }
  est.samples = static_cast<std::size_t>(samples);
  est.value = std::max({0.0, est.ansatz, est.best_sampled});
  return est;
}

}  // namespace gme
