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

// Independent reference implementations used only by the tests. None of
// these share code paths with the library's structural evaluation.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gme/maps.hpp"
#include "gme/tensor.hpp"

namespace gme::oracle {

using Index = Eigen::Index;

/// D^2 x D^2 matrix S with S[(i,j),(k,l)] = m[|k><l|]_{ij}.
inline Matrix superoperator(const MapExpr& m) {
  const auto d = static_cast<Index>(m.dim());
  Matrix s = Matrix::Zero(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    for (Index l = 0; l < d; ++l) {
      unit(k, l) = 1.0;
      const Matrix img = gme::apply(m, unit);
      unit(k, l) = 0.0;
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) s(i * d + j, k * d + l) = img(i, j);
      }
    }
  }
  return s;
}

/// Dual with respect to Tr(s m[r]): S*[(l,k),(j,i)] = S[(i,j),(k,l)].
inline Matrix dual_superoperator(const Matrix& s, Index d) {
  Matrix out(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      for (Index k = 0; k < d; ++k) {
        for (Index l = 0; l < d; ++l) out(l * d + k, j * d + i) = s(i * d + j, k * d + l);
      }
    }
  }
  return out;
}

/// Entry-by-entry partial transpose through explicit digit arithmetic.
inline Matrix partial_transpose_digits(const Matrix& m, const SiteDims& dims, const std::vector<int>& parties) {
  const std::size_t total = dims.total();
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t c = 0; c < total; ++c) {
      auto dr = dims.digits(r);
      auto dc = dims.digits(c);
      for (int p : parties) std::swap(dr[static_cast<std::size_t>(p)], dc[static_cast<std::size_t>(p)]);
      out(static_cast<Index>(dims.index(dr)), static_cast<Index>(dims.index(dc))) = m(static_cast<Index>(r), static_cast<Index>(c));
    }
  }
  return out;
}

/// Reference lift: (child (x) I) with the child on `parties`, by summing over
/// matrix units of the full space.
inline Matrix lift_by_units(const MapExpr& child, const Matrix& x, const SiteDims& dims, const std::vector<int>& parties) {
  const std::size_t total = dims.total();
  const SiteDims da = dims.restricted(parties);
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  Matrix unit = Matrix::Zero(static_cast<Index>(da.total()), static_cast<Index>(da.total()));
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t c = 0; c < total; ++c) {
      const cplx v = x(static_cast<Index>(r), static_cast<Index>(c));
      if (v == cplx(0.0)) continue;
      const auto dr = dims.digits(r);
      const auto dc = dims.digits(c);
      std::vector<int> ar, ac;
      for (int p : parties) {
        ar.push_back(dr[static_cast<std::size_t>(p)]);
        ac.push_back(dc[static_cast<std::size_t>(p)]);
      }
      const auto ia = static_cast<Index>(da.index(ar));
      const auto ja = static_cast<Index>(da.index(ac));
      unit(ia, ja) = 1.0;
      const Matrix img = gme::apply(child, unit);
      unit(ia, ja) = 0.0;
      for (Index a = 0; a < img.rows(); ++a) {
        for (Index b = 0; b < img.cols(); ++b) {
          if (img(a, b) == cplx(0.0)) continue;
          auto orow = dr;
          auto ocol = dc;
          const auto ga = da.digits(static_cast<std::size_t>(a));
          const auto gb = da.digits(static_cast<std::size_t>(b));
          for (std::size_t q = 0; q < parties.size(); ++q) {
            orow[static_cast<std::size_t>(parties[q])] = ga[q];
            ocol[static_cast<std::size_t>(parties[q])] = gb[q];
          }
          out(static_cast<Index>(dims.index(orow)), static_cast<Index>(dims.index(ocol))) += v * img(a, b);
        }
      }
    }
  }
  return out;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace gme::oracle
