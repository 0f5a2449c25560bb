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

#include "gme/detector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <Eigen/Eigenvalues>

namespace gme {

namespace {

using Index = Eigen::Index;

constexpr int kMaxBisection = 200;
constexpr int kPreGrid = 32;
// f(p) can sit at exactly zero on a whole interval; only clearly negative
// values count as a crossing
constexpr double kSignGuard = 1e-12;

bool negative(double v) { return v < -kSignGuard; }

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void require_dims(const GmeMap& m, const SiteDims& dims, const char* who) {
  if (dims != m.dims) {
    throw Error(std::string(who) + ": state dims " + dims.to_string() + " do not match map dims " + m.dims.to_string());
  }
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(count, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Verdict detect(const GmeMap& m, const MpOperator& rho, double tol) {
  require_dims(m, rho.dims(), "detect");
  if (!rho.is_density()) throw Error("detect: input is not a density matrix");
  const EigenPair e = min_eig(apply(m.expr, rho));
  return {e.value, e.vector, e.value < -tol, m.label, tol};
}

ThresholdResult noise_threshold(const GmeMap& m, const MpOperator& target, double tol) {
  require_dims(m, target.dims(), "noise_threshold");
  if (!target.is_density()) throw Error("noise_threshold: target is not a density matrix");
  if (!(tol > 0.0)) throw Error("noise_threshold: tolerance must be positive");

  // the map is linear, so f(p) = min eig of p A + (1 - p) B
  const Matrix a = apply(m.expr, target.matrix());
  const Matrix b = apply(m.expr, maximally_mixed(target.dims()).matrix());
  auto f = [&](double p) { return min_eigenvalue(p * a + (1.0 - p) * b); };

  const double f0 = f(0.0);
  const double f1 = f(1.0);
  if (negative(f0)) throw Error("noise_threshold: the maximally mixed state is detected; map is not a GME map");
  if (!negative(f1)) throw Error("noise_threshold: not detected at p=1 (min eig " + std::to_string(f1) + ")");

  ThresholdResult r;
  int changes = 0;
  bool prev = negative(f0);
  for (int k = 1; k < kPreGrid; ++k) {
    const bool cur = negative(f(static_cast<double>(k) / (kPreGrid - 1)));
    if (cur != prev) ++changes;
    prev = cur;
  }
  r.multiple_crossings = changes > 1;

  double lo = 0.0;
  double hi = 1.0;
  int it = 0;
  while (hi - lo > tol && it < kMaxBisection) {
    const double mid = 0.5 * (lo + hi);
    (negative(f(mid)) ? hi : lo) = mid;
    r.history.emplace_back(lo, hi);
    ++it;
  }
  r.lo = lo;
  r.hi = hi;
  r.iterations = it;
  r.p_star = 0.5 * (lo + hi);
  r.residual = f(r.p_star);
  return r;
}

ThresholdResult noise_threshold(const GmeMap& m, const PureState& psi, double tol) {
  return noise_threshold(m, psi.density(), tol);
}

std::vector<ScanRow> lambda_scan(const GmeMap& m, const std::vector<double>& grid, double noise, double tol,
                                 int threads) {
  if (!(noise >= 0.0 && noise <= 1.0)) throw Error("lambda_scan: noise weight must lie in [0, 1]");
  for (double l : grid) {
    if (!(l > 0.0)) throw Error("lambda_scan: every lambda must be positive");
  }
  std::vector<ScanRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const MpOperator rho = depolarized(ppt_family(PptFamilyParams::equal(grid[i])), 1.0 - noise);
    const Verdict v = detect(m, rho, tol);
    rows[i] = {grid[i], v.min_eig, v.detected};
  });
  return rows;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) { return seed + index; }

MpOperator biseparable_sample(const SiteDims& dims, int mixtures, std::uint64_t sample_seed) {
  if (mixtures < 1) throw Error("biseparable_sample: need at least one mixture term");
  const int k = 1 + static_cast<int>(sample_seed % static_cast<std::uint64_t>(mixtures));
  return random_biseparable(dims, k, sample_seed);
}

std::vector<std::pair<std::string, MpOperator>> adversarial_samples(const SiteDims& dims) {
  std::vector<std::pair<std::string, MpOperator>> out;
  const auto n = static_cast<int>(dims.parties());
  if (n < 3) return out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int d = std::min(dims[static_cast<std::size_t>(a)], dims[static_cast<std::size_t>(b)]);
      Vector v = Vector::Zero(static_cast<Index>(dims.total()));
      std::vector<int> digits(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < d; ++i) {
        digits[static_cast<std::size_t>(a)] = i;
        digits[static_cast<std::size_t>(b)] = i;
        v(static_cast<Index>(dims.index(digits))) = 1.0;
      }
      out.emplace_back("bell:" + std::to_string(a) + "," + std::to_string(b),
                       PureState(dims, std::move(v)).density());
    }
  }
  return out;
}

VerifyReport verify_biseparable_positivity(const GmeMap& m, std::size_t samples, int mixtures, std::uint64_t seed,
                                           double tol, int threads) {
  if (samples < 1) throw Error("verify_biseparable_positivity: need at least one sample");
  if (mixtures < 1) throw Error("verify_biseparable_positivity: need at least one mixture term");

  const auto adversarial = adversarial_samples(m.dims);
  std::vector<double> mins(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const MpOperator rho = biseparable_sample(m.dims, mixtures, sample_seed(seed, i));
    mins[i] = min_eigenvalue(apply(m.expr, rho.matrix()));
  });
  std::vector<double> adv_mins(adversarial.size());
  for (std::size_t i = 0; i < adversarial.size(); ++i) {
    adv_mins[i] = min_eigenvalue(apply(m.expr, adversarial[i].second.matrix()));
  }

  VerifyReport r;
  r.map_id = m.label;
  r.samples = samples;
  r.mixtures = mixtures;
  r.seed = seed;
  r.tolerance = tol;
  r.min_eig = std::numeric_limits<double>::infinity();
  auto record = [&](double v, const std::string& label, std::optional<std::uint64_t> s) {
    if (v < r.min_eig) {
      r.min_eig = v;
      r.worst_sample = label;
    }
    if (v < -tol) {
      ++r.violations;
      if (!r.reproducer) r.reproducer = label;
      if (s && !r.reproducer_seed) r.reproducer_seed = s;
    }
  };
  for (std::size_t i = 0; i < adversarial.size(); ++i) record(adv_mins[i], adversarial[i].first, std::nullopt);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t s = sample_seed(seed, i);
    record(mins[i], "seed:" + std::to_string(s), s);
  }
  return r;
}

PptReport ppt_check(const MpOperator& rho) {
  if (!rho.is_hermitian()) throw Error("ppt_check: input is not Hermitian");
  PptReport r;
  for (const auto& a : bipartitions(static_cast<int>(rho.dims().parties()))) {
    const double v = min_eigenvalue(partial_transpose(rho, a).matrix());
    r.cuts.push_back({a, v});
    if (v < -1e-10) r.ppt_all_cuts = false;
  }
  return r;
}

}  // namespace gme
