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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gme/gme.hpp"

namespace gme {

inline constexpr double kDefaultTolerance = 1e-9;

struct Verdict {
  double min_eig = 0.0;
  Vector eigvec;
  bool detected = false;  ///< min_eig < -tolerance
  std::string map_id;
  double tolerance = kDefaultTolerance;
};

/// Evaluates m on a density matrix and reports its smallest output eigenvalue.
Verdict detect(const GmeMap& m, const MpOperator& rho, double tol = kDefaultTolerance);

struct ThresholdResult {
  double p_star = 0.0;
  double lo = 0.0;  ///< largest visibility seen undetected
  double hi = 1.0;  ///< smallest visibility seen detected
  int iterations = 0;
  double residual = 0.0;  ///< output min eig at p_star
  bool multiple_crossings = false;
  std::vector<std::pair<double, double>> history;
};

/// Visibility p at which min_eig(m[p target + (1-p) I/D]) changes sign.
/// Throws when the target itself is not detected.
ThresholdResult noise_threshold(const GmeMap& m, const MpOperator& target, double tol = kDefaultTolerance);
ThresholdResult noise_threshold(const GmeMap& m, const PureState& psi, double tol = kDefaultTolerance);

struct ScanRow {
  double param = 0.0;
  double min_eig = 0.0;
  bool detected = false;
};

/// Detection over the PPT family rho(l, l, l) for every l in `grid`, each
/// mixed with white noise of weight `noise`: (1 - noise) rho + noise I/D.
std::vector<ScanRow> lambda_scan(const GmeMap& m, const std::vector<double>& grid, double noise = 0.0,
                                 double tol = kDefaultTolerance, int threads = 1);

struct VerifyReport {
  std::string map_id;
  std::size_t samples = 0;
  int mixtures = 1;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  double min_eig = 0.0;        ///< over all samples, random and adversarial
  std::string worst_sample;    ///< "seed:<s>" or "bell:<a>,<b>"
  std::size_t violations = 0;
  std::optional<std::uint64_t> reproducer_seed;  ///< first violating random sample
  std::optional<std::string> reproducer;         ///< first violating sample of any kind
};

/// Substream seed of random sample `index`; the number of mixture terms of
/// that sample is 1 + seed % mixtures.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);
MpOperator biseparable_sample(const SiteDims& dims, int mixtures, std::uint64_t sample_seed);

/// Biseparable product states |Phi+>_{ab} (x) |0...0> for every pair of parties.
std::vector<std::pair<std::string, MpOperator>> adversarial_samples(const SiteDims& dims);

/// Minimal output eigenvalue of m over seeded random biseparable states plus
/// the adversarial samples. Parallel and serial runs give identical reports.
VerifyReport verify_biseparable_positivity(const GmeMap& m, std::size_t samples, int mixtures, std::uint64_t seed,
                                           double tol = kDefaultTolerance, int threads = 1);

struct PptCut {
  PartySubset subset;
  double min_eig;
};

struct PptReport {
  std::vector<PptCut> cuts;
  bool ppt_all_cuts = true;  ///< every min eig >= -1e-10
};

PptReport ppt_check(const MpOperator& rho);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace gme
