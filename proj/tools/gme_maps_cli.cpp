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

// gme-maps: detection, thresholds, scans, mu estimates, verification and
// witness export from the command line.
//
// Exit codes: 0 success (including "not detected"), 1 runtime failure,
// 2 configuration error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gme/detector.hpp"
#include "gme/io.hpp"

namespace {

using gme::io::json;

struct RunConfig {
  std::string map_id;
  std::string map_file;
  int n = 3;
  int d = 0;  // 0: smallest valid d for the map
  std::string state = "ghz";
  std::string state_file;
  std::string witness_file;
  double noise = 1.0;
  double lambda = 1.0 / 9.0;
  double tol = gme::kDefaultTolerance;
  std::uint64_t seed = 0;
  int samples = 1000;
  int mixtures = 4;
  int companion = 0;
  std::string output;
  std::string format;
  int threads = 0;
  std::string grid = "0.01:0.40:0.01";
  std::string family = "ppt-qutrit";
  double white_noise = 0.0;
  std::string primitive = "transpose";
  std::string save_map;
};

[[noreturn]] void config_error(const std::string& msg) { throw gme::Error(msg); }

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("GME_MAPS_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    config_error(std::string("GME_MAPS_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

int resolve_d(const RunConfig& cfg) {
  if (cfg.d != 0) return cfg.d;
  if (!cfg.map_id.empty()) {
    for (const auto& id : gme::catalog_ids()) {
      if (id == cfg.map_id) return gme::catalog_minimal_size(id).second;
    }
  }
  return 2;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      config_error("--grid must be start:stop:step, got '" + text + "'");
    }
  }
  if (parts.size() != 3) config_error("--grid must be start:stop:step, got '" + text + "'");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0)) config_error("--grid step must be positive");
  std::vector<double> out;
  // stop is exclusive; the index form avoids accumulated rounding
  for (long k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v >= stop - 1e-12 * step) break;
    out.push_back(v);
    if (out.size() > 1000000) config_error("--grid has too many points");
  }
  return out;
}

/// Map from --map-file, --witness-file or the catalog.
gme::GmeMap build_map(const RunConfig& cfg, const gme::SiteDims* state_dims) {
  if (!cfg.witness_file.empty()) {
    return gme::witness_to_map(gme::io::density_from_json(gme::io::read_json_file(cfg.witness_file)));
  }
  if (!cfg.map_file.empty()) {
    const gme::MapExpr expr = gme::io::map_from_json(gme::io::read_json_file(cfg.map_file));
    const gme::SiteDims dims = state_dims ? *state_dims : gme::SiteDims::uniform(cfg.n, resolve_d(cfg));
    if (dims.total() != expr.dim()) config_error("--map-file dimension does not match the state");
    return {expr, dims, "file:" + cfg.map_file, {}};
  }
  if (cfg.map_id.empty()) config_error("one of --map, --map-file or --witness-file is required");
  return gme::catalog_map(cfg.map_id, cfg.n, resolve_d(cfg));
}

/// Target state before mixing with white noise.
gme::MpOperator build_target(const RunConfig& cfg, std::optional<gme::PureState>* pure = nullptr) {
  if (!cfg.state_file.empty()) {
    auto doc = gme::io::state_from_json(gme::io::read_json_file(cfg.state_file));
    if (auto* p = std::get_if<gme::PureState>(&doc)) {
      if (pure) *pure = *p;
      return p->density();
    }
    return std::get<gme::MpOperator>(doc);
  }
  const int d = resolve_d(cfg);
  std::optional<gme::PureState> psi;
  if (cfg.state == "ghz") {
    psi = gme::ghz(cfg.n, d);
  } else if (cfg.state == "w") {
    if (d != 2) config_error("--state w is defined for qubits only");
    psi = gme::w_state(cfg.n);
  } else if (cfg.state == "ppt") {
    if (cfg.n != 3 || d != 3) config_error("--state ppt needs --n 3 --d 3");
    return gme::ppt_family(gme::PptFamilyParams::equal(cfg.lambda));
  } else if (cfg.state == "mixed") {
    return gme::maximally_mixed(gme::SiteDims::uniform(cfg.n, d));
  } else {
    config_error("unknown --state '" + cfg.state + "' (ghz, w, ppt, mixed)");
  }
  if (pure) *pure = psi;
  return psi->density();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw gme::Error("cannot write '" + cfg.output + "'");
  out << text;
}

void emit_json(const RunConfig& cfg, const json& doc) { emit(cfg, doc.dump(2) + "\n"); }

std::string format_of(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "json" && f != "csv") config_error("--format must be json or csv");
  return f;
}

void maybe_save_map(const RunConfig& cfg, const gme::GmeMap& m) {
  if (!cfg.save_map.empty()) gme::io::write_json_file(cfg.save_map, gme::io::to_json(m.expr));
}

int cmd_detect(const RunConfig& cfg) {
  const gme::MpOperator rho = gme::depolarized(build_target(cfg), cfg.noise);
  const gme::GmeMap m = build_map(cfg, &rho.dims());
  maybe_save_map(cfg, m);
  const gme::Verdict v = gme::detect(m, rho, cfg.tol);
  if (format_of(cfg, "json") == "csv") {
    std::ostringstream os;
    gme::io::write_csv(os, {{cfg.noise, v.min_eig, v.detected}});
    emit(cfg, os.str());
  } else {
    json doc = gme::io::to_json(v);
    doc["dims"] = m.dims.values();
    doc["noise"] = cfg.noise;
    emit_json(cfg, doc);
  }
  return 0;
}

int cmd_threshold(const RunConfig& cfg) {
  std::optional<gme::PureState> psi;
  const gme::MpOperator target = build_target(cfg, &psi);
  const gme::GmeMap m = build_map(cfg, &target.dims());
  maybe_save_map(cfg, m);
  const gme::ThresholdResult r = gme::noise_threshold(m, target, cfg.tol);
  json doc = gme::io::to_json(r);
  doc["map"] = m.label;
  doc["dims"] = m.dims.values();
  if (cfg.state_file.empty() && cfg.state == "ghz") {
    if (auto c = m.claim("threshold.ghz")) doc["closed_form"] = *c;
  }
  if (cfg.state_file.empty() && cfg.state == "w") {
    if (auto c = m.claim("threshold.w")) doc["closed_form"] = *c;
  }
  emit_json(cfg, doc);
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  if (cfg.family != "ppt-qutrit") config_error("unknown --family '" + cfg.family + "' (ppt-qutrit)");
  if (cfg.n != 3 || resolve_d(cfg) != 3) config_error("--family ppt-qutrit needs --n 3 --d 3");
  const gme::GmeMap m = build_map(cfg, nullptr);
  maybe_save_map(cfg, m);
  const auto rows = gme::lambda_scan(m, parse_grid(cfg.grid), cfg.white_noise, cfg.tol, resolve_threads(cfg.threads));
  if (format_of(cfg, "csv") == "csv") {
    std::ostringstream os;
    gme::io::write_csv(os, rows);
    emit(cfg, os.str());
  } else {
    emit_json(cfg, {{"map", m.label}, {"white_noise", cfg.white_noise}, {"rows", gme::io::to_json(rows)}});
  }
  return 0;
}

gme::MapExpr primitive_map(const RunConfig& cfg) {
  const int d = cfg.d == 0 ? 2 : cfg.d;
  if (cfg.primitive == "transpose") return gme::transpose_map(static_cast<std::size_t>(d));
  if (cfg.primitive == "reduction") return gme::reduction_map(d);
  if (cfg.primitive == "breuer-hall") return gme::breuer_hall_map(d);
  if (cfg.primitive == "choi") return gme::choi_map(d);
  if (cfg.primitive == "identity") return gme::identity_map(static_cast<std::size_t>(d));
  config_error("unknown --primitive '" + cfg.primitive + "' (transpose, reduction, breuer-hall, choi, identity)");
}

int cmd_mu(const RunConfig& cfg) {
  const gme::MapExpr m = primitive_map(cfg);
  const gme::MuEstimate e = gme::estimate_mu(m, cfg.samples, cfg.seed, cfg.companion);
  json doc = gme::io::to_json(e);
  doc["primitive"] = cfg.primitive;
  doc["d"] = m.dim();
  doc["seed"] = cfg.seed;
  if (cfg.primitive == "transpose" || cfg.primitive == "reduction" || cfg.primitive == "breuer-hall") {
    doc["closed_form"] = gme::mu_constant(m).value;
  }
  emit_json(cfg, doc);
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const gme::GmeMap m = build_map(cfg, nullptr);
  maybe_save_map(cfg, m);
  if (cfg.samples < 1) config_error("--samples must be at least 1");
  const gme::VerifyReport r = gme::verify_biseparable_positivity(m, static_cast<std::size_t>(cfg.samples), cfg.mixtures,
                                                                 cfg.seed, cfg.tol, resolve_threads(cfg.threads));
  emit_json(cfg, gme::io::to_json(r));
  return 0;
}

int cmd_witness(const RunConfig& cfg) {
  const gme::MpOperator rho = gme::depolarized(build_target(cfg), cfg.noise);
  const gme::GmeMap m = build_map(cfg, &rho.dims());
  maybe_save_map(cfg, m);
  const gme::Verdict v = gme::detect(m, rho, cfg.tol);
  if (!v.detected) {
    std::cerr << "gme-maps: state not detected (min eig " << v.min_eig << "); witness exported anyway\n";
  }
  const gme::MpOperator w = gme::map_to_witness(m, gme::PureState(m.dims, v.eigvec));
  emit_json(cfg, gme::io::to_json(w));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gme-maps: genuine multipartite entanglement detection with lifted positive maps"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::string maps_help = "catalog id: phi-t, phi-tx, eta, phi-r, phi-b, mu-choi";
  auto add_map = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.map_id, maps_help);
    sub->add_option("--map-file", cfg.map_file, "mapexpr-v1 JSON map");
    sub->add_option("--n", cfg.n, "number of parties")->capture_default_str();
    sub->add_option("--d", cfg.d, "local dimension (default: smallest valid for the map)");
    sub->add_option("--tol", cfg.tol, "detection tolerance")->capture_default_str();
    sub->add_option("--save-map", cfg.save_map, "write the map as mapexpr-v1 JSON");
  };
  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state, "ghz, w, ppt or mixed")->capture_default_str();
    sub->add_option("--state-file", cfg.state_file, "mpop-v1 JSON state");
    sub->add_option("--lambda", cfg.lambda, "parameter of --state ppt")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "number of random samples")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (fallback: GME_MAPS_THREADS)");
  };

  auto* detect = app.add_subcommand("detect", "evaluate a map on a state");
  add_map(detect);
  add_state(detect);
  add_output(detect);
  detect->add_option("--noise", cfg.noise, "visibility p of p target + (1-p) I/D")->capture_default_str();
  detect->add_option("--witness-file", cfg.witness_file, "mpop-v1 witness W, used as rho -> Tr(W rho) I");

  auto* threshold = app.add_subcommand("threshold", "critical visibility by bisection");
  add_map(threshold);
  add_state(threshold);
  add_output(threshold);

  auto* scan = app.add_subcommand("scan", "detection over the PPT qutrit family");
  add_map(scan);
  add_output(scan);
  scan->add_option("--family", cfg.family, "state family")->capture_default_str();
  scan->add_option("--grid", cfg.grid, "start:stop:step, stop exclusive")->capture_default_str();
  scan->add_option("--white-noise", cfg.white_noise, "weight q of (1-q) rho + q I/D")->capture_default_str();
  scan->add_option("--threads", cfg.threads, "worker threads (fallback: GME_MAPS_THREADS)");

  auto* mu = app.add_subcommand("mu", "estimate the minimal output eigenvalue of a primitive map");
  mu->add_option("--primitive", cfg.primitive, "transpose, reduction, breuer-hall, choi or identity")
      ->capture_default_str();
  mu->add_option("--d", cfg.d, "dimension of the primitive (default 2)");
  mu->add_option("--companion", cfg.companion, "companion dimension (default d)");
  add_run(mu);
  add_output(mu);

  auto* verify = app.add_subcommand("verify", "sample biseparable states and check positivity");
  add_map(verify);
  add_run(verify);
  add_output(verify);
  verify->add_option("--mixtures", cfg.mixtures, "maximal number of product terms per sample")->capture_default_str();

  auto* witness = app.add_subcommand("witness", "export the witness at the detecting eigenvector");
  add_map(witness);
  add_state(witness);
  add_output(witness);
  witness->add_option("--noise", cfg.noise, "visibility p of p target + (1-p) I/D")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*detect) return cmd_detect(cfg);
    if (*threshold) return cmd_threshold(cfg);
    if (*scan) return cmd_scan(cfg);
    if (*mu) return cmd_mu(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*witness) return cmd_witness(cfg);
  } catch (const gme::Error& e) {
    std::cerr << "gme-maps: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gme-maps: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
