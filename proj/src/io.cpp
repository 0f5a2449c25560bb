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

#include "gme/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace gme::io {

namespace {

using Index = Eigen::Index;

constexpr const char* kStateFormat = "mpop-v1";
constexpr const char* kMapFormat = "mapexpr-v1";

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json complex_list(const cplx* data, std::size_t count) {
  json out = json::array();
  for (std::size_t i = 0; i < count; ++i) out.push_back({data[i].real(), data[i].imag()});
  return out;
}

json row_major(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return out;
}

std::vector<cplx> parse_complex_list(const json& arr, const char* field) {
  if (!arr.is_array()) throw Error(std::string("\"") + field + "\" must be an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(std::string("\"") + field + "\" entries must be [re, im] number pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

Matrix square_from(const std::vector<cplx>& flat, std::size_t side, const char* field) {
  if (flat.size() != side * side) {
    throw Error(std::string("\"") + field + "\" has " + std::to_string(flat.size()) + " entries, expected " +
                std::to_string(side * side));
  }
  Matrix m(static_cast<Index>(side), static_cast<Index>(side));
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = flat[i * side + j];
  }
  return m;
}

json matrix_json(const Matrix& m) { return {{"side", m.rows()}, {"entries", row_major(m)}}; }

Matrix matrix_from(const json& j, const char* field) {
  if (!j.is_object() || !j.contains("side") || !j.contains("entries")) {
    throw Error(std::string("map node field \"") + field + "\" must be {\"side\":n,\"entries\":[...]}");
  }
  return square_from(parse_complex_list(j.at("entries"), field), j.at("side").get<std::size_t>(), field);
}

SiteDims dims_from(const json& j) {
  if (!j.is_array()) throw Error("\"dims\" must be an array of integers");
  std::vector<int> dims;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw Error("\"dims\" must be an array of integers");
    dims.push_back(e.get<int>());
  }
  return SiteDims(std::move(dims));
}

void require_format(const json& doc, const char* format) {
  if (!doc.is_object()) throw Error("document must be a JSON object");
  if (!doc.contains("format") || doc.at("format") != format) {
    throw Error(std::string("document \"format\" must be \"") + format + "\"");
  }
}

json node_json(const MapExpr& m) {
  const std::size_t dim = m.dim();
  json j = std::visit(
      overloaded{
          [&](const node::Identity&) { return json{{"dim", dim}}; },
          [&](const node::Transpose&) { return json{{"dim", dim}}; },
          [&](const node::Reduction&) { return json{{"dim", dim}}; },
          [&](const node::BreuerHall& b) { return json{{"dim", dim}, {"v", matrix_json(b.v)}}; },
          [&](const node::Choi& c) { return json{{"d", c.d}, {"copies", c.copies}, {"adjoint", c.adjoint}}; },
          [&](const node::Conjugate& c) { return json{{"u", matrix_json(c.u)}}; },
          [&](const node::DiagAll&) { return json{{"dim", dim}}; },
          [&](const node::TraceIdentity& t) { return json{{"dim", dim}, {"c", {t.c.num, t.c.den}}}; },
          [&](const node::SchurMask& s) { return json{{"mask", matrix_json(s.mask)}}; },
          [&](const node::WitnessContraction& w) { return json{{"w", matrix_json(w.w)}}; },
          [&](const node::TraceEmbed& w) { return json{{"w", matrix_json(w.w)}}; },
          [&](const node::Lift& l) {
            return json{{"subset", l.subset.members()}, {"dims", l.dims.values()}, {"child", node_json(l.child)}};
          },
          [&](const node::Sum& s) {
            json terms = json::array();
            for (const auto& t : s.terms) terms.push_back(node_json(t));
            return json{{"terms", terms}};
          },
          [&](const node::Scale& s) { return json{{"factor", s.factor}, {"child", node_json(s.child)}}; },
          [&](const node::Compose& c) { return json{{"outer", node_json(c.outer)}, {"inner", node_json(c.inner)}}; },
      },
      m.node().value);
  j["node"] = m.kind();
  return j;
}

MapExpr node_from(const json& j) {
  if (!j.is_object() || !j.contains("node")) throw Error("map node must be an object with a \"node\" tag");
  const std::string tag = j.at("node").get<std::string>();
  auto dim = [&] { return j.at("dim").get<std::size_t>(); };
  if (tag == "identity") return identity_map(dim());
  if (tag == "transpose") return transpose_map(dim());
  if (tag == "reduction") return reduction_map(j.at("dim").get<int>());
  if (tag == "breuer_hall") return breuer_hall_map(j.at("dim").get<int>(), matrix_from(j.at("v"), "v"));
  if (tag == "choi") {
    const MapExpr c = choi_map(j.at("d").get<int>(), j.value("copies", 1));
    return j.value("adjoint", false) ? dual(c) : c;
  }
  if (tag == "conjugate") return conjugate_map(matrix_from(j.at("u"), "u"));
  if (tag == "diag") return diag_map(dim());
  if (tag == "trace_identity") {
    const auto& c = j.at("c");
    return trace_identity_map(dim(), {c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>()});
  }
  if (tag == "schur_mask") return schur_mask_map(matrix_from(j.at("mask"), "mask"));
  if (tag == "witness_contraction") return witness_contraction_map(matrix_from(j.at("w"), "w"));
  if (tag == "trace_embed") return trace_embed_map(matrix_from(j.at("w"), "w"));
  if (tag == "lift") {
    const SiteDims dims = dims_from(j.at("dims"));
    return lift(node_from(j.at("child")), PartySubset(j.at("subset").get<std::vector<int>>(), dims.parties()), dims);
  }
  if (tag == "sum") {
    std::vector<MapExpr> terms;
    for (const auto& t : j.at("terms")) terms.push_back(node_from(t));
    return sum(terms);
  }
  if (tag == "scale") return scale(j.at("factor").get<double>(), node_from(j.at("child")));
  if (tag == "compose") return compose(node_from(j.at("outer")), node_from(j.at("inner")));
  throw Error("unknown map node \"" + tag + "\"");
}

/// Shortest representation that parses back to the same double.
std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

}  // namespace

json to_json(const MpOperator& op) {
  return {{"format", kStateFormat}, {"dims", op.dims().values()}, {"matrix", row_major(op.matrix())}};
}

json to_json(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return {{"format", kStateFormat},
          {"dims", psi.dims().values()},
          {"vector", complex_list(v.data(), static_cast<std::size_t>(v.size()))}};
}

std::variant<MpOperator, PureState> state_from_json(const json& doc) {
  try {
    require_format(doc, kStateFormat);
    if (!doc.contains("dims")) throw Error("state document lacks \"dims\"");
    const SiteDims dims = dims_from(doc.at("dims"));
    const bool has_matrix = doc.contains("matrix");
    const bool has_vector = doc.contains("vector");
    if (has_matrix == has_vector) throw Error("state document needs exactly one of \"matrix\" and \"vector\"");
    if (has_vector) {
      const auto flat = parse_complex_list(doc.at("vector"), "vector");
      Vector v(static_cast<Index>(flat.size()));
      for (std::size_t i = 0; i < flat.size(); ++i) v(static_cast<Index>(i)) = flat[i];
      return PureState(dims, std::move(v));
    }
    return MpOperator(dims, square_from(parse_complex_list(doc.at("matrix"), "matrix"), dims.total(), "matrix"));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed state document: ") + e.what());
  }
}

MpOperator density_from_json(const json& doc) {
  return std::visit(overloaded{
                        [](const MpOperator& op) { return op; },
                        [](const PureState& psi) { return psi.density(); },
                    },
                    state_from_json(doc));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

json to_json(const MapExpr& m) { return {{"format", kMapFormat}, {"dim", m.dim()}, {"expr", node_json(m)}}; }

MapExpr map_from_json(const json& doc) {
  try {
    require_format(doc, kMapFormat);
    MapExpr m = node_from(doc.at("expr"));
    if (doc.contains("dim") && doc.at("dim").get<std::size_t>() != m.dim()) {
      throw Error("map document \"dim\" does not match its expression");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed map document: ") + e.what());
  }
}

json to_json(const GmeMap& m) {
  json claims = json::array();
  for (const auto& c : m.claims) {
    claims.push_back({{"key", c.key},
                      {"value", c.value},
                      {"basis", c.basis == Claim::Basis::analytic ? "analytic" : "numerical"}});
  }
  return {{"label", m.label}, {"dims", m.dims.values()}, {"claims", claims}, {"map", to_json(m.expr)}};
}

json to_json(const Verdict& v) {
  return {{"map", v.map_id},
          {"min_eig", v.min_eig},
          {"detected", v.detected},
          {"tolerance", v.tolerance},
          {"eigvec", complex_list(v.eigvec.data(), static_cast<std::size_t>(v.eigvec.size()))}};
}

json to_json(const ThresholdResult& r) {
  json hist = json::array();
  for (const auto& [lo, hi] : r.history) hist.push_back({lo, hi});
  return {{"p_star", r.p_star},
          {"bracket", {r.lo, r.hi}},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"multiple_crossings", r.multiple_crossings},
          {"history", hist}};
}

json to_json(const VerifyReport& r) {
  json j{{"map", r.map_id},       {"samples", r.samples},     {"mixtures", r.mixtures},
         {"seed", r.seed},        {"tolerance", r.tolerance}, {"min_eig", r.min_eig},
         {"worst_sample", r.worst_sample}, {"violations", r.violations}, {"ok", r.violations == 0}};
  j["reproducer_seed"] = r.reproducer_seed ? json(*r.reproducer_seed) : json(nullptr);
  j["reproducer"] = r.reproducer ? json(*r.reproducer) : json(nullptr);
  return j;
}

json to_json(const MuEstimate& r) {
  return {{"mu", r.value}, {"ansatz", r.ansatz}, {"best_sampled", r.best_sampled}, {"samples", r.samples}};
}

json to_json(const PptReport& r) {
  json cuts = json::array();
  for (const auto& c : r.cuts) cuts.push_back({{"subset", c.subset.members()}, {"min_eig", c.min_eig}});
  return {{"cuts", cuts}, {"ppt_all_cuts", r.ppt_all_cuts}};
}

json to_json(const std::vector<ScanRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"param", r.param}, {"min_eig", r.min_eig}, {"detected", r.detected}});
  return out;
}

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "param,min_eig,detected\n";
  for (const auto& r : rows) out << number(r.param) << ',' << number(r.min_eig) << ',' << (r.detected ? "true" : "false") << '\n';
}

}  // namespace gme::io
