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

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gme/detector.hpp"

namespace gme::io {

using json = nlohmann::json;

// mpop-v1: {"format":"mpop-v1","dims":[...],"matrix":[[re,im],...]} with
// row-major entries, or "vector" instead of "matrix" for a pure state.

json to_json(const MpOperator& op);
json to_json(const PureState& psi);

/// Either document shape; throws Error on malformed input.
std::variant<MpOperator, PureState> state_from_json(const json& doc);

/// Density matrix of a state document (pure states become projectors).
MpOperator density_from_json(const json& doc);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& doc);

// mapexpr-v1: {"format":"mapexpr-v1","dim":D,"expr":<node>} where every
// node carries a "node" tag.

json to_json(const MapExpr& m);
MapExpr map_from_json(const json& doc);

json to_json(const GmeMap& m);

// reports

json to_json(const Verdict& v);
json to_json(const ThresholdResult& r);
json to_json(const VerifyReport& r);
json to_json(const MuEstimate& r);
json to_json(const PptReport& r);
json to_json(const std::vector<ScanRow>& rows);

/// "param,min_eig,detected" followed by one line per row.
void write_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace gme::io
