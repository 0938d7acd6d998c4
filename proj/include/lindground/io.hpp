// Copyright 2026 The lindground Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lindground/encodings.hpp"
#include "lindground/lindblad.hpp"
#include "lindground/substitute.hpp"
#include "lindground/xl.hpp"

namespace lg {

using Json = nlohmann::ordered_json;

/// Pauli sums travel as [[re, im, "word"], ...].
Json to_json(const PauliSum& s);
PauliSum pauli_sum_from_json(const Json& j, int n);

/// {"n": 1, "hamiltonian": [...], "jumps": [{"rate": 1, "op": [...]}]}
Json to_json(const LmeSpec& spec);
LmeSpec lme_spec_from_json(const Json& j);

/// {"type": "xxz", "sites": N}, {"type": "full_local", "n": n, "k": k} or
/// {"n": n, "locality": k, "hamiltonian": [{"name", "op"}], "jumps": [...]}.
LiouvillianAnsatz ansatz_from_json(const Json& j);

/// {"n": n, "layers": [...]} where a layer is a gate name ("H", "X", "Y",
/// "Z", "S", "T", "CNOT", "CZ", "SWAP") with "qubits", or a "matrix" of
/// [re, im] pairs. Gates listed inside one layer element are applied in order.
CircuitSpec circuit_from_json(const Json& j);

Json to_json(const SpectralReport& r);
Json to_json(const LdlPropertyReport& r);
Json to_json(const EstimateReport& r);
Json to_json(const XlResult& r, const QuadraticSystem& sys);
Json to_json(const ClockLme& c);

Json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace lg
