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

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include "lindground/format.hpp"
#include "lindground/pauli.hpp"

namespace lg {

namespace {

double parse_double(std::string_view tok, int line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number \"" + std::string(tok) + "\"");
  }
  return v;
}

}  // namespace

PauliSum parse_pauli_sum(std::istream& in) {
  std::optional<PauliSum> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string re, im, letters, extra;
    if (!(ls >> re)) continue;
    if (!(ls >> im >> letters)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected `<re> <im> <letters>`");
    }
    if (ls >> extra) throw ParseError("line " + std::to_string(line_no) + ": trailing token \"" + extra + "\"");
    PauliString p = PauliString::parse(letters);
    if (!out) out.emplace(p.size());
    if (out->num_qubits() != p.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": term width " + std::to_string(p.size()) +
                       " differs from " + std::to_string(out->num_qubits()));
    }
    out->add(p, {parse_double(re, line_no), parse_double(im, line_no)});
  }
  return out ? *out : PauliSum(0);
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pauli_sum(in);
}

std::string format_pauli_sum(const PauliSum& s) {
  std::string out;
  if (s.empty()) {
    // A zero operator still records its width.
    out += "0 0 " + PauliString(s.num_qubits()).str() + "\n";
    return out;
  }
  for (const auto& [p, c] : s) {
    out += format_double(c.real());
    out += ' ';
    out += format_double(c.imag());
    out += ' ';
    out += p.str();
    out += '\n';
  }
  return out;
}

}  // namespace lg
