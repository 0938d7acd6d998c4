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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace lg::cli {

inline constexpr std::uint64_t kDefaultSeed = 0x4C4D4531ULL;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kStructural = 3,
  kUnsolvable = 4,
  kNoSteadyState = 5,
  kBudget = 6,
  kOther = 7,
};

struct RunConfig {
  std::string command;
  std::string ansatz;
  std::string target;
  std::string observable;
  std::string lme;
  std::string circuit;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::int64_t> shots;
  double eps = 0.05;
  std::optional<double> gamma;
  int d_max = 4;
  std::size_t node_budget = 10000;
  std::string out = ".";
  int n_min = 5;
  int n_max = 9;
  int reps = 5;
};

int cmd_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_xl_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_steady(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_encode_circuit(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lg::cli
