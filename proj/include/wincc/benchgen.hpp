// Copyright 2026 The wincc Authors
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
#include <optional>
#include <string>
#include <string_view>

#include "wincc/constraints.hpp"
#include "wincc/game.hpp"
#include "wincc/solver.hpp"

namespace wincc::bench {

enum class Family { Grid, RandomBipartite, CycleChain };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

struct BenchSpec {
  Family family = Family::Grid;

  // Grid: an automated vehicle on a width x height floor. Ego moves or, on a
  // charger cell, plays "charge"; Alter idles or, on bumpy cells, bumps the
  // vehicle to a neighbouring cell.
  unsigned width = 4;
  unsigned height = 4;
  /// Chargers on a lattice every `charger_spacing` cells; 0 places `chargers` at random.
  unsigned charger_spacing = 0;
  unsigned chargers = 1;
  unsigned bump_permille = 0;

  // RandomBipartite and CycleChain.
  unsigned states = 10;
  unsigned branching = 2;

  std::uint64_t seed = 0;
};

/// Deterministic in `spec` (including the seed); the result always validates.
/// Throws GenerationError for unusable parameters.
GameGraph generate(const BenchSpec& spec);

struct ArmResult {
  std::string name;
  unsigned window = 0;
  std::optional<Verdict> verdict;
  std::optional<unsigned> final_window;
  bool budget_exceeded = false;
  std::size_t peak_situations = 0;
  std::size_t total_situations = 0;
  double seconds = 0.0;
};

struct ComparisonReport {
  ArmResult iterated;
  /// Direct solve at the window where iteration decided, when that is below l.
  std::optional<ArmResult> direct_at_final;
  ArmResult direct_full;
  bool verdicts_agree = true;
  std::string note;
};

struct CompareOptions {
  /// Per-arm situation budget; 0 is unlimited. An exhausted arm is reported, not fatal.
  std::size_t arm_budget = 0;
  bool skip_full = false;
  /// Run the arms on separate threads instead of one after another.
  bool parallel = false;
};

ComparisonReport compare(const GameGraph& graph, const ConstraintSet& cs,
                         std::size_t iterated_index, const CompareOptions& options = {});

std::string comparison_to_json(const ComparisonReport& report, bool include_timings = true);

}  // namespace wincc::bench
