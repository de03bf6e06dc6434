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

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "wincc/constraints.hpp"
#include "wincc/game.hpp"
#include "wincc/situation_graph.hpp"

// Brute-force reference implementations. Apart from triple_agreement, which
// compares them against the solver, nothing here uses the packed situation
// graph or the solver.

namespace wincc::oracle {

struct OracleConfig {
  std::size_t max_states = 8;
  unsigned max_window = 4;
  unsigned max_depth = 32;
  std::size_t max_situations = 1'000'000;
};

struct OracleSituationGraph {
  /// situations[0] is the initial situation.
  std::vector<Situation> situations;
  std::vector<std::vector<std::pair<ActionId, std::size_t>>> successors;

  std::size_t size() const { return situations.size(); }
};

/// Every situation reachable from the initial one, including successors of
/// violating situations.
OracleSituationGraph oracle_situation_graph(const GameGraph& graph, const ConstraintSet& cs,
                                            const OracleConfig& config = {});

/// Situations from which Ego can keep every visited situation satisfying all constraints.
std::set<Situation> oracle_winning(const GameGraph& graph, const ConstraintSet& cs,
                                   const OracleConfig& config = {});

/// True iff Ego can keep every play prefix of up to `depth` own moves
/// satisfying `cs` (minimax over the play tree).
bool oracle_play_enumeration(const GameGraph& graph, const ConstraintSet& cs, unsigned depth,
                             const OracleConfig& config = {});

/// Default enumeration depth: two full windows plus slack.
unsigned default_depth(const ConstraintSet& cs);

struct Agreement {
  bool solver_wins = false;
  bool oracle_wins = false;
  bool enumeration_wins = false;
  unsigned depth = 0;

  bool agree() const { return solver_wins == oracle_wins && oracle_wins == enumeration_wins; }
};

/// Initial verdicts of solve_direct, oracle_winning and oracle_play_enumeration.
/// Enumeration is retried once at doubled depth before a disagreement is reported.
Agreement triple_agreement(const GameGraph& graph, const ConstraintSet& cs,
                           const OracleConfig& config = {});

}  // namespace wincc::oracle
