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

// Helpers shared by the unit tests and the acceptance binary. The random
// game generator here is deliberately separate from the benchmark generator.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "wincc/constraints.hpp"
#include "wincc/game.hpp"

namespace wincc::testing {

inline std::string data_path(const std::string& name) {
  return std::string(WINCC_TEST_DATA) + "/" + name;
}

inline GameGraph example_game() { return load_game(data_path("example.game.json")); }

inline StateId state(const GameGraph& g, const std::string& name) { return *g.find_state(name); }
inline ActionId action(const GameGraph& g, const std::string& name) { return *g.find_action(name); }

/// Owner-alternating game on 2..max_states states. Ego plays "a" or "c",
/// Alter "x" or "y". State 0 (Ego) is initial and state 1 is Alter.
inline GameDescription random_description(std::mt19937_64& rng, unsigned max_states) {
  auto below = [&rng](std::uint64_t n) { return rng() % n; };
  const unsigned n = 2 + static_cast<unsigned>(below(max_states - 1));
  GameDescription d;
  d.ego_actions = {"a", "c"};
  d.alter_actions = {"x", "y"};
  std::vector<StateId> ego;
  std::vector<StateId> alter;
  for (StateId s = 0; s < n; ++s) {
    const PlayerId p = s == 0 ? PlayerId::Ego : s == 1 ? PlayerId::Alter
                                              : (below(2) ? PlayerId::Ego : PlayerId::Alter);
    d.state_names.push_back("s" + std::to_string(s));
    d.owners.push_back(p);
    (p == PlayerId::Ego ? ego : alter).push_back(s);
  }
  d.initial = 0;
  for (StateId s = 0; s < n; ++s) {
    const bool is_ego = d.owners[s] == PlayerId::Ego;
    const auto& targets = is_ego ? alter : ego;
    const ActionId base = is_ego ? 0 : 2;
    const auto pick = below(3);  // first action, second action, or both
    for (ActionId a = 0; a < 2; ++a) {
      if (pick != 2 && pick != a) continue;
      d.transitions.push_back({s, base + a, targets[below(targets.size())]});
    }
  }
  return d;
}

inline GameGraph random_game(std::mt19937_64& rng, unsigned max_states = 8) {
  return GameGraph(random_description(rng, max_states));
}

/// Constraint on action "a" with window length 1..max_l.
inline CountingConstraint random_constraint(std::mt19937_64& rng, ConstraintKind kind,
                                            unsigned max_l = 4) {
  CountingConstraint c;
  c.kind = kind;
  c.action = 0;
  c.l = 1 + static_cast<unsigned>(rng() % max_l);
  c.k = kind == ConstraintKind::Min ? 1 + static_cast<unsigned>(rng() % c.l)
                                    : static_cast<unsigned>(rng() % (c.l + 1));
  return c;
}

inline unsigned max_window(const ConstraintSet& cs) {
  unsigned l = 0;
  for (const auto& c : cs) l = std::max(l, c.l);
  return l;
}

}  // namespace wincc::testing
