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

#include "wincc/oracle.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "wincc/solver.hpp"

namespace wincc::oracle {

namespace {

void check_budget(const GameGraph& graph, const ConstraintSet& cs, const OracleConfig& config) {
  cs.check(graph);
  if (graph.state_count() > config.max_states)
    throw BudgetError("oracle limited to " + std::to_string(config.max_states) + " states");
  for (const auto& c : cs) {
    if (c.l > config.max_window)
      throw BudgetError("oracle limited to windows of length " + std::to_string(config.max_window));
  }
}

Situation successor(const GameGraph& graph, const ConstraintSet& cs, const Situation& from,
                    ActionId action, StateId dst) {
  Situation next{dst, from.histories};
  if (graph.owner(from.state) == PlayerId::Ego) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      next.histories[i] = history_shift(from.histories[i], cs[i], action);
    }
  }
  return next;
}

bool safe(const Situation& s, const ConstraintSet& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!history_satisfies(s.histories[i], cs[i])) return false;
  }
  return true;
}

}  // namespace

OracleSituationGraph oracle_situation_graph(const GameGraph& graph, const ConstraintSet& cs,
                                            const OracleConfig& config) {
  check_budget(graph, cs, config);
  OracleSituationGraph out;
  std::map<Situation, std::size_t> index;

  Situation init{graph.initial(), {}};
  for (const auto& c : cs) init.histories.push_back(History::empty(c.l));
  index.emplace(init, 0);
  out.situations.push_back(init);
  out.successors.emplace_back();

  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    const Situation from = out.situations[cur];
    for (const auto& m : graph.successors(from.state)) {
      Situation next = successor(graph, cs, from, m.action, m.dst);
      auto [it, inserted] = index.emplace(next, out.situations.size());
      if (inserted) {
        if (out.situations.size() >= config.max_situations)
          throw BudgetError("oracle situation budget exceeded");
        out.situations.push_back(std::move(next));
        out.successors.emplace_back();
        stack.push_back(it->second);
      }
      out.successors[cur].emplace_back(m.action, it->second);
    }
  }
  return out;
}

std::set<Situation> oracle_winning(const GameGraph& graph, const ConstraintSet& cs,
                                   const OracleConfig& config) {
  const auto sg = oracle_situation_graph(graph, cs, config);
  std::vector<bool> win(sg.size());
  for (std::size_t i = 0; i < sg.size(); ++i) win[i] = safe(sg.situations[i], cs);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < sg.size(); ++i) {
      if (!win[i]) continue;
      const auto& succ = sg.successors[i];
      const bool ego = graph.owner(sg.situations[i].state) == PlayerId::Ego;
      const bool keep =
          ego ? std::any_of(succ.begin(), succ.end(), [&](const auto& e) { return win[e.second]; })
              : std::all_of(succ.begin(), succ.end(), [&](const auto& e) { return win[e.second]; });
      if (!keep) {
        win[i] = false;
        changed = true;
      }
    }
  }

  std::set<Situation> out;
  for (std::size_t i = 0; i < sg.size(); ++i) {
    if (win[i]) out.insert(sg.situations[i]);
  }
  return out;
}

namespace {

class PlayEnumerator {
 public:
  PlayEnumerator(const GameGraph& graph, const ConstraintSet& cs, const OracleConfig& config)
      : graph_(graph), cs_(cs), config_(config) {
    for (const auto& c : cs) memory_ = std::max<std::size_t>(memory_, c.l > 0 ? c.l - 1 : 0);
  }

  bool run(unsigned depth) {
    prefix_ = PlayPrefix{{graph_.initial()}, {}};
    return value(depth);
  }

 private:
  // Future verdicts depend only on the current state and the last l - 1 own
  // moves (all of them while fewer have been played).
  std::vector<ActionId> tail() const {
    const auto start = ego_moves_.size() > memory_ ? ego_moves_.size() - memory_ : 0;
    return {ego_moves_.begin() + static_cast<std::ptrdiff_t>(start), ego_moves_.end()};
  }

  bool value(unsigned remaining) {
    if (!play_satisfies(graph_, prefix_, cs_)) return false;
    if (remaining == 0) return true;
    const StateId s = prefix_.states.back();
    auto key = std::make_tuple(s, tail(), remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= config_.max_situations) throw BudgetError("play enumeration budget exceeded");

    const bool ego = graph_.owner(s) == PlayerId::Ego;
    bool result = !ego;
    for (const auto& m : graph_.successors(s)) {
      prefix_.states.push_back(m.dst);
      prefix_.actions.push_back(m.action);
      if (ego) ego_moves_.push_back(m.action);
      const bool v = value(ego ? remaining - 1 : remaining);
      if (ego) ego_moves_.pop_back();
      prefix_.states.pop_back();
      prefix_.actions.pop_back();
      if (ego && v) {
        result = true;
        break;
      }
      if (!ego && !v) {
        result = false;
        break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  const GameGraph& graph_;
  const ConstraintSet& cs_;
  const OracleConfig& config_;
  std::size_t memory_ = 0;
  PlayPrefix prefix_;
  std::vector<ActionId> ego_moves_;
  std::map<std::tuple<StateId, std::vector<ActionId>, unsigned>, bool> memo_;
};

}  // namespace

bool oracle_play_enumeration(const GameGraph& graph, const ConstraintSet& cs, unsigned depth,
                             const OracleConfig& config) {
  cs.check(graph);
  if (depth > config.max_depth)
    throw BudgetError("play enumeration limited to depth " + std::to_string(config.max_depth));
  return PlayEnumerator(graph, cs, config).run(depth);
}

unsigned default_depth(const ConstraintSet& cs) {
  unsigned l = 0;
  for (const auto& c : cs) l = std::max(l, c.l);
  return 2 * l + 4;
}

Agreement triple_agreement(const GameGraph& graph, const ConstraintSet& cs,
                           const OracleConfig& config) {
  check_budget(graph, cs, config);
  Agreement a;
  a.solver_wins = solve_direct(graph, cs).verdict == Verdict::Win;

  Situation init{graph.initial(), {}};
  for (const auto& c : cs) init.histories.push_back(History::empty(c.l));
  a.oracle_wins = oracle_winning(graph, cs, config).contains(init);

  a.depth = default_depth(cs);
  a.enumeration_wins = oracle_play_enumeration(graph, cs, a.depth, config);
  if (a.enumeration_wins != a.oracle_wins && 2 * a.depth <= config.max_depth) {
    a.depth *= 2;
    a.enumeration_wins = oracle_play_enumeration(graph, cs, a.depth, config);
  }
  return a;
}

}  // namespace wincc::oracle
