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

#include "wincc/benchgen.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <future>
#include <numeric>
#include <random>

#include "json.hpp"

namespace wincc::bench {

namespace {

// std::mt19937_64 output is fixed by the standard; distributions are not,
// so draws are reduced by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

GameGraph make_grid(const BenchSpec& spec) {
  const unsigned w = spec.width;
  const unsigned h = spec.height;
  if (w == 0 || h == 0) throw GenerationError("grid dimensions must be positive");
  const std::size_t cells = std::size_t{w} * h;
  Rng rng(spec.seed);

  std::vector<bool> charger(cells, false);
  if (spec.charger_spacing > 0) {
    const unsigned s = spec.charger_spacing;
    for (unsigned y = s / 2; y < h; y += s) {
      for (unsigned x = s / 2; x < w; x += s) charger[std::size_t{y} * w + x] = true;
    }
  } else {
    if (spec.chargers > cells) throw GenerationError("more chargers than cells");
    std::vector<std::size_t> order(cells);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < spec.chargers; ++i) {
      std::swap(order[i], order[i + rng.below(cells - i)]);
      charger[order[i]] = true;
    }
  }

  enum : ActionId { North, South, East, West, Charge, Wait, Idle, Bump };
  GameDescription d;
  d.ego_actions = {"north", "south", "east", "west", "charge", "wait"};
  d.alter_actions = {"idle", "bump"};
  d.state_names.reserve(2 * cells);
  for (unsigned y = 0; y < h; ++y) {
    for (unsigned x = 0; x < w; ++x) {
      const auto suffix = std::to_string(x) + "_" + std::to_string(y);
      d.state_names.push_back("e" + suffix);
      d.owners.push_back(PlayerId::Ego);
      d.state_names.push_back("a" + suffix);
      d.owners.push_back(PlayerId::Alter);
    }
  }
  d.initial = 0;

  auto ego = [&](unsigned x, unsigned y) { return static_cast<StateId>(2 * (std::size_t{y} * w + x)); };
  auto alter = [&](unsigned x, unsigned y) { return ego(x, y) + 1; };
  const std::array<std::pair<int, int>, 4> dirs{{{0, -1}, {0, 1}, {1, 0}, {-1, 0}}};
  auto inside = [&](long x, long y) { return x >= 0 && y >= 0 && x < long{w} && y < long{h}; };

  for (unsigned y = 0; y < h; ++y) {
    for (unsigned x = 0; x < w; ++x) {
      const std::size_t cell = std::size_t{y} * w + x;
      bool moved = false;
      for (ActionId a = North; a <= West; ++a) {
        const long nx = long{x} + dirs[a].first;
        const long ny = long{y} + dirs[a].second;
        if (!inside(nx, ny)) continue;
        d.transitions.push_back({ego(x, y), a, alter(static_cast<unsigned>(nx), static_cast<unsigned>(ny))});
        moved = true;
      }
      if (charger[cell]) d.transitions.push_back({ego(x, y), Charge, alter(x, y)});
      if (!moved && !charger[cell]) d.transitions.push_back({ego(x, y), Wait, alter(x, y)});

      d.transitions.push_back({alter(x, y), Idle, ego(x, y)});
      const bool bumpy = !charger[cell] && rng.below(1000) < spec.bump_permille;
      if (bumpy) {
        const auto first = rng.below(4);
        for (std::size_t k = 0; k < 4; ++k) {
          const auto& [dx, dy] = dirs[(first + k) % 4];
          if (!inside(long{x} + dx, long{y} + dy)) continue;
          d.transitions.push_back({alter(x, y), Bump,
                                   ego(static_cast<unsigned>(long{x} + dx), static_cast<unsigned>(long{y} + dy))});
          break;
        }
      }
    }
  }
  return GameGraph(std::move(d));
}

GameGraph make_random(const BenchSpec& spec) {
  if (spec.states < 2) throw GenerationError("random games need at least two states");
  if (spec.branching < 1) throw GenerationError("branching factor must be positive");
  Rng rng(spec.seed);
  const unsigned n = spec.states;
  const unsigned b = spec.branching;

  GameDescription d;
  for (unsigned i = 0; i < b; ++i) {
    d.ego_actions.push_back("e" + std::to_string(i));
    d.alter_actions.push_back("x" + std::to_string(i));
  }
  std::vector<StateId> ego_states;
  std::vector<StateId> alter_states;
  for (StateId s = 0; s < n; ++s) {
    const auto owner = s % 2 == 0 ? PlayerId::Ego : PlayerId::Alter;
    d.state_names.push_back(std::to_string(s));
    d.owners.push_back(owner);
    (owner == PlayerId::Ego ? ego_states : alter_states).push_back(s);
  }
  d.initial = 0;

  std::vector<ActionId> actions(b);
  for (StateId s = 0; s < n; ++s) {
    const bool ego = d.owners[s] == PlayerId::Ego;
    const ActionId base = ego ? 0 : b;
    std::iota(actions.begin(), actions.end(), base);
    const auto degree = 1 + rng.below(b);
    const auto& targets = ego ? alter_states : ego_states;
    for (std::size_t i = 0; i < degree; ++i) {
      std::swap(actions[i], actions[i + rng.below(b - i)]);
      d.transitions.push_back({s, actions[i], targets[rng.below(targets.size())]});
    }
  }
  return GameGraph(std::move(d));
}

GameGraph make_cycle_chain(const BenchSpec& spec) {
  const unsigned ring = std::max(spec.branching, 1U);
  const unsigned rings = spec.states / (2 * ring);
  if (rings == 0) throw GenerationError("cycle chain needs at least 2 * branching states");
  Rng rng(spec.seed);

  enum : ActionId { Go, Jump, Charge, Pass, Back };
  GameDescription d;
  d.ego_actions = {"go", "jump", "charge"};
  d.alter_actions = {"pass", "back"};
  auto ego = [&](unsigned r, unsigned p) { return static_cast<StateId>(2 * (r * ring + p)); };
  for (unsigned r = 0; r < rings; ++r) {
    for (unsigned p = 0; p < ring; ++p) {
      const auto suffix = std::to_string(r) + "_" + std::to_string(p);
      d.state_names.push_back("e" + suffix);
      d.owners.push_back(PlayerId::Ego);
      d.state_names.push_back("a" + suffix);
      d.owners.push_back(PlayerId::Alter);
    }
  }
  d.initial = 0;
  for (unsigned r = 0; r < rings; ++r) {
    for (unsigned p = 0; p < ring; ++p) {
      const StateId e = ego(r, p);
      const StateId a = e + 1;
      d.transitions.push_back({e, Go, a});
      if (p == 0) d.transitions.push_back({e, Jump, ego((r + 1) % rings, 0) + 1});
      if (rng.below(2) == 0) d.transitions.push_back({e, Charge, a});
      d.transitions.push_back({a, Pass, ego(r, (p + 1) % ring)});
      if (p != 0 && rng.below(3) == 0) d.transitions.push_back({a, Back, ego(r, 0)});
    }
  }
  return GameGraph(std::move(d));
}

ArmResult run_arm(std::string name, unsigned window, std::size_t budget,
                  const std::function<SolveReport(const SolveOptions&)>& solve) {
  ArmResult arm;
  arm.name = std::move(name);
  arm.window = window;
  SolveOptions opts;
  opts.build.max_situations = budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto report = solve(opts);
    arm.verdict = report.verdict;
    arm.final_window = report.final_window;
    arm.peak_situations = report.peak_situations();
    arm.total_situations = report.total_situations();
  } catch (const BudgetError&) {
    arm.budget_exceeded = true;
  }
  arm.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return arm;
}

nlohmann::json arm_json(const ArmResult& arm, bool timings) {
  nlohmann::json j = {{"name", arm.name},
                      {"window", arm.window},
                      {"budget_exceeded", arm.budget_exceeded},
                      {"peak_situations", arm.peak_situations},
                      {"total_situations", arm.total_situations}};
  j["verdict"] = arm.verdict ? nlohmann::json(to_string(*arm.verdict)) : nlohmann::json(nullptr);
  j["final_window"] = arm.final_window ? nlohmann::json(*arm.final_window) : nlohmann::json(nullptr);
  if (timings) j["seconds"] = arm.seconds;
  return j;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Grid: return "grid";
    case Family::RandomBipartite: return "random";
    case Family::CycleChain: return "cycle";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "grid") return Family::Grid;
  if (text == "random") return Family::RandomBipartite;
  if (text == "cycle") return Family::CycleChain;
  throw UsageError("unknown family '" + std::string(text) + "' (grid, random, cycle)");
}

GameGraph generate(const BenchSpec& spec) {
  switch (spec.family) {
    case Family::Grid: return make_grid(spec);
    case Family::RandomBipartite: return make_random(spec);
    case Family::CycleChain: return make_cycle_chain(spec);
  }
  throw GenerationError("unknown family");
}

ComparisonReport compare(const GameGraph& graph, const ConstraintSet& cs,
                         std::size_t iterated_index, const CompareOptions& options) {
  if (iterated_index >= cs.size()) throw UsageError("iterated constraint index out of range");
  cs.check(graph);
  const auto& target = cs[iterated_index];
  ComparisonReport report;

  auto iterated = [&] {
    return run_arm("iterated", target.l, options.arm_budget,
                   [&](const SolveOptions& o) { return iterate(graph, cs, iterated_index, o); });
  };
  auto direct_full = [&] {
    if (options.skip_full) {
      ArmResult skipped;
      skipped.name = "direct_full";
      skipped.window = target.l;
      return skipped;
    }
    return run_arm("direct_full", target.l, options.arm_budget,
                   [&](const SolveOptions& o) { return solve_direct(graph, cs, o); });
  };

  if (options.parallel) {
    auto full = std::async(std::launch::async, direct_full);
    report.iterated = iterated();
    report.direct_full = full.get();
  } else {
    report.iterated = iterated();
    report.direct_full = direct_full();
  }

  const auto& it = report.iterated;
  if (it.verdict && it.final_window && *it.final_window < target.l) {
    const unsigned c = *it.final_window;
    report.direct_at_final =
        run_arm("direct_at_final", c, options.arm_budget, [&](const SolveOptions& o) {
          return solve_direct(graph, cs.with_window(iterated_index, c), o);
        });
  }

  // Min: Win at c implies Win at every longer window. Max: Lose at c implies Lose at l.
  auto check = [&](const ArmResult& arm) {
    if (!arm.verdict || !it.verdict || *it.verdict == Verdict::Inconclusive) return;
    if (*arm.verdict != *it.verdict) {
      report.verdicts_agree = false;
      report.note += "correctness failure: " + arm.name + " reports " +
                     std::string(to_string(*arm.verdict)) + ", iterated reports " +
                     std::string(to_string(*it.verdict)) + ". ";
    }
  };
  check(report.direct_full);
  if (report.direct_at_final) check(*report.direct_at_final);
  return report;
}

std::string comparison_to_json(const ComparisonReport& report, bool include_timings) {
  nlohmann::json j;
  j["iterated"] = arm_json(report.iterated, include_timings);
  j["direct_full"] = arm_json(report.direct_full, include_timings);
  j["direct_at_final"] =
      report.direct_at_final ? arm_json(*report.direct_at_final, include_timings) : nlohmann::json(nullptr);
  j["verdicts_agree"] = report.verdicts_agree;
  j["note"] = report.note;
  if (report.direct_at_final && report.direct_at_final->peak_situations > 0 &&
      report.iterated.peak_situations > 0) {
    j["situation_ratio"] = static_cast<double>(report.direct_at_final->peak_situations) /
                           static_cast<double>(report.iterated.peak_situations);
    if (include_timings && report.iterated.seconds > 0)
      j["time_ratio"] = report.direct_at_final->seconds / report.iterated.seconds;
  }
  return j.dump(1) + "\n";
}

}  // namespace wincc::bench
