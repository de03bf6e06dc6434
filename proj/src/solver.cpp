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

#include "wincc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

#include "json.hpp"

namespace wincc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

IterationStats stats_for(unsigned window, const SituationGraph& sg, const WinningRegion& wr,
                         double seconds) {
  IterationStats s;
  s.window_length = window;
  s.situations = sg.size();
  s.transitions = sg.transition_count();
  s.winnable_marked = sg.count(SituationStatus::WinnableMark);
  s.losing_marked = sg.count(SituationStatus::LosingMark);
  s.violating = sg.count(SituationStatus::Violating);
  s.winning = wr.winning_count();
  s.losing = wr.losing_count();
  s.seconds = seconds;
  return s;
}

void require_kind(const ConstraintSet& cs, std::size_t idx, ConstraintKind kind) {
  if (idx >= cs.size()) throw UsageError("iterated constraint index out of range");
  if (cs[idx].kind != kind)
    throw UsageError(std::string("iterated constraint must be of kind ") +
                     std::string(to_string(kind)));
}

}  // namespace

WinningRegion::WinningRegion(std::vector<bool> winning) : winning_(std::move(winning)) {
  winning_count_ = static_cast<std::size_t>(std::count(winning_.begin(), winning_.end(), true));
}

std::vector<SituationId> WinningRegion::winning_ids() const {
  std::vector<SituationId> out;
  out.reserve(winning_count_);
  for (SituationId id = 0; id < winning_.size(); ++id) {
    if (winning_[id]) out.push_back(id);
  }
  return out;
}

std::vector<SituationId> WinningRegion::losing_ids() const {
  std::vector<SituationId> out;
  for (SituationId id = 0; id < winning_.size(); ++id) {
    if (!winning_[id]) out.push_back(id);
  }
  return out;
}

WinningRegion find_winning_region(const SituationGraph& sg) {
  const std::size_t n = sg.size();

  std::vector<std::size_t> pred_begin(n + 1, 0);
  for (SituationId id = 0; id < n; ++id) {
    for (const auto& e : sg.out(id)) ++pred_begin[e.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) pred_begin[i + 1] += pred_begin[i];
  std::vector<SituationId> preds(pred_begin[n]);
  {
    auto fill = pred_begin;
    for (SituationId id = 0; id < n; ++id) {
      for (const auto& e : sg.out(id)) preds[fill[e.dst]++] = id;
    }
  }

  std::vector<bool> losing(n, false);
  std::vector<std::uint32_t> live(n, 0);
  std::vector<SituationId> queue;
  for (SituationId id = 0; id < n; ++id) {
    live[id] = static_cast<std::uint32_t>(sg.out(id).size());
    if (sg.is_winnable_mark(id)) continue;
    if (sg.is_violating(id) || live[id] == 0) {
      losing[id] = true;
      queue.push_back(id);
    }
  }

  while (!queue.empty()) {
    const SituationId x = queue.back();
    queue.pop_back();
    for (std::size_t i = pred_begin[x]; i < pred_begin[x + 1]; ++i) {
      const SituationId p = preds[i];
      if (losing[p]) continue;
      if (sg.owner(p) == PlayerId::Alter || --live[p] == 0) {
        losing[p] = true;
        queue.push_back(p);
      }
    }
  }

  std::vector<bool> winning(n);
  for (std::size_t i = 0; i < n; ++i) winning[i] = !losing[i];
  return WinningRegion(std::move(winning));
}

std::optional<ActionId> Strategy::choice(const Situation& s, std::size_t layer) const {
  const auto& l = layers_.at(layer);
  auto it = l.lookup.find(l.layout.pack(s));
  if (it == l.lookup.end()) return std::nullopt;
  return it->second;
}

bool Strategy::is_mark(const Situation& s, std::size_t layer) const {
  const auto& l = layers_.at(layer);
  return l.marks.contains(l.layout.pack(s));
}

void Strategy::set_choice(const Situation& s, ActionId a, std::size_t layer) {
  auto& l = layers_.at(layer);
  const auto key = l.layout.pack(s);
  if (auto [it, inserted] = l.lookup.insert_or_assign(key, a); !inserted) {
    for (auto& [k, act] : l.choices) {
      if (k == key) act = a;
    }
    return;
  }
  l.choices.emplace_back(key, a);
}

Strategy::Layer extract_layer(const SituationGraph& sg, const WinningRegion& wr) {
  Strategy::Layer layer;
  layer.constraints = sg.constraints();
  layer.layout = sg.layout();
  for (SituationId id = 0; id < sg.size(); ++id) {
    if (sg.is_winnable_mark(id)) {
      layer.marks.insert(sg.key(id));
      continue;
    }
    if (sg.owner(id) != PlayerId::Ego || !wr.winning(id)) continue;
    std::optional<ActionId> best;
    for (const auto& e : sg.out(id)) {
      if (wr.winning(e.dst) && (!best || e.action < *best)) best = e.action;
    }
    if (best) {
      layer.choices.emplace_back(sg.key(id), *best);
      layer.lookup.emplace(sg.key(id), *best);
    }
  }
  return layer;
}

Strategy extract_strategy(const SituationGraph& sg, const WinningRegion& wr) {
  if (!wr.winning(sg.initial()))
    throw UsageError("cannot extract a strategy: the initial situation is not winning");
  std::vector<Strategy::Layer> layers;
  layers.push_back(extract_layer(sg, wr));
  return Strategy(std::move(layers), std::nullopt);
}

namespace {

struct MemoKey {
  std::size_t layer;
  Situation cursor;
  Situation check;

  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    SituationHash h;
    return h(k.cursor) * 31 + h(k.check) * 7 + k.layer;
  }
};

class StrategyChecker {
 public:
  StrategyChecker(const GameGraph& graph, const ConstraintSet& cs, const Strategy& strategy)
      : graph_(graph), cs_(cs), strategy_(strategy) {}

  bool run(unsigned depth) {
    prefix_ = PlayPrefix{{graph_.initial()}, {}};
    Situation cursor{graph_.initial(), {}};
    for (const auto& c : strategy_.layer(0).constraints) cursor.histories.push_back(History::empty(c.l));
    Situation check{graph_.initial(), {}};
    for (const auto& c : cs_) check.histories.push_back(History::empty(c.l));
    return explore(0, std::move(cursor), std::move(check), depth);
  }

 private:
  // Follows winnable marks down to the layer that owns a choice.
  void descend(std::size_t& layer, Situation& cursor) const {
    while (strategy_.is_mark(cursor, layer)) {
      if (layer + 1 >= strategy_.layer_count() || !strategy_.iterated_index())
        throw VerificationError("strategy reached a pruned situation with no fallback layer: " +
                                cursor.label(graph_));
      cursor = related(cursor, *strategy_.iterated_index());
      ++layer;
    }
  }

  bool explore(std::size_t layer, Situation cursor, Situation check, unsigned remaining) {
    if (!play_satisfies(graph_, prefix_, cs_)) return false;
    if (remaining == 0) return true;
    descend(layer, cursor);

    MemoKey key{layer, cursor, check};
    if (auto it = seen_.find(key); it != seen_.end() && it->second >= remaining) return true;
    seen_[key] = remaining;

    const auto& layer_cs = strategy_.layer(layer).constraints;
    const StateId s = cursor.state;
    if (graph_.owner(s) == PlayerId::Ego) {
      auto act = strategy_.choice(cursor, layer);
      if (!act)
        throw VerificationError("strategy has no move for situation " + cursor.label(graph_));
      auto dst = graph_.step(s, *act);
      if (!dst) throw VerificationError("strategy plays an unavailable action at " + cursor.label(graph_));
      const Move m{*act, *dst};
      return follow(layer, advance(graph_, layer_cs, cursor, m), advance(graph_, cs_, check, m), m,
                    remaining - 1);
    }
    for (const auto& m : graph_.successors(s)) {
      if (!follow(layer, advance(graph_, layer_cs, cursor, m), advance(graph_, cs_, check, m), m,
                  remaining))
        return false;
    }
    return true;
  }

  bool follow(std::size_t layer, Situation cursor, Situation check, const Move& m,
              unsigned remaining) {
    prefix_.actions.push_back(m.action);
    prefix_.states.push_back(m.dst);
    const bool ok = explore(layer, std::move(cursor), std::move(check), remaining);
    prefix_.actions.pop_back();
    prefix_.states.pop_back();
    return ok;
  }

  const GameGraph& graph_;
  const ConstraintSet& cs_;
  const Strategy& strategy_;
  PlayPrefix prefix_;
  std::unordered_map<MemoKey, unsigned, MemoKeyHash> seen_;
};

}  // namespace

bool verify_strategy(const GameGraph& graph, const ConstraintSet& cs, const Strategy& strategy,
                     unsigned depth) {
  cs.check(graph);
  if (strategy.layer_count() == 0) throw UsageError("strategy has no layers");
  if (depth == 0) return true;
  return StrategyChecker(graph, cs, strategy).run(depth);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Win: return "win";
    case Verdict::Lose: return "lose";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t SolveReport::peak_situations() const {
  std::size_t peak = 0;
  for (const auto& it : iterations) peak = std::max(peak, it.situations);
  return peak;
}

std::size_t SolveReport::total_situations() const {
  std::size_t total = 0;
  for (const auto& it : iterations) total += it.situations;
  return total;
}

namespace {

struct IterationOutcome {
  SituationGraph graph;
  WinningRegion region;
  IterationStats stats;
};

IterationOutcome run_one(const GameGraph& graph, const ConstraintSet& cs, unsigned window,
                         const std::optional<PruneContext>& prune, const SolveOptions& options) {
  const auto start = Clock::now();
  auto sg = build(graph, cs, prune, options.build);
  auto wr = find_winning_region(sg);
  auto stats = stats_for(window, sg, wr, seconds_since(start));
  if (options.on_iteration) options.on_iteration(stats);
  return {std::move(sg), std::move(wr), stats};
}

}  // namespace

SolveReport iterate_min(const GameGraph& graph, const ConstraintSet& cs,
                        std::size_t iterated_index, const SolveOptions& options) {
  require_kind(cs, iterated_index, ConstraintKind::Min);
  cs.check(graph);
  const auto start = Clock::now();
  SolveReport report;
  report.max_fan_out = graph.max_fan_out();

  const auto& target = cs[iterated_index];
  std::vector<Strategy::Layer> layers;
  std::optional<PruneContext> prune;
  for (unsigned c = std::max(target.k, 1U); c <= target.l; ++c) {
    if (options.max_iterations && report.iterations.size() >= *options.max_iterations) {
      report.verdict = Verdict::Inconclusive;
      report.seconds = seconds_since(start);
      return report;
    }
    auto out = run_one(graph, cs.with_window(iterated_index, c), c, prune, options);
    report.iterations.push_back(out.stats);
    layers.push_back(extract_layer(out.graph, out.region));
    const bool won = out.region.winning(out.graph.initial());
    if (!won && c < target.l) {
      prune = PruneContext::from_graph(out.graph, out.region.winning_ids(), iterated_index,
                                       MarkMeaning::Winnable);
    }
    report.final_graph = std::move(out.graph);
    report.final_region = std::move(out.region);
    if (won) {
      std::reverse(layers.begin(), layers.end());
      report.verdict = Verdict::Win;
      report.final_window = c;
      report.strategy = Strategy(std::move(layers), iterated_index);
      report.seconds = seconds_since(start);
      return report;
    }
  }
  report.verdict = Verdict::Lose;
  report.final_window = target.l;
  report.seconds = seconds_since(start);
  return report;
}

SolveReport iterate_max(const GameGraph& graph, const ConstraintSet& cs,
                        std::size_t iterated_index, const SolveOptions& options) {
  require_kind(cs, iterated_index, ConstraintKind::Max);
  cs.check(graph);
  const auto start = Clock::now();
  SolveReport report;
  report.max_fan_out = graph.max_fan_out();

  const auto& target = cs[iterated_index];
  std::optional<PruneContext> prune;
  for (unsigned c = std::max(target.k, 1U); c <= target.l; ++c) {
    auto out = run_one(graph, cs.with_window(iterated_index, c), c, prune, options);
    report.iterations.push_back(out.stats);
    const bool won = out.region.winning(out.graph.initial());
    if (won && c == target.l) report.strategy = extract_strategy(out.graph, out.region);
    if (won && c < target.l) {
      prune = PruneContext::from_graph(out.graph, out.region.losing_ids(), iterated_index,
                                       MarkMeaning::NonWinnable);
    }
    report.final_graph = std::move(out.graph);
    report.final_region = std::move(out.region);
    if (!won || c == target.l) {
      report.verdict = won ? Verdict::Win : Verdict::Lose;
      report.final_window = c;
      break;
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

SolveReport iterate(const GameGraph& graph, const ConstraintSet& cs, std::size_t iterated_index,
                    const SolveOptions& options) {
  if (iterated_index >= cs.size()) throw UsageError("iterated constraint index out of range");
  return cs[iterated_index].kind == ConstraintKind::Min
             ? iterate_min(graph, cs, iterated_index, options)
             : iterate_max(graph, cs, iterated_index, options);
}

SolveReport solve_direct(const GameGraph& graph, const ConstraintSet& cs,
                         const SolveOptions& options) {
  cs.check(graph);
  const auto start = Clock::now();
  SolveReport report;
  report.max_fan_out = graph.max_fan_out();
  unsigned window = 0;
  for (const auto& c : cs) window = std::max(window, c.l);
  auto out = run_one(graph, cs, window, std::nullopt, options);
  report.iterations.push_back(out.stats);
  const bool won = out.region.winning(out.graph.initial());
  report.verdict = won ? Verdict::Win : Verdict::Lose;
  report.final_window = window;
  if (won) report.strategy = extract_strategy(out.graph, out.region);
  report.final_graph = std::move(out.graph);
  report.final_region = std::move(out.region);
  report.seconds = seconds_since(start);
  return report;
}

Iteration iteration_at(const GameGraph& graph, const ConstraintSet& cs,
                       std::size_t iterated_index, unsigned window_length,
                       const BuildOptions& options) {
  if (iterated_index >= cs.size()) throw UsageError("iterated constraint index out of range");
  const auto& target = cs[iterated_index];
  const unsigned first = std::max(target.k, 1U);
  if (window_length < first || window_length > target.l)
    throw UsageError("iteration length must lie between max(k, 1) and l");
  const auto meaning =
      target.kind == ConstraintKind::Min ? MarkMeaning::Winnable : MarkMeaning::NonWinnable;

  std::optional<PruneContext> prune;
  for (unsigned c = first;; ++c) {
    auto sg = build(graph, cs.with_window(iterated_index, c), prune, options);
    auto wr = find_winning_region(sg);
    if (c == window_length) return Iteration{c, std::move(sg), std::move(wr)};
    prune = PruneContext::from_graph(
        sg, meaning == MarkMeaning::Winnable ? wr.winning_ids() : wr.losing_ids(), iterated_index,
        meaning);
  }
}

std::string strategy_to_json(const Strategy& strategy, const GameGraph& graph) {
  using json = nlohmann::json;
  json out = json::array();
  for (std::size_t i = 0; i < strategy.layer_count(); ++i) {
    const auto& layer = strategy.layer(i);
    unsigned window = 0;
    if (strategy.iterated_index()) window = layer.constraints[*strategy.iterated_index()].l;
    for (const auto& [key, action] : layer.choices) {
      const auto sit = layer.layout.unpack(key);
      json hs = json::array();
      for (const auto& h : sit.histories) hs.push_back(h.to_string());
      json entry = {{"state", graph.state_name(sit.state)},
                    {"histories", std::move(hs)},
                    {"action", graph.action_name(action)}};
      if (strategy.iterated_index()) entry["window_length"] = window;
      out.push_back(std::move(entry));
    }
  }
  return out.dump(1) + "\n";
}

std::string report_to_json(const SolveReport& report, bool include_timings) {
  using json = nlohmann::json;
  json out;
  out["verdict"] = to_string(report.verdict);
  out["final_window"] = report.final_window ? json(*report.final_window) : json(nullptr);
  out["max_fan_out"] = report.max_fan_out;
  out["peak_situations"] = report.peak_situations();
  out["total_situations"] = report.total_situations();
  out["iterations"] = json::array();
  for (const auto& it : report.iterations) {
    json j = {{"window_length", it.window_length}, {"situations", it.situations},
              {"transitions", it.transitions},     {"winnable_marked", it.winnable_marked},
              {"losing_marked", it.losing_marked}, {"violating", it.violating},
              {"winning", it.winning},             {"losing", it.losing}};
    if (include_timings) j["seconds"] = it.seconds;
    out["iterations"].push_back(std::move(j));
  }
  if (include_timings) out["seconds"] = report.seconds;
  return out.dump(1) + "\n";
}

}  // namespace wincc
