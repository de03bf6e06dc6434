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

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wincc/constraints.hpp"
#include "wincc/game.hpp"
#include "wincc/situation_graph.hpp"

namespace wincc {

/// Partition of a situation graph into situations Ego wins and loses.
class WinningRegion {
 public:
  WinningRegion() = default;
  explicit WinningRegion(std::vector<bool> winning);

  std::size_t size() const { return winning_.size(); }
  bool winning(SituationId id) const { return winning_[id]; }
  bool losing(SituationId id) const { return !winning_[id]; }
  std::size_t winning_count() const { return winning_count_; }
  std::size_t losing_count() const { return winning_.size() - winning_count_; }

  std::vector<SituationId> winning_ids() const;
  std::vector<SituationId> losing_ids() const;

 private:
  std::vector<bool> winning_;
  std::size_t winning_count_ = 0;
};

/// Safety fixpoint: violating situations are losing, winnable marks are safe
/// sinks. An Alter situation is losing if any successor is, an Ego situation
/// if all successors are; unmarked situations without successors lose.
WinningRegion find_winning_region(const SituationGraph& sg);

/// Positional Ego strategy over situations. Layer 0 belongs to the graph the
/// verdict came from; when play enters one of a layer's winnable marks, the
/// related situation is looked up in the next layer (one entry shorter
/// iterated window), and so on.
class Strategy {
 public:
  struct Layer {
    ConstraintSet constraints;
    HistoryLayout layout;
    /// Choices in situation-id order of the graph the layer was extracted from.
    std::vector<std::pair<SituationKey, ActionId>> choices;
    std::unordered_map<SituationKey, ActionId, SituationKeyHash> lookup;
    std::unordered_set<SituationKey, SituationKeyHash> marks;
  };

  Strategy() = default;
  Strategy(std::vector<Layer> layers, std::optional<std::size_t> iterated_index)
      : layers_(std::move(layers)), iterated_index_(iterated_index) {}

  std::size_t layer_count() const { return layers_.size(); }
  const Layer& layer(std::size_t i) const { return layers_.at(i); }
  std::optional<std::size_t> iterated_index() const { return iterated_index_; }

  std::optional<ActionId> choice(const Situation& s, std::size_t layer = 0) const;
  bool is_mark(const Situation& s, std::size_t layer = 0) const;
  /// Overrides (or adds) a choice; mainly for tests.
  void set_choice(const Situation& s, ActionId a, std::size_t layer = 0);

 private:
  std::vector<Layer> layers_;
  std::optional<std::size_t> iterated_index_;
};

/// Strategy layer for every Ego-owned winning situation that is not a
/// winnable mark: the smallest action whose successor is winning.
Strategy::Layer extract_layer(const SituationGraph& sg, const WinningRegion& wr);

/// Single-layer strategy. Throws UsageError if the initial situation is not winning.
Strategy extract_strategy(const SituationGraph& sg, const WinningRegion& wr);

/// Explores every play of up to `depth` Ego moves that follows `strategy`
/// against all Alter moves. Returns false iff some explored prefix violates
/// `cs`. Throws VerificationError when the strategy has no move for a reached
/// situation.
bool verify_strategy(const GameGraph& graph, const ConstraintSet& cs, const Strategy& strategy,
                     unsigned depth);

enum class Verdict { Win, Lose, Inconclusive };

std::string_view to_string(Verdict v);

struct IterationStats {
  unsigned window_length = 0;
  std::size_t situations = 0;
  std::size_t transitions = 0;
  std::size_t winnable_marked = 0;
  std::size_t losing_marked = 0;
  std::size_t violating = 0;
  std::size_t winning = 0;
  std::size_t losing = 0;
  double seconds = 0.0;
};

struct SolveReport {
  Verdict verdict = Verdict::Inconclusive;
  /// Window length of the iteration that decided the verdict.
  std::optional<unsigned> final_window;
  std::optional<Strategy> strategy;
  std::vector<IterationStats> iterations;
  std::size_t max_fan_out = 0;
  double seconds = 0.0;
  /// Graph and region of the last iteration run.
  std::optional<SituationGraph> final_graph;
  std::optional<WinningRegion> final_region;

  std::size_t peak_situations() const;
  std::size_t total_situations() const;
};

struct SolveOptions {
  /// Stop iterate_min after this many iterations (verdict Inconclusive).
  std::optional<unsigned> max_iterations;
  BuildOptions build;
  std::function<void(const IterationStats&)> on_iteration;
};

/// Grows the window of the Min constraint at `iterated_index` from k to l,
/// pruning each graph with the previous iteration's winning situations.
SolveReport iterate_min(const GameGraph& graph, const ConstraintSet& cs,
                        std::size_t iterated_index, const SolveOptions& options = {});

/// Dual driver for a Max constraint: carries losing situations forward and
/// stops with Lose as soon as the initial situation loses.
SolveReport iterate_max(const GameGraph& graph, const ConstraintSet& cs,
                        std::size_t iterated_index, const SolveOptions& options = {});

/// iterate_min or iterate_max depending on the kind of the iterated constraint.
SolveReport iterate(const GameGraph& graph, const ConstraintSet& cs, std::size_t iterated_index,
                    const SolveOptions& options = {});

/// Baseline: one unpruned graph at the full window lengths.
SolveReport solve_direct(const GameGraph& graph, const ConstraintSet& cs,
                         const SolveOptions& options = {});

struct Iteration {
  unsigned window_length;
  SituationGraph graph;
  WinningRegion region;
};

/// Runs the iterated procedure up to window `window_length` without stopping
/// on a win and returns that iteration.
Iteration iteration_at(const GameGraph& graph, const ConstraintSet& cs,
                       std::size_t iterated_index, unsigned window_length,
                       const BuildOptions& options = {});

std::string strategy_to_json(const Strategy& strategy, const GameGraph& graph);
std::string report_to_json(const SolveReport& report, bool include_timings = false);

}  // namespace wincc
