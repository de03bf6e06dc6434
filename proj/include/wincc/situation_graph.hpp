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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "wincc/constraints.hpp"
#include "wincc/game.hpp"

namespace wincc {

using SituationId = std::uint32_t;

/// A game state together with one history per constraint, in constraint order.
struct Situation {
  StateId state = 0;
  std::vector<History> histories;

  auto operator<=>(const Situation&) const = default;

  /// "7,(0,-,-)"; one parenthesised history per constraint.
  std::string label(const GameGraph& graph) const;
};

struct SituationHash {
  std::size_t operator()(const Situation& s) const;
};

/// Situation with all histories packed two bits per entry into 128 bits.
struct SituationKey {
  StateId state = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool operator==(const SituationKey&) const = default;
};

struct SituationKeyHash {
  std::size_t operator()(const SituationKey& k) const;
};

/// Bit offsets of each constraint's history inside a SituationKey.
class HistoryLayout {
 public:
  HistoryLayout() = default;
  explicit HistoryLayout(const ConstraintSet& cs);

  std::size_t size() const { return lengths_.size(); }
  unsigned length(std::size_t i) const { return lengths_[i]; }

  std::uint64_t extract(const SituationKey& key, std::size_t i) const;
  void insert(SituationKey& key, std::size_t i, std::uint64_t bits) const;

  SituationKey pack(const Situation& s) const;
  Situation unpack(const SituationKey& key) const;

  bool operator==(const HistoryLayout&) const = default;

 private:
  std::vector<unsigned> offsets_;
  std::vector<unsigned> lengths_;
};

/// Drops the oldest entry of the iterated constraint's history. Throws
/// UsageError when that history is shorter than 2.
Situation related(const Situation& sit, std::size_t iterated_index);

/// Successor of `sit` along `move`: Ego moves shift every history, Alter moves copy them.
Situation advance(const GameGraph& graph, const ConstraintSet& cs, const Situation& sit,
                  const Move& move);

enum class MarkMeaning : std::uint8_t { Winnable, NonWinnable };

class SituationGraph;

/// Verdicts carried over from the previous iteration, keyed by situations
/// whose iterated history is one entry shorter than in the graph being built.
class PruneContext {
 public:
  PruneContext(std::size_t iterated_index, MarkMeaning meaning, HistoryLayout previous_layout)
      : iterated_index_(iterated_index), meaning_(meaning), layout_(std::move(previous_layout)) {}

  static PruneContext from_graph(const SituationGraph& previous,
                                 std::span<const SituationId> marked,
                                 std::size_t iterated_index, MarkMeaning meaning);

  std::size_t iterated_index() const { return iterated_index_; }
  MarkMeaning meaning() const { return meaning_; }
  const HistoryLayout& previous_layout() const { return layout_; }
  std::size_t size() const { return marks_.size(); }

  void add(const Situation& s) { marks_.insert(layout_.pack(s)); }
  void add_key(const SituationKey& k) { marks_.insert(k); }
  bool contains(const Situation& s) const { return marks_.contains(layout_.pack(s)); }
  bool contains_key(const SituationKey& k) const { return marks_.contains(k); }

 private:
  std::size_t iterated_index_;
  MarkMeaning meaning_;
  HistoryLayout layout_;
  std::unordered_set<SituationKey, SituationKeyHash> marks_;
};

enum class SituationStatus : std::uint8_t {
  Expanded,      // successors generated
  Violating,     // fails some constraint; never expanded
  WinnableMark,  // related situation won in the previous iteration
  LosingMark,    // related situation lost in the previous iteration
};

struct SituationEdge {
  ActionId action;
  SituationId dst;
};

struct BuildOptions {
  /// 0 means unlimited; exceeding the budget throws BudgetError.
  std::size_t max_situations = 0;
  /// Called periodically with (situations interned, situations still to expand).
  std::function<void(std::size_t, std::size_t)> progress;
};

class SituationGraph {
 public:
  const ConstraintSet& constraints() const { return constraints_; }
  const HistoryLayout& layout() const { return layout_; }

  std::size_t size() const { return keys_.size(); }
  std::size_t transition_count() const { return edges_.size(); }
  SituationId initial() const { return 0; }

  const SituationKey& key(SituationId id) const { return keys_[id]; }
  StateId state(SituationId id) const { return keys_[id].state; }
  PlayerId owner(SituationId id) const { return owners_[id]; }
  Situation situation(SituationId id) const { return layout_.unpack(keys_[id]); }
  SituationStatus status(SituationId id) const { return status_[id]; }

  /// Violating situations and losing marks: both are left without successors
  /// and are losing by definition.
  bool is_violating(SituationId id) const {
    return status_[id] == SituationStatus::Violating || status_[id] == SituationStatus::LosingMark;
  }
  bool is_winnable_mark(SituationId id) const {
    return status_[id] == SituationStatus::WinnableMark;
  }

  std::span<const SituationEdge> out(SituationId id) const {
    return {edges_.data() + edge_begin_[id], edges_.data() + edge_begin_[id + 1]};
  }

  std::optional<SituationId> find(const Situation& s) const;
  std::optional<SituationId> find_key(const SituationKey& k) const;

  std::vector<SituationId> violating() const;
  std::vector<SituationId> winnable_marks() const;
  std::size_t count(SituationStatus s) const;

 private:
  friend SituationGraph build(const GameGraph&, const ConstraintSet&,
                              const std::optional<PruneContext>&, const BuildOptions&);

  std::pair<SituationId, bool> intern(const SituationKey& k);
  void grow();

  ConstraintSet constraints_;
  HistoryLayout layout_;
  std::vector<SituationKey> keys_;
  std::vector<PlayerId> owners_;
  std::vector<SituationStatus> status_;
  std::vector<std::size_t> edge_begin_;
  std::vector<SituationEdge> edges_;
  // Open addressing; slot holds id + 1, 0 marks an empty slot.
  std::vector<SituationId> slots_;
};

/// Worklist construction from the initial situation (graph.initial, all
/// histories None). Violating situations and situations whose related
/// situation is in `prune` are recorded but not expanded. FIFO order and
/// action-sorted successors make ids deterministic.
SituationGraph build(const GameGraph& graph, const ConstraintSet& cs,
                     const std::optional<PruneContext>& prune = std::nullopt,
                     const BuildOptions& options = {});

/// GraphViz rendering: Ego situations as circles, Alter as diamonds,
/// highlighted situations and winnable marks filled gray.
std::string to_dot(const SituationGraph& sg, const GameGraph& graph,
                   std::span<const SituationId> highlighted = {});

/// One line per situation: "stateName|h1|h2|..." with entries 0, 1, -.
std::string dump_situations(const SituationGraph& sg, const GameGraph& graph);

}  // namespace wincc
