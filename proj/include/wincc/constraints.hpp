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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wincc/game.hpp"

namespace wincc {

enum class ConstraintKind : std::uint8_t { Min, Max };

std::string_view to_string(ConstraintKind k);

/// "Ego plays `action` at least (Min) / at most (Max) `k` times in every
/// window of `l` of its own moves."
struct CountingConstraint {
  ConstraintKind kind = ConstraintKind::Min;
  ActionId action = 0;
  unsigned k = 1;
  unsigned l = 1;
  PlayerId player = PlayerId::Ego;

  bool operator==(const CountingConstraint&) const = default;
};

/// Throws UsageError unless `c` is well formed for `graph`.
void check_constraint(const CountingConstraint& c, const GameGraph& graph);

/// Parses "kind:action:k:l", e.g. "min:a:1:7".
CountingConstraint parse_constraint(std::string_view text, const GameGraph& graph);
std::string format_constraint(const CountingConstraint& c, const GameGraph& graph);

enum class Entry : std::uint8_t { None = 0, Miss = 1, Hit = 2 };

/// Window of the last `length()` own moves, newest at index 0. Two bits
/// per entry; a None entry means the move has not happened yet.
class History {
 public:
  static constexpr unsigned kMaxLength = 32;

  History() = default;

  static History empty(unsigned length);
  static History from_entries(std::span<const Entry> newest_first);
  /// Inverse of to_string: '1' Hit, '0' Miss, '-' None, newest first.
  static History parse(std::string_view text);
  static History from_bits(unsigned length, std::uint64_t bits);

  unsigned length() const { return length_; }
  std::uint64_t bits() const { return bits_; }
  Entry operator[](unsigned i) const { return static_cast<Entry>((bits_ >> (2 * i)) & 3U); }

  unsigned hits() const;
  bool has_none() const;
  /// None entries, if any, form a suffix and no entry uses the reserved code.
  bool well_formed() const;

  /// Prepends `newest` and drops the oldest entry.
  History shifted(Entry newest) const;
  /// Keeps the newest `length` entries.
  History truncated(unsigned length) const;

  std::string to_string() const;

  auto operator<=>(const History&) const = default;

 private:
  History(unsigned length, std::uint64_t bits) : length_(length), bits_(bits) {}

  unsigned length_ = 0;
  std::uint64_t bits_ = 0;
};

/// Constraints in a fixed order; situation histories are matched by position.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<CountingConstraint> constraints)
      : constraints_(std::move(constraints)) {}

  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }
  const CountingConstraint& operator[](std::size_t i) const { return constraints_[i]; }
  auto begin() const { return constraints_.begin(); }
  auto end() const { return constraints_.end(); }

  /// Copy with constraint `index` resized to window length `l`.
  ConstraintSet with_window(std::size_t index, unsigned l) const;

  void check(const GameGraph& graph) const;

  bool operator==(const ConstraintSet&) const = default;

 private:
  std::vector<CountingConstraint> constraints_;
};

History history_shift(const History& h, const CountingConstraint& c, ActionId act);
bool history_satisfies(const History& h, const CountingConstraint& c);

/// Alternating sequence states[0] actions[0] states[1] ... states[n].
struct PlayPrefix {
  std::vector<StateId> states;
  std::vector<ActionId> actions;
};

/// Window check over a sequence of Ego moves. Max: every window of `l`
/// consecutive moves, and the leading partial window while fewer than `l`
/// moves exist, holds at most `k` hits. Min: every complete window of `l`
/// moves holds at least `k` hits.
bool moves_satisfy(std::span<const ActionId> ego_moves, const CountingConstraint& c);

/// Throws UsageError if `prefix` is not a play prefix of `graph` from its initial state.
bool play_satisfies(const GameGraph& graph, const PlayPrefix& prefix, const ConstraintSet& cs);

}  // namespace wincc
