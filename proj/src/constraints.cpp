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

#include "wincc/constraints.hpp"

#include <bit>
#include <charconv>

namespace wincc {

namespace {

constexpr std::uint64_t kLowBits = 0x5555555555555555ULL;
constexpr std::uint64_t kHighBits = 0xAAAAAAAAAAAAAAAAULL;

constexpr std::uint64_t mask_for(unsigned length) {
  return length >= 32 ? ~0ULL : (1ULL << (2 * length)) - 1;
}

unsigned parse_count(std::string_view s, std::string_view what) {
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw UsageError("constraint " + std::string(what) + " '" + std::string(s) +
                     "' is not a non-negative integer");
  return v;
}

}  // namespace

std::string_view to_string(ConstraintKind k) { return k == ConstraintKind::Min ? "min" : "max"; }

void check_constraint(const CountingConstraint& c, const GameGraph& graph) {
  if (c.player != PlayerId::Ego) throw UsageError("only ego constraints are supported");
  if (c.action >= graph.action_count() || graph.action_owner(c.action) != PlayerId::Ego)
    throw UsageError("constraint action must belong to the ego alphabet");
  if (c.l < 1 || c.l > History::kMaxLength)
    throw UsageError("constraint window length must be in [1, " +
                     std::to_string(History::kMaxLength) + "]");
  if (c.k > c.l) throw UsageError("constraint count k must not exceed window length l");
}

CountingConstraint parse_constraint(std::string_view text, const GameGraph& graph) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4)
    throw UsageError("constraint '" + std::string(text) + "' must have the form kind:action:k:l");

  CountingConstraint c;
  if (parts[0] == "min") {
    c.kind = ConstraintKind::Min;
  } else if (parts[0] == "max") {
    c.kind = ConstraintKind::Max;
  } else {
    throw UsageError("constraint kind must be 'min' or 'max', got '" + std::string(parts[0]) + "'");
  }
  auto action = graph.find_action(parts[1]);
  if (!action) throw UsageError("constraint names undeclared action '" + std::string(parts[1]) + "'");
  c.action = *action;
  c.k = parse_count(parts[2], "k");
  c.l = parse_count(parts[3], "l");
  check_constraint(c, graph);
  return c;
}

std::string format_constraint(const CountingConstraint& c, const GameGraph& graph) {
  return std::string(to_string(c.kind)) + ":" + graph.action_name(c.action) + ":" +
         std::to_string(c.k) + ":" + std::to_string(c.l);
}

History History::empty(unsigned length) {
  if (length > kMaxLength) throw UsageError("history length exceeds " + std::to_string(kMaxLength));
  return History(length, 0);
}

History History::from_entries(std::span<const Entry> newest_first) {
  if (newest_first.size() > kMaxLength)
    throw UsageError("history length exceeds " + std::to_string(kMaxLength));
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < newest_first.size(); ++i) {
    bits |= static_cast<std::uint64_t>(newest_first[i]) << (2 * i);
  }
  return History(static_cast<unsigned>(newest_first.size()), bits);
}

History History::parse(std::string_view text) {
  std::vector<Entry> entries;
  for (char ch : text) {
    switch (ch) {
      case '1': entries.push_back(Entry::Hit); break;
      case '0': entries.push_back(Entry::Miss); break;
      case '-': entries.push_back(Entry::None); break;
      default: throw UsageError("history entries must be 0, 1 or -");
    }
  }
  return from_entries(entries);
}

History History::from_bits(unsigned length, std::uint64_t bits) {
  if (length > kMaxLength) throw UsageError("history length exceeds " + std::to_string(kMaxLength));
  return History(length, bits & mask_for(length));
}

unsigned History::hits() const {
  return static_cast<unsigned>(std::popcount(bits_ & kHighBits & mask_for(length_)));
}

bool History::has_none() const {
  const auto occupied = (bits_ | (bits_ >> 1)) & kLowBits & mask_for(length_);
  return static_cast<unsigned>(std::popcount(occupied)) < length_;
}

bool History::well_formed() const {
  if ((bits_ & ~mask_for(length_)) != 0) return false;
  bool seen_none = false;
  for (unsigned i = 0; i < length_; ++i) {
    const auto e = static_cast<unsigned>((*this)[i]);
    if (e == 3) return false;
    if (e == 0) {
      seen_none = true;
    } else if (seen_none) {
      return false;
    }
  }
  return true;
}

History History::shifted(Entry newest) const {
  return History(length_, ((bits_ << 2) | static_cast<std::uint64_t>(newest)) & mask_for(length_));
}

History History::truncated(unsigned length) const {
  if (length > length_) throw UsageError("cannot truncate a history to a longer length");
  return History(length, bits_ & mask_for(length));
}

std::string History::to_string() const {
  std::string out;
  out.reserve(length_);
  for (unsigned i = 0; i < length_; ++i) {
    switch ((*this)[i]) {
      case Entry::Hit: out += '1'; break;
      case Entry::Miss: out += '0'; break;
      case Entry::None: out += '-'; break;
    }
  }
  return out;
}

ConstraintSet ConstraintSet::with_window(std::size_t index, unsigned l) const {
  if (index >= constraints_.size()) throw UsageError("constraint index out of range");
  auto copy = constraints_;
  copy[index].l = l;
  return ConstraintSet(std::move(copy));
}

void ConstraintSet::check(const GameGraph& graph) const {
  unsigned total = 0;
  for (const auto& c : constraints_) {
    check_constraint(c, graph);
    total += c.l;
  }
  if (total > 2 * History::kMaxLength)
    throw UsageError("combined window length of all constraints exceeds " +
                     std::to_string(2 * History::kMaxLength));
}

History history_shift(const History& h, const CountingConstraint& c, ActionId act) {
  if (h.length() != c.l) throw UsageError("history length does not match constraint window");
  return h.shifted(act == c.action ? Entry::Hit : Entry::Miss);
}

bool history_satisfies(const History& h, const CountingConstraint& c) {
  if (h.length() != c.l) throw UsageError("history length does not match constraint window");
  if (c.kind == ConstraintKind::Max) return h.hits() <= c.k;
  return h.has_none() || h.hits() >= c.k;
}

bool moves_satisfy(std::span<const ActionId> ego_moves, const CountingConstraint& c) {
  const std::size_t m = ego_moves.size();
  const std::size_t l = c.l;
  for (std::size_t end = 1; end <= m; ++end) {
    if (c.kind == ConstraintKind::Min && end < l) continue;
    const std::size_t begin = end >= l ? end - l : 0;
    unsigned hits = 0;
    for (std::size_t i = begin; i < end; ++i) hits += ego_moves[i] == c.action ? 1 : 0;
    if (c.kind == ConstraintKind::Max ? hits > c.k : hits < c.k) return false;
  }
  return true;
}

bool play_satisfies(const GameGraph& graph, const PlayPrefix& prefix, const ConstraintSet& cs) {
  if (prefix.states.size() != prefix.actions.size() + 1)
    throw UsageError("play prefix must alternate states and actions");
  if (prefix.states.front() != graph.initial())
    throw UsageError("play prefix must start in the initial state");
  std::vector<ActionId> ego_moves;
  for (std::size_t i = 0; i < prefix.actions.size(); ++i) {
    const auto src = prefix.states[i];
    if (src >= graph.state_count() || graph.step(src, prefix.actions[i]) != prefix.states[i + 1])
      throw UsageError("play prefix step " + std::to_string(i) + " is not a transition");
    if (graph.owner(src) == PlayerId::Ego) ego_moves.push_back(prefix.actions[i]);
  }
  for (const auto& c : cs) {
    if (!moves_satisfy(ego_moves, c)) return false;
  }
  return true;
}

}  // namespace wincc
