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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wincc/errors.hpp"

namespace wincc {

/// The two players. Ego is the system being synthesized, Alter the environment.
enum class PlayerId : std::uint8_t { Ego = 0, Alter = 1 };

std::string_view to_string(PlayerId p);

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

struct Transition {
  StateId src;
  ActionId action;
  StateId dst;

  auto operator<=>(const Transition&) const = default;
};

struct Move {
  ActionId action;
  StateId dst;

  bool operator==(const Move&) const = default;
};

/// Raw, unvalidated arena data. Action ids index the concatenation
/// ego_actions ++ alter_actions.
struct GameDescription {
  std::vector<std::string> state_names;
  std::vector<PlayerId> owners;
  std::optional<StateId> initial;
  std::vector<std::string> ego_actions;
  std::vector<std::string> alter_actions;
  std::vector<Transition> transitions;

  std::size_t state_count() const { return owners.size(); }
  std::size_t action_count() const { return ego_actions.size() + alter_actions.size(); }
  PlayerId action_owner(ActionId a) const {
    return a < ego_actions.size() ? PlayerId::Ego : PlayerId::Alter;
  }
};

enum class Condition : std::uint8_t {
  Bipartition,
  Deadlock,
  AlphabetRestriction,
  Determinacy,
  InitialOwner,
};

std::string_view to_string(Condition c);

struct Violation {
  Condition condition;
  std::optional<StateId> state;
  std::optional<Transition> transition;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Condition c) const;
  std::size_t count(Condition c) const;
  std::string summary() const;
};

/// Checks the arena conditions. Requires every index in `d` to be in range
/// (UsageError otherwise); everything else is reported as data.
ValidationResult validate(const GameDescription& d);

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationResult result)
      : Error("invalid game graph: " + result.summary()), result_(std::move(result)) {}

  const ValidationResult& result() const { return result_; }

 private:
  ValidationResult result_;
};

/// Immutable, validated turn-based arena. Successor lists are stored
/// contiguously and sorted by action id.
class GameGraph {
 public:
  /// Throws ValidationError if `d` violates any arena condition.
  explicit GameGraph(GameDescription d);

  std::size_t state_count() const { return desc_.state_count(); }
  std::size_t action_count() const { return desc_.action_count(); }
  std::size_t ego_action_count() const { return desc_.ego_actions.size(); }
  std::size_t transition_count() const { return moves_.size(); }
  std::size_t max_fan_out() const { return max_fan_out_; }

  StateId initial() const { return *desc_.initial; }
  PlayerId owner(StateId s) const { return desc_.owners[s]; }
  PlayerId action_owner(ActionId a) const { return desc_.action_owner(a); }
  const std::string& state_name(StateId s) const { return desc_.state_names[s]; }
  const std::string& action_name(ActionId a) const;

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<ActionId> find_action(std::string_view name) const;

  /// Outgoing moves of `s` in ascending action order. Throws UsageError on an unknown state.
  std::span<const Move> successors(StateId s) const;
  std::optional<StateId> step(StateId s, ActionId a) const;

  const GameDescription& description() const { return desc_; }

  bool operator==(const GameGraph& other) const;

 private:
  GameDescription desc_;
  std::vector<std::size_t> offsets_;
  std::vector<Move> moves_;
  std::size_t max_fan_out_ = 0;
};

/// Parses the JSON game format. Throws ParseError on malformed JSON or
/// undeclared names, ValidationError when the arena conditions fail.
GameGraph parse_game(std::string_view text);
GameGraph load_game(const std::filesystem::path& path);

std::string serialize_game(const GameGraph& graph);

}  // namespace wincc
