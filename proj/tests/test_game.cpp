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

#include <gtest/gtest.h>

#include "support.hpp"
#include "wincc/game.hpp"

namespace wincc {
namespace {

using testing::action;
using testing::example_game;
using testing::state;

GameDescription tiny() {
  GameDescription d;
  d.state_names = {"e", "x"};
  d.owners = {PlayerId::Ego, PlayerId::Alter};
  d.initial = 0;
  d.ego_actions = {"a"};
  d.alter_actions = {"b"};
  d.transitions = {{0, 0, 1}, {1, 1, 0}};
  return d;
}

TEST(Game, ExampleValidates) {
  const auto g = example_game();
  EXPECT_EQ(g.state_count(), 10U);
  EXPECT_EQ(g.transition_count(), 12U);
  EXPECT_EQ(g.state_name(g.initial()), "1");
  EXPECT_EQ(g.owner(g.initial()), PlayerId::Ego);
  EXPECT_TRUE(validate(g.description()).ok());
}

TEST(Game, SuccessorsSortedByAction) {
  const auto g = example_game();
  const auto two = g.successors(state(g, "2"));
  ASSERT_EQ(two.size(), 2U);
  EXPECT_EQ(two[0], (Move{action(g, "b"), state(g, "3")}));
  EXPECT_EQ(two[1], (Move{action(g, "not_b"), state(g, "7")}));

  const auto one = g.successors(state(g, "1"));
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one[0], (Move{action(g, "not_a"), state(g, "2")}));

  for (StateId s = 0; s < g.state_count(); ++s) EXPECT_FALSE(g.successors(s).empty());
  EXPECT_THROW(g.successors(99), UsageError);
  EXPECT_EQ(g.step(state(g, "9"), action(g, "a")), state(g, "8"));
  EXPECT_FALSE(g.step(state(g, "9"), action(g, "b")).has_value());
}

TEST(Game, SelfLoopBreaksBipartition) {
  GameDescription d;
  d.state_names = {"e"};
  d.owners = {PlayerId::Ego};
  d.initial = 0;
  d.ego_actions = {"a"};
  d.transitions = {{0, 0, 0}};
  const auto r = validate(d);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].condition, Condition::Bipartition);
}

TEST(Game, RemovingAllMovesOfStateNineIsDeadlock) {
  auto d = example_game().description();
  const auto g = example_game();
  const StateId nine = state(g, "9");
  std::erase_if(d.transitions, [nine](const Transition& t) { return t.src == nine; });
  const auto r = validate(d);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].condition, Condition::Deadlock);
  EXPECT_EQ(r.violations[0].state, nine);
  EXPECT_THROW(GameGraph{d}, ValidationError);
}

TEST(Game, AlphabetRestriction) {
  auto d = tiny();
  d.transitions[0].action = 1;  // Alter action from an Ego state
  const auto r = validate(d);
  EXPECT_TRUE(r.has(Condition::AlphabetRestriction));
  EXPECT_EQ(r.count(Condition::AlphabetRestriction), 1U);
}

TEST(Game, DuplicateMoveIsNondeterministic) {
  auto d = tiny();
  d.state_names.push_back("y");
  d.owners.push_back(PlayerId::Alter);
  d.transitions.push_back({0, 0, 2});
  d.transitions.push_back({2, 1, 0});
  const auto r = validate(d);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].condition, Condition::Determinacy);
}

TEST(Game, InitialMustBeEgo) {
  auto d = tiny();
  d.initial = 1;
  EXPECT_TRUE(validate(d).has(Condition::InitialOwner));
  d.initial.reset();
  EXPECT_TRUE(validate(d).has(Condition::InitialOwner));
}

TEST(Game, OutOfRangeIndexIsUsageError) {
  auto d = tiny();
  d.transitions.push_back({0, 0, 7});
  EXPECT_THROW(validate(d), UsageError);
}

TEST(Game, ParseRoundTrip) {
  const auto g = example_game();
  const auto text = serialize_game(g);
  const auto back = parse_game(text);
  EXPECT_EQ(back, g);
  EXPECT_EQ(serialize_game(back), text);
}

TEST(Game, MalformedJsonReportsPosition) {
  try {
    parse_game("{\n  \"states\": [\n  }");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_GT(e.column(), 0U);
  }
}

TEST(Game, UndeclaredNamesAreParseErrors) {
  const std::string head =
      R"({"states":[{"name":"e","owner":"ego"},{"name":"x","owner":"alter"}],)"
      R"("initial":"e","ego_actions":["a"],"alter_actions":["b"],)";
  EXPECT_NO_THROW(parse_game(head + R"("transitions":[["e","a","x"],["x","b","e"]]})"));
  EXPECT_THROW(parse_game(head + R"("transitions":[["e","a","z"],["x","b","e"]]})"), ParseError);
  EXPECT_THROW(parse_game(head + R"("transitions":[["e","q","x"],["x","b","e"]]})"), ParseError);
  EXPECT_THROW(parse_game(head + R"("transitions":[["e","a"]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"states":[]})"), ParseError);
}

TEST(Game, EmptyStatesHasNoInitial) {
  try {
    parse_game(R"({"states":[],"initial":"e","ego_actions":[],"alter_actions":[],"transitions":[]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.result().has(Condition::InitialOwner));
  }
}

TEST(Game, DuplicatePairInJsonIsValidationError) {
  const std::string text =
      R"({"states":[{"name":"e","owner":"ego"},{"name":"x","owner":"alter"},{"name":"y","owner":"alter"}],)"
      R"("initial":"e","ego_actions":["a"],"alter_actions":["b"],)"
      R"("transitions":[["e","a","x"],["e","a","y"],["x","b","e"],["y","b","e"]]})";
  try {
    parse_game(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.result().has(Condition::Determinacy));
  }
}

TEST(Game, MissingFileIsIoError) {
  EXPECT_THROW(load_game("/nonexistent/game.json"), IoError);
}

}  // namespace
}  // namespace wincc
