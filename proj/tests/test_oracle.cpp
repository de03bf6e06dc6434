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

#include <random>

#include "support.hpp"
#include "wincc/oracle.hpp"
#include "wincc/situation_graph.hpp"

namespace wincc {
namespace {

using testing::action;
using testing::example_game;
using testing::state;

const oracle::OracleConfig kExample{.max_states = 10};

ConstraintSet min_a(unsigned k, unsigned l) {
  return ConstraintSet({CountingConstraint{ConstraintKind::Min, 0, k, l}});
}

TEST(Oracle, ExpandsPastViolations) {
  const auto g = example_game();
  const auto og = oracle::oracle_situation_graph(g, min_a(1, 1), kExample);
  EXPECT_GT(og.size(), 2U);
  const Situation two{state(g, "2"), {History::parse("0")}};
  const auto it = std::find(og.situations.begin(), og.situations.end(), two);
  ASSERT_NE(it, og.situations.end());
  EXPECT_FALSE(og.successors[it - og.situations.begin()].empty());
}

TEST(Oracle, SupersetOfSecondIteration) {
  const auto g = example_game();
  const auto og = oracle::oracle_situation_graph(g, min_a(1, 2), kExample);
  const std::set<Situation> all(og.situations.begin(), og.situations.end());
  const auto sg = build(g, min_a(1, 2));
  for (SituationId id = 0; id < sg.size(); ++id) EXPECT_TRUE(all.contains(sg.situation(id)));

  const auto winning = oracle::oracle_winning(g, min_a(1, 2), kExample);
  std::size_t inside = 0;
  for (SituationId id = 0; id < sg.size(); ++id) inside += winning.contains(sg.situation(id));
  EXPECT_EQ(inside, 10U);
}

TEST(Oracle, EmptyConstraintsMirrorGame) {
  const auto g = example_game();
  const auto og = oracle::oracle_situation_graph(g, ConstraintSet{}, kExample);
  EXPECT_EQ(og.size(), g.state_count());
  std::size_t edges = 0;
  for (const auto& s : og.successors) edges += s.size();
  EXPECT_EQ(edges, g.transition_count());
  EXPECT_EQ(oracle::oracle_winning(g, ConstraintSet{}, kExample).size(), g.state_count());
  EXPECT_TRUE(oracle::oracle_play_enumeration(g, ConstraintSet{}, 5, kExample));
}

TEST(Oracle, ConstraintActionEverywhere) {
  GameDescription d;
  d.state_names = {"e", "x", "f"};
  d.owners = {PlayerId::Ego, PlayerId::Alter, PlayerId::Ego};
  d.initial = 0;
  d.ego_actions = {"a", "c"};
  d.alter_actions = {"u", "v"};
  d.transitions = {{0, 0, 1}, {1, 2, 0}, {1, 3, 2}, {2, 0, 1}};
  const GameGraph g(d);
  const auto og = oracle::oracle_situation_graph(g, min_a(1, 1));
  EXPECT_EQ(oracle::oracle_winning(g, min_a(1, 1)).size(), og.size());

  // "c" never appears on a transition.
  const ConstraintSet never({CountingConstraint{ConstraintKind::Min, 1, 1, 1}});
  for (unsigned l = 1; l <= 4; ++l) {
    const auto cs = never.with_window(0, l);
    const Situation init{0, {History::empty(l)}};
    EXPECT_FALSE(oracle::oracle_winning(g, cs).contains(init));
  }
}

TEST(Oracle, PlayEnumeration) {
  const auto g = example_game();
  EXPECT_TRUE(oracle::oracle_play_enumeration(g, min_a(1, 3), 12, kExample));
  EXPECT_FALSE(oracle::oracle_play_enumeration(g, min_a(1, 1), 2, kExample));
  EXPECT_FALSE(oracle::oracle_play_enumeration(g, min_a(1, 2), 8, kExample));
  EXPECT_EQ(oracle::default_depth(min_a(1, 3)), 10U);
}

TEST(Oracle, Budgets) {
  const auto g = example_game();
  EXPECT_THROW(oracle::oracle_winning(g, min_a(1, 2)), BudgetError);
  EXPECT_THROW(oracle::oracle_winning(g, min_a(1, 5), {.max_states = 10}), BudgetError);
  EXPECT_THROW(oracle::oracle_situation_graph(g, min_a(1, 4), {.max_states = 10, .max_situations = 3}),
               BudgetError);
}

TEST(Oracle, TripleAgreementOnRandomGames) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 100; ++round) {
    const auto g = testing::random_game(rng);
    const ConstraintSet cs({testing::random_constraint(
        rng, round % 2 ? ConstraintKind::Max : ConstraintKind::Min)});
    const auto a = oracle::triple_agreement(g, cs);
    EXPECT_TRUE(a.agree()) << "round " << round;
  }
}

}  // namespace
}  // namespace wincc
