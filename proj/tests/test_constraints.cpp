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

#include <functional>
#include <random>

#include "support.hpp"
#include "wincc/constraints.hpp"

namespace wincc {
namespace {

using testing::action;
using testing::example_game;
using testing::state;

CountingConstraint cc(ConstraintKind kind, ActionId a, unsigned k, unsigned l) {
  return CountingConstraint{kind, a, k, l};
}

constexpr ActionId A = 0;
constexpr ActionId NotA = 1;

TEST(History, ShiftExamples) {
  const auto min_a = cc(ConstraintKind::Min, A, 1, 2);
  EXPECT_EQ(history_shift(History::parse("--"), min_a, A).to_string(), "1-");
  EXPECT_EQ(history_shift(History::parse("--"), min_a, NotA).to_string(), "0-");
  EXPECT_EQ(history_shift(History::parse("10"), min_a, NotA).to_string(), "01");
  const auto single = cc(ConstraintKind::Min, A, 1, 1);
  for (const char* h : {"-", "0", "1"})
    EXPECT_EQ(history_shift(History::parse(h), single, A).to_string(), "1");
  EXPECT_THROW(history_shift(History::parse("--"), single, A), UsageError);
}

TEST(History, SatisfactionExamples) {
  EXPECT_FALSE(history_satisfies(History::parse("0"), cc(ConstraintKind::Min, A, 1, 1)));
  EXPECT_TRUE(history_satisfies(History::parse("0-"), cc(ConstraintKind::Min, A, 1, 2)));
  EXPECT_FALSE(history_satisfies(History::parse("11"), cc(ConstraintKind::Max, A, 1, 2)));
  EXPECT_FALSE(history_satisfies(History::parse("010"), cc(ConstraintKind::Min, A, 2, 3)));
  EXPECT_TRUE(history_satisfies(History::parse("1-"), cc(ConstraintKind::Max, A, 1, 2)));
  EXPECT_FALSE(history_satisfies(History::parse("11-"), cc(ConstraintKind::Max, A, 1, 3)));
}

TEST(History, Encoding) {
  const auto h = History::parse("10-");
  EXPECT_EQ(h.length(), 3U);
  EXPECT_EQ(h[0], Entry::Hit);
  EXPECT_EQ(h[1], Entry::Miss);
  EXPECT_EQ(h[2], Entry::None);
  EXPECT_EQ(h.hits(), 1U);
  EXPECT_TRUE(h.has_none());
  EXPECT_TRUE(h.well_formed());
  EXPECT_EQ(h.truncated(2).to_string(), "10");
  EXPECT_EQ(History::from_bits(3, h.bits()), h);
  EXPECT_FALSE(History::parse("-1").well_formed());
  EXPECT_EQ(History::empty(4).to_string(), "----");
  const Entry entries[] = {Entry::Miss, Entry::Hit};
  EXPECT_EQ(History::from_entries(entries).to_string(), "01");
}

TEST(Constraint, ParseAndFormat) {
  const auto g = example_game();
  const auto c = parse_constraint("min:a:1:7", g);
  EXPECT_EQ(c.kind, ConstraintKind::Min);
  EXPECT_EQ(c.action, action(g, "a"));
  EXPECT_EQ(c.k, 1U);
  EXPECT_EQ(c.l, 7U);
  EXPECT_EQ(format_constraint(c, g), "min:a:1:7");
  EXPECT_EQ(parse_constraint("max:not_a:2:5", g).kind, ConstraintKind::Max);
  for (const char* bad : {"min:a:1", "avg:a:1:2", "min:b:1:2", "min:zz:1:2", "min:a:3:2",
                          "min:a:1:0", "min:a:x:2", "min:a:1:33"})
    EXPECT_THROW(parse_constraint(bad, g), UsageError) << bad;
}

TEST(Constraint, SetWindowBudget) {
  const auto g = example_game();
  ConstraintSet ok({cc(ConstraintKind::Min, A, 1, 32), cc(ConstraintKind::Max, A, 1, 32)});
  EXPECT_NO_THROW(ok.check(g));
  ConstraintSet too_wide({cc(ConstraintKind::Min, A, 1, 32), cc(ConstraintKind::Max, A, 1, 32),
                          cc(ConstraintKind::Max, A, 1, 1)});
  EXPECT_THROW(too_wide.check(g), UsageError);
  EXPECT_EQ(ok.with_window(1, 5)[1].l, 5U);
}

TEST(PlayPrefix, Examples) {
  const auto g = example_game();
  const auto a = action(g, "a");
  const auto na = action(g, "not_a");
  const auto b = action(g, "b");
  const auto nb = action(g, "not_b");
  auto s = [&g](const char* n) { return state(g, n); };

  const ConstraintSet min11({cc(ConstraintKind::Min, a, 1, 1)});
  EXPECT_FALSE(play_satisfies(g, {{s("1"), s("2"), s("3"), s("4")}, {na, b, na}}, min11));
  EXPECT_TRUE(play_satisfies(g, {{s("1")}, {}}, min11));

  const ConstraintSet min12({cc(ConstraintKind::Min, a, 1, 2)});
  EXPECT_TRUE(play_satisfies(g, {{s("1"), s("2"), s("7"), s("8")}, {na, nb, a}}, min12));

  EXPECT_THROW(play_satisfies(g, {{s("1"), s("3")}, {na}}, min11), UsageError);
  EXPECT_THROW(play_satisfies(g, {{s("2")}, {}}, min11), UsageError);
}

TEST(PlayPrefix, MovesSatisfy) {
  const std::vector<ActionId> moves{NotA, A, NotA, NotA, A};
  EXPECT_TRUE(moves_satisfy(moves, cc(ConstraintKind::Min, A, 1, 3)));
  EXPECT_FALSE(moves_satisfy(moves, cc(ConstraintKind::Min, A, 1, 2)));
  EXPECT_TRUE(moves_satisfy(moves, cc(ConstraintKind::Max, A, 1, 3)));
  const std::vector<ActionId> burst{A, A};
  EXPECT_FALSE(moves_satisfy(burst, cc(ConstraintKind::Max, A, 1, 5)));
}

// Folding history_shift over the Ego moves of every prefix agrees with the
// window check on the prefix, up to and including the first violation.
TEST(Property, ShiftConsistency) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    const auto g = testing::random_game(rng, 6);
    const auto kind = round % 2 == 0 ? ConstraintKind::Min : ConstraintKind::Max;
    const auto c = testing::random_constraint(rng, kind, 4);
    const ConstraintSet cs({c});
    const unsigned max_len = 2 * (c.l + 2);

    PlayPrefix prefix{{g.initial()}, {}};
    std::function<void(const History&)> walk = [&](const History& h) {
      const bool by_history = history_satisfies(h, c);
      const bool by_play = play_satisfies(g, prefix, cs);
      ASSERT_EQ(by_history, by_play) << "history " << h.to_string();
      ++checked;
      if (!by_play || prefix.actions.size() >= max_len) return;
      const StateId here = prefix.states.back();
      for (const auto& m : g.successors(here)) {
        prefix.states.push_back(m.dst);
        prefix.actions.push_back(m.action);
        walk(g.owner(here) == PlayerId::Ego ? history_shift(h, c, m.action) : h);
        prefix.states.pop_back();
        prefix.actions.pop_back();
      }
    };
    walk(History::empty(c.l));
  }
  EXPECT_GT(checked, 1000);
}

// Hits only leave a Max window by ageing out.
TEST(Property, MonotoneMax) {
  for (unsigned l = 1; l <= 6; ++l) {
    for (unsigned k = 0; k <= l; ++k) {
      const auto c = cc(ConstraintKind::Max, A, k, l);
      for (std::uint64_t code = 0; code < (1U << l); ++code) {
        std::vector<Entry> e(l);
        for (unsigned i = 0; i < l; ++i) e[i] = (code >> i) & 1U ? Entry::Hit : Entry::Miss;
        const auto h = History::from_entries(e);
        if (history_satisfies(h, c) || e[l - 1] == Entry::Hit) continue;
        // The oldest entry is a Miss, so every extension keeps all Hits.
        EXPECT_FALSE(history_satisfies(history_shift(h, c, A), c));
        EXPECT_FALSE(history_satisfies(history_shift(h, c, NotA), c));
      }
    }
  }
}

TEST(Property, NoneSuffixPreserved) {
  std::mt19937_64 rng(5);
  for (unsigned l = 1; l <= 8; ++l) {
    const auto c = cc(ConstraintKind::Min, A, 1, l);
    for (int run = 0; run < 50; ++run) {
      auto h = History::empty(l);
      for (unsigned step = 0; step < 2 * l; ++step) {
        h = history_shift(h, c, rng() % 2 ? A : NotA);
        ASSERT_TRUE(h.well_formed()) << h.to_string();
        EXPECT_EQ(h.has_none(), step + 1 < l);
      }
    }
  }
}

}  // namespace
}  // namespace wincc
