// Copyright 2026 The Cheat SDMCTS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <set>

#include "cheat/game.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scenarios.hpp"

using namespace cheat;
using namespace cheat::test;

TEST_CASE("new_game deals eight each and removes the anchor card") {
  const GameState s = new_game(42);
  CHECK(s.hands[0].size() == 8);
  CHECK(s.hands[1].size() == 8);
  CHECK(s.deck.size() == 35);
  CHECK(s.table.empty());
  CHECK(s.round == 1);
  CHECK(s.opening);
  CHECK(s.anchor_rank == s.anchor_card.rank);
  CHECK(cards_conserved(s));
  CHECK(new_game(42) == s);
  CHECK_FALSE(new_game(43) == s);
}

TEST_CASE("first player is drawn from the seed") {
  int first_zero = 0;
  for (uint64_t seed = 0; seed < 400; ++seed) first_zero += new_game(seed).to_move == 0;
  CHECK(first_zero > 150);
  CHECK(first_zero < 250);
}

TEST_CASE("164 actions for eight cards facing a claim with a deck") {
  const GameState s = pending_claim_state(8);
  CHECK(legal_actions(s).size() == 164);
  CHECK(count_legal_actions(s) == 164);
}

TEST_CASE("action count matches subset enumeration for h in 1..20") {
  for (int h = 1; h <= 20; ++h) {
    CAPTURE(h);
    const GameState s = pending_claim_state(h);
    const auto actions = legal_actions(s);
    CHECK(static_cast<long long>(actions.size()) == brute_force_action_count(s));
    CHECK(count_legal_actions(s) == brute_force_action_count(s));
    std::set<uint64_t> claim_sets;
    for (const ConcreteAction& a : actions) {
      if (a.is_claim()) claim_sets.insert(a.cards.bits());
    }
    CHECK(claim_sets == brute_force_claim_sets(s.hands[0]));
  }
}

TEST_CASE("one card facing a claim gives three actions") {
  const GameState s = pending_claim_state(1);
  CHECK(legal_actions(s).size() == 3);
}

TEST_CASE("no CallCheat after the opponent takes a card") {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("4c");
  p.last = played(1, ConcreteAction::take_card());
  const GameState s = p.build();
  for (const ConcreteAction& a : legal_actions(s)) CHECK(a.kind != ActionKind::call_cheat);
  CHECK_FALSE(is_legal(s, ConcreteAction::call_cheat()));
  CHECK_THROWS_WITH_AS(apply(s, ConcreteAction::call_cheat()), "action is not legal in this state", Error);
}

TEST_CASE("empty deck removes TakeCard") {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("4c");
  p.deck_size = 0;
  const GameState s = p.build();
  CHECK(s.deck.empty());
  CHECK(cards_conserved(s));
  for (const ConcreteAction& a : legal_actions(s)) CHECK(a.kind != ActionKind::take_card);
}

TEST_CASE("claim ranks follow the anchor with wrap in both directions") {
  CHECK(claim_target(13, false, Direction::higher) == 1);
  CHECK(claim_target(1, false, Direction::lower) == 13);
  CHECK(claim_target(7, false, Direction::higher) == 8);
  CHECK(claim_target(7, false, Direction::lower) == 6);
  CHECK(claim_target(7, true, Direction::higher) == 7);
  CHECK(claim_target(7, true, Direction::lower) == 0);

  const GameState s = new_game(5);
  const Card c = s.hands[s.to_move].front();
  CHECK(is_legal(s, ConcreteAction::claim(CardSet{c}, s.anchor_rank, Direction::higher)));
  CHECK_FALSE(is_legal(s, ConcreteAction::claim(CardSet{c}, rank_up(s.anchor_rank), Direction::higher)));
  CHECK_FALSE(is_legal(s, ConcreteAction::claim(CardSet{c}, s.anchor_rank, Direction::lower)));
}

TEST_CASE("claim size is one to four cards from the mover's hand") {
  Position p;
  p.hand0 = cards("2c 3c 4c 5c 6c");
  p.hand1 = cards("8c");
  const GameState s = p.build();
  CHECK_FALSE(is_legal(s, ConcreteAction::claim(cards("2c 3c 4c 5c 6c"), 8, Direction::higher)));
  CHECK_FALSE(is_legal(s, ConcreteAction::claim(CardSet{}, 8, Direction::higher)));
  CHECK_FALSE(is_legal(s, ConcreteAction::claim(cards("8c"), 8, Direction::higher)));
  CHECK(is_legal(s, ConcreteAction::claim(cards("2c 3c 4c 5c"), 8, Direction::higher)));
  CHECK(is_legal(s, ConcreteAction::claim(cards("2c"), 6, Direction::lower)));
}

TEST_CASE("claim_is_true needs every card on the claimed rank") {
  CHECK(claim_is_true(group("5c 5d", 5, 0)));
  CHECK_FALSE(claim_is_true(group("5c 6d", 5, 0)));
  CHECK_FALSE(claim_is_true(group("Ks", 1, 0)));
}

TEST_CASE("claim moves cards, sets the anchor and passes the turn") {
  Position p;
  p.hand0 = cards("2c 3c 8d");
  p.hand1 = cards("4c");
  p.anchor = 7;
  p.round = 4;
  const GameState s = p.build();
  const GameState t = apply(s, ConcreteAction::claim(cards("2c 3c"), 8, Direction::higher));
  CHECK(t.hands[0] == cards("8d"));
  CHECK(t.table.back().cards == cards("2c 3c"));
  CHECK(t.table.back().claimed_count == 2);
  CHECK(t.table.back().claimant == 0);
  CHECK(t.anchor_rank == 8);
  CHECK(t.to_move == 1);
  CHECK(t.round == 5);
  CHECK(t.table_cards == s.table_cards + 2);
  CHECK(cards_conserved(t));
}

TEST_CASE("TakeCard moves the top deck card and keeps the anchor") {
  const GameState s = new_game(9);
  const Player mover = s.to_move;
  const Card top = s.deck.back();
  const GameState t = apply(s, ConcreteAction::take_card());
  CHECK(t.deck.size() == s.deck.size() - 1);
  CHECK(t.hands[mover].size() == s.hands[mover].size() + 1);
  CHECK(t.hands[mover].contains(top));
  CHECK(t.anchor_rank == s.anchor_rank);
  CHECK(t.opening == s.opening);
  CHECK(t.to_move == other(mover));
}

TEST_CASE("CallCheat on a true claim gives the challenger the stack") {
  Position p;
  p.hand0 = cards("2c");
  p.hand1 = cards("4c 9d");
  p.table = {group("3h 3s", 3, 0), group("7c 7d 7h", 7, 1)};
  p.anchor = 7;
  p.to_move = 0;
  p.last = played(1, ConcreteAction::claim(cards("7c 7d 7h"), 7, Direction::higher));
  const GameState s = p.build();
  const int stack = s.table_cards;
  const GameState t = apply(s, ConcreteAction::call_cheat());
  CHECK(t.hands[0].size() == 1 + stack);
  CHECK(t.hands[1].size() == 2);
  CHECK(t.table.empty());
  CHECK(t.table_cards == 0);
  CHECK(t.anchor_rank == 7);
  CHECK(t.to_move == 1);
  CHECK(cards_conserved(t));
}

TEST_CASE("CallCheat on a false claim gives the claimant the stack") {
  Position p;
  p.hand0 = cards("2c");
  p.hand1 = cards("4c 9d");
  p.table = {group("7c 5d", 7, 1)};
  p.anchor = 7;
  p.to_move = 0;
  p.last = played(1, ConcreteAction::claim(cards("7c 5d"), 7, Direction::higher));
  const GameState t = apply(p.build(), ConcreteAction::call_cheat());
  CHECK(t.hands[1] == cards("4c 9d 7c 5d"));
  CHECK(t.to_move == 0);
  CHECK(t.anchor_rank == 7);
  CHECK_FALSE(t.opening);
}

TEST_CASE("terminal detection and rewards") {
  Position p;
  p.hand0 = CardSet{};
  p.hand1 = cards("2c 3c 4c 5c 6c");
  CHECK(is_terminal(p.build()));
  CHECK(reward(p.build()) == RewardVector{1.0, -1.0});

  Position q;
  q.hand0 = cards("2c 3c 4c 5c");
  q.hand1 = cards("2d 3d 4d 5d 6d 7d 8d 9d 10d");
  q.round = 101;
  CHECK(is_terminal(q.build()));
  CHECK(reward(q.build()) == RewardVector{1.0, -1.0});

  Position t;
  t.hand0 = cards("2c 3c 4c 5c 6c 7c");
  t.hand1 = cards("2d 3d 4d 5d 6d 7d");
  t.round = 101;
  CHECK(reward(t.build()) == RewardVector{0.0, 0.0});
  CHECK_FALSE(winner(t.build()).has_value());

  t.round = 100;
  CHECK_FALSE(is_terminal(t.build()));
  CHECK_THROWS_AS(reward(t.build()), Error);
}

TEST_CASE("legal_actions on a terminal state is an error") {
  Position p;
  p.hand0 = CardSet{};
  p.hand1 = cards("2c");
  try {
    legal_actions(p.build());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "terminal");
  }
}

TEST_CASE("random playouts conserve cards, stay zero-sum and end by round 101") {
  Rng rng(2024);
  long long plies = 0;
  for (uint64_t g = 0; g < 10000; ++g) {
    GameState s = new_game(g);
    while (!is_terminal(s)) {
      REQUIRE(s.round <= kMaxRounds);
      const ConcreteAction a = sample_legal_action(s, rng);
      REQUIRE(is_legal(s, a));
      s = apply(s, a);
      REQUIRE(cards_conserved(s));
      ++plies;
    }
    REQUIRE(s.round <= kMaxRounds + 1);
    const RewardVector r = reward(s);
    REQUIRE(r[0] + r[1] == 0.0);
  }
  CHECK(plies > 10000);
}

TEST_CASE("apply is a pure function of state and action") {
  Rng rng(1);
  GameState s = new_game(3);
  for (int i = 0; i < 30 && !is_terminal(s); ++i) {
    const ConcreteAction a = sample_legal_action(s, rng);
    const GameState copy = s;
    const GameState t1 = apply(s, a);
    const GameState t2 = apply(s, a);
    CHECK(t1 == t2);
    CHECK(s == copy);
    s = t1;
  }
}

TEST_CASE("legal_moves spells out both directions after the opening") {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("4c");
  p.opening = false;
  const GameState s = p.build();
  const auto placements = legal_actions(s);
  const auto moves = legal_moves(s);
  int claims = 0;
  for (const ConcreteAction& a : placements) claims += a.is_claim();
  CHECK(moves.size() == placements.size() + claims);
  for (const ConcreteAction& a : moves) CHECK(is_legal(s, a));
}
