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

#include <map>

#include "cheat/knowledge.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cheat;
using namespace cheat::test;

namespace {

// Viewer 0 owns every card but six: the opponent's two-card hand, its
// pending two-card claim of rank 7 and an earlier two-card group.
TrackedState six_card_endgame() {
  Position p;
  p.hand0 = cards("2c 3c 4c");
  p.hand1 = cards("7c 2d");
  p.table = {group("7d 3d", 5, 1), group("7h 4d", 7, 1)};
  p.deck_size = 0;
  p.filler_owner = 0;
  p.anchor = 7;
  p.to_move = 0;
  p.last = played(1, ConcreteAction::claim(cards("7h 4d"), 7, Direction::higher));
  return p.tracked();
}

TrackedState after_random_plies(uint64_t seed, int plies, Rng& rng) {
  TrackedState s = start_game(seed);
  for (int i = 0; i < plies && !is_terminal(s.game); ++i) advance(s, sample_legal_action(s.game, rng));
  return s;
}

}  // namespace

TEST_CASE("information_state hides the opponent hand and facedown cards") {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("9d 10d Jd");
  p.table = {group("5c 6c", 8, 0), group("4h", 9, 1)};
  const GameState a = p.build();
  Position q = p;
  q.hand1 = cards("9h 10h Jh");
  q.table = {group("5c 6c", 8, 0), group("4s", 9, 1)};
  const GameState b = q.build();
  const InformationState ia = information_state(track(a), 0);
  const InformationState ib = information_state(track(b), 0);
  CHECK(ia.own_hand == a.hands[0]);
  CHECK(ia.opponent_card_count == 3);
  CHECK(ia.table[0].own_cards == cards("5c 6c"));
  CHECK(ia.table[1].own_cards.empty());
  // Only the deck order differs besides hidden cards.
  CHECK(ia.table == ib.table);
  CHECK(ia.opponent_card_count == ib.opponent_card_count);
  CHECK(ia.deck_count == ib.deck_count);
  CHECK(ia.knowledge == ib.knowledge);
}

TEST_CASE("indistinguishable states project to equal information states") {
  Rng rng(11);
  TrackedState s = after_random_plies(5, 9, rng);
  for (uint64_t seed = 6; is_terminal(s.game); ++seed) s = after_random_plies(seed, 9, rng);
  const Player viewer = s.game.to_move;
  const InformationState info = information_state(s, viewer);
  for (const DeterminizedAction& a : determinizations(info)) {
    for (int i = 0; i < 50; ++i) {
      const TrackedState t = consistent_sample(info, a, rng);
      CHECK(information_state(t, viewer) == info);
    }
  }
}

TEST_CASE("reveal puts the taken stack into the opponent's known cards") {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("9d");
  p.table = {group("7c 7d 7h", 7, 0)};
  p.to_move = 1;
  p.last = played(0, ConcreteAction::claim(cards("7c 7d 7h"), 7, Direction::higher));
  TrackedState s = p.tracked();
  advance(s, ConcreteAction::call_cheat());
  CHECK(s.knowledge[0].known_opponent_cards == cards("7c 7d 7h"));
  CHECK(s.knowledge[1].known_to_opponent == cards("7c 7d 7h"));
  CHECK(estimate_opponent_rank_count(information_state(s, 0), 7) == 3);
  CHECK(estimate_opponent_rank_count(information_state(s, 0), 2) == 0);
  CHECK(s.knowledge[0].players[1].call_cheats == 1);
  CHECK(s.knowledge[0].players[1].call_cheat_successes == 0);
}

TEST_CASE("estimate counts known copies and drops cards seen again") {
  KnowledgeTracker t = make_tracker(0);
  t.known_opponent_cards = cards("7s 7d 2c");
  InformationState info;
  info.knowledge = t;
  CHECK(estimate_opponent_rank_count(info, 7) == 2);
  CHECK(estimate_opponent_rank_count(info, 2) == 1);
  CHECK(estimate_opponent_rank_count(InformationState{}, 7) == 0);

  // The opponent sheds the known 7d truthfully and the viewer calls wrongly.
  Position p;
  p.hand0 = cards("2h 3h");
  p.hand1 = cards("7s 7d 2c");
  p.to_move = 1;
  p.anchor = 6;
  TrackedState s = p.tracked();
  s.knowledge[0].known_opponent_cards = cards("7s 7d 2c");
  s.knowledge[1].known_to_opponent = cards("7s 7d 2c");
  advance(s, ConcreteAction::claim(cards("7d"), 7, Direction::higher));
  CHECK(s.knowledge[0].known_opponent_cards == cards("7s 7d 2c"));
  advance(s, ConcreteAction::call_cheat());
  CHECK(s.game.hands[0] == cards("2h 3h 7d"));
  CHECK(estimate_opponent_rank_count(information_state(s, 0), 7) == 1);
}

TEST_CASE("caught cheating, counters and repeat flags") {
  Position p;
  p.hand0 = cards("2h 3h");
  p.hand1 = cards("9d 5c 5d");
  p.to_move = 1;
  p.anchor = 6;
  p.round = 12;
  TrackedState s = p.tracked();
  advance(s, ConcreteAction::take_card());
  CHECK(s.knowledge[0].players[1].take_cards == 1);
  advance(s, ConcreteAction::claim(cards("2h"), 7, Direction::higher));
  advance(s, ConcreteAction::claim(cards("9d"), 8, Direction::higher));
  advance(s, ConcreteAction::claim(cards("3h"), 7, Direction::lower));
  advance(s, ConcreteAction::claim(cards("5c"), 8, Direction::higher));
  CHECK(s.knowledge[0].players[1].claimed_since_call_on(8, Direction::higher));
  CHECK(s.knowledge[0].players[1].last_claim_repeated);
  CHECK(s.knowledge[0].players[1].repeated_claims == 1);
  const int round = s.game.round;
  advance(s, ConcreteAction::call_cheat());
  const PlayerStats& opp = s.knowledge[0].players[1];
  CHECK(opp.times_caught == 1);
  CHECK(opp.caught_on(8));
  CHECK(opp.caught_round[7] == round);
  CHECK(opp.claimed_since_call == 0);
  CHECK_FALSE(opp.last_claim_repeated);
  CHECK(s.knowledge[0].players[0].claimed_since_call == 0);
  CHECK(s.knowledge[1].players[1].times_caught == 1);
  CHECK(s.knowledge[0].players[0].call_cheat_successes == 1);
  CHECK(s.knowledge[0].last_call_round == round);
}

TEST_CASE("determinizations follow the observed last action") {
  const TrackedState s = six_card_endgame();
  const InformationState info = information_state(s, 0);
  const auto support = determinizations(info);
  REQUIRE(support.size() == 2);
  CHECK(support[0].kind == DeterminizedKind::true_claim);
  CHECK(support[1].kind == DeterminizedKind::false_claim);
  CHECK(support[0].rank == 7);
  CHECK(support[0].count == 2);

  Position p;
  p.hand0 = cards("2c");
  p.hand1 = cards("3c");
  p.last = played(1, ConcreteAction::take_card());
  const auto take = determinizations(information_state(p.tracked(), 0));
  REQUIRE(take.size() == 1);
  CHECK(take[0].kind == DeterminizedKind::take_card);
  Rng rng(1);
  const TrackedState t = consistent_sample(information_state(p.tracked(), 0), take[0], rng);
  CHECK(t.game.last_action->action.kind == ActionKind::take_card);
  CHECK(t.game.deck.size() == p.build().deck.size());
  CHECK(t.game.hands[1].size() == 1);
}

TEST_CASE("true and false determinizations fix the last group's truth") {
  const TrackedState s = six_card_endgame();
  const InformationState info = information_state(s, 0);
  Rng rng(3);
  for (const DeterminizedAction& a : determinizations(info)) {
    for (int i = 0; i < 200; ++i) {
      const TrackedState t = consistent_sample(info, a, rng);
      CHECK(claim_is_true(t.game.table.back()) == (a.kind == DeterminizedKind::true_claim));
      CHECK(cards_conserved(t.game));
      CHECK(actual_determinization(t.game) == a);
    }
  }
}

TEST_CASE("impossible determinization is reported") {
  // Every 7 is the viewer's, so the opponent's claim of 7 cannot be true.
  Position p;
  p.hand0 = cards("7c 7d 7h 7s");
  p.hand1 = cards("2d");
  p.table = {group("3d", 7, 1)};
  p.to_move = 0;
  p.last = played(1, ConcreteAction::claim(cards("3d"), 7, Direction::higher));
  const InformationState info = information_state(p.tracked(), 0);
  const DeterminizedAction truthful{DeterminizedKind::true_claim, 7, 1, Direction::higher};
  CHECK_FALSE(consistent_with(info, truthful));
  const auto support = determinizations(info);
  REQUIRE(support.size() == 1);
  CHECK(support[0].kind == DeterminizedKind::false_claim);
  Rng rng(1);
  try {
    consistent_sample(info, truthful, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "inconsistent_determinization");
  }
}

TEST_CASE("a claim that the known cards rule out is not in the support") {
  // Every opponent card is known and only one is a Jack, so a two-Jack claim
  // must be false even though unseen Jacks exist.
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("4d 5d");
  p.table = {group("Jd 6d", 11, 1)};
  p.to_move = 0;
  p.anchor = 10;
  p.last = played(1, ConcreteAction::claim(cards("Jd 6d"), 11, Direction::higher));
  TrackedState s = p.tracked();
  s.knowledge[0].known_opponent_cards = cards("4d 5d Jd 6d");
  const InformationState info = information_state(s, 0);
  const DeterminizedAction truthful{DeterminizedKind::true_claim, 11, 2, Direction::higher};
  CHECK_FALSE(consistent_with(info, truthful));
  const auto support = determinizations(info);
  REQUIRE(support.size() == 1);
  CHECK(support[0].kind == DeterminizedKind::false_claim);
  Rng rng(2);
  const TrackedState t = consistent_sample(info, support[0], rng);
  CHECK((t.game.table.back().cards | t.game.hands[1]) == cards("4d 5d Jd 6d"));
  CHECK(t.game.hands[1].contains(card("Jd")));
}

TEST_CASE("samples are uniform over the consistent completions") {
  const TrackedState s = six_card_endgame();
  const InformationState info = information_state(s, 0);
  const CardSet unseen = cards("7c 7d 7h 2d 3d 4d");
  Rng rng(99);
  for (const DeterminizedAction& a : determinizations(info)) {
    CAPTURE(to_string(a.kind));
    // Enumerate (last group, opponent hand) pairs; the earlier group is forced.
    std::map<std::pair<uint64_t, uint64_t>, int> index;
    const std::vector<Card> u = unseen.to_vector();
    for (int gm = 0; gm < 64; ++gm) {
      for (int hm = 0; hm < 64; ++hm) {
        if (std::popcount(static_cast<unsigned>(gm)) != 2 || std::popcount(static_cast<unsigned>(hm)) != 2 ||
            (gm & hm) != 0) {
          continue;
        }
        CardSet g, h;
        for (int i = 0; i < 6; ++i) {
          if ((gm >> i) & 1) g.insert(u[i]);
          if ((hm >> i) & 1) h.insert(u[i]);
        }
        const bool all_sevens = g.count_rank(7) == 2;
        const bool no_sevens = g.count_rank(7) == 0;
        if ((a.kind == DeterminizedKind::true_claim && all_sevens) ||
            (a.kind == DeterminizedKind::false_claim && no_sevens)) {
          const int next = static_cast<int>(index.size());
          index[{g.bits(), h.bits()}] = next;
        }
      }
    }
    CHECK(index.size() == 18u);
    std::vector<double> observed(index.size(), 0.0);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const TrackedState t = consistent_sample(info, a, rng);
      const auto it = index.find({t.game.table.back().cards.bits(), t.game.hands[1].bits()});
      REQUIRE(it != index.end());
      observed[it->second] += 1.0;
    }
    const std::vector<double> expected(index.size(), static_cast<double>(n) / index.size());
    CHECK(chi_square_p(observed, expected) > 0.001);
  }
}

TEST_CASE("sampler respects known opponent cards") {
  Position p;
  p.hand0 = cards("2c 3c");
  p.hand1 = cards("9d 9h Jd");
  p.table = {group("5d", 4, 1)};
  p.to_move = 0;
  p.anchor = 4;
  p.last = played(1, ConcreteAction::claim(cards("5d"), 4, Direction::higher));
  TrackedState s = p.tracked();
  s.knowledge[0].known_opponent_cards = cards("9d 9h");
  const InformationState info = information_state(s, 0);
  Rng rng(5);
  for (const DeterminizedAction& a : determinizations(info)) {
    for (int i = 0; i < 300; ++i) {
      const TrackedState t = consistent_sample(info, a, rng);
      CardSet opp = t.game.hands[1];
      for (const TableGroup& g : t.game.table) {
        if (g.claimant == 1) opp |= g.cards;
      }
      CHECK(cards("9d 9h").is_subset_of(opp));
      CHECK(cards_conserved(t.game));
    }
  }
}

TEST_CASE("round trip over random games, every ply and both viewers") {
  Rng rng(17);
  for (uint64_t g = 0; g < 150; ++g) {
    TrackedState s = start_game(g);
    while (!is_terminal(s.game)) {
      for (Player v = 0; v < kNumPlayers; ++v) {
        const InformationState info = information_state(s, v);
        const auto support = determinizations(info);
        REQUIRE_FALSE(support.empty());
        bool actual_found = false;
        for (const DeterminizedAction& a : support) {
          const TrackedState t = consistent_sample(info, a, rng);
          REQUIRE(information_state(t, v) == info);
          REQUIRE(cards_conserved(t.game));
          REQUIRE(actual_determinization(t.game) == a);
          actual_found = actual_found || a == actual_determinization(s.game);
        }
        CHECK(actual_found);
      }
      advance(s, sample_legal_action(s.game, rng));
    }
  }
}
