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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/container/static_vector.hpp>

#include "cheat/cards.hpp"
#include "cheat/error.hpp"
#include "cheat/rng.hpp"

namespace cheat {

inline constexpr int kInitialHandSize = 8;
inline constexpr int kMaxRounds = 100;
inline constexpr int kMaxClaimCards = 4;

// Cards placed facedown by one claim.
struct TableGroup {
  CardSet cards;
  Rank claimed_rank = 1;
  int claimed_count = 1;
  Player claimant = 0;
  Direction direction = Direction::higher;

  bool operator==(const TableGroup&) const = default;
};

// True iff every card in the group has the claimed rank.
bool claim_is_true(const TableGroup& group);

enum class ActionKind : uint8_t { claim, take_card, call_cheat };

struct ConcreteAction {
  ActionKind kind = ActionKind::take_card;
  CardSet cards;
  Rank claimed_rank = 0;
  Direction direction = Direction::higher;

  static ConcreteAction claim(CardSet cards, Rank rank, Direction direction) {
    return {ActionKind::claim, cards, rank, direction};
  }
  static ConcreteAction take_card() { return {ActionKind::take_card, {}, 0, Direction::higher}; }
  static ConcreteAction call_cheat() { return {ActionKind::call_cheat, {}, 0, Direction::higher}; }

  bool is_claim() const { return kind == ActionKind::claim; }
  bool operator==(const ConcreteAction&) const = default;
};

struct PlayedAction {
  Player actor = 0;
  ConcreteAction action;
  bool operator==(const PlayedAction&) const = default;
};

using RewardVector = std::array<double, kNumPlayers>;

// Full game state. The deck's back() is its top card. The card revealed at
// setup to fix the first claim is removed from play and kept in anchor_card.
struct GameState {
  std::array<CardSet, kNumPlayers> hands;
  boost::container::static_vector<Card, kNumCards> deck;
  boost::container::static_vector<TableGroup, kNumCards> table;
  Card anchor_card;
  Rank anchor_rank = 1;
  int round = 1;
  Player to_move = 0;
  bool opening = true;
  std::optional<PlayedAction> last_action;
  int table_cards = 0;
  uint64_t seed = 0;

  bool operator==(const GameState&) const = default;
};

GameState new_game(uint64_t seed);

// Rank a claim in `direction` must name, or 0 when that direction is closed
// (the opening claim names the anchor itself and is canonically "higher").
Rank claim_target(Rank anchor, bool opening, Direction direction);
inline Rank claim_target(const GameState& s, Direction d) { return claim_target(s.anchor_rank, s.opening, d); }

// An opponent claim is waiting to be challenged.
bool claim_pending(const GameState& s);

bool is_terminal(const GameState& s);
RewardVector reward(const GameState& s);
// Winner of a terminal state, nullopt on a cutoff tie.
std::optional<Player> winner(const GameState& s);

// Distinct placements: one Claim per 1..4-card subset of the mover's hand
// (listed with the "higher" direction as representative), plus TakeCard and
// CallCheat when applicable. Either direction may be declared for a listed
// subset, see is_legal.
std::vector<ConcreteAction> legal_actions(const GameState& s);
// Every legal action with both declared directions spelled out.
std::vector<ConcreteAction> legal_moves(const GameState& s);
// Number of entries legal_actions would return, without enumerating.
long long count_legal_actions(const GameState& s);
bool is_legal(const GameState& s, const ConcreteAction& a);
// Uniform draw over legal_actions; a claim's direction is then drawn uniformly
// among the open directions.
ConcreteAction sample_legal_action(const GameState& s, Rng& rng);

// Validated, value-returning transition.
GameState apply(const GameState& s, const ConcreteAction& a);
// In-place transition without legality checks; the hot path for simulations.
void apply_in_place(GameState& s, const ConcreteAction& a);

// hands + deck + table + anchor card is exactly the 52-card deck.
bool cards_conserved(const GameState& s);

}  // namespace cheat
