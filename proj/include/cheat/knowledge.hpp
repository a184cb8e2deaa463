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

#include "cheat/game.hpp"

namespace cheat {

// The opponent's previous action with its hidden truth bit fixed.
enum class DeterminizedKind : uint8_t { true_claim = 0, false_claim = 1, take_card = 2, call_cheat = 3 };
inline constexpr int kNumDeterminizedKinds = 4;

struct DeterminizedAction {
  DeterminizedKind kind = DeterminizedKind::take_card;
  Rank rank = 0;
  int count = 0;
  Direction direction = Direction::higher;

  bool is_claim() const { return kind == DeterminizedKind::true_claim || kind == DeterminizedKind::false_claim; }
  bool operator==(const DeterminizedAction&) const = default;
};

const char* to_string(DeterminizedKind k);

// Public per-player statistics. Everything here is visible to both players:
// claims are public, and a Call-Cheat reveals every group on the table.
struct PlayerStats {
  int moves = 0;
  int claims = 0;
  int claim_cards = 0;
  int claim_cards_sq = 0;
  int higher_claims = 0;
  int repeated_claims = 0;
  int take_cards = 0;
  int call_cheats = 0;
  int call_cheat_successes = 0;
  int claims_exposed = 0;
  int false_claims_exposed = 0;
  int times_caught = 0;
  // Claims made since the last Call-Cheat, bit 2*(rank-1) + direction.
  uint32_t claimed_since_call = 0;
  bool last_claim_repeated = false;
  // Latest round this player was caught cheating on each rank, 0 = never.
  std::array<int16_t, kNumRanks> caught_round{};

  bool claimed_since_call_on(Rank r, Direction d) const {
    return r != 0 && ((claimed_since_call >> (2 * (r - 1) + static_cast<int>(d))) & 1U);
  }
  bool caught_on(Rank r) const { return r != 0 && caught_round[r - 1] > 0; }
  bool operator==(const PlayerStats&) const = default;
};

struct KnowledgeTracker {
  Player viewer = 0;
  // Opponent cards learned from reveals the opponent took, minus any seen
  // again on the table at a later reveal.
  CardSet known_opponent_cards;
  // The mirror image: viewer cards the opponent learned the same way.
  CardSet known_to_opponent;
  std::array<PlayerStats, kNumPlayers> players;
  int last_call_round = 0;

  KnowledgeTracker mirrored() const;
  bool operator==(const KnowledgeTracker&) const = default;
};

KnowledgeTracker make_tracker(Player viewer);

// Update from one transition record: the state before the move and the move.
void observe_in_place(KnowledgeTracker& tracker, const GameState& before, const ConcreteAction& action);
KnowledgeTracker observe(KnowledgeTracker tracker, const GameState& before, const ConcreteAction& action);

// A game state together with both players' knowledge.
struct TrackedState {
  GameState game;
  std::array<KnowledgeTracker, kNumPlayers> knowledge;
  bool operator==(const TrackedState&) const = default;
};

TrackedState start_game(uint64_t seed);
TrackedState track(const GameState& fresh_game);
void advance(TrackedState& s, const ConcreteAction& action);

struct PublicGroup {
  Rank claimed_rank = 1;
  int claimed_count = 1;
  Player claimant = 0;
  Direction direction = Direction::higher;
  CardSet own_cards;  // only for the viewer's own groups
  bool operator==(const PublicGroup&) const = default;
};

struct ObservedAction {
  Player actor = 0;
  ActionKind kind = ActionKind::take_card;
  Rank claimed_rank = 0;
  int claimed_count = 0;
  Direction direction = Direction::higher;
  CardSet cards;  // only when the viewer is the actor
  bool operator==(const ObservedAction&) const = default;
};

struct InformationState {
  Player viewer = 0;
  CardSet own_hand;
  int opponent_card_count = 0;
  int deck_count = 0;
  std::vector<PublicGroup> table;
  int table_card_count = 0;
  Card anchor_card;
  Rank anchor_rank = 1;
  bool opening = true;
  int round = 1;
  Player to_move = 0;
  std::optional<ObservedAction> last_action;
  KnowledgeTracker knowledge;

  bool claim_pending() const;
  bool operator==(const InformationState&) const = default;
};

InformationState information_state(const TrackedState& s, Player viewer);

// Known copies of `rank` in the opponent's hand.
int estimate_opponent_rank_count(const InformationState& info, Rank rank);

// The determinizations compatible with the observed last action: the two
// truth values for an opponent claim, otherwise the single public action.
// No previous action counts as TakeCard (nothing to challenge).
std::vector<DeterminizedAction> determinizations(const InformationState& info);
bool consistent_with(const InformationState& info, const DeterminizedAction& a);
// Classification of the actual last action of a full state.
DeterminizedAction actual_determinization(const GameState& s);

// Draws full states from the set consistent with an information state and a
// fixed opponent action. Setup is done once; sample() only shuffles.
class DeterminizationSampler {
 public:
  DeterminizationSampler(const InformationState& info, const DeterminizedAction& a);
  TrackedState sample(Rng& rng) const;

 private:
  InformationState info_;
  Player opponent_ = 1;
  int last_group_ = -1;  // table index of the claim being determinized
  int last_count_ = 0;
  CardSet known_;
  CardSet unseen_;
  // Candidates for the determinized group, split by whether they are known.
  CardSet known_class_;
  CardSet unseen_class_;
  // Distribution of the number of known cards in that group.
  std::vector<double> x_cdf_;
  std::vector<int> hidden_groups_;  // earlier opponent groups to fill
  int group_slots_ = 0;
};

// Throws Error("inconsistent_determinization") when no completion exists.
TrackedState consistent_sample(const InformationState& info, const DeterminizedAction& a, Rng& rng);

}  // namespace cheat
