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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cheat/game.hpp"
#include "cheat/knowledge.hpp"

namespace cheat::test {

// "7c 7d Ks" -> card set.
inline CardSet cards(const std::string& text) {
  std::istringstream in(text);
  CardSet out;
  for (std::string tok; in >> tok;) out.insert(parse_card(tok));
  return out;
}

inline Card card(const std::string& text) { return parse_card(text); }

inline TableGroup group(const std::string& text, Rank claimed, Player claimant,
                        Direction d = Direction::higher) {
  const CardSet c = cards(text);
  return TableGroup{c, claimed, c.size(), claimant, d};
}

// Hand-built position. Cards not placed anywhere go to the deck (top = the
// last one pushed) unless `deck_size` caps it, in which case the rest fill
// extra 4-card groups at the bottom of the table claimed by `filler_owner`.
struct Position {
  CardSet hand0;
  CardSet hand1;
  std::vector<TableGroup> table;
  int deck_size = -1;
  Player filler_owner = 1;
  Rank anchor = 7;
  bool opening = false;
  Player to_move = 0;
  std::optional<PlayedAction> last;
  int round = 10;

  GameState build() const {
    GameState s;
    s.hands = {hand0, hand1};
    CardSet used = hand0 | hand1;
    for (const TableGroup& g : table) used |= g.cards;
    CardSet rest = CardSet::full() - used;
    // The removed anchor card: prefer a King, which keeps low ranks free.
    Card anchor_card = rest.front();
    for (Card c : rest) {
      if (c.rank == kNumRanks) {
        anchor_card = c;
        break;
      }
    }
    rest.erase(anchor_card);
    std::vector<Card> loose = rest.to_vector();
    const int n_deck = deck_size < 0 ? static_cast<int>(loose.size()) : deck_size;
    std::vector<TableGroup> filler;
    const int n_filler = static_cast<int>(loose.size()) - n_deck;
    for (int i = 0; i < n_filler; i += kMaxClaimCards) {
      TableGroup g;
      for (int j = i; j < std::min(n_filler, i + kMaxClaimCards); ++j) g.cards.insert(loose[j]);
      g.claimed_rank = 1;
      g.claimed_count = g.cards.size();
      g.claimant = filler_owner;
      filler.push_back(g);
    }
    for (const TableGroup& g : filler) s.table.push_back(g);
    for (const TableGroup& g : table) s.table.push_back(g);
    for (int j = n_filler; j < static_cast<int>(loose.size()); ++j) s.deck.push_back(loose[j]);
    for (const TableGroup& g : s.table) s.table_cards += g.cards.size();
    s.anchor_card = anchor_card;
    s.anchor_rank = anchor;
    s.opening = opening;
    s.to_move = to_move;
    s.last_action = last;
    s.round = round;
    return s;
  }

  TrackedState tracked() const { return track(build()); }
};

inline PlayedAction played(Player actor, ConcreteAction a) { return PlayedAction{actor, a}; }

}  // namespace cheat::test
