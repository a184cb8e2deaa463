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

#include "cheat/game.hpp"

#include <algorithm>
#include <numeric>

namespace cheat {
namespace {

constexpr const char* kSuitNames = "cdhs";
constexpr const char* kRankNames[] = {"", "A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K"};

long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class Fn>
void for_each_subset(const std::vector<Card>& cards, int k, Fn&& fn) {
  const int n = static_cast<int>(cards.size());
  if (k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    CardSet s;
    for (int i : idx) s.insert(cards[i]);
    fn(s);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

CardSet random_subset(CardSet from, int k, Rng& rng) {
  std::vector<Card> cards = from.to_vector();
  CardSet out;
  for (int i = 0; i < k; ++i) {
    const auto j = i + rng.below(static_cast<uint32_t>(cards.size() - i));
    std::swap(cards[i], cards[j]);
    out.insert(cards[i]);
  }
  return out;
}

}  // namespace

std::string to_string(Card c) { return std::string(kRankNames[c.rank]) + kSuitNames[c.suit]; }

Card parse_card(const std::string& text) {
  if (text.size() < 2) throw Error("parse", "bad card: " + text);
  const char suit_char = text.back();
  const std::string rank_text = text.substr(0, text.size() - 1);
  const char* suit_pos = std::char_traits<char>::find(kSuitNames, 4, suit_char);
  if (suit_pos == nullptr) throw Error("parse", "bad suit: " + text);
  for (int r = 1; r <= kNumRanks; ++r) {
    if (rank_text == kRankNames[r]) {
      return Card{static_cast<int8_t>(r), static_cast<int8_t>(suit_pos - kSuitNames)};
    }
  }
  throw Error("parse", "bad rank: " + text);
}

bool claim_is_true(const TableGroup& group) {
  return !group.cards.empty() && group.cards.is_subset_of(CardSet::rank_mask(group.claimed_rank));
}

GameState new_game(uint64_t seed) {
  Rng rng(seed);
  GameState s;
  s.seed = seed;
  for (int i = 0; i < kNumCards; ++i) s.deck.push_back(Card::from_index(i));
  rng.shuffle(s.deck.begin(), s.deck.end());
  for (int i = 0; i < kInitialHandSize; ++i) {
    for (Player p = 0; p < kNumPlayers; ++p) {
      s.hands[p].insert(s.deck.back());
      s.deck.pop_back();
    }
  }
  s.anchor_card = s.deck.back();
  s.deck.pop_back();
  s.anchor_rank = s.anchor_card.rank;
  s.to_move = static_cast<Player>(rng.below(kNumPlayers));
  return s;
}

Rank claim_target(Rank anchor, bool opening, Direction d) {
  if (opening) return d == Direction::higher ? anchor : 0;
  return d == Direction::higher ? rank_up(anchor) : rank_down(anchor);
}

bool claim_pending(const GameState& s) {
  return s.last_action && s.last_action->action.is_claim() && s.last_action->actor != s.to_move &&
         !s.table.empty();
}

bool is_terminal(const GameState& s) {
  return s.hands[0].empty() || s.hands[1].empty() || s.round > kMaxRounds;
}

std::optional<Player> winner(const GameState& s) {
  if (!is_terminal(s)) throw Error("not_terminal", "winner of a non-terminal state");
  if (s.hands[0].empty()) return 0;
  if (s.hands[1].empty()) return 1;
  const int a = s.hands[0].size();
  const int b = s.hands[1].size();
  if (a == b) return std::nullopt;
  return a < b ? 0 : 1;
}

RewardVector reward(const GameState& s) {
  const auto w = winner(s);
  if (!w) return {0.0, 0.0};
  RewardVector r{-1.0, -1.0};
  r[*w] = 1.0;
  return r;
}

long long count_legal_actions(const GameState& s) {
  if (is_terminal(s)) throw Error("terminal", "no actions in a terminal state");
  const int h = s.hands[s.to_move].size();
  long long n = 0;
  for (int k = 1; k <= kMaxClaimCards; ++k) n += choose(h, k);
  if (!s.deck.empty()) ++n;
  if (claim_pending(s)) ++n;
  return n;
}

std::vector<ConcreteAction> legal_actions(const GameState& s) {
  if (is_terminal(s)) throw Error("terminal", "no actions in a terminal state");
  std::vector<ConcreteAction> out;
  out.reserve(static_cast<size_t>(count_legal_actions(s)));
  if (claim_pending(s)) out.push_back(ConcreteAction::call_cheat());
  if (!s.deck.empty()) out.push_back(ConcreteAction::take_card());
  const std::vector<Card> hand = s.hands[s.to_move].to_vector();
  const Rank target = claim_target(s, Direction::higher);
  for (int k = 1; k <= kMaxClaimCards; ++k) {
    for_each_subset(hand, k, [&](CardSet cards) {
      out.push_back(ConcreteAction::claim(cards, target, Direction::higher));
    });
  }
  return out;
}

std::vector<ConcreteAction> legal_moves(const GameState& s) {
  std::vector<ConcreteAction> out;
  for (const ConcreteAction& a : legal_actions(s)) {
    if (!a.is_claim()) {
      out.push_back(a);
      continue;
    }
    for (Direction d : {Direction::higher, Direction::lower}) {
      const Rank target = claim_target(s, d);
      if (target != 0) out.push_back(ConcreteAction::claim(a.cards, target, d));
    }
  }
  return out;
}

bool is_legal(const GameState& s, const ConcreteAction& a) {
  if (is_terminal(s)) return false;
  switch (a.kind) {
    case ActionKind::take_card:
      return !s.deck.empty() && a.cards.empty();
    case ActionKind::call_cheat:
      return claim_pending(s) && a.cards.empty();
    case ActionKind::claim: {
      const int k = a.cards.size();
      if (k < 1 || k > kMaxClaimCards) return false;
      if (!a.cards.is_subset_of(s.hands[s.to_move])) return false;
      const Rank target = claim_target(s, a.direction);
      return target != 0 && a.claimed_rank == target;
    }
  }
  return false;
}

ConcreteAction sample_legal_action(const GameState& s, Rng& rng) {
  const long long total = count_legal_actions(s);
  auto pick = static_cast<long long>(rng.uniform() * static_cast<double>(total));
  pick = std::min(pick, total - 1);
  if (claim_pending(s)) {
    if (pick == 0) return ConcreteAction::call_cheat();
    --pick;
  }
  if (!s.deck.empty()) {
    if (pick == 0) return ConcreteAction::take_card();
    --pick;
  }
  const CardSet hand = s.hands[s.to_move];
  const int h = hand.size();
  int k = 1;
  for (; k < kMaxClaimCards; ++k) {
    const long long c = choose(h, k);
    if (pick < c) break;
    pick -= c;
  }
  const CardSet cards = random_subset(hand, k, rng);
  Direction d = Direction::higher;
  if (!s.opening && rng.below(2) == 1) d = Direction::lower;
  return ConcreteAction::claim(cards, claim_target(s, d), d);
}

void apply_in_place(GameState& s, const ConcreteAction& a) {
  const Player mover = s.to_move;
  switch (a.kind) {
    case ActionKind::claim: {
      s.hands[mover] -= a.cards;
      const int k = a.cards.size();
      s.table.push_back(TableGroup{a.cards, a.claimed_rank, k, mover, a.direction});
      s.table_cards += k;
      s.anchor_rank = a.claimed_rank;
      s.opening = false;
      s.to_move = other(mover);
      break;
    }
    case ActionKind::take_card: {
      s.hands[mover].insert(s.deck.back());
      s.deck.pop_back();
      s.to_move = other(mover);
      break;
    }
    case ActionKind::call_cheat: {
      const TableGroup& last = s.table.back();
      const Player taker = claim_is_true(last) ? mover : last.claimant;
      s.anchor_rank = last.claimed_rank;
      for (const TableGroup& g : s.table) s.hands[taker] |= g.cards;
      s.table.clear();
      s.table_cards = 0;
      s.to_move = other(taker);
      break;
    }
  }
  s.last_action = PlayedAction{mover, a};
  ++s.round;
}

GameState apply(const GameState& s, const ConcreteAction& a) {
  if (!is_legal(s, a)) throw Error("illegal_action", "action is not legal in this state");
  GameState next = s;
  apply_in_place(next, a);
  return next;
}

bool cards_conserved(const GameState& s) {
  CardSet seen;
  int count = 0;
  auto add = [&](CardSet c) {
    if (!(seen & c).empty()) return false;
    seen |= c;
    count += c.size();
    return true;
  };
  for (const CardSet& h : s.hands) {
    if (!add(h)) return false;
  }
  for (const TableGroup& g : s.table) {
    if (g.cards.size() != g.claimed_count || !add(g.cards)) return false;
  }
  for (Card c : s.deck) {
    if (!add(CardSet{c})) return false;
  }
  if (!add(CardSet{s.anchor_card})) return false;
  int table_total = 0;
  for (const TableGroup& g : s.table) table_total += g.claimed_count;
  return count == kNumCards && seen == CardSet::full() && table_total == s.table_cards;
}

}  // namespace cheat
