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

#include "cheat/abstraction.hpp"

#include <cstdio>
#include <sstream>

namespace cheat {
namespace {

struct Field {
  int shift;
  int width;
};

constexpr Field kA1{0, 2};
constexpr Field kA2{2, 1};
constexpr Field kA3{3, 1};
constexpr Field kA4{4, 3};
constexpr Field kA5{7, 3};
constexpr Field kA6{10, 3};
constexpr Field kA7{13, 7};
constexpr Field kA8{20, 2};
constexpr Field kA9{22, 2};
constexpr int kFlagShift = 24;  // a10..a16

void put(uint32_t& bits, Field f, int value, int lo, int hi, const char* name) {
  if (value < lo || value > hi) {
    throw Error("encode_range", std::string("attribute ") + name + " out of range: " + std::to_string(value));
  }
  bits |= static_cast<uint32_t>(value) << f.shift;
}

int get(uint32_t bits, Field f) { return static_cast<int>((bits >> f.shift) & ((1U << f.width) - 1)); }

AttributeVector abstract_common(DeterminizedKind prev, CardSet hand, int opponent_cards, int table_cards, int round,
                                Rank anchor, bool opening, const KnowledgeTracker& k) {
  const Player me = k.viewer;
  const Player opp = other(me);
  const Rank hi = claim_target(anchor, opening, Direction::higher);
  const Rank lo = claim_target(anchor, opening, Direction::lower);
  AttributeVector v;
  v.opponent_prev_action = prev;
  v.can_true_claim_higher = hi != 0 && hand.count_rank(hi) > 0;
  v.can_true_claim_lower = lo != 0 && hand.count_rank(lo) > 0;
  v.own_cards = psi(hand.size());
  v.opponent_cards = psi(opponent_cards);
  v.table_cards = psi(table_cards);
  v.round = round;
  v.est_opponent_higher = hi == 0 ? 0 : phi(k.known_opponent_cards.count_rank(hi));
  v.est_opponent_lower = lo == 0 ? 0 : phi(k.known_opponent_cards.count_rank(lo));
  v.own_repeat_higher = k.players[me].claimed_since_call_on(hi, Direction::higher);
  v.own_repeat_lower = k.players[me].claimed_since_call_on(lo, Direction::lower);
  v.opponent_repeat_higher = k.players[opp].claimed_since_call_on(hi, Direction::higher);
  v.opponent_repeat_lower = k.players[opp].claimed_since_call_on(lo, Direction::lower);
  v.caught_higher = k.players[me].caught_on(hi);
  v.caught_lower = k.players[me].caught_on(lo);
  v.caught_any = k.players[me].times_caught > 0;
  return v;
}

CardSet lowest(CardSet cards, int k) {
  CardSet out;
  for (Card c : cards) {
    if (out.size() == k) break;
    out.insert(c);
  }
  return out;
}

}  // namespace

EncodedInfoState encode(const AttributeVector& v) {
  uint32_t bits = 0;
  put(bits, kA1, static_cast<int>(v.opponent_prev_action), 0, 3, "a1");
  put(bits, kA2, v.can_true_claim_higher, 0, 1, "a2");
  put(bits, kA3, v.can_true_claim_lower, 0, 1, "a3");
  put(bits, kA4, v.own_cards, 1, 6, "a4");
  put(bits, kA5, v.opponent_cards, 1, 6, "a5");
  put(bits, kA6, v.table_cards, 0, 6, "a6");
  put(bits, kA7, v.round, 1, kMaxRounds, "a7");
  put(bits, kA8, v.est_opponent_higher, 0, 3, "a8");
  put(bits, kA9, v.est_opponent_lower, 0, 3, "a9");
  const bool flags[] = {v.own_repeat_higher, v.own_repeat_lower, v.opponent_repeat_higher, v.opponent_repeat_lower,
                        v.caught_higher,     v.caught_lower,     v.caught_any};
  for (int i = 0; i < 7; ++i) bits |= static_cast<uint32_t>(flags[i]) << (kFlagShift + i);
  return EncodedInfoState{bits};
}

AttributeVector decode(EncodedInfoState e) {
  const uint32_t b = e.bits;
  AttributeVector v;
  v.opponent_prev_action = static_cast<DeterminizedKind>(get(b, kA1));
  v.can_true_claim_higher = get(b, kA2);
  v.can_true_claim_lower = get(b, kA3);
  v.own_cards = get(b, kA4);
  v.opponent_cards = get(b, kA5);
  v.table_cards = get(b, kA6);
  v.round = get(b, kA7);
  v.est_opponent_higher = get(b, kA8);
  v.est_opponent_lower = get(b, kA9);
  auto flag = [&](int i) { return ((b >> (kFlagShift + i)) & 1U) != 0; };
  v.own_repeat_higher = flag(0);
  v.own_repeat_lower = flag(1);
  v.opponent_repeat_higher = flag(2);
  v.opponent_repeat_lower = flag(3);
  v.caught_higher = flag(4);
  v.caught_lower = flag(5);
  v.caught_any = flag(6);
  return v;
}

std::string to_hex(EncodedInfoState e) {
  char buf[11];
  std::snprintf(buf, sizeof buf, "0x%08x", e.bits);
  return buf;
}

EncodedInfoState parse_hex(const std::string& text) {
  try {
    size_t used = 0;
    const unsigned long v = std::stoul(text, &used, 16);
    if (used != text.size() || v > 0x7fffffffUL) throw Error("parse", "bad encoded state: " + text);
    return EncodedInfoState{static_cast<uint32_t>(v)};
  } catch (const std::logic_error&) {
    throw Error("parse", "bad encoded state: " + text);
  }
}

std::string to_string(const AttributeVector& v) {
  std::ostringstream os;
  os << "[" << to_string(v.opponent_prev_action) << " " << v.can_true_claim_higher << v.can_true_claim_lower << " "
     << v.own_cards << "/" << v.opponent_cards << "/" << v.table_cards << " r" << v.round << " "
     << v.est_opponent_higher << v.est_opponent_lower << " " << v.own_repeat_higher << v.own_repeat_lower
     << v.opponent_repeat_higher << v.opponent_repeat_lower << v.caught_higher << v.caught_lower << v.caught_any
     << "]";
  return os.str();
}

AttributeVector abstract_info(const InformationState& info, const DeterminizedAction& prev) {
  return abstract_common(prev.kind, info.own_hand, info.opponent_card_count, info.table_card_count, info.round,
                         info.anchor_rank, info.opening, info.knowledge);
}

AttributeVector abstract_info(const GameState& s, const KnowledgeTracker& k) {
  const Player me = k.viewer;
  return abstract_common(actual_determinization(s).kind, s.hands[me], s.hands[other(me)].size(), s.table_cards,
                         s.round, s.anchor_rank, s.opening, k);
}

std::string to_string(AbstractAction a) {
  switch (a.kind()) {
    case AbstractAction::Kind::call_cheat: return "CallCheat";
    case AbstractAction::Kind::take_card: return "TakeCard";
    case AbstractAction::Kind::claim: break;
  }
  return std::string("Claim(") + (a.direction() == Direction::higher ? "higher" : "lower") + "," +
         (a.truthful() ? "true" : "false") + "," + std::to_string(a.count()) + ")";
}

AbstractAction parse_abstract_action(const std::string& text) {
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (to_string(AbstractAction(i)) == text) return AbstractAction(i);
  }
  throw Error("parse", "bad abstract action: " + text);
}

ClaimContext context_of(const GameState& s) {
  return ClaimContext{s.hands[s.to_move], s.anchor_rank, s.opening, !s.deck.empty(), claim_pending(s)};
}

ClaimContext context_of(const InformationState& info) {
  return ClaimContext{info.own_hand, info.anchor_rank, info.opening, info.deck_count > 0, info.claim_pending()};
}

ActionMask applicable_mask(const ClaimContext& c) {
  ActionMask m = 0;
  if (c.claim_pending) m |= 1U << AbstractAction::call_cheat().index();
  if (c.deck_nonempty) m |= 1U << AbstractAction::take_card().index();
  const int h = c.hand.size();
  for (Direction d : {Direction::higher, Direction::lower}) {
    const Rank target = claim_target(c.anchor, c.opening, d);
    if (target == 0) continue;
    const int on_rank = c.hand.count_rank(target);
    const int off_rank = h - on_rank;
    for (int k = 1; k <= kMaxClaimCards; ++k) {
      if (on_rank >= k) m |= 1U << AbstractAction::claim(d, true, k).index();
      if (off_rank >= k) m |= 1U << AbstractAction::claim(d, false, k).index();
    }
  }
  return m;
}

std::vector<AbstractAction> applicable_actions(const ClaimContext& c) {
  const ActionMask m = applicable_mask(c);
  std::vector<AbstractAction> out;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if ((m >> i) & 1U) out.emplace_back(i);
  }
  return out;
}

ConcreteAction concretize(AbstractAction a, const ClaimContext& c, Rng& rng) {
  if (!applicable(applicable_mask(c), a)) throw Error("inapplicable_abstract_action", to_string(a) + " is not applicable");
  switch (a.kind()) {
    case AbstractAction::Kind::call_cheat: return ConcreteAction::call_cheat();
    case AbstractAction::Kind::take_card: return ConcreteAction::take_card();
    case AbstractAction::Kind::claim: break;
  }
  const Direction d = a.direction();
  const Rank target = claim_target(c.anchor, c.opening, d);
  const int k = a.count();
  if (a.truthful()) return ConcreteAction::claim(lowest(c.hand.of_rank(target), k), target, d);

  const CardSet candidates = c.hand.without_rank(target);
  CardSet chosen;
  for (int dist = kNumRanks / 2; dist >= 0 && chosen.size() < k; --dist) {
    CardSet bucket;
    for (Rank r = 1; r <= kNumRanks; ++r) {
      if (circular_distance(r, c.anchor) == dist) bucket |= candidates.of_rank(r);
    }
    const int need = k - chosen.size();
    if (bucket.size() <= need) {
      chosen |= bucket;
      continue;
    }
    boost::container::static_vector<Card, kNumCards> cards(bucket.begin(), bucket.end());
    for (int i = 0; i < need; ++i) {
      const auto j = i + rng.below(static_cast<uint32_t>(cards.size() - i));
      std::swap(cards[i], cards[j]);
      chosen.insert(cards[i]);
    }
  }
  return ConcreteAction::claim(chosen, target, d);
}

AbstractAction abstract_of(const ConcreteAction& a, const ClaimContext&) {
  switch (a.kind) {
    case ActionKind::call_cheat: return AbstractAction::call_cheat();
    case ActionKind::take_card: return AbstractAction::take_card();
    case ActionKind::claim: break;
  }
  const bool truthful = a.cards.is_subset_of(CardSet::rank_mask(a.claimed_rank));
  return AbstractAction::claim(a.direction, truthful, a.cards.size());
}

}  // namespace cheat
