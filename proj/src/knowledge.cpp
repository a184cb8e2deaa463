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

#include "cheat/knowledge.hpp"

#include <algorithm>

namespace cheat {
namespace {

using CardBuffer = boost::container::static_vector<Card, kNumCards>;

CardBuffer buffer_of(CardSet cards) { return CardBuffer(cards.begin(), cards.end()); }

template <class Buffer>
CardSet take_random(Buffer& cards, int k, Rng& rng) {
  CardSet out;
  for (int i = 0; i < k; ++i) {
    const auto j = i + rng.below(static_cast<uint32_t>(cards.size() - i));
    std::swap(cards[i], cards[j]);
    out.insert(cards[i]);
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DeterminizedKind truth_kind(bool is_true) {
  return is_true ? DeterminizedKind::true_claim : DeterminizedKind::false_claim;
}

CardSet own_table_cards(const InformationState& info) {
  CardSet out;
  for (const PublicGroup& g : info.table) out |= g.own_cards;
  return out;
}

// An opponent claim can take the given truth value only if some split of the
// known opponent cards between the claimed group and the remaining opponent
// slots fits.
bool opponent_claim_feasible(const InformationState& info, const DeterminizedAction& a) {
  const Player opponent = other(info.viewer);
  const CardSet known = info.knowledge.known_opponent_cards;
  const CardSet unseen = CardSet::full() - info.own_hand - own_table_cards(info) - CardSet{info.anchor_card} - known;
  const CardSet mask = CardSet::rank_mask(a.rank);
  const bool truthful = a.kind == DeterminizedKind::true_claim;
  const int kc = (truthful ? known & mask : known - mask).size();
  const int uc = (truthful ? unseen & mask : unseen - mask).size();
  int slots = info.opponent_card_count;
  for (size_t i = 0; i + 1 < info.table.size(); ++i) {
    if (info.table[i].claimant == opponent) slots += info.table[i].claimed_count;
  }
  for (int x = 0; x <= std::min(kc, a.count); ++x) {
    if (a.count - x <= uc && known.size() - x <= slots) return true;
  }
  return false;
}

}  // namespace

const char* to_string(DeterminizedKind k) {
  switch (k) {
    case DeterminizedKind::true_claim: return "TrueClaim";
    case DeterminizedKind::false_claim: return "FalseClaim";
    case DeterminizedKind::take_card: return "TakeCard";
    case DeterminizedKind::call_cheat: return "CallCheat";
  }
  return "?";
}

KnowledgeTracker KnowledgeTracker::mirrored() const {
  KnowledgeTracker m = *this;
  m.viewer = other(viewer);
  m.known_opponent_cards = known_to_opponent;
  m.known_to_opponent = known_opponent_cards;
  return m;
}

KnowledgeTracker make_tracker(Player viewer) {
  KnowledgeTracker t;
  t.viewer = viewer;
  return t;
}

void observe_in_place(KnowledgeTracker& t, const GameState& before, const ConcreteAction& a) {
  const Player mover = before.to_move;
  PlayerStats& st = t.players[mover];
  ++st.moves;
  switch (a.kind) {
    case ActionKind::claim: {
      const int k = a.cards.size();
      ++st.claims;
      st.claim_cards += k;
      st.claim_cards_sq += k * k;
      if (a.direction == Direction::higher) ++st.higher_claims;
      const uint32_t bit = 1U << (2 * (a.claimed_rank - 1) + static_cast<int>(a.direction));
      st.last_claim_repeated = (st.claimed_since_call & bit) != 0;
      if (st.last_claim_repeated) ++st.repeated_claims;
      st.claimed_since_call |= bit;
      break;
    }
    case ActionKind::take_card:
      ++st.take_cards;
      break;
    case ActionKind::call_cheat: {
      const TableGroup& last = before.table.back();
      const bool truthful = claim_is_true(last);
      ++st.call_cheats;
      if (!truthful) {
        ++st.call_cheat_successes;
        PlayerStats& caught = t.players[last.claimant];
        ++caught.times_caught;
        caught.caught_round[last.claimed_rank - 1] = static_cast<int16_t>(before.round);
      }
      CardSet revealed;
      for (const TableGroup& g : before.table) {
        ++t.players[g.claimant].claims_exposed;
        if (!claim_is_true(g)) ++t.players[g.claimant].false_claims_exposed;
        revealed |= g.cards;
      }
      const Player taker = truthful ? mover : last.claimant;
      t.known_opponent_cards -= revealed;
      t.known_to_opponent -= revealed;
      if (taker == t.viewer) {
        t.known_to_opponent |= revealed;
      } else {
        t.known_opponent_cards |= revealed;
      }
      for (PlayerStats& p : t.players) {
        p.claimed_since_call = 0;
        p.last_claim_repeated = false;
      }
      t.last_call_round = before.round;
      break;
    }
  }
}

KnowledgeTracker observe(KnowledgeTracker tracker, const GameState& before, const ConcreteAction& action) {
  observe_in_place(tracker, before, action);
  return tracker;
}

TrackedState track(const GameState& fresh_game) {
  return TrackedState{fresh_game, {make_tracker(0), make_tracker(1)}};
}

TrackedState start_game(uint64_t seed) { return track(new_game(seed)); }

void advance(TrackedState& s, const ConcreteAction& action) {
  observe_in_place(s.knowledge[0], s.game, action);
  observe_in_place(s.knowledge[1], s.game, action);
  apply_in_place(s.game, action);
}

bool InformationState::claim_pending() const {
  return last_action && last_action->kind == ActionKind::claim && last_action->actor != to_move &&
         !table.empty();
}

InformationState information_state(const TrackedState& s, Player viewer) {
  const GameState& g = s.game;
  InformationState info;
  info.viewer = viewer;
  info.own_hand = g.hands[viewer];
  info.opponent_card_count = g.hands[other(viewer)].size();
  info.deck_count = static_cast<int>(g.deck.size());
  info.table.reserve(g.table.size());
  for (const TableGroup& t : g.table) {
    info.table.push_back(PublicGroup{t.claimed_rank, t.claimed_count, t.claimant, t.direction,
                                     t.claimant == viewer ? t.cards : CardSet{}});
  }
  info.table_card_count = g.table_cards;
  info.anchor_card = g.anchor_card;
  info.anchor_rank = g.anchor_rank;
  info.opening = g.opening;
  info.round = g.round;
  info.to_move = g.to_move;
  if (g.last_action) {
    const PlayedAction& p = *g.last_action;
    ObservedAction o;
    o.actor = p.actor;
    o.kind = p.action.kind;
    if (p.action.is_claim()) {
      o.claimed_rank = p.action.claimed_rank;
      o.claimed_count = p.action.cards.size();
      o.direction = p.action.direction;
      if (p.actor == viewer) o.cards = p.action.cards;
    }
    info.last_action = o;
  }
  info.knowledge = s.knowledge[viewer];
  return info;
}

int estimate_opponent_rank_count(const InformationState& info, Rank rank) {
  if (rank == 0) return 0;
  return info.knowledge.known_opponent_cards.count_rank(rank);
}

bool consistent_with(const InformationState& info, const DeterminizedAction& a) {
  if (!info.last_action) return a.kind == DeterminizedKind::take_card;
  const ObservedAction& o = *info.last_action;
  switch (o.kind) {
    case ActionKind::take_card:
      return a.kind == DeterminizedKind::take_card;
    case ActionKind::call_cheat:
      return a.kind == DeterminizedKind::call_cheat;
    case ActionKind::claim:
      break;
  }
  if (!a.is_claim() || a.rank != o.claimed_rank || a.count != o.claimed_count || a.direction != o.direction) {
    return false;
  }
  if (o.actor == info.viewer) {
    const bool truthful = o.cards.is_subset_of(CardSet::rank_mask(o.claimed_rank));
    return a.kind == truth_kind(truthful);
  }
  return opponent_claim_feasible(info, a);
}

std::vector<DeterminizedAction> determinizations(const InformationState& info) {
  if (!info.last_action) return {DeterminizedAction{}};
  const ObservedAction& o = *info.last_action;
  if (o.kind == ActionKind::take_card) return {DeterminizedAction{}};
  if (o.kind == ActionKind::call_cheat) return {DeterminizedAction{DeterminizedKind::call_cheat}};
  std::vector<DeterminizedAction> out;
  for (DeterminizedKind k : {DeterminizedKind::true_claim, DeterminizedKind::false_claim}) {
    DeterminizedAction a{k, o.claimed_rank, o.claimed_count, o.direction};
    if (consistent_with(info, a)) out.push_back(a);
  }
  return out;
}

DeterminizedAction actual_determinization(const GameState& s) {
  if (!s.last_action) return {};
  const ConcreteAction& a = s.last_action->action;
  switch (a.kind) {
    case ActionKind::take_card:
      return {};
    case ActionKind::call_cheat:
      return {DeterminizedKind::call_cheat};
    case ActionKind::claim:
      break;
  }
  const bool truthful = a.cards.is_subset_of(CardSet::rank_mask(a.claimed_rank));
  return {truth_kind(truthful), a.claimed_rank, a.cards.size(), a.direction};
}

DeterminizationSampler::DeterminizationSampler(const InformationState& info, const DeterminizedAction& a)
    : info_(info), opponent_(other(info.viewer)) {
  if (!consistent_with(info, a)) {
    throw Error("inconsistent_determinization", "determinization does not match the observed action");
  }
  known_ = info.knowledge.known_opponent_cards;
  const CardSet own_fixed = info.own_hand | own_table_cards(info) | CardSet{info.anchor_card};
  if (!(known_ & own_fixed).empty()) {
    throw Error("inconsistent_determinization", "known opponent cards overlap the viewer's cards");
  }
  unseen_ = CardSet::full() - own_fixed - known_;

  if (a.is_claim() && info.last_action->actor == opponent_) {
    last_group_ = static_cast<int>(info.table.size()) - 1;
    last_count_ = a.count;
    const CardSet mask = CardSet::rank_mask(a.rank);
    const bool truthful = a.kind == DeterminizedKind::true_claim;
    unseen_class_ = truthful ? unseen_ & mask : unseen_ - mask;
    known_class_ = truthful ? known_ & mask : known_ - mask;
  }
  for (int i = 0; i < static_cast<int>(info.table.size()); ++i) {
    if (info.table[i].claimant == opponent_ && i != last_group_) {
      hidden_groups_.push_back(i);
      group_slots_ += info.table[i].claimed_count;
    }
  }
  const int u = unseen_.size();
  const int k = known_.size();
  const int slots = info.opponent_card_count + group_slots_;
  if (u + k - last_count_ - slots != info.deck_count) {
    throw Error("inconsistent_determinization", "card counts do not add up");
  }
  // Completions with x known cards in the determinized group are weighted by
  // C(known_class, x) C(unseen_class, L - x) C(unseen left, free slots).
  const int kc = known_class_.size();
  const int uc = unseen_class_.size();
  double total = 0.0;
  for (int x = 0; x <= std::min(kc, last_count_); ++x) {
    const int known_left = k - x;
    const int unseen_left = u - (last_count_ - x);
    double w = 0.0;
    if (last_count_ - x <= uc && known_left <= slots) {
      w = binomial(kc, x) * binomial(uc, last_count_ - x) * binomial(unseen_left, slots - known_left);
    }
    total += w;
    x_cdf_.push_back(total);
  }
  if (!(total > 0.0)) {
    throw Error("inconsistent_determinization", "known opponent cards exceed the opponent's cards");
  }
  for (double& c : x_cdf_) c /= total;
}

TrackedState DeterminizationSampler::sample(Rng& rng) const {
  const InformationState& info = info_;
  TrackedState out;
  GameState& g = out.game;
  g.hands[info.viewer] = info.own_hand;
  for (const PublicGroup& p : info.table) {
    g.table.push_back(TableGroup{p.own_cards, p.claimed_rank, p.claimed_count, p.claimant, p.direction});
  }

  CardSet rest = unseen_;
  CardSet known = known_;
  if (last_group_ >= 0) {
    int x = 0;
    if (x_cdf_.size() > 1) {
      const double z = rng.uniform();
      while (x + 1 < static_cast<int>(x_cdf_.size()) && z >= x_cdf_[x]) ++x;
    }
    CardBuffer from_known = buffer_of(known_class_);
    CardBuffer from_unseen = buffer_of(unseen_class_);
    const CardSet k_cards = take_random(from_known, x, rng);
    const CardSet u_cards = take_random(from_unseen, last_count_ - x, rng);
    known -= k_cards;
    rest -= u_cards;
    g.table[last_group_].cards = k_cards | u_cards;
  }

  // Every remaining known card is somewhere in the opponent's hand or hidden
  // groups; the free slots there take a uniform draw of the unseen cards.
  CardBuffer shuffled = buffer_of(rest);
  rng.shuffle(shuffled.begin(), shuffled.end());
  const int slots = info.opponent_card_count + group_slots_;
  const int free_slots = slots - known.size();
  CardBuffer holding = buffer_of(known);
  holding.insert(holding.end(), shuffled.begin(), shuffled.begin() + free_slots);
  rng.shuffle(holding.begin(), holding.end());
  auto fill = holding.begin();
  for (int j = 0; j < info.opponent_card_count; ++j) g.hands[opponent_].insert(*fill++);
  for (int i : hidden_groups_) {
    for (int j = 0; j < info.table[i].claimed_count; ++j) g.table[i].cards.insert(*fill++);
  }
  g.deck.assign(shuffled.begin() + free_slots, shuffled.end());

  g.anchor_card = info.anchor_card;
  g.anchor_rank = info.anchor_rank;
  g.round = info.round;
  g.to_move = info.to_move;
  g.opening = info.opening;
  g.table_cards = info.table_card_count;
  if (info.last_action) {
    const ObservedAction& o = *info.last_action;
    ConcreteAction a;
    if (o.kind == ActionKind::claim) {
      const CardSet cards = o.actor == info.viewer ? o.cards : g.table.back().cards;
      a = ConcreteAction::claim(cards, o.claimed_rank, o.direction);
    } else if (o.kind == ActionKind::call_cheat) {
      a = ConcreteAction::call_cheat();
    }
    g.last_action = PlayedAction{o.actor, a};
  }
  out.knowledge[info.viewer] = info.knowledge;
  out.knowledge[opponent_] = info.knowledge.mirrored();
  return out;
}

TrackedState consistent_sample(const InformationState& info, const DeterminizedAction& a, Rng& rng) {
  return DeterminizationSampler(info, a).sample(rng);
}

}  // namespace cheat
