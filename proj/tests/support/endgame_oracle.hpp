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
#include <cmath>
#include <functional>
#include <vector>

#include "cheat/abstraction.hpp"
#include "cheat/knowledge.hpp"
#include "cheat/search.hpp"

namespace cheat::test {

// Exhaustive game-tree values for short endgames. Every decision node
// maximizes the mover's own discounted credit over its applicable abstract
// actions; the determinization of the root is a chance node enumerated
// exactly. Valid when the game ends within a few plies and each action's
// outcome depends only on public counts and claim truth, so the per-state
// maximum equals the per-information-set maximum the search learns.
struct Outcome {
  RewardVector reward{};
  int end_ply = 0;
};

inline double credit(const Outcome& o, Player p, int step_ply, double discount) {
  return o.reward[p] * std::pow(discount, o.end_ply - step_ply - 1);
}

inline Outcome best_play(const TrackedState& s, int ply, double discount) {
  if (is_terminal(s.game)) return Outcome{reward(s.game), ply};
  const Player mover = s.game.to_move;
  const ClaimContext ctx = context_of(s.game);
  Outcome best;
  bool have = false;
  for (AbstractAction a : applicable_actions(ctx)) {
    TrackedState next = s;
    Rng rng(0);
    advance(next, concretize(a, ctx, rng));
    const Outcome o = best_play(next, ply + 1, discount);
    if (!have || credit(o, mover, ply, discount) > credit(best, mover, ply, discount)) {
      best = o;
      have = true;
    }
  }
  return best;
}

// Value of each root action for the viewer of `root` (a full state whose
// hidden parts are re-dealt), averaged over every completion consistent with
// the viewer's information and the determinization `ao`. Only opponent hands
// and the determinized last group are enumerated; earlier opponent groups
// and then the deck absorb the remaining unseen cards in a fixed order, so
// the top deck card must not matter. The viewer must know no opponent cards.
inline std::array<double, AbstractAction::kCount> expectimax_root_values(const TrackedState& root,
                                                                          const DeterminizedAction& ao,
                                                                          double discount) {
  const Player me = root.game.to_move;
  const Player opp = other(me);
  const InformationState info = information_state(root, me);
  if (!info.knowledge.known_opponent_cards.empty()) {
    throw Error("oracle", "oracle needs a viewer without known opponent cards");
  }
  CardSet unseen = CardSet::full() - info.own_hand - CardSet{info.anchor_card};
  for (const PublicGroup& g : info.table) unseen -= g.own_cards;
  const int last = info.claim_pending() ? static_cast<int>(info.table.size()) - 1 : -1;
  const int group_n = ao.is_claim() ? ao.count : 0;
  const CardSet rank_mask = ao.is_claim() ? CardSet::rank_mask(ao.rank) : CardSet{};
  const bool truthful = ao.kind == DeterminizedKind::true_claim;

  std::array<double, AbstractAction::kCount> total{};
  double weight_sum = 0.0;
  const std::vector<Card> pool = unseen.to_vector();
  const int n = static_cast<int>(pool.size());
  const int h = info.opponent_card_count;
  std::vector<int> idx(h);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth < h) {
      for (int i = start; i < n; ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
      return;
    }
    CardSet hand;
    for (int i : idx) hand.insert(pool[i]);
    CardSet rest = unseen - hand;
    const CardSet cls = truthful ? rest & rank_mask : rest - rank_mask;
    double w = 1.0;
    CardSet last_cards;
    if (group_n > 0) {
      const int m = cls.size();
      if (m < group_n) return;
      w = std::tgamma(m + 1.0) / (std::tgamma(group_n + 1.0) * std::tgamma(m - group_n + 1.0));
      for (Card c : cls) {
        if (last_cards.size() == group_n) break;
        last_cards.insert(c);
      }
      rest -= last_cards;
    }
    TrackedState s = root;
    s.game.hands[opp] = hand;
    std::vector<Card> filler = rest.to_vector();
    size_t next = 0;
    for (int gi = 0; gi < static_cast<int>(s.game.table.size()); ++gi) {
      TableGroup& g = s.game.table[gi];
      if (g.claimant != opp) continue;
      if (gi == last) {
        g.cards = last_cards;
        continue;
      }
      g.cards = CardSet{};
      for (int j = 0; j < g.claimed_count; ++j) g.cards.insert(filler[next++]);
    }
    s.game.deck.clear();
    while (next < filler.size()) s.game.deck.push_back(filler[next++]);
    const ClaimContext ctx = context_of(s.game);
    for (AbstractAction a : applicable_actions(ctx)) {
      TrackedState t = s;
      Rng rng(0);
      advance(t, concretize(a, ctx, rng));
      total[a.index()] += w * credit(best_play(t, 1, discount), me, 0, discount);
    }
    weight_sum += w;
  };
  rec(0, 0);
  for (double& v : total) v /= weight_sum;
  return total;
}

}  // namespace cheat::test
