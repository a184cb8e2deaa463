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

#include "cheat/rollout.hpp"

#include <cmath>

namespace cheat {

RolloutPdf RolloutPdf::default_pdf() {
  RolloutPdf pdf;
  pdf.p.fill((1.0 - kDefaultCallCheatProbability) / (AbstractAction::kCount - 1));
  pdf.p[AbstractAction::call_cheat().index()] = kDefaultCallCheatProbability;
  return pdf;
}

RolloutPdf RolloutPdf::uniform() {
  RolloutPdf pdf;
  pdf.p.fill(1.0 / AbstractAction::kCount);
  return pdf;
}

void RolloutPdf::validate() const {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error("invalid_pdf", "rollout probabilities must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("invalid_pdf", "rollout probabilities must sum to 1");
}

ActionDistribution normalize(const RolloutPdf& pdf, ActionMask applicable, Normalization mode) {
  if (applicable == 0) throw Error("no_applicable_action", "normalize over an empty set");
  ActionDistribution out{};
  double mass = 0.0;
  int n = 0;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if ((applicable >> i) & 1U) {
      mass += pdf.p[i];
      ++n;
    }
  }
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (!((applicable >> i) & 1U)) continue;
    if (mass <= 0.0) {
      out[i] = 1.0 / n;
    } else if (mode == Normalization::proportional) {
      out[i] = pdf.p[i] / mass;
    } else {
      out[i] = pdf.p[i] + (1.0 - mass) / n;
    }
  }
  return out;
}

HeuristicSignals heuristic_signals(const CardSet& own_hand, int opponent_cards, int table_cards,
                                   const KnowledgeTracker& tracker, Player claimant, Rank claimed_rank) {
  const PlayerStats& opp = tracker.players[claimant];
  HeuristicSignals h;
  h.opponent_hand_empty = opponent_cards == 0;
  h.table_over_eight = table_cards > 8;
  h.caught_over_eight = opp.times_caught > 8;
  h.repeated_claim = opp.last_claim_repeated;
  h.hold_claimed_rank = own_hand.count_rank(claimed_rank) > 0;
  h.caught_on_rank = opp.caught_on(claimed_rank);
  return h;
}

std::optional<AbstractAction> heuristic_call_cheat(const TrackedState& s) {
  const GameState& g = s.game;
  if (!claim_pending(g)) return std::nullopt;
  const TableGroup& last = g.table.back();
  if (claim_is_true(last)) return std::nullopt;
  const Player me = g.to_move;
  const HeuristicSignals h = heuristic_signals(g.hands[me], g.hands[last.claimant].size(), g.table_cards,
                                               s.knowledge[me], last.claimant, last.claimed_rank);
  if (h.any()) return AbstractAction::call_cheat();
  return std::nullopt;
}

AbstractAction sample_action(const ActionDistribution& dist, Rng& rng) {
  double u = rng.uniform();
  int last = -1;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (dist[i] <= 0.0) continue;
    last = i;
    if (u < dist[i]) return AbstractAction(i);
    u -= dist[i];
  }
  if (last < 0) throw Error("no_applicable_action", "empty distribution");
  return AbstractAction(last);
}

AbstractAction rollout_action(const RolloutPolicy& policy, const TrackedState& s, Rng& rng) {
  if (policy.heuristics) {
    if (auto a = heuristic_call_cheat(s)) return *a;
  }
  return sample_action(normalize(policy.pdf, applicable_mask(context_of(s.game)), policy.normalization), rng);
}

}  // namespace cheat
