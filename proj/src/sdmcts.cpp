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

#include "cheat/sdmcts.hpp"

#include <bit>
#include <cmath>

namespace cheat {
namespace {

bool same_category(const InformationState& info, DeterminizedKind k) {
  const bool claim_kind = k == DeterminizedKind::true_claim || k == DeterminizedKind::false_claim;
  if (!info.last_action) return k == DeterminizedKind::take_card;
  switch (info.last_action->kind) {
    case ActionKind::claim: return claim_kind;
    case ActionKind::take_card: return k == DeterminizedKind::take_card;
    case ActionKind::call_cheat: return k == DeterminizedKind::call_cheat;
  }
  return false;
}

}  // namespace

void PredictorDistribution::validate() const {
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error("invalid_predictor", "probabilities must be nonnegative");
  }
  if (std::abs(sum() - 1.0) > 1e-9) throw Error("invalid_predictor", "probabilities must sum to 1");
}

const RootStats* QTree::find(DeterminizedKind k) const {
  for (const RootStats& r : roots) {
    if (r.determinization.kind == k) return &r;
  }
  return nullptr;
}

double ExpectedPayoffTable::at(AbstractAction a) const {
  if (!has(a)) throw Error("undefined_action", to_string(a) + " is not in the payoff table");
  return e[a.index()];
}

ExpectedPayoffTable expected_payoffs(const QTree& q_tree, const PredictorDistribution& predictor,
                                     const InformationState& info) {
  ExpectedPayoffTable table;
  table.defined = applicable_mask(context_of(info));
  for (int k = 0; k < kNumDeterminizedKinds; ++k) {
    const double w = predictor.p[k];
    if (w <= 0.0) continue;
    const RootStats* root = q_tree.find(static_cast<DeterminizedKind>(k));
    if (root == nullptr || root->dropped) {
      throw Error("support_mismatch",
                  std::string("predictor mass on unsearched ") + to_string(static_cast<DeterminizedKind>(k)));
    }
    for (int i = 0; i < AbstractAction::kCount; ++i) {
      if (!((table.defined >> i) & 1U)) continue;
      if (root->stats.n[i] == 0) {
        table.warnings.push_back(to_string(AbstractAction(i)) + " unvisited under " +
                                 to_string(static_cast<DeterminizedKind>(k)));
        continue;
      }
      table.e[i] += w * root->stats.q[i];
    }
  }
  return table;
}

AbstractAction argmax_payoff(const ExpectedPayoffTable& table, const QTree& q_tree, Rng& rng) {
  int best[AbstractAction::kCount];
  int n_best = 0;
  double best_e = 0.0;
  uint64_t best_visits = 0;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (!((table.defined >> i) & 1U)) continue;
    uint64_t visits = 0;
    for (const RootStats& r : q_tree.roots) visits += r.stats.n[i];
    const double e = table.e[i];
    if (n_best == 0 || e > best_e || (e == best_e && visits > best_visits)) {
      best_e = e;
      best_visits = visits;
      n_best = 0;
    } else if (e != best_e || visits != best_visits) {
      continue;
    }
    best[n_best++] = i;
  }
  if (n_best == 0) throw Error("no_applicable_action", "empty payoff table");
  return AbstractAction(n_best == 1 ? best[0] : best[rng.below(static_cast<uint32_t>(n_best))]);
}

Decision best_response(const InformationState& info, const SearchConfig& config, const PredictorDistribution& predictor,
                       Rng& rng) {
  predictor.validate();
  if (info.own_hand.empty() || info.opponent_card_count == 0 || info.round > kMaxRounds) {
    throw Error("terminal", "no decision in a terminal state");
  }
  Decision d;
  d.predictor = predictor;
  const std::vector<DeterminizedAction> consistent = determinizations(info);
  for (int k = 0; k < kNumDeterminizedKinds; ++k) {
    const auto kind = static_cast<DeterminizedKind>(k);
    if (predictor.p[k] <= 0.0) continue;
    if (!same_category(info, kind)) {
      throw Error("support_mismatch", std::string("predictor mass on ") + to_string(kind) +
                                          " contradicts the observed action");
    }
    bool found = false;
    for (const DeterminizedAction& a : consistent) {
      if (a.kind == kind) {
        d.support.push_back(a);
        found = true;
      }
    }
    if (!found) {
      d.warnings.push_back(std::string("dropped infeasible ") + to_string(kind));
      d.predictor.p[k] = 0.0;
    }
  }

  const ActionMask mask = applicable_mask(context_of(info));
  if (std::popcount(mask) == 1) {
    d.action = AbstractAction(std::countr_zero(mask));
    d.table.defined = mask;
    return d;
  }
  if (d.support.empty()) throw Error("support_mismatch", "no feasible determinization carries predictor mass");

  d.q_tree = search(info, config, d.support, rng);
  for (const RootStats& r : d.q_tree.roots) {
    if (r.dropped) d.predictor[r.determinization.kind] = 0.0;
  }
  const double mass = d.predictor.sum();
  if (mass <= 0.0) throw Error("support_mismatch", "every determinization was dropped");
  for (double& x : d.predictor.p) x /= mass;
  d.warnings.insert(d.warnings.end(), d.q_tree.warnings.begin(), d.q_tree.warnings.end());

  d.table = expected_payoffs(d.q_tree, d.predictor, info);
  d.warnings.insert(d.warnings.end(), d.table.warnings.begin(), d.table.warnings.end());
  d.action = argmax_payoff(d.table, d.q_tree, rng);
  return d;
}

}  // namespace cheat
