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

#include "cheat/agents.hpp"

#include "cheat/abstraction.hpp"
#include "cheat/rollout.hpp"

namespace cheat {
namespace {

class RandomAgent : public Agent {
 public:
  using Agent::Agent;

  AgentMove act(const MoveContext& ctx) override {
    const TrackedState s = consistent_sample(ctx.info, ctx.truth, rng_);
    AgentMove m;
    m.action = sample_legal_action(s.game, rng_);
    m.abstract = abstract_of(m.action, context_of(ctx.info));
    return m;
  }
};

class RolloutBot : public Agent {
 public:
  using Agent::Agent;

  AgentMove act(const MoveContext& ctx) override {
    const InformationState& info = ctx.info;
    const ClaimContext c = context_of(info);
    AgentMove m;
    AbstractAction a;
    bool fired = false;
    if (spec_.search.rollout.heuristics && provably_false_claim(info)) {
      const ObservedAction& last = *info.last_action;
      const HeuristicSignals h = heuristic_signals(info.own_hand, info.opponent_card_count, info.table_card_count,
                                                   info.knowledge, last.actor, last.claimed_rank);
      if (h.any()) {
        a = AbstractAction::call_cheat();
        fired = true;
      }
    }
    if (!fired) {
      const auto& policy = spec_.search.rollout;
      a = sample_action(normalize(policy.pdf, applicable_mask(c), policy.normalization), rng_);
    }
    m.abstract = a;
    m.action = concretize(a, c, rng_);
    return m;
  }
};

class SearchAgent : public Agent {
 public:
  explicit SearchAgent(AgentSpec spec) : Agent(std::move(spec)) {
    if (spec_.kind == AgentKind::pmga) model_ = load_model(spec_.model_path);
  }

  void begin_match(Player seat, int match_index, uint64_t seed) override {
    Agent::begin_match(seat, match_index, seed);
    history_.match_index = match_index;
  }

  void observe(const ObservedAction& action, double duration_seconds) override {
    if (action.actor != seat_ && action.kind == ActionKind::claim) history_.claim_durations.push_back(duration_seconds);
  }

  void end_match(std::optional<Player> winner) override {
    ++history_.matches_played;
    if (winner && *winner != seat_) ++history_.matches_won;
  }

  AgentMove act(const MoveContext& ctx) override {
    const InformationState& info = ctx.info;
    AgentMove m;
    const PredictorDistribution p = predict(ctx);
    m.predictor = p;
    Decision d = best_response(info, spec_.search, p, rng_);
    DecisionRecord r;
    r.key = encode(abstract_info(info, ctx.truth));
    r.support = d.support;
    r.predictor = d.predictor;
    r.table = d.table;
    r.chosen = d.action;
    r.simulations = d.q_tree.simulations;
    r.warnings = d.warnings;
    m.decision = std::move(r);
    m.abstract = d.action;
    m.action = concretize(d.action, context_of(info), rng_);
    return m;
  }

 private:
  PredictorDistribution predict(const MoveContext& ctx) {
    const InformationState& info = ctx.info;
    switch (spec_.kind) {
      case AgentKind::fpmga: {
        if (!spec_.oracle_sampled || !ctx.truth.is_claim()) return predict_oracle(ctx.truth, spec_.oracle_accuracy);
        const bool correct = rng_.bernoulli(spec_.oracle_accuracy);
        const bool truthful = (ctx.truth.kind == DeterminizedKind::true_claim) == correct;
        return PredictorDistribution::point_mass(truthful ? DeterminizedKind::true_claim
                                                          : DeterminizedKind::false_claim);
      }
      case AgentKind::pmga: {
        const FeatureVector f = extract_features(info, history_, ctx.opponent_response_seconds);
        return predict_learned(model_, f, info);
      }
      default:
        return predict_uniform(info);
    }
  }

  LinearClaimModel model_;
  OpponentHistory history_;
};

}  // namespace

const char* to_string(AgentKind k) {
  switch (k) {
    case AgentKind::mga: return "mga";
    case AgentKind::pmga: return "pmga";
    case AgentKind::fpmga: return "fpmga";
    case AgentKind::rollout_bot: return "rollout_bot";
    case AgentKind::random: return "random";
  }
  return "?";
}

AgentKind parse_agent_kind(const std::string& text) {
  for (AgentKind k : {AgentKind::mga, AgentKind::pmga, AgentKind::fpmga, AgentKind::rollout_bot, AgentKind::random}) {
    if (text == to_string(k)) return k;
  }
  throw Error("invalid_agent", "unknown agent kind: " + text);
}

void AgentSpec::validate() const {
  if (kind == AgentKind::fpmga && !(oracle_accuracy >= 0.5 && oracle_accuracy <= 1.0)) {
    throw Error("invalid_agent", "fpmga needs 0.5 <= accuracy <= 1");
  }
  if (kind == AgentKind::pmga && model_path.empty()) throw Error("invalid_agent", "pmga needs a model path");
  search.params.validate();
  search.rollout.pdf.validate();
}

void Agent::begin_match(Player seat, int, uint64_t seed) {
  seat_ = seat;
  rng_ = Rng(Rng::mix(seed ^ (0xa5a5a5a5ULL + static_cast<uint64_t>(seat))));
}

void Agent::observe(const ObservedAction&, double) {}

void Agent::end_match(std::optional<Player>) {}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case AgentKind::random: return std::make_unique<RandomAgent>(spec);
    case AgentKind::rollout_bot: return std::make_unique<RolloutBot>(spec);
    default: return std::make_unique<SearchAgent>(spec);
  }
}

bool provably_false_claim(const InformationState& info) {
  if (!info.claim_pending() || info.last_action->actor == info.viewer) return false;
  const Rank r = info.last_action->claimed_rank;
  CardSet seen = info.own_hand.of_rank(r);
  for (const PublicGroup& g : info.table) seen |= g.own_cards.of_rank(r);
  if (info.anchor_card.rank == r) seen.insert(info.anchor_card);
  return kNumSuits - seen.size() < info.last_action->claimed_count;
}

}  // namespace cheat
