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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cheat/knowledge.hpp"
#include "cheat/predictors.hpp"
#include "cheat/sdmcts.hpp"

namespace cheat {

enum class AgentKind { mga, pmga, fpmga, rollout_bot, random };

const char* to_string(AgentKind k);
AgentKind parse_agent_kind(const std::string& text);

struct AgentSpec {
  AgentKind kind = AgentKind::mga;
  std::string name;  // defaults to the kind name
  SearchConfig search;
  double oracle_accuracy = 0.85;
  bool oracle_sampled = false;
  std::string model_path;

  std::string display_name() const { return name.empty() ? to_string(kind) : name; }
  // Throws Error("invalid_agent").
  void validate() const;
  bool operator==(const AgentSpec&) const = default;
};

// Everything an agent may look at when choosing a move. `truth` is the actual
// previous action; only the oracle agent reads it.
struct MoveContext {
  const InformationState& info;
  DeterminizedAction truth;
  double opponent_response_seconds = 0.0;
};

struct DecisionRecord {
  EncodedInfoState key;
  std::vector<DeterminizedAction> support;
  PredictorDistribution predictor;
  ExpectedPayoffTable table;
  AbstractAction chosen;
  long long simulations = 0;
  std::vector<std::string> warnings;
  bool operator==(const DecisionRecord&) const = default;
};

struct AgentMove {
  ConcreteAction action;
  std::optional<AbstractAction> abstract;
  std::optional<PredictorDistribution> predictor;
  std::optional<DecisionRecord> decision;
};

class Agent {
 public:
  explicit Agent(AgentSpec spec) : spec_(std::move(spec)) {}
  virtual ~Agent() = default;

  const AgentSpec& spec() const { return spec_; }

  // Called before each match; resets the agent's random stream.
  virtual void begin_match(Player seat, int match_index, uint64_t seed);
  virtual AgentMove act(const MoveContext& ctx) = 0;
  // Every ply of the match as the agent's seat observes it.
  virtual void observe(const ObservedAction& action, double duration_seconds);
  virtual void end_match(std::optional<Player> winner);

 protected:
  AgentSpec spec_;
  Player seat_ = 0;
  Rng rng_{0};
};

std::unique_ptr<Agent> make_agent(const AgentSpec& spec);

// The expert rules used outside simulations, where the claim's truth is
// hidden: they fire only on claims provably false from the agent's own cards.
bool provably_false_claim(const InformationState& info);

}  // namespace cheat
