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
#include <optional>
#include <string>
#include <vector>

#include "cheat/agents.hpp"
#include "cheat/game.hpp"

namespace cheat {

struct PlyRecord {
  int ply = 0;
  Player player = 0;
  int round = 1;
  EncodedInfoState key;
  ConcreteAction action;
  std::optional<AbstractAction> abstract;
  double duration_seconds = 0.0;
  std::optional<PredictorDistribution> predictor;
  std::optional<DecisionRecord> decision;
  // Truth of the claim this ply challenged, for CallCheat plies.
  std::optional<bool> challenged_claim_true;
  // Unix time of acceptance; set by the service only.
  std::optional<double> timestamp;
  bool operator==(const PlyRecord&) const = default;
};

struct MatchRecord {
  uint64_t seed = 0;
  int match_index = 0;
  std::array<std::string, kNumPlayers> agents;
  Player first_player = 0;
  std::vector<PlyRecord> plies;
  std::optional<Player> winner;
  int rounds = 0;
  std::array<int, kNumPlayers> final_hand_sizes{};
  std::array<int, kNumPlayers> call_cheat_attempts{};
  std::array<int, kNumPlayers> call_cheat_successes{};
  std::optional<Player> forfeit;
  bool operator==(const MatchRecord&) const = default;
};

struct MatchOptions {
  // Wall-clock timing makes records machine-dependent; off by default.
  bool record_timing = false;
  // Seconds per move before the mover forfeits; 0 disables the cap.
  double move_time_cap_seconds = 0.0;
  bool record_decisions = true;
  int match_index = 0;
};

// Plays seat 0 = `a`, seat 1 = `b` to termination.
MatchRecord play_match(Agent& a, Agent& b, uint64_t seed, const MatchOptions& options = {});
MatchRecord play_match(const AgentSpec& a, const AgentSpec& b, uint64_t seed, const MatchOptions& options = {});

// Re-applies the recorded actions from the seed. Throws Error("illegal_action")
// if the log does not describe a legal game.
GameState replay(const MatchRecord& record);
// The replayed terminal state agrees with the recorded outcome.
bool replay_agrees(const MatchRecord& record);

// A move as `viewer` sees it: card identities only for the viewer's own claims.
ObservedAction observed_by(Player viewer, Player actor, const ConcreteAction& a);

// Bookkeeping shared by the harness and the service.
void record_ply_outcome(MatchRecord& record, const GameState& before, const PlyRecord& ply);
void finish_record(MatchRecord& record, const GameState& final_state);

}  // namespace cheat
