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

#include "cheat/match.hpp"

#include <chrono>

#include "cheat/abstraction.hpp"

namespace cheat {

ObservedAction observed_by(Player viewer, Player actor, const ConcreteAction& a) {
  ObservedAction o;
  o.actor = actor;
  o.kind = a.kind;
  if (a.is_claim()) {
    o.claimed_rank = a.claimed_rank;
    o.claimed_count = a.cards.size();
    o.direction = a.direction;
    if (actor == viewer) o.cards = a.cards;
  }
  return o;
}

void record_ply_outcome(MatchRecord& record, const GameState& before, const PlyRecord& ply) {
  if (ply.action.kind == ActionKind::call_cheat) {
    ++record.call_cheat_attempts[ply.player];
    if (!claim_is_true(before.table.back())) ++record.call_cheat_successes[ply.player];
  }
  record.plies.push_back(ply);
}

void finish_record(MatchRecord& record, const GameState& s) {
  record.rounds = s.round - 1;
  record.final_hand_sizes = {s.hands[0].size(), s.hands[1].size()};
  if (is_terminal(s)) record.winner = winner(s);
}

MatchRecord play_match(Agent& a, Agent& b, uint64_t seed, const MatchOptions& options) {
  std::array<Agent*, kNumPlayers> seats{&a, &b};
  TrackedState s = start_game(seed);
  MatchRecord record;
  record.seed = seed;
  record.match_index = options.match_index;
  record.agents = {a.spec().display_name(), b.spec().display_name()};
  record.first_player = s.game.to_move;
  for (Player p = 0; p < kNumPlayers; ++p) seats[p]->begin_match(p, options.match_index, seed);

  while (!is_terminal(s.game)) {
    const Player mover = s.game.to_move;
    const InformationState info = information_state(s, mover);
    const DeterminizedAction truth = actual_determinization(s.game);
    const auto t0 = std::chrono::steady_clock::now();
    AgentMove move = seats[mover]->act(MoveContext{info, truth, 0.0});
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.move_time_cap_seconds > 0 && elapsed > options.move_time_cap_seconds) {
      record.forfeit = mover;
      break;
    }
    if (!is_legal(s.game, move.action)) {
      throw Error("illegal_action", seats[mover]->spec().display_name() + " produced an illegal action");
    }
    PlyRecord ply;
    ply.ply = static_cast<int>(record.plies.size());
    ply.player = mover;
    ply.round = s.game.round;
    ply.key = encode(abstract_info(s.game, s.knowledge[mover]));
    ply.action = move.action;
    ply.abstract = move.abstract;
    ply.duration_seconds = options.record_timing ? elapsed : 0.0;
    ply.predictor = move.predictor;
    if (options.record_decisions) ply.decision = std::move(move.decision);
    if (move.action.kind == ActionKind::call_cheat) ply.challenged_claim_true = claim_is_true(s.game.table.back());
    record_ply_outcome(record, s.game, ply);
    advance(s, move.action);
    for (Player p = 0; p < kNumPlayers; ++p) {
      seats[p]->observe(observed_by(p, mover, move.action), ply.duration_seconds);
    }
  }
  finish_record(record, s.game);
  if (record.forfeit) record.winner = other(*record.forfeit);
  for (Agent* agent : seats) agent->end_match(record.winner);
  return record;
}

MatchRecord play_match(const AgentSpec& a, const AgentSpec& b, uint64_t seed, const MatchOptions& options) {
  auto agent_a = make_agent(a);
  auto agent_b = make_agent(b);
  return play_match(*agent_a, *agent_b, seed, options);
}

GameState replay(const MatchRecord& record) {
  GameState s = new_game(record.seed);
  for (const PlyRecord& ply : record.plies) {
    if (ply.player != s.to_move) throw Error("illegal_action", "replayed ply out of turn");
    s = apply(s, ply.action);
  }
  return s;
}

bool replay_agrees(const MatchRecord& record) {
  const GameState s = replay(record);
  if (s.round - 1 != record.rounds) return false;
  if (s.hands[0].size() != record.final_hand_sizes[0] || s.hands[1].size() != record.final_hand_sizes[1]) {
    return false;
  }
  if (record.forfeit) return record.winner == other(*record.forfeit);
  return is_terminal(s) && winner(s) == record.winner;
}

}  // namespace cheat
