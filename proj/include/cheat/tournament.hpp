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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheat/agents.hpp"
#include "cheat/match.hpp"
#include "cheat/stats.hpp"

namespace cheat {

struct Pairing {
  std::string label;
  AgentSpec a;
  AgentSpec b;
};

struct TournamentOptions {
  int n_matches = 100;
  uint64_t seed_base = 1;
  // Explicit seed bank; when empty seeds are derived from seed_base.
  std::vector<uint64_t> seeds;
  // Directory for JSONL logs and reports; empty disables persistence.
  std::string log_dir;
  int workers = 1;
  MatchOptions match;
};

// Seed of match i of a tournament (shared by every pairing).
uint64_t match_seed(const TournamentOptions& options, int i);
// Whether side A sits in seat 0. A moves first in even-numbered matches, B in
// odd ones.
bool a_in_seat_zero(uint64_t seed, int match_index);

// One match seen from side A of its pairing.
struct MatchSummary {
  uint64_t seed = 0;
  int match_index = 0;
  bool a_first = false;
  Player a_seat = 0;
  std::optional<int> winner_side;  // 0 = A, 1 = B, none = tie
  int rounds = 0;
  int a_cards = 0;
  int b_cards = 0;
  int a_call_attempts = 0;
  int a_call_successes = 0;
  int b_call_attempts = 0;
  int b_call_successes = 0;
  bool forfeit = false;
  bool operator==(const MatchSummary&) const = default;
};

MatchSummary summarize_match(const MatchRecord& record, Player a_seat);

struct SideSummary {
  std::string name;
  int matches = 0;
  int wins = 0;
  int losses = 0;
  int ties = 0;
  double win_ratio = 0.0;
  Interval win_ci;
  int call_attempts = 0;
  int call_successes = 0;
  std::optional<double> call_success_rate;
  std::optional<Interval> call_success_ci;
  double avg_rounds = 0.0;
  // Own cards minus opponent cards at termination.
  double avg_card_difference = 0.0;
  Interval card_difference_ci;
  int first_moves = 0;
  bool operator==(const SideSummary&) const = default;
};

struct PairingReport {
  std::string label;
  SideSummary a;
  SideSummary b;
  std::vector<MatchSummary> matches;
  bool operator==(const PairingReport&) const = default;
};

struct TournamentReport {
  std::vector<PairingReport> pairings;
  // Across pairings, on side A's per-match outcome (1 win, 0.5 tie, 0 loss)
  // and card difference; present with three or more pairings.
  std::optional<AnovaResult> win_anova;
  std::optional<AnovaResult> card_anova;
};

PairingReport summarize_pairing(const std::string& label, const std::string& a_name, const std::string& b_name,
                                std::vector<MatchSummary> matches);
TournamentReport summarize_tournament(std::vector<PairingReport> pairings);

TournamentReport tournament(const std::vector<Pairing>& pairings, const TournamentOptions& options);

// Rebuilds a report from a tournament log directory.
TournamentReport report_from_logs(const std::string& log_dir);

struct CalibrationTie {
  int round = 0;
  SmoothUctParams a;
  SmoothUctParams b;
  int wins_a = 0;
  int wins_b = 0;
  int ties = 0;
  SmoothUctParams winner;
};

struct CalibrationResult {
  SmoothUctParams champion;
  std::vector<CalibrationTie> bracket;
};

struct CalibrationGrid {
  std::vector<double> c;
  std::vector<double> d;
  std::vector<double> discount;
  SmoothUctParams base;
  std::vector<SmoothUctParams> candidates() const;
};

struct CalibrateOptions {
  int matches_per_tie = 100;
  uint64_t seed_base = 1;
  RolloutPolicy rollout;
  int workers = 1;
};

// Single-elimination bracket of MGA self-play; the side with more wins
// advances, the earlier-listed side on a tie; an odd entrant gets a bye.
CalibrationResult calibrate(const std::vector<SmoothUctParams>& candidates, const CalibrateOptions& options);

}  // namespace cheat
