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

#include <doctest.h>

#include <filesystem>

#include "cheat/tournament.hpp"
#include "fixtures.hpp"

using namespace cheat;
using namespace cheat::test;

namespace {

AgentSpec spec(AgentKind k, long long iterations = 200) {
  AgentSpec s;
  s.kind = k;
  s.search.params.iterations = iterations;
  return s;
}

MatchSummary fake(int i, std::optional<int> winner, int a_cards, int b_cards, int attempts = 0, int successes = 0) {
  MatchSummary m;
  m.match_index = i;
  m.a_first = i % 2 == 0;
  m.winner_side = winner;
  m.rounds = 10 + i;
  m.a_cards = a_cards;
  m.b_cards = b_cards;
  m.a_call_attempts = attempts;
  m.a_call_successes = successes;
  return m;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("agent specs") {
  for (AgentKind k : {AgentKind::mga, AgentKind::pmga, AgentKind::fpmga, AgentKind::rollout_bot, AgentKind::random}) {
    CHECK(parse_agent_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_agent_kind("alphago"), Error);
  AgentSpec f = spec(AgentKind::fpmga);
  f.oracle_accuracy = 0.4;
  CHECK_THROWS_AS(f.validate(), Error);
  f.oracle_accuracy = 1.0;
  CHECK_NOTHROW(f.validate());
  CHECK_THROWS_AS(spec(AgentKind::pmga).validate(), Error);
  CHECK(spec(AgentKind::mga).display_name() == "mga");
}

TEST_CASE("provably false claims") {
  Position p;
  p.hand0 = cards("8c 8d 8h 2c");
  p.hand1 = cards("Jd Qd");
  p.anchor = 7;
  p.table = {group("5d 6d", 8, 1)};
  p.last = played(1, ConcreteAction::claim(cards("5d 6d"), 8, Direction::higher));
  CHECK(provably_false_claim(information_state(p.tracked(), 0)));
  p.hand0 = cards("8c 8d 2c");
  CHECK_FALSE(provably_false_claim(information_state(p.tracked(), 0)));
}

TEST_CASE("random vs random terminates and replays") {
  const MatchRecord r = play_match(spec(AgentKind::random), spec(AgentKind::random), 1);
  CHECK(r.rounds <= kMaxRounds);
  CHECK(r.rounds == static_cast<int>(r.plies.size()));
  CHECK(replay_agrees(r));
  CHECK(r.agents[0] == "random");
}

TEST_CASE("matches are deterministic and replayable") {
  for (uint64_t seed : {3ULL, 4ULL}) {
    const MatchRecord a = play_match(spec(AgentKind::mga), spec(AgentKind::rollout_bot), seed);
    const MatchRecord b = play_match(spec(AgentKind::mga), spec(AgentKind::rollout_bot), seed);
    CHECK(a == b);
    CHECK(replay_agrees(a));
    for (const PlyRecord& ply : a.plies) {
      if (ply.player == 0) {
        REQUIRE(ply.decision.has_value());
        CHECK(ply.decision->chosen == *ply.abstract);
        CHECK(ply.predictor.has_value());
      }
      if (ply.action.kind == ActionKind::call_cheat) CHECK(ply.challenged_claim_true.has_value());
    }
    int attempts = 0;
    for (const PlyRecord& ply : a.plies) attempts += ply.player == 1 && ply.action.kind == ActionKind::call_cheat;
    CHECK(a.call_cheat_attempts[1] == attempts);
  }
}

TEST_CASE("tampered logs do not replay") {
  MatchRecord r = play_match(spec(AgentKind::random), spec(AgentKind::random), 9);
  REQUIRE(r.plies.size() >= 2);
  std::swap(r.plies[0], r.plies[1]);
  CHECK_THROWS_AS(replay(r), Error);
  MatchRecord s = play_match(spec(AgentKind::random), spec(AgentKind::random), 9);
  s.winner = s.winner ? std::optional<Player>(other(*s.winner)) : std::optional<Player>(0);
  CHECK_FALSE(replay_agrees(s));
}

TEST_CASE("a move over the time cap forfeits") {
  MatchOptions o;
  o.move_time_cap_seconds = 1e-9;
  const MatchRecord r = play_match(spec(AgentKind::mga, 2000), spec(AgentKind::mga, 2000), 5, o);
  REQUIRE(r.forfeit.has_value());
  CHECK(r.winner == other(*r.forfeit));
  CHECK(replay_agrees(r));
}

TEST_CASE("observed actions hide the opponent's cards") {
  const ConcreteAction a = ConcreteAction::claim(cards("2c 3c"), 8, Direction::lower);
  CHECK(observed_by(0, 0, a).cards == cards("2c 3c"));
  CHECK(observed_by(1, 0, a).cards.empty());
  CHECK(observed_by(1, 0, a).claimed_count == 2);
}

TEST_CASE("seat assignment alternates the first mover") {
  TournamentOptions o;
  for (int i = 0; i < 200; ++i) {
    const uint64_t seed = match_seed(o, i);
    const bool a_first = (new_game(seed).to_move == 0) == a_in_seat_zero(seed, i);
    CHECK(a_first == (i % 2 == 0));
  }
  CHECK(match_seed(o, 3) == match_seed(o, 3));
  CHECK(match_seed(o, 3) != match_seed(o, 4));
  o.seeds = {11, 12};
  CHECK(match_seed(o, 1) == 12);
}

TEST_CASE("pairing summaries") {
  std::vector<MatchSummary> all_a;
  for (int i = 0; i < 10; ++i) all_a.push_back(fake(i, 0, 0, 4));
  const PairingReport r = summarize_pairing("x", "A", "B", all_a);
  CHECK(r.a.win_ratio == 1.0);
  CHECK(r.b.win_ratio == 0.0);
  CHECK(r.a.wins == 10);
  CHECK(r.b.losses == 10);
  CHECK(r.a.avg_card_difference == -4.0);
  CHECK(r.b.avg_card_difference == 4.0);
  CHECK_FALSE(r.a.call_success_rate.has_value());
  CHECK(r.a.first_moves == 5);
  CHECK(r.b.first_moves == 5);
  CHECK(r.a.win_ci.hi == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<MatchSummary> mixed{fake(0, 0, 0, 3, 4, 3), fake(1, 1, 2, 0, 2, 0), fake(2, std::nullopt, 5, 5)};
  const PairingReport m = summarize_pairing("y", "A", "B", mixed);
  CHECK(m.a.wins == 1);
  CHECK(m.a.ties == 1);
  CHECK(m.a.win_ratio == doctest::Approx(1.0 / 3).epsilon(1e-12));
  REQUIRE(m.a.call_success_rate.has_value());
  CHECK(*m.a.call_success_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.a.avg_rounds == 11.0);
}

TEST_CASE("tournament metrics, persistence and worker independence") {
  const auto dir = fresh_dir("cheat_tournament_test");
  std::vector<Pairing> ps{{"bot:random", spec(AgentKind::rollout_bot), spec(AgentKind::random)},
                          {"random:random", spec(AgentKind::random), spec(AgentKind::random)},
                          {"random:bot", spec(AgentKind::random), spec(AgentKind::rollout_bot)}};
  TournamentOptions o;
  o.n_matches = 200;
  o.log_dir = dir.string();
  const TournamentReport r = tournament(ps, o);
  REQUIRE(r.pairings.size() == 3);
  CHECK(r.pairings[0].a.win_ratio > 0.5);
  CHECK(r.pairings[2].b.win_ratio > 0.5);
  REQUIRE(r.win_anova.has_value());
  CHECK(r.win_anova->p < 0.05);
  CHECK(r.card_anova.has_value());
  for (const PairingReport& p : r.pairings) {
    CHECK(p.matches.size() == 200);
    CHECK(p.a.first_moves == 100);
    CHECK(p.a.win_ratio >= 0.0);
    CHECK(p.a.win_ratio <= 1.0);
  }
  const TournamentReport again = report_from_logs(dir.string());
  REQUIRE(again.pairings.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(again.pairings[i] == r.pairings[i]);

  o.log_dir.clear();
  o.workers = 3;
  const TournamentReport parallel = tournament(ps, o);
  for (size_t i = 0; i < 3; ++i) CHECK(parallel.pairings[i].matches == r.pairings[i].matches);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ANOVA over identical agents rarely rejects") {
  int small = 0;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<PairingReport> reports;
    for (int k = 0; k < 3; ++k) {
      // Separate seed banks keep the three conditions independent.
      TournamentOptions o;
      o.n_matches = 60;
      o.seed_base = 1000 + 3 * rep + k;
      reports.push_back(tournament({{"r" + std::to_string(k), spec(AgentKind::random), spec(AgentKind::random)}}, o).pairings[0]);
    }
    const TournamentReport r = summarize_tournament(reports);
    REQUIRE(r.win_anova.has_value());
    small += r.win_anova->p < 0.05;
  }
  CHECK(small <= 2);
}

TEST_CASE("calibration bracket") {
  CalibrateOptions o;
  o.matches_per_tie = 6;
  SmoothUctParams p;
  p.iterations = 100;
  const CalibrationResult one = calibrate({p}, o);
  CHECK(one.champion == p);
  CHECK(one.bracket.empty());
  CHECK_THROWS_AS(calibrate({}, o), Error);

  SmoothUctParams low = p;
  low.discount = 0.5;
  const CalibrationResult a = calibrate({p, low}, o);
  const CalibrationResult b = calibrate({p, low}, o);
  REQUIRE(a.bracket.size() == 1);
  CHECK(a.champion == b.champion);
  CHECK(a.bracket[0].wins_a == b.bracket[0].wins_a);
  CHECK(a.bracket[0].wins_a + a.bracket[0].wins_b + a.bracket[0].ties == 6);

  CalibrationGrid g;
  g.base = p;
  g.c = {0.1, 0.2};
  g.discount = {0.9, 0.995, 1.0};
  CHECK(g.candidates().size() == 6);
  const CalibrationResult three = calibrate({p, low, SmoothUctParams::uct(0.5)}, o);
  CHECK(three.bracket.size() == 2);

  const SmoothUctParams champ = SmoothUctParams::champion();
  CHECK(champ.c == 0.0025);
  CHECK(champ.d == 0.0025);
  CHECK(champ.discount == 0.995);
}
