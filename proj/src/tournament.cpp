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

#include "cheat/tournament.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "cheat/json_io.hpp"

namespace cheat {
namespace fs = std::filesystem;

namespace {

std::string slug(const std::string& label) {
  std::string out;
  for (char ch : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    out += keep ? ch : '_';
  }
  return out.empty() ? "pairing" : out;
}

std::string match_file(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "match_%05d", i);
  return buf;
}

// Runs f(i) for i in [0, n) on up to `workers` threads.
template <class F>
void parallel_for(int n, int workers, F&& f) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

SideSummary side_summary(const std::string& name, const std::vector<MatchSummary>& matches, int side) {
  SideSummary s;
  s.name = name;
  s.matches = static_cast<int>(matches.size());
  std::vector<double> diffs;
  double rounds = 0.0;
  for (const MatchSummary& m : matches) {
    if (!m.winner_side) {
      ++s.ties;
    } else if (*m.winner_side == side) {
      ++s.wins;
    } else {
      ++s.losses;
    }
    const int own = side == 0 ? m.a_cards : m.b_cards;
    const int opp = side == 0 ? m.b_cards : m.a_cards;
    diffs.push_back(own - opp);
    rounds += m.rounds;
    s.call_attempts += side == 0 ? m.a_call_attempts : m.b_call_attempts;
    s.call_successes += side == 0 ? m.a_call_successes : m.b_call_successes;
    if (m.a_first == (side == 0)) ++s.first_moves;
  }
  if (s.matches > 0) {
    s.win_ratio = static_cast<double>(s.wins) / s.matches;
    s.win_ci = wilson_interval(s.wins, s.matches);
    s.avg_rounds = rounds / s.matches;
    s.avg_card_difference = mean(diffs);
    s.card_difference_ci = mean_interval(diffs);
  }
  if (s.call_attempts > 0) {
    s.call_success_rate = static_cast<double>(s.call_successes) / s.call_attempts;
    s.call_success_ci = wilson_interval(s.call_successes, s.call_attempts);
  }
  return s;
}

}  // namespace

uint64_t match_seed(const TournamentOptions& options, int i) {
  if (!options.seeds.empty()) {
    if (i >= static_cast<int>(options.seeds.size())) throw Error("invalid_options", "seed bank shorter than n_matches");
    return options.seeds[i];
  }
  return Rng::mix(options.seed_base + static_cast<uint64_t>(i));
}

bool a_in_seat_zero(uint64_t seed, int match_index) {
  const Player first = new_game(seed).to_move;
  return (first == 0) == (match_index % 2 == 0);
}

MatchSummary summarize_match(const MatchRecord& r, Player a_seat) {
  const Player b_seat = other(a_seat);
  MatchSummary m;
  m.seed = r.seed;
  m.match_index = r.match_index;
  m.a_seat = a_seat;
  m.a_first = r.first_player == a_seat;
  if (r.winner) m.winner_side = *r.winner == a_seat ? 0 : 1;
  m.rounds = r.rounds;
  m.a_cards = r.final_hand_sizes[a_seat];
  m.b_cards = r.final_hand_sizes[b_seat];
  m.a_call_attempts = r.call_cheat_attempts[a_seat];
  m.a_call_successes = r.call_cheat_successes[a_seat];
  m.b_call_attempts = r.call_cheat_attempts[b_seat];
  m.b_call_successes = r.call_cheat_successes[b_seat];
  m.forfeit = r.forfeit.has_value();
  return m;
}

PairingReport summarize_pairing(const std::string& label, const std::string& a_name, const std::string& b_name,
                                std::vector<MatchSummary> matches) {
  std::sort(matches.begin(), matches.end(),
            [](const MatchSummary& x, const MatchSummary& y) { return x.match_index < y.match_index; });
  PairingReport r;
  r.label = label;
  r.a = side_summary(a_name, matches, 0);
  r.b = side_summary(b_name, matches, 1);
  r.matches = std::move(matches);
  return r;
}

TournamentReport summarize_tournament(std::vector<PairingReport> pairings) {
  TournamentReport r;
  r.pairings = std::move(pairings);
  if (r.pairings.size() >= 3) {
    std::vector<std::vector<double>> wins;
    std::vector<std::vector<double>> cards;
    for (const PairingReport& p : r.pairings) {
      auto& w = wins.emplace_back();
      auto& c = cards.emplace_back();
      for (const MatchSummary& m : p.matches) {
        w.push_back(!m.winner_side ? 0.5 : (*m.winner_side == 0 ? 1.0 : 0.0));
        c.push_back(m.a_cards - m.b_cards);
      }
    }
    try {
      r.win_anova = one_way_anova(wins);
    } catch (const Error&) {
    }
    try {
      r.card_anova = one_way_anova(cards);
    } catch (const Error&) {
    }
  }
  return r;
}

TournamentReport tournament(const std::vector<Pairing>& pairings, const TournamentOptions& options) {
  if (options.n_matches < 1) throw Error("invalid_options", "n_matches must be at least 1");
  for (const Pairing& p : pairings) {
    p.a.validate();
    p.b.validate();
  }
  if (!options.log_dir.empty()) fs::create_directories(options.log_dir);
  std::vector<PairingReport> reports;
  for (size_t pi = 0; pi < pairings.size(); ++pi) {
    const Pairing& p = pairings[pi];
    const std::string label = p.label.empty() ? p.a.display_name() + "_vs_" + p.b.display_name() : p.label;
    std::string dir;
    if (!options.log_dir.empty()) {
      dir = (fs::path(options.log_dir) / (std::to_string(pi) + "_" + slug(label))).string();
      fs::create_directories(dir);
      const Json meta{{"schema_version", 1}, {"label", label}, {"index", pi}, {"a", p.a}, {"b", p.b},
                      {"n_matches", options.n_matches}};
      write_text((fs::path(dir) / "pairing.json").string(), meta.dump(2) + "\n");
    }
    std::vector<MatchSummary> summaries(options.n_matches);
    parallel_for(options.n_matches, options.workers, [&](int i) {
      const uint64_t seed = match_seed(options, i);
      const bool a_zero = a_in_seat_zero(seed, i);
      MatchOptions mo = options.match;
      mo.match_index = i;
      const MatchRecord record = a_zero ? play_match(p.a, p.b, seed, mo) : play_match(p.b, p.a, seed, mo);
      summaries[i] = summarize_match(record, a_zero ? 0 : 1);
      if (!dir.empty()) {
        const std::string base = (fs::path(dir) / match_file(i)).string();
        write_match_jsonl(record, base + ".jsonl");
        write_text(base + ".summary.json", Json(summaries[i]).dump(2) + "\n");
      }
    });
    reports.push_back(summarize_pairing(label, p.a.display_name(), p.b.display_name(), std::move(summaries)));
  }
  TournamentReport report = summarize_tournament(std::move(reports));
  if (!options.log_dir.empty()) {
    write_text((fs::path(options.log_dir) / "report.json").string(), Json(report).dump(2) + "\n");
    write_text((fs::path(options.log_dir) / "report.csv").string(), report_csv(report));
  }
  return report;
}

TournamentReport report_from_logs(const std::string& log_dir) {
  std::vector<std::pair<int, PairingReport>> found;
  for (const auto& entry : fs::directory_iterator(log_dir)) {
    const fs::path meta_path = entry.path() / "pairing.json";
    if (!entry.is_directory() || !fs::exists(meta_path)) continue;
    const Json meta = Json::parse(read_text(meta_path.string()));
    const AgentSpec a = meta.at("a").get<AgentSpec>();
    const AgentSpec b = meta.at("b").get<AgentSpec>();
    std::vector<MatchSummary> matches;
    for (const auto& f : fs::directory_iterator(entry.path())) {
      if (f.path().extension() != ".jsonl") continue;
      const MatchRecord r = read_match_jsonl(f.path().string());
      matches.push_back(summarize_match(r, a_in_seat_zero(r.seed, r.match_index) ? 0 : 1));
    }
    found.emplace_back(meta.at("index").get<int>(), summarize_pairing(meta.at("label").get<std::string>(),
                                                                      a.display_name(), b.display_name(),
                                                                      std::move(matches)));
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<PairingReport> reports;
  for (auto& f : found) reports.push_back(std::move(f.second));
  return summarize_tournament(std::move(reports));
}

std::vector<SmoothUctParams> CalibrationGrid::candidates() const {
  const std::vector<double> cs = c.empty() ? std::vector<double>{base.c} : c;
  const std::vector<double> ds = d.empty() ? std::vector<double>{base.d} : d;
  const std::vector<double> gs = discount.empty() ? std::vector<double>{base.discount} : discount;
  std::vector<SmoothUctParams> out;
  for (double ci : cs) {
    for (double di : ds) {
      for (double gi : gs) {
        SmoothUctParams p = base;
        p.c = ci;
        p.d = di;
        p.discount = gi;
        out.push_back(p);
      }
    }
  }
  return out;
}

CalibrationResult calibrate(const std::vector<SmoothUctParams>& candidates, const CalibrateOptions& options) {
  if (candidates.empty()) throw Error("invalid_options", "calibration grid is empty");
  CalibrationResult result;
  std::vector<SmoothUctParams> alive = candidates;
  TournamentOptions topt;
  topt.n_matches = options.matches_per_tie;
  topt.seed_base = options.seed_base;
  topt.workers = options.workers;
  topt.match.record_decisions = false;
  for (int round = 1; alive.size() > 1; ++round) {
    std::vector<SmoothUctParams> next;
    for (size_t i = 0; i + 1 < alive.size(); i += 2) {
      Pairing p;
      p.a.kind = AgentKind::mga;
      p.a.name = "candidate_a";
      p.a.search = SearchConfig{alive[i], options.rollout};
      p.b = p.a;
      p.b.name = "candidate_b";
      p.b.search.params = alive[i + 1];
      p.label = "calibration";
      const TournamentReport r = tournament({p}, topt);
      CalibrationTie tie;
      tie.round = round;
      tie.a = alive[i];
      tie.b = alive[i + 1];
      tie.wins_a = r.pairings[0].a.wins;
      tie.wins_b = r.pairings[0].b.wins;
      tie.ties = r.pairings[0].a.ties;
      tie.winner = tie.wins_b > tie.wins_a ? tie.b : tie.a;
      result.bracket.push_back(tie);
      next.push_back(tie.winner);
    }
    if (alive.size() % 2 == 1) next.push_back(alive.back());
    alive = std::move(next);
  }
  result.champion = alive.front();
  return result;
}

}  // namespace cheat
