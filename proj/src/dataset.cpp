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

#include "cheat/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "cheat/json_io.hpp"

namespace cheat {
namespace fs = std::filesystem;

std::vector<TrainingSample> samples_from_match(const MatchRecord& record, PairHistory& history, int pair) {
  std::vector<TrainingSample> out;
  for (Player p = 0; p < kNumPlayers; ++p) history[p].match_index = record.match_index;
  TrackedState s = track(new_game(record.seed));
  for (const PlyRecord& ply : record.plies) {
    if (!is_legal(s.game, ply.action)) throw Error("illegal_action", "match log does not replay");
    const bool claim = ply.action.is_claim();
    const bool truthful = claim && ply.action.cards == ply.action.cards.of_rank(ply.action.claimed_rank);
    advance(s, ply.action);
    if (!claim) continue;
    const Player viewer = other(ply.player);
    const InformationState info = information_state(s, viewer);
    const FeatureVector f = extract_features(info, history[viewer], ply.duration_seconds);
    TrainingSample sample;
    sample.features.assign(f.begin(), f.end());
    sample.label = truthful ? 0 : 1;
    sample.player = 2 * pair + ply.player;
    sample.opponent = 2 * pair + viewer;
    sample.match = record.match_index;
    sample.round = ply.round;
    out.push_back(std::move(sample));
    history[viewer].claim_durations.push_back(ply.duration_seconds);
  }
  for (Player p = 0; p < kNumPlayers; ++p) {
    ++history[p].matches_played;
    if (record.winner && *record.winner != p) ++history[p].matches_won;
  }
  return out;
}

std::vector<TrainingSample> samples_from_logs(const std::string& dir) {
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") {
      groups[e.path().parent_path().string()].push_back(e.path().string());
    }
  }
  std::vector<TrainingSample> out;
  int pair = 0;
  for (auto& [group, files] : groups) {
    std::vector<MatchRecord> records;
    for (const std::string& f : files) records.push_back(read_match_jsonl(f));
    std::stable_sort(records.begin(), records.end(),
                     [](const MatchRecord& a, const MatchRecord& b) { return a.match_index < b.match_index; });
    PairHistory history{};
    for (const MatchRecord& r : records) {
      auto s = samples_from_match(r, history, pair);
      out.insert(out.end(), s.begin(), s.end());
    }
    ++pair;
  }
  return out;
}

std::vector<TrainingSample> self_play_samples(const AgentSpec& a, const AgentSpec& b, int n_matches, uint64_t seed) {
  auto agent_a = make_agent(a);
  auto agent_b = make_agent(b);
  PairHistory history{};
  std::vector<TrainingSample> out;
  MatchOptions mo;
  mo.record_decisions = false;
  for (int i = 0; i < n_matches; ++i) {
    mo.match_index = i;
    const MatchRecord r = play_match(*agent_a, *agent_b, Rng::mix(seed + static_cast<uint64_t>(i)), mo);
    auto s = samples_from_match(r, history, 0);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

void write_samples_jsonl(const std::vector<TrainingSample>& samples, const std::string& path) {
  std::string text;
  for (const TrainingSample& s : samples) text += Json(s).dump() + "\n";
  write_text(path, text);
}

std::vector<TrainingSample> read_samples_jsonl(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<TrainingSample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(Json::parse(line).get<TrainingSample>());
  }
  return out;
}

}  // namespace cheat
