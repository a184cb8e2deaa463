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
#include <string>
#include <vector>

#include "cheat/match.hpp"
#include "cheat/predictors.hpp"

namespace cheat {

// Running per-seat memory across the matches of one pairing.
using PairHistory = std::array<OpponentHistory, kNumPlayers>;

// One sample per claim in the match, seen by the claimant's opponent right
// after the claim and labelled from the logged cards. `pair` makes player ids
// unique across pairings (ids 2*pair and 2*pair+1). Updates `history`.
std::vector<TrainingSample> samples_from_match(const MatchRecord& record, PairHistory& history, int pair = 0);

// Samples from every match log (*.jsonl) under a directory, one pairing per
// subdirectory, matches in index order.
std::vector<TrainingSample> samples_from_logs(const std::string& dir);

// Self-play dataset between two agent specs.
std::vector<TrainingSample> self_play_samples(const AgentSpec& a, const AgentSpec& b, int n_matches, uint64_t seed);

void write_samples_jsonl(const std::vector<TrainingSample>& samples, const std::string& path);
std::vector<TrainingSample> read_samples_jsonl(const std::string& path);

}  // namespace cheat
