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

#include <string>
#include <vector>

#include <json.hpp>

#include "cheat/abstraction.hpp"
#include "cheat/agents.hpp"
#include "cheat/game.hpp"
#include "cheat/knowledge.hpp"
#include "cheat/match.hpp"
#include "cheat/predictors.hpp"
#include "cheat/sdmcts.hpp"
#include "cheat/search.hpp"
#include "cheat/tournament.hpp"

namespace cheat {

using Json = nlohmann::json;

void to_json(Json& j, const Card& c);
void from_json(const Json& j, Card& c);
void to_json(Json& j, const CardSet& s);
void from_json(const Json& j, CardSet& s);
std::string to_string(Direction d);
Direction parse_direction(const std::string& text);
void to_json(Json& j, const ConcreteAction& a);
void from_json(const Json& j, ConcreteAction& a);
void to_json(Json& j, const TableGroup& g);
void from_json(const Json& j, TableGroup& g);
void to_json(Json& j, const GameState& s);
void from_json(const Json& j, GameState& s);
void to_json(Json& j, const AbstractAction& a);
void from_json(const Json& j, AbstractAction& a);
void to_json(Json& j, const DeterminizedAction& a);
void from_json(const Json& j, DeterminizedAction& a);
void to_json(Json& j, const PredictorDistribution& p);
void from_json(const Json& j, PredictorDistribution& p);
void to_json(Json& j, const ExpectedPayoffTable& t);
void from_json(const Json& j, ExpectedPayoffTable& t);
void to_json(Json& j, const SmoothUctParams& p);
void from_json(const Json& j, SmoothUctParams& p);
void to_json(Json& j, const RolloutPdf& p);
void from_json(const Json& j, RolloutPdf& p);
void to_json(Json& j, const RolloutPolicy& p);
void from_json(const Json& j, RolloutPolicy& p);
void to_json(Json& j, const SearchConfig& c);
void from_json(const Json& j, SearchConfig& c);
void to_json(Json& j, const AgentSpec& a);
void from_json(const Json& j, AgentSpec& a);
void to_json(Json& j, const DecisionRecord& d);
void from_json(const Json& j, DecisionRecord& d);
void to_json(Json& j, const PlyRecord& p);
void from_json(const Json& j, PlyRecord& p);
void to_json(Json& j, const MatchSummary& m);
void from_json(const Json& j, MatchSummary& m);
void to_json(Json& j, const SideSummary& s);
void to_json(Json& j, const PairingReport& r);
void to_json(Json& j, const AnovaResult& a);
void to_json(Json& j, const TournamentReport& r);
void to_json(Json& j, const CalibrationResult& r);
void to_json(Json& j, const TrainConfig& c);
void from_json(const Json& j, TrainConfig& c);
void to_json(Json& j, const TrainingSample& s);
void from_json(const Json& j, TrainingSample& s);
void to_json(Json& j, const Metrics& m);

// Match header/ply/footer fields without the per-ply list.
Json match_meta(const MatchRecord& r);

// One JSON object per line: every ply, then a closing "match" line.
void write_match_jsonl(const MatchRecord& r, const std::string& path);
MatchRecord read_match_jsonl(const std::string& path);
std::string match_jsonl(const MatchRecord& r);
MatchRecord parse_match_jsonl(const std::string& text);

// Top-K nodes by visit count, keyed by hex-encoded information state.
Json tree_dump(const SearchTree& tree, size_t top_k);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
std::string report_csv(const TournamentReport& r);

}  // namespace cheat
