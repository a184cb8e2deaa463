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

#include "cheat/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cheat {
namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->template get<T>();
}

const char* kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::claim: return "Claim";
    case ActionKind::take_card: return "TakeCard";
    case ActionKind::call_cheat: return "CallCheat";
  }
  return "?";
}

DeterminizedKind parse_determinized_kind(const std::string& s) {
  for (int k = 0; k < kNumDeterminizedKinds; ++k) {
    if (s == to_string(static_cast<DeterminizedKind>(k))) return static_cast<DeterminizedKind>(k);
  }
  throw Error("parse", "bad determinized action: " + s);
}

Normalization parse_normalization(const std::string& s) {
  if (s == "proportional") return Normalization::proportional;
  if (s == "uniform_redistribution") return Normalization::uniform_redistribution;
  throw Error("parse", "bad normalization: " + s);
}

Json interval_json(const Interval& i) { return Json{{"lo", i.lo}, {"hi", i.hi}}; }

}  // namespace

void to_json(Json& j, const Card& c) { j = Json{{"rank", c.rank}, {"suit", c.suit}}; }

void from_json(const Json& j, Card& c) {
  const int r = j.at("rank").get<int>();
  const int s = j.at("suit").get<int>();
  if (r < 1 || r > kNumRanks || s < 0 || s >= kNumSuits) throw Error("parse", "card out of range");
  c = Card{static_cast<int8_t>(r), static_cast<int8_t>(s)};
}

void to_json(Json& j, const CardSet& s) {
  j = Json::array();
  for (Card c : s) j.push_back(c);
}

void from_json(const Json& j, CardSet& s) {
  s = CardSet();
  for (const Json& c : j) {
    const Card card = c.get<Card>();
    if (s.contains(card)) throw Error("parse", "duplicate card " + to_string(card));
    s.insert(card);
  }
}

std::string to_string(Direction d) { return d == Direction::higher ? "higher" : "lower"; }

Direction parse_direction(const std::string& text) {
  if (text == "higher") return Direction::higher;
  if (text == "lower") return Direction::lower;
  throw Error("parse", "bad direction: " + text);
}

void to_json(Json& j, const ConcreteAction& a) {
  j = Json{{"type", kind_name(a.kind)}};
  if (a.is_claim()) {
    j["cards"] = a.cards;
    j["claimed_rank"] = a.claimed_rank;
    j["direction"] = to_string(a.direction);
  }
}

void from_json(const Json& j, ConcreteAction& a) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "TakeCard") {
    a = ConcreteAction::take_card();
  } else if (type == "CallCheat") {
    a = ConcreteAction::call_cheat();
  } else if (type == "Claim") {
    a = ConcreteAction::claim(j.at("cards").get<CardSet>(), j.at("claimed_rank").get<int>(),
                              parse_direction(j.value("direction", std::string("higher"))));
  } else {
    throw Error("parse", "bad action type: " + type);
  }
}

void to_json(Json& j, const TableGroup& g) {
  j = Json{{"cards", g.cards},
           {"claimed_rank", g.claimed_rank},
           {"claimed_count", g.claimed_count},
           {"claimant", g.claimant},
           {"direction", to_string(g.direction)}};
}

void from_json(const Json& j, TableGroup& g) {
  g.cards = j.at("cards").get<CardSet>();
  g.claimed_rank = j.at("claimed_rank").get<int>();
  g.claimed_count = j.at("claimed_count").get<int>();
  g.claimant = j.at("claimant").get<int>();
  g.direction = parse_direction(j.at("direction").get<std::string>());
}

void to_json(Json& j, const GameState& s) {
  Json deck = Json::array();
  for (Card c : s.deck) deck.push_back(c);
  Json table = Json::array();
  for (const TableGroup& g : s.table) table.push_back(g);
  Json last = nullptr;
  if (s.last_action) last = Json{{"actor", s.last_action->actor}, {"action", s.last_action->action}};
  j = Json{{"hands", {s.hands[0], s.hands[1]}},
           {"deck", deck},
           {"table", table},
           {"anchor_card", s.anchor_card},
           {"anchor_rank", s.anchor_rank},
           {"round", s.round},
           {"to_move", s.to_move},
           {"opening", s.opening},
           {"last_action", last},
           {"table_cards", s.table_cards},
           {"seed", s.seed}};
}

void from_json(const Json& j, GameState& s) {
  s = GameState{};
  for (int p = 0; p < kNumPlayers; ++p) s.hands[p] = j.at("hands").at(p).get<CardSet>();
  for (const Json& c : j.at("deck")) s.deck.push_back(c.get<Card>());
  for (const Json& g : j.at("table")) s.table.push_back(g.get<TableGroup>());
  s.anchor_card = j.at("anchor_card").get<Card>();
  s.anchor_rank = j.at("anchor_rank").get<int>();
  s.round = j.at("round").get<int>();
  s.to_move = j.at("to_move").get<int>();
  s.opening = j.at("opening").get<bool>();
  if (!j.at("last_action").is_null()) {
    const Json& l = j.at("last_action");
    s.last_action = PlayedAction{l.at("actor").get<int>(), l.at("action").get<ConcreteAction>()};
  }
  s.table_cards = j.at("table_cards").get<int>();
  s.seed = j.at("seed").get<uint64_t>();
}

void to_json(Json& j, const AbstractAction& a) { j = to_string(a); }
void from_json(const Json& j, AbstractAction& a) { a = parse_abstract_action(j.get<std::string>()); }

void to_json(Json& j, const DeterminizedAction& a) {
  j = Json{{"type", to_string(a.kind)}};
  if (a.is_claim()) {
    j["rank"] = a.rank;
    j["count"] = a.count;
    j["direction"] = to_string(a.direction);
  }
}

void from_json(const Json& j, DeterminizedAction& a) {
  a = DeterminizedAction{};
  a.kind = parse_determinized_kind(j.at("type").get<std::string>());
  if (a.is_claim()) {
    a.rank = j.at("rank").get<int>();
    a.count = j.at("count").get<int>();
    a.direction = parse_direction(j.at("direction").get<std::string>());
  }
}

void to_json(Json& j, const PredictorDistribution& p) {
  j = Json::object();
  for (int k = 0; k < kNumDeterminizedKinds; ++k) j[to_string(static_cast<DeterminizedKind>(k))] = p.p[k];
}

void from_json(const Json& j, PredictorDistribution& p) {
  p = PredictorDistribution{};
  for (int k = 0; k < kNumDeterminizedKinds; ++k) {
    p.p[k] = j.value(to_string(static_cast<DeterminizedKind>(k)), 0.0);
  }
}

void to_json(Json& j, const ExpectedPayoffTable& t) {
  Json e = Json::object();
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (t.has(AbstractAction(i))) e[to_string(AbstractAction(i))] = t.e[i];
  }
  j = Json{{"e", e}, {"warnings", t.warnings}};
}

void from_json(const Json& j, ExpectedPayoffTable& t) {
  t = ExpectedPayoffTable{};
  for (const auto& [name, value] : j.at("e").items()) {
    const AbstractAction a = parse_abstract_action(name);
    t.defined |= 1U << a.index();
    t.e[a.index()] = value.get<double>();
  }
  t.warnings = j.value("warnings", std::vector<std::string>{});
}

void to_json(Json& j, const SmoothUctParams& p) {
  j = Json{{"c", p.c},
           {"d", p.d},
           {"eta", p.eta},
           {"gamma", p.gamma},
           {"discount", p.discount},
           {"discount_enabled", p.discount_enabled},
           {"iterations", p.iterations},
           {"seconds", p.seconds}};
}

void from_json(const Json& j, SmoothUctParams& p) {
  p = SmoothUctParams{};
  p.c = j.value("c", p.c);
  p.d = j.value("d", p.d);
  p.eta = j.value("eta", p.eta);
  p.gamma = j.value("gamma", p.gamma);
  p.discount = j.value("discount", p.discount);
  p.discount_enabled = j.value("discount_enabled", p.discount_enabled);
  p.iterations = j.value("iterations", p.iterations);
  p.seconds = j.value("seconds", p.seconds);
}

void to_json(Json& j, const RolloutPdf& p) {
  j = Json::object();
  for (int i = 0; i < AbstractAction::kCount; ++i) j[to_string(AbstractAction(i))] = p.p[i];
}

void from_json(const Json& j, RolloutPdf& p) {
  p = RolloutPdf{};
  for (const auto& [name, value] : j.items()) p.p[parse_abstract_action(name).index()] = value.get<double>();
}

void to_json(Json& j, const RolloutPolicy& p) {
  j = Json{{"pdf", p.pdf},
           {"normalization",
            p.normalization == Normalization::proportional ? "proportional" : "uniform_redistribution"},
           {"heuristics", p.heuristics}};
}

void from_json(const Json& j, RolloutPolicy& p) {
  p = RolloutPolicy{};
  if (j.contains("pdf")) p.pdf = j.at("pdf").get<RolloutPdf>();
  if (j.contains("normalization")) p.normalization = parse_normalization(j.at("normalization").get<std::string>());
  p.heuristics = j.value("heuristics", p.heuristics);
}

void to_json(Json& j, const SearchConfig& c) { j = Json{{"params", c.params}, {"rollout", c.rollout}}; }

void from_json(const Json& j, SearchConfig& c) {
  c = SearchConfig{};
  if (j.contains("params")) c.params = j.at("params").get<SmoothUctParams>();
  if (j.contains("rollout")) c.rollout = j.at("rollout").get<RolloutPolicy>();
}

void to_json(Json& j, const AgentSpec& a) {
  j = Json{{"kind", to_string(a.kind)},
           {"name", a.name},
           {"search", a.search},
           {"oracle_accuracy", a.oracle_accuracy},
           {"oracle_sampled", a.oracle_sampled},
           {"model_path", a.model_path}};
}

void from_json(const Json& j, AgentSpec& a) {
  a = AgentSpec{};
  a.kind = parse_agent_kind(j.at("kind").get<std::string>());
  a.name = j.value("name", std::string{});
  if (j.contains("search")) a.search = j.at("search").get<SearchConfig>();
  a.oracle_accuracy = j.value("oracle_accuracy", a.oracle_accuracy);
  a.oracle_sampled = j.value("oracle_sampled", a.oracle_sampled);
  a.model_path = j.value("model_path", std::string{});
}

void to_json(Json& j, const DecisionRecord& d) {
  j = Json{{"key", to_hex(d.key)},
           {"support", d.support},
           {"predictor", d.predictor},
           {"table", d.table},
           {"chosen", d.chosen},
           {"simulations", d.simulations},
           {"warnings", d.warnings}};
}

void from_json(const Json& j, DecisionRecord& d) {
  d.key = parse_hex(j.at("key").get<std::string>());
  d.support = j.at("support").get<std::vector<DeterminizedAction>>();
  d.predictor = j.at("predictor").get<PredictorDistribution>();
  d.table = j.at("table").get<ExpectedPayoffTable>();
  d.chosen = j.at("chosen").get<AbstractAction>();
  d.simulations = j.at("simulations").get<long long>();
  d.warnings = j.value("warnings", std::vector<std::string>{});
}

void to_json(Json& j, const PlyRecord& p) {
  j = Json{{"type", "ply"},
           {"ply", p.ply},
           {"player", p.player},
           {"round", p.round},
           {"key", to_hex(p.key)},
           {"action", p.action},
           {"abstract", opt(p.abstract)},
           {"duration_seconds", p.duration_seconds},
           {"predictor", opt(p.predictor)},
           {"decision", opt(p.decision)},
           {"challenged_claim_true", opt(p.challenged_claim_true)}};
  if (p.timestamp) j["timestamp"] = *p.timestamp;
}

void from_json(const Json& j, PlyRecord& p) {
  p = PlyRecord{};
  p.ply = j.at("ply").get<int>();
  p.player = j.at("player").get<int>();
  p.round = j.at("round").get<int>();
  p.key = parse_hex(j.at("key").get<std::string>());
  p.action = j.at("action").get<ConcreteAction>();
  p.abstract = get_opt<AbstractAction>(j, "abstract");
  p.duration_seconds = j.value("duration_seconds", 0.0);
  p.predictor = get_opt<PredictorDistribution>(j, "predictor");
  p.decision = get_opt<DecisionRecord>(j, "decision");
  p.challenged_claim_true = get_opt<bool>(j, "challenged_claim_true");
  p.timestamp = get_opt<double>(j, "timestamp");
}

Json match_meta(const MatchRecord& r) {
  return Json{{"type", "match"},
              {"seed", r.seed},
              {"match_index", r.match_index},
              {"agents", r.agents},
              {"first_player", r.first_player},
              {"plies", r.plies.size()},
              {"winner", opt(r.winner)},
              {"rounds", r.rounds},
              {"final_hand_sizes", r.final_hand_sizes},
              {"call_cheat_attempts", r.call_cheat_attempts},
              {"call_cheat_successes", r.call_cheat_successes},
              {"forfeit", opt(r.forfeit)}};
}

std::string match_jsonl(const MatchRecord& r) {
  std::string out;
  for (const PlyRecord& p : r.plies) {
    out += Json(p).dump();
    out += '\n';
  }
  out += match_meta(r).dump();
  out += '\n';
  return out;
}

MatchRecord parse_match_jsonl(const std::string& text) {
  MatchRecord r;
  bool closed = false;
  std::istringstream in(text);
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json j = Json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "ply") {
        r.plies.push_back(j.get<PlyRecord>());
      } else if (type == "match") {
        r.seed = j.at("seed").get<uint64_t>();
        r.match_index = j.at("match_index").get<int>();
        r.agents = j.at("agents").get<std::array<std::string, kNumPlayers>>();
        r.first_player = j.at("first_player").get<int>();
        r.winner = get_opt<int>(j, "winner");
        r.rounds = j.at("rounds").get<int>();
        r.final_hand_sizes = j.at("final_hand_sizes").get<std::array<int, kNumPlayers>>();
        r.call_cheat_attempts = j.at("call_cheat_attempts").get<std::array<int, kNumPlayers>>();
        r.call_cheat_successes = j.at("call_cheat_successes").get<std::array<int, kNumPlayers>>();
        r.forfeit = get_opt<int>(j, "forfeit");
        if (j.at("plies").get<size_t>() != r.plies.size()) throw Error("parse", "ply count mismatch");
        closed = true;
      }
    }
  } catch (const Json::exception& e) {
    throw Error("parse", std::string("bad match log: ") + e.what());
  }
  if (!closed) throw Error("parse", "match log has no closing summary line");
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("io", "cannot write " + path);
    out << text;
    if (!out) throw Error("io", "cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("io", "cannot rename " + tmp);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_match_jsonl(const MatchRecord& r, const std::string& path) { write_text(path, match_jsonl(r)); }
MatchRecord read_match_jsonl(const std::string& path) { return parse_match_jsonl(read_text(path)); }

Json tree_dump(const SearchTree& tree, size_t top_k) {
  std::vector<std::pair<uint32_t, const NodeStats*>> nodes;
  nodes.reserve(tree.size());
  for (const auto& [k, v] : tree.nodes()) nodes.emplace_back(k, &v);
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
    return a.second->visits != b.second->visits ? a.second->visits > b.second->visits : a.first < b.first;
  });
  if (nodes.size() > top_k) nodes.resize(top_k);
  Json out = Json::array();
  for (const auto& [k, node] : nodes) {
    Json actions = Json::object();
    for (int i = 0; i < AbstractAction::kCount; ++i) {
      if (node->n[i] > 0) actions[to_string(AbstractAction(i))] = Json{{"n", node->n[i]}, {"q", node->q[i]}};
    }
    out.push_back(Json{{"key", to_hex(EncodedInfoState{k})},
                       {"attributes", to_string(decode(EncodedInfoState{k}))},
                       {"visits", node->visits},
                       {"actions", actions}});
  }
  return out;
}

void to_json(Json& j, const MatchSummary& m) {
  j = Json{{"type", "summary"},
           {"seed", m.seed},
           {"match_index", m.match_index},
           {"a_first", m.a_first},
           {"a_seat", m.a_seat},
           {"winner_side", opt(m.winner_side)},
           {"rounds", m.rounds},
           {"a_cards", m.a_cards},
           {"b_cards", m.b_cards},
           {"a_call_attempts", m.a_call_attempts},
           {"a_call_successes", m.a_call_successes},
           {"b_call_attempts", m.b_call_attempts},
           {"b_call_successes", m.b_call_successes},
           {"forfeit", m.forfeit}};
}

void from_json(const Json& j, MatchSummary& m) {
  m.seed = j.at("seed").get<uint64_t>();
  m.match_index = j.at("match_index").get<int>();
  m.a_first = j.at("a_first").get<bool>();
  m.a_seat = j.at("a_seat").get<int>();
  m.winner_side = get_opt<int>(j, "winner_side");
  m.rounds = j.at("rounds").get<int>();
  m.a_cards = j.at("a_cards").get<int>();
  m.b_cards = j.at("b_cards").get<int>();
  m.a_call_attempts = j.at("a_call_attempts").get<int>();
  m.a_call_successes = j.at("a_call_successes").get<int>();
  m.b_call_attempts = j.at("b_call_attempts").get<int>();
  m.b_call_successes = j.at("b_call_successes").get<int>();
  m.forfeit = j.value("forfeit", false);
}

void to_json(Json& j, const SideSummary& s) {
  j = Json{{"name", s.name},
           {"matches", s.matches},
           {"wins", s.wins},
           {"losses", s.losses},
           {"ties", s.ties},
           {"win_ratio", s.win_ratio},
           {"win_ci", interval_json(s.win_ci)},
           {"call_attempts", s.call_attempts},
           {"call_successes", s.call_successes},
           {"call_success_rate", opt(s.call_success_rate)},
           {"call_success_ci", s.call_success_ci ? interval_json(*s.call_success_ci) : Json(nullptr)},
           {"avg_rounds", s.avg_rounds},
           {"avg_card_difference", s.avg_card_difference},
           {"card_difference_ci", interval_json(s.card_difference_ci)},
           {"first_moves", s.first_moves}};
}

void to_json(Json& j, const PairingReport& r) { j = Json{{"label", r.label}, {"a", r.a}, {"b", r.b}}; }

void to_json(Json& j, const AnovaResult& a) {
  j = Json{{"f", a.f},
           {"p", a.p},
           {"df_between", a.df_between},
           {"df_within", a.df_within},
           {"ss_between", a.ss_between},
           {"ss_within", a.ss_within}};
}

void to_json(Json& j, const TournamentReport& r) {
  j = Json{{"schema_version", 1},
           {"pairings", r.pairings},
           {"win_anova", opt(r.win_anova)},
           {"card_anova", opt(r.card_anova)}};
}

void to_json(Json& j, const CalibrationResult& r) {
  Json bracket = Json::array();
  for (const CalibrationTie& t : r.bracket) {
    bracket.push_back(Json{{"round", t.round},
                           {"a", t.a},
                           {"b", t.b},
                           {"wins_a", t.wins_a},
                           {"wins_b", t.wins_b},
                           {"ties", t.ties},
                           {"winner", t.winner}});
  }
  j = Json{{"champion", r.champion}, {"bracket", bracket}};
}

void to_json(Json& j, const TrainConfig& c) {
  j = Json{{"learning_rate", c.learning_rate},
           {"iterations", c.iterations},
           {"l2", c.l2},
           {"imbalance_ratio", c.imbalance_ratio},
           {"seed", c.seed}};
}

void from_json(const Json& j, TrainConfig& c) {
  c = TrainConfig{};
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.iterations = j.value("iterations", c.iterations);
  c.l2 = j.value("l2", c.l2);
  c.imbalance_ratio = j.value("imbalance_ratio", c.imbalance_ratio);
  c.seed = j.value("seed", c.seed);
}

void to_json(Json& j, const TrainingSample& s) {
  j = Json{{"features", s.features},
           {"label", s.label},
           {"player", s.player},
           {"opponent", s.opponent},
           {"match", s.match},
           {"round", s.round}};
}

void from_json(const Json& j, TrainingSample& s) {
  s.features = j.at("features").get<std::vector<double>>();
  s.label = j.at("label").get<int>();
  s.player = j.at("player").get<int>();
  s.opponent = j.at("opponent").get<int>();
  s.match = j.at("match").get<int>();
  s.round = j.at("round").get<int>();
}

void to_json(Json& j, const Metrics& m) {
  Json roc = Json::array();
  for (const RocPoint& p : m.roc) roc.push_back({p.fpr, p.tpr});
  j = Json{{"auc", m.auc}, {"tpr", m.tpr}, {"tnr", m.tnr}, {"g_mean", m.g_mean}, {"roc", roc}};
}

std::string report_csv(const TournamentReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "pairing,side,name,matches,wins,losses,ties,win_ratio,win_ci_lo,win_ci_hi,call_attempts,call_successes,"
         "call_success_rate,avg_rounds,avg_card_difference,card_difference_ci_lo,card_difference_ci_hi,first_moves\n";
  for (const PairingReport& p : r.pairings) {
    for (int side = 0; side < 2; ++side) {
      const SideSummary& s = side == 0 ? p.a : p.b;
      out << p.label << ',' << (side == 0 ? "A" : "B") << ',' << s.name << ',' << s.matches << ',' << s.wins << ','
          << s.losses << ',' << s.ties << ',' << s.win_ratio << ',' << s.win_ci.lo << ',' << s.win_ci.hi << ','
          << s.call_attempts << ',' << s.call_successes << ',';
      if (s.call_success_rate) {
        out << *s.call_success_rate;
      } else {
        out << "NA";
      }
      out << ',' << s.avg_rounds << ',' << s.avg_card_difference << ',' << s.card_difference_ci.lo << ','
          << s.card_difference_ci.hi << ',' << s.first_moves << '\n';
    }
  }
  return out.str();
}

}  // namespace cheat
