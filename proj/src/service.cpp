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

#include "cheat/service.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include <httplib.h>

namespace cheat {
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double unix_now() {
  return std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
}

const char* side_name(Player viewer, Player p) { return p == viewer ? "you" : "opponent"; }

Json stats_json(const PlayerStats& s) {
  return Json{{"claims", s.claims},
              {"take_cards", s.take_cards},
              {"call_cheats", s.call_cheats},
              {"call_cheat_successes", s.call_cheat_successes},
              {"claims_exposed", s.claims_exposed},
              {"false_claims_exposed", s.false_claims_exposed},
              {"times_caught", s.times_caught}};
}

Json empty_menu() { return Json{{"take_card", false}, {"call_cheat", false}, {"claim", nullptr}}; }

std::string match_file(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "match_%05d.jsonl", i);
  return buf;
}

}  // namespace

const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::your_turn: return "your_turn";
    case SessionStatus::thinking: return "thinking";
    case SessionStatus::match_over: return "match_over";
    case SessionStatus::session_over: return "session_over";
    case SessionStatus::error: return "error";
  }
  return "?";
}

Json legal_menu(const InformationState& info) {
  if (info.to_move != info.viewer || info.own_hand.empty() || info.opponent_card_count == 0 ||
      info.round > kMaxRounds) {
    return empty_menu();
  }
  Json claim = Json::object();
  for (Direction d : {Direction::higher, Direction::lower}) {
    const Rank r = claim_target(info.anchor_rank, info.opening, d);
    claim[to_string(d)] = r == 0 ? Json(nullptr) : Json(r);
  }
  claim["min_cards"] = 1;
  claim["max_cards"] = std::min(kMaxClaimCards, info.own_hand.size());
  return Json{{"take_card", info.deck_count > 0}, {"call_cheat", info.claim_pending()}, {"claim", claim}};
}

Json view_of(const InformationState& info, const ViewMeta& meta) {
  const Player me = info.viewer;
  Json table = Json::array();
  for (const PublicGroup& g : info.table) {
    Json t{{"claimed_rank", g.claimed_rank},
           {"claimed_count", g.claimed_count},
           {"claimant", side_name(me, g.claimant)},
           {"direction", to_string(g.direction)}};
    if (g.claimant == me) t["own_cards"] = g.own_cards;
    table.push_back(std::move(t));
  }
  Json last = nullptr;
  if (info.last_action) {
    const ObservedAction& o = *info.last_action;
    last = Json{{"actor", side_name(me, o.actor)}};
    last["type"] = o.kind == ActionKind::claim ? "Claim" : (o.kind == ActionKind::take_card ? "TakeCard" : "CallCheat");
    if (o.kind == ActionKind::claim) {
      last["claimed_rank"] = o.claimed_rank;
      last["claimed_count"] = o.claimed_count;
      last["direction"] = to_string(o.direction);
      if (o.actor == me) last["cards"] = o.cards;
    }
  }
  const KnowledgeTracker& k = info.knowledge;
  Json state{{"own_hand", info.own_hand},
             {"opponent_card_count", info.opponent_card_count},
             {"deck_count", info.deck_count},
             {"table", table},
             {"table_card_count", info.table_card_count},
             {"anchor_card", info.anchor_card},
             {"anchor_rank", info.anchor_rank},
             {"opening", info.opening},
             {"round", info.round},
             {"max_rounds", kMaxRounds},
             {"to_move", side_name(me, info.to_move)},
             {"last_action", last},
             {"knowledge",
              {{"opponent_cards_seen_taken", k.known_opponent_cards},
               {"your_cards_opponent_saw", k.known_to_opponent},
               {"you", stats_json(k.players[me])},
               {"opponent", stats_json(k.players[other(me)])}}}};
  const bool can_continue = meta.status == SessionStatus::match_over && meta.matches_completed < meta.max_matches;
  const bool can_end = meta.status == SessionStatus::match_over && meta.matches_completed >= meta.min_matches;
  Json v{{"schema_version", kViewSchemaVersion},
         {"session_id", meta.session_id},
         {"version", meta.version},
         {"status", to_string(meta.status)},
         {"match",
          {{"index", meta.match_index},
           {"completed", meta.matches_completed},
           {"min_matches", meta.min_matches},
           {"max_matches", meta.max_matches},
           {"can_continue", can_continue},
           {"can_end", can_end}}},
         {"score", {{"you", meta.score[0]}, {"opponent", meta.score[1]}, {"ties", meta.score[2]}}},
         {"state", state},
         {"legal", meta.status == SessionStatus::your_turn ? legal_menu(info) : empty_menu()},
         {"result", meta.result ? *meta.result : Json(nullptr)}};
  if (!meta.error.empty()) v["error"] = meta.error;
  return v;
}

struct SessionManager::Session {
  std::string id;
  uint64_t seed = 0;
  Player human = 0;
  AgentSpec spec;
  std::unique_ptr<Agent> agent;
  TrackedState state;
  MatchRecord record;
  int match_index = 0;
  int completed = 0;
  std::array<int, 3> score{};
  uint64_t version = 0;
  bool thinking = false;
  bool match_over = false;
  bool closed = false;
  std::string error;
  std::optional<Json> result;
  Clock::time_point turn_start;
  std::optional<Clock::time_point> delivered;
  double last_human_claim_seconds = 0.0;
  std::mutex m;
  std::condition_variable cv;

  Player agent_seat() const { return other(human); }
  SessionStatus status() const {
    if (!error.empty()) return SessionStatus::error;
    if (closed) return SessionStatus::session_over;
    if (match_over) return SessionStatus::match_over;
    if (thinking) return SessionStatus::thinking;
    return SessionStatus::your_turn;
  }
};

SessionManager::SessionManager(ServiceConfig config, int workers) : config_(std::move(config)) {
  if (!config_.session_dir.empty()) fs::create_directories(config_.session_dir);
  if (!config_.log_dir.empty()) fs::create_directories(config_.log_dir);
  for (int i = 0; i < std::max(1, workers); ++i) {
    workers_.emplace_back([this](std::stop_token t) { worker_loop(t); });
  }
  resume_all();
}

SessionManager::~SessionManager() { shutdown(); }

void SessionManager::shutdown() {
  if (stopping_.exchange(true)) return;
  for (auto& w : workers_) w.request_stop();
  queue_cv_.notify_all();
  workers_.clear();
  std::lock_guard lock(mutex_);
  for (auto& [id, s] : sessions_) s->cv.notify_all();
}

std::string SessionManager::new_id() {
  static thread_local std::random_device rd;
  const uint64_t x = Rng::mix((static_cast<uint64_t>(rd()) << 32) ^ rd() ^ (++id_counter_ << 17));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError("not_found", "unknown session " + id);
  return it->second;
}

std::vector<std::string> SessionManager::session_ids() {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

Json SessionManager::view_locked(Session& s) {
  ViewMeta meta;
  meta.session_id = s.id;
  meta.version = s.version;
  meta.status = s.status();
  meta.match_index = s.match_index;
  meta.matches_completed = s.completed;
  meta.min_matches = config_.min_matches;
  meta.max_matches = config_.max_matches;
  meta.score = s.score;
  meta.result = s.result;
  meta.error = s.error;
  if (meta.status == SessionStatus::your_turn && !s.delivered) s.delivered = Clock::now();
  return view_of(information_state(s.state, s.human), meta);
}

void SessionManager::start_match(Session& s) {
  const uint64_t seed = Rng::mix(s.seed + static_cast<uint64_t>(s.match_index));
  s.state = start_game(seed);
  s.record = MatchRecord{};
  s.record.seed = seed;
  s.record.match_index = s.match_index;
  s.record.agents[s.human] = "human";
  s.record.agents[s.agent_seat()] = s.spec.display_name();
  s.record.first_player = s.state.game.to_move;
  s.agent->begin_match(s.agent_seat(), s.match_index, seed);
  s.match_over = false;
  s.result.reset();
  s.turn_start = Clock::now();
  s.delivered.reset();
  s.last_human_claim_seconds = 0.0;
  s.thinking = s.state.game.to_move == s.agent_seat();
}

void SessionManager::replay_ply(Session& s, const PlyRecord& ply) {
  if (ply.player != s.state.game.to_move || !is_legal(s.state.game, ply.action)) {
    throw ServiceError("illegal_action", "stored ply does not replay");
  }
  record_ply_outcome(s.record, s.state.game, ply);
  advance(s.state, ply.action);
  s.agent->observe(observed_by(s.agent_seat(), ply.player, ply.action), ply.duration_seconds);
  if (ply.player == s.human && ply.action.is_claim()) s.last_human_claim_seconds = ply.duration_seconds;
}

void SessionManager::finish_match(Session& s, bool write_log) {
  finish_record(s.record, s.state.game);
  const std::optional<Player> w = s.record.winner;
  Json result{{"winner", w ? side_name(s.human, *w) : "tie"},
              {"rounds", s.record.rounds},
              {"final_hand_sizes",
               {{"you", s.record.final_hand_sizes[s.human]},
                {"opponent", s.record.final_hand_sizes[s.agent_seat()]}}}};
  s.result = result;
  s.match_over = true;
  s.thinking = false;
  if (!write_log) return;
  s.agent->end_match(w);
  ++s.score[!w ? 2 : (*w == s.human ? 0 : 1)];
  ++s.completed;
  if (s.completed >= config_.max_matches) s.closed = true;
  if (!config_.log_dir.empty()) {
    const fs::path dir = fs::path(config_.log_dir) / s.id;
    fs::create_directories(dir);
    write_match_jsonl(s.record, (dir / match_file(s.match_index)).string());
    std::error_code ec;
    fs::remove(dir / (match_file(s.match_index) + ".partial"), ec);
  }
}

void SessionManager::apply_ply(Session& s, const ConcreteAction& a, double duration, std::optional<AgentMove> move) {
  const GameState& g = s.state.game;
  PlyRecord ply;
  ply.ply = static_cast<int>(s.record.plies.size());
  ply.player = g.to_move;
  ply.round = g.round;
  ply.key = encode(abstract_info(g, s.state.knowledge[g.to_move]));
  ply.action = a;
  ply.abstract = move && move->abstract ? move->abstract : std::optional(abstract_of(a, context_of(g)));
  ply.duration_seconds = duration;
  if (move) {
    ply.predictor = move->predictor;
    ply.decision = std::move(move->decision);
  }
  if (a.kind == ActionKind::call_cheat) ply.challenged_claim_true = claim_is_true(g.table.back());
  ply.timestamp = unix_now();
  replay_ply(s, ply);
  if (!config_.log_dir.empty()) {
    const fs::path dir = fs::path(config_.log_dir) / s.id;
    fs::create_directories(dir);
    std::ofstream out(dir / (match_file(s.match_index) + ".partial"), std::ios::app);
    out << Json(ply).dump() << '\n';
  }
  if (is_terminal(s.state.game)) {
    finish_match(s, true);
  } else {
    s.turn_start = Clock::now();
    s.delivered.reset();
    s.thinking = s.state.game.to_move == s.agent_seat();
  }
  ++s.version;
  persist(s);
  s.cv.notify_all();
}

void SessionManager::persist(Session& s) {
  if (config_.session_dir.empty()) return;
  Json plies = Json::array();
  for (const PlyRecord& p : s.record.plies) plies.push_back(p);
  const Json j{{"schema_version", 1},
               {"id", s.id},
               {"seed", s.seed},
               {"human_seat", s.human},
               {"agent", s.spec},
               {"match_index", s.match_index},
               {"completed", s.completed},
               {"score", s.score},
               {"closed", s.closed},
               {"version", s.version},
               {"plies", plies}};
  write_text((fs::path(config_.session_dir) / (s.id + ".json")).string(), j.dump() + "\n");
}

void SessionManager::resume_all() {
  if (config_.session_dir.empty() || !fs::exists(config_.session_dir)) return;
  for (const auto& e : fs::directory_iterator(config_.session_dir)) {
    if (e.path().extension() != ".json") continue;
    try {
      const Json j = Json::parse(read_text(e.path().string()));
      auto s = std::make_shared<Session>();
      s->id = j.at("id").get<std::string>();
      s->seed = j.at("seed").get<uint64_t>();
      s->human = j.at("human_seat").get<int>();
      s->spec = j.at("agent").get<AgentSpec>();
      s->agent = make_agent(s->spec);
      s->match_index = j.at("match_index").get<int>();
      s->completed = j.at("completed").get<int>();
      s->score = j.at("score").get<std::array<int, 3>>();
      s->closed = j.at("closed").get<bool>();
      s->version = j.at("version").get<uint64_t>() + 1;
      start_match(*s);
      for (const Json& p : j.at("plies")) replay_ply(*s, p.get<PlyRecord>());
      if (is_terminal(s->state.game)) {
        finish_match(*s, false);
      } else {
        s->thinking = s->state.game.to_move == s->agent_seat();
      }
      {
        std::lock_guard lock(mutex_);
        sessions_[s->id] = s;
      }
      if (s->thinking && !s->closed) schedule(s);
    } catch (const std::exception&) {
      // Unreadable session files are left on disk untouched.
    }
  }
}

void SessionManager::schedule(const std::shared_ptr<Session>& s) {
  {
    std::lock_guard lock(queue_mutex_);
    queue_.push_back(s);
  }
  queue_cv_.notify_one();
}

void SessionManager::worker_loop(std::stop_token token) {
  while (!token.stop_requested()) {
    std::shared_ptr<Session> s;
    {
      std::unique_lock lock(queue_mutex_);
      if (!queue_cv_.wait(lock, token, [this] { return !queue_.empty(); })) return;
      s = queue_.front();
      queue_.pop_front();
    }
    std::unique_lock lock(s->m);
    if (!s->thinking || s->match_over || s->closed) continue;
    const InformationState info = information_state(s->state, s->agent_seat());
    const DeterminizedAction truth = actual_determinization(s->state.game);
    const bool human_claimed = s->state.game.last_action && s->state.game.last_action->actor == s->human &&
                               s->state.game.last_action->action.is_claim();
    const double response = human_claimed ? s->last_human_claim_seconds : 0.0;
    lock.unlock();
    // The session stays in `thinking`, so nothing else touches the agent.
    std::optional<AgentMove> move;
    std::string failure;
    const auto t0 = Clock::now();
    try {
      move = s->agent->act(MoveContext{info, truth, response});
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    lock.lock();
    if (move && !is_legal(s->state.game, move->action)) failure = "agent produced an illegal action";
    if (!failure.empty()) {
      s->error = failure;
      s->thinking = false;
      ++s->version;
      s->cv.notify_all();
      continue;
    }
    const ConcreteAction a = move->action;
    apply_ply(*s, a, elapsed, std::move(move));
    if (s->thinking) {
      lock.unlock();
      schedule(s);
    }
  }
}

Json SessionManager::create_session(const Json& request) {
  if (stopping_) throw ServiceError("conflict", "service is shutting down");
  auto s = std::make_shared<Session>();
  s->spec = config_.agent;
  try {
    if (request.contains("agent")) {
      const Json& a = request.at("agent");
      if (a.is_string()) {
        s->spec = AgentSpec{};
        s->spec.kind = parse_agent_kind(a.get<std::string>());
        s->spec.search = config_.agent.search;
      } else {
        Json merged = a;
        if (!merged.contains("search")) merged["search"] = config_.agent.search;
        s->spec = merged.get<AgentSpec>();
      }
    }
    s->human = request.value("human_seat", 0);
    if (s->human != 0 && s->human != 1) throw ServiceError("bad_request", "human_seat must be 0 or 1");
    if (request.contains("seed")) {
      s->seed = request.at("seed").get<uint64_t>();
    } else {
      std::random_device rd;
      s->seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    }
    s->agent = make_agent(s->spec);
  } catch (const ServiceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ServiceError("bad_request", e.what());
  }
  s->id = new_id();
  std::unique_lock lock(s->m);
  start_match(*s);
  persist(*s);
  Json v = view_locked(*s);
  lock.unlock();
  {
    std::lock_guard g(mutex_);
    sessions_[s->id] = s;
  }
  if (s->thinking) schedule(s);
  return v;
}

Json SessionManager::view(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  return view_locked(*s);
}

Json SessionManager::wait_view(const std::string& id, uint64_t after, double timeout_seconds) {
  auto s = find(id);
  std::unique_lock lock(s->m);
  s->cv.wait_for(lock, std::chrono::duration<double>(timeout_seconds),
                 [&] { return s->version > after || stopping_; });
  return view_locked(*s);
}

Json SessionManager::submit_action(const std::string& id, const Json& body) {
  auto s = find(id);
  ConcreteAction a;
  try {
    a = body.at("action").get<ConcreteAction>();
  } catch (const std::exception& e) {
    throw ServiceError("bad_request", std::string("malformed action: ") + e.what());
  }
  std::unique_lock lock(s->m);
  if (body.contains("version") && body.at("version").get<uint64_t>() != s->version) {
    throw ServiceError("conflict", "stale view version");
  }
  if (s->closed) throw ServiceError("conflict", "session is over");
  if (s->match_over) throw ServiceError("conflict", "match is over");
  if (!s->error.empty()) throw ServiceError("conflict", "session failed: " + s->error);
  if (s->thinking || s->state.game.to_move != s->human) throw ServiceError("conflict", "not your turn");
  if (!is_legal(s->state.game, a)) {
    throw ServiceError("illegal_action", "action is not legal here",
                       legal_menu(information_state(s->state, s->human)));
  }
  const double duration = std::chrono::duration<double>(Clock::now() - s->delivered.value_or(s->turn_start)).count();
  apply_ply(*s, a, duration, std::nullopt);
  Json v = view_locked(*s);
  const bool think = s->thinking;
  lock.unlock();
  if (think) schedule(s);
  return v;
}

Json SessionManager::next_match(const std::string& id) {
  auto s = find(id);
  std::unique_lock lock(s->m);
  if (s->closed) throw ServiceError("conflict", "session is over");
  if (!s->match_over) throw ServiceError("conflict", "match still in progress");
  ++s->match_index;
  start_match(*s);
  ++s->version;
  persist(*s);
  s->cv.notify_all();
  Json v = view_locked(*s);
  const bool think = s->thinking;
  lock.unlock();
  if (think) schedule(s);
  return v;
}

Json SessionManager::end_session(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  if (!s->closed) {
    if (!s->match_over || s->completed < config_.min_matches) {
      throw ServiceError("conflict", "the session needs at least " + std::to_string(config_.min_matches) +
                                         " completed matches");
    }
    s->closed = true;
    ++s->version;
    persist(*s);
    s->cv.notify_all();
  }
  return view_locked(*s);
}

std::vector<std::string> SessionManager::list_logs() const {
  std::vector<std::string> out;
  if (config_.log_dir.empty() || !fs::exists(config_.log_dir)) return out;
  for (const auto& d : fs::directory_iterator(config_.log_dir)) {
    if (!d.is_directory()) continue;
    for (const auto& f : fs::directory_iterator(d.path())) {
      if (f.path().extension() == ".jsonl") {
        out.push_back(d.path().filename().string() + "/" + f.path().filename().string());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string SessionManager::read_log(const std::string& session_id, const std::string& file) const {
  static const std::regex id_re("[0-9a-f]{1,32}");
  static const std::regex file_re("match_[0-9]{5}\\.jsonl");
  if (!std::regex_match(session_id, id_re) || !std::regex_match(file, file_re)) {
    throw ServiceError("not_found", "no such log");
  }
  const fs::path p = fs::path(config_.log_dir) / session_id / file;
  if (!fs::exists(p)) throw ServiceError("not_found", "no such log");
  return read_text(p.string());
}

GameState SessionManager::game_state(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  return s->state.game;
}

MatchRecord SessionManager::current_record(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  return s->record;
}

// ---------------------------------------------------------------------------

struct HttpService::Impl {
  SessionManager& manager;
  ServiceConfig config;
  httplib::Server server;
  int port = 0;

  Impl(SessionManager& m, ServiceConfig c) : manager(m), config(std::move(c)) {}

  static void send_json(httplib::Response& res, const Json& j, int status = 200) {
    res.status = status;
    res.set_content(j.dump(), "application/json");
  }

  static void send_error(httplib::Response& res, const Error& e) {
    int status = 400;
    if (e.code() == "not_found") status = 404;
    if (e.code() == "conflict") status = 409;
    Json body{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    if (const auto* se = dynamic_cast<const ServiceError*>(&e); se != nullptr && !se->detail().is_null()) {
      body["error"]["legal"] = se->detail();
    }
    send_json(res, body, status);
  }

  template <class F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const Json::exception& e) {
        send_error(res, ServiceError("bad_request", e.what()));
      }
    };
  }

  static Json body_of(const httplib::Request& req) {
    if (req.body.empty()) return Json::object();
    return Json::parse(req.body);
  }

  void routes() {
    server.Post("/api/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, manager.create_session(body_of(req)), 201);
    }));
    server.Get(R"(/api/sessions/([0-9a-f]+)/view)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 if (req.has_param("after")) {
                   const uint64_t after = std::stoull(req.get_param_value("after"));
                   const double wait =
                       req.has_param("wait") ? std::min(30.0, std::stod(req.get_param_value("wait"))) : 25.0;
                   send_json(res, manager.wait_view(id, after, wait));
                 } else {
                   send_json(res, manager.view(id));
                 }
               }));
    server.Get(R"(/api/sessions/([0-9a-f]+)/events)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 Json first = manager.view(id);
                 auto last = std::make_shared<uint64_t>(first.at("version").get<uint64_t>());
                 auto pending = std::make_shared<std::string>("data: " + first.dump() + "\n\n");
                 res.set_header("Cache-Control", "no-cache");
                 res.set_chunked_content_provider(
                     "text/event-stream", [this, id, last, pending](size_t, httplib::DataSink& sink) {
                       if (!pending->empty()) {
                         if (!sink.write(pending->data(), pending->size())) return false;
                         pending->clear();
                       }
                       if (manager.stopping()) return false;
                       Json v;
                       try {
                         v = manager.wait_view(id, *last, 10.0);
                       } catch (const Error&) {
                         return false;
                       }
                       const uint64_t version = v.at("version").get<uint64_t>();
                       std::string chunk = ": keepalive\n\n";
                       if (version > *last) {
                         *last = version;
                         chunk = "data: " + v.dump() + "\n\n";
                       }
                       return sink.write(chunk.data(), chunk.size());
                     });
               }));
    server.Post(R"(/api/sessions/([0-9a-f]+)/actions)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  send_json(res, manager.submit_action(req.matches[1], body_of(req)));
                }));
    server.Post(R"(/api/sessions/([0-9a-f]+)/next-match)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  send_json(res, manager.next_match(req.matches[1]));
                }));
    server.Post(R"(/api/sessions/([0-9a-f]+)/end)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  send_json(res, manager.end_session(req.matches[1]));
                }));
    server.Get("/api/logs", guarded([this](const httplib::Request&, httplib::Response& res) {
      send_json(res, Json{{"logs", manager.list_logs()}});
    }));
    server.Get(R"(/api/logs/([0-9a-f]+)/([A-Za-z0-9_.]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 res.set_content(manager.read_log(req.matches[1], req.matches[2]), "application/x-ndjson");
               }));
    server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, Json{{"status", "ok"}, {"view_schema_version", kViewSchemaVersion}});
    });
    if (!config.static_dir.empty()) server.set_mount_point("/", config.static_dir);
  }
};

HttpService::HttpService(SessionManager& manager, ServiceConfig config)
    : impl_(std::make_unique<Impl>(manager, std::move(config))) {
  impl_->routes();
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  if (impl_->config.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    impl_->port = impl_->config.port;
  } else {
    impl_->port = -1;
  }
  if (impl_->port < 0) throw Error("io", "cannot bind " + impl_->config.host);
  return impl_->port;
}

void HttpService::serve() { impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace cheat
