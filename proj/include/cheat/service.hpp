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

#include <atomic>
#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cheat/config.hpp"
#include "cheat/json_io.hpp"
#include "cheat/match.hpp"

namespace cheat {

inline constexpr int kViewSchemaVersion = 1;

// A service error with structured detail (the legal menu for illegal actions).
class ServiceError : public Error {
 public:
  ServiceError(std::string code, const std::string& message, Json detail = nullptr)
      : Error(std::move(code), message), detail_(std::move(detail)) {}
  const Json& detail() const { return detail_; }

 private:
  Json detail_;
};

// Client-facing status of a session.
enum class SessionStatus { your_turn, thinking, match_over, session_over, error };
const char* to_string(SessionStatus s);

struct ViewMeta {
  std::string session_id;
  uint64_t version = 0;
  SessionStatus status = SessionStatus::your_turn;
  int match_index = 0;
  int matches_completed = 0;
  int min_matches = 3;
  int max_matches = 5;
  std::array<int, 3> score{};  // human wins, agent wins, ties
  std::optional<Json> result;  // set when the match is over
  std::string error;
};

// The legal-action menu for the viewer, empty when it is not their turn.
Json legal_menu(const InformationState& info);

// The client view: a pure function of the viewer's information state and the
// session bookkeeping. Never contains hidden cards or claim truth values.
Json view_of(const InformationState& info, const ViewMeta& meta);

// Session bookkeeping and the agent worker pool, independent of transport.
// Throws ServiceError with codes "not_found", "conflict", "illegal_action"
// (detail holds the legal menu) and "bad_request".
class SessionManager {
 public:
  explicit SessionManager(ServiceConfig config, int workers = 1);
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  // Request fields, all optional: "agent" (kind name or AgentSpec object),
  // "seed", "human_seat".
  Json create_session(const Json& request);
  Json view(const std::string& id);
  // Blocks until the view version exceeds `after` or the timeout passes.
  Json wait_view(const std::string& id, uint64_t after, double timeout_seconds);
  // Body: {"action": ConcreteAction, "version": optional expected version}.
  Json submit_action(const std::string& id, const Json& body);
  Json next_match(const std::string& id);
  Json end_session(const std::string& id);

  std::vector<std::string> list_logs() const;
  std::string read_log(const std::string& session_id, const std::string& file) const;

  // In-process inspection, for tests and tools.
  GameState game_state(const std::string& id);
  MatchRecord current_record(const std::string& id);
  std::vector<std::string> session_ids();
  void shutdown();
  bool stopping() const { return stopping_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id);
  Json view_locked(Session& s);
  void start_match(Session& s);
  void apply_ply(Session& s, const ConcreteAction& a, double duration, std::optional<AgentMove> move);
  void replay_ply(Session& s, const PlyRecord& ply);
  void finish_match(Session& s, bool write_log);
  void persist(Session& s);
  void resume_all();
  void schedule(const std::shared_ptr<Session>& s);
  void worker_loop(std::stop_token token);
  std::string new_id();

  ServiceConfig config_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex queue_mutex_;
  std::condition_variable_any queue_cv_;
  std::deque<std::shared_ptr<Session>> queue_;
  std::atomic<bool> stopping_{false};
  std::atomic<uint64_t> id_counter_{0};
  std::vector<std::jthread> workers_;
};

// HTTP front end over cpp-httplib.
class HttpService {
 public:
  HttpService(SessionManager& manager, ServiceConfig config);
  ~HttpService();
  // Binds (port 0 picks a free port) and returns the bound port.
  int bind();
  // Serves until stop(); call after bind().
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cheat
