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

#include <map>
#include <string>

#include "cheat/agents.hpp"
#include "cheat/json_io.hpp"

namespace cheat {

inline constexpr int kConfigSchemaVersion = 1;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  int min_matches = 3;
  int max_matches = 5;
  std::string log_dir = "logs/service";
  std::string session_dir = "sessions";
  std::string static_dir;  // optional web client bundle
  AgentSpec agent;
  bool operator==(const ServiceConfig&) const = default;
};

// Versioned engine configuration. `search` is the default for every agent
// that does not carry its own.
struct EngineConfig {
  SearchConfig search;
  std::map<std::string, AgentSpec> agents;
  ServiceConfig service;
  TrainConfig train;
  bool operator==(const EngineConfig&) const = default;
};

EngineConfig default_config();
void to_json(Json& j, const ServiceConfig& c);
void from_json(const Json& j, ServiceConfig& c);
void to_json(Json& j, const EngineConfig& c);
// Throws Error("config") on a missing or unsupported schema_version.
void from_json(const Json& j, EngineConfig& c);
EngineConfig load_config(const std::string& path);

// A named agent from the config, or a bare kind name with the default search.
AgentSpec resolve_agent(const EngineConfig& config, const std::string& name);

}  // namespace cheat
