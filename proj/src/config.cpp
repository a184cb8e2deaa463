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

#include "cheat/config.hpp"

namespace cheat {

EngineConfig default_config() {
  EngineConfig c;
  for (AgentKind k : {AgentKind::mga, AgentKind::fpmga, AgentKind::rollout_bot, AgentKind::random}) {
    AgentSpec a;
    a.kind = k;
    a.search = c.search;
    c.agents[to_string(k)] = a;
  }
  c.service.agent.kind = AgentKind::mga;
  c.service.agent.search = c.search;
  return c;
}

void to_json(Json& j, const ServiceConfig& c) {
  j = Json{{"host", c.host},
           {"port", c.port},
           {"min_matches", c.min_matches},
           {"max_matches", c.max_matches},
           {"log_dir", c.log_dir},
           {"session_dir", c.session_dir},
           {"static_dir", c.static_dir},
           {"agent", c.agent}};
}

void from_json(const Json& j, ServiceConfig& c) {
  c = ServiceConfig{};
  c.host = j.value("host", c.host);
  c.port = j.value("port", c.port);
  c.min_matches = j.value("min_matches", c.min_matches);
  c.max_matches = j.value("max_matches", c.max_matches);
  c.log_dir = j.value("log_dir", c.log_dir);
  c.session_dir = j.value("session_dir", c.session_dir);
  c.static_dir = j.value("static_dir", c.static_dir);
  if (j.contains("agent")) c.agent = j.at("agent").get<AgentSpec>();
  if (c.min_matches < 1 || c.max_matches < c.min_matches) throw Error("config", "bad match-count bounds");
}

void to_json(Json& j, const EngineConfig& c) {
  j = Json{{"schema_version", kConfigSchemaVersion},
           {"search", c.search},
           {"agents", c.agents},
           {"service", c.service},
           {"train", c.train}};
}

void from_json(const Json& j, EngineConfig& c) {
  if (!j.contains("schema_version") || j.at("schema_version") != kConfigSchemaVersion) {
    throw Error("config", "unsupported config schema_version");
  }
  c = EngineConfig{};
  if (j.contains("search")) c.search = j.at("search").get<SearchConfig>();
  // Agents inherit the top-level search block unless they set their own.
  if (j.contains("agents")) {
    for (const auto& [name, spec] : j.at("agents").items()) {
      Json merged = spec;
      if (!merged.contains("search")) merged["search"] = c.search;
      AgentSpec a = merged.get<AgentSpec>();
      if (a.name.empty()) a.name = name;
      c.agents[name] = a;
    }
  }
  if (j.contains("service")) {
    Json s = j.at("service");
    if (s.contains("agent") && !s["agent"].contains("search")) s["agent"]["search"] = c.search;
    c.service = s.get<ServiceConfig>();
    if (!s.contains("agent")) c.service.agent.search = c.search;
  } else {
    c.service.agent.search = c.search;
  }
  if (j.contains("train")) c.train = j.at("train").get<TrainConfig>();
  c.search.params.validate();
  c.search.rollout.pdf.validate();
}

EngineConfig load_config(const std::string& path) {
  try {
    return Json::parse(read_text(path)).get<EngineConfig>();
  } catch (const Json::exception& e) {
    throw Error("config", std::string("bad config file: ") + e.what());
  }
}

AgentSpec resolve_agent(const EngineConfig& config, const std::string& name) {
  if (auto it = config.agents.find(name); it != config.agents.end()) return it->second;
  AgentSpec a;
  a.kind = parse_agent_kind(name);
  a.search = config.search;
  return a;
}

}  // namespace cheat
