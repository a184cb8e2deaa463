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

#include <csignal>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cheat/config.hpp"
#include "cheat/dataset.hpp"
#include "cheat/json_io.hpp"
#include "cheat/service.hpp"
#include "cheat/tournament.hpp"

namespace {

using namespace cheat;

std::atomic<bool> g_interrupted{false};

EngineConfig config_from(const std::string& path) { return path.empty() ? default_config() : load_config(path); }

AgentSpec agent_from(const EngineConfig& config, const std::string& name, long long iterations, double seconds) {
  AgentSpec a = resolve_agent(config, name);
  if (iterations > 0) a.search.params.iterations = iterations;
  if (seconds > 0) a.search.params.seconds = seconds;
  return a;
}

std::vector<TrainingSample> load_samples(const std::string& logs, const std::string& samples, int self_play,
                                         uint64_t seed) {
  if (!samples.empty()) return read_samples_jsonl(samples);
  if (!logs.empty()) return samples_from_logs(logs);
  AgentSpec bot;
  bot.kind = AgentKind::rollout_bot;
  return self_play_samples(bot, bot, self_play, seed);
}

void print_report(const TournamentReport& r) {
  for (const PairingReport& p : r.pairings) {
    std::cout << p.label << '\n';
    for (const SideSummary* s : {&p.a, &p.b}) {
      std::cout << "  " << s->name << ": win " << s->win_ratio << " [" << s->win_ci.lo << ", " << s->win_ci.hi
                << "]  call-cheat ";
      if (s->call_success_rate) {
        std::cout << *s->call_success_rate << " (" << s->call_successes << "/" << s->call_attempts << ")";
      } else {
        std::cout << "NA";
      }
      std::cout << "  rounds " << s->avg_rounds << "  card diff " << s->avg_card_difference << "  first "
                << s->first_moves << '\n';
    }
  }
  if (r.win_anova) std::cout << "ANOVA(win) F=" << r.win_anova->f << " p=" << r.win_anova->p << '\n';
  if (r.card_anova) std::cout << "ANOVA(cards) F=" << r.card_anova->f << " p=" << r.card_anova->p << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cheat game engine: semi-determinized MCTS agents, tournaments and a play service"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Engine config JSON")->check(CLI::ExistingFile);

  long long iterations = 0;
  double seconds = 0.0;
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--iterations", iterations, "Search iterations per move (overrides config)");
    sub->add_option("--seconds", seconds, "Search seconds per move (overrides iterations)");
  };

  // play
  auto* play = app.add_subcommand("play", "Play one agent-vs-agent match");
  std::string play_a = "mga", play_b = "rollout_bot", play_out;
  uint64_t play_seed = 1;
  bool play_timing = false;
  play->add_option("-a,--agent-a", play_a, "Seat 0 agent (config name or kind)");
  play->add_option("-b,--agent-b", play_b, "Seat 1 agent (config name or kind)");
  play->add_option("--seed", play_seed, "Match seed");
  play->add_option("--out", play_out, "Write the match as JSONL");
  play->add_flag("--timing", play_timing, "Record wall-clock move durations");
  add_budget(play);

  // tournament
  auto* tour = app.add_subcommand("tournament", "Run pairings over a common seed bank");
  std::vector<std::string> pairings;
  int tour_matches = 100, workers = 1;
  uint64_t tour_seed = 1;
  std::string tour_logs;
  tour->add_option("--pairing", pairings, "A:B agent pair (repeatable)")->required();
  tour->add_option("--matches", tour_matches, "Matches per pairing");
  tour->add_option("--seed", tour_seed, "Seed bank base");
  tour->add_option("--log-dir", tour_logs, "Directory for JSONL logs and reports");
  tour->add_option("--workers", workers, "Parallel matches");
  add_budget(tour);

  // report
  auto* report = app.add_subcommand("report", "Recompute a tournament report from its logs");
  std::string report_dir;
  report->add_option("--log-dir", report_dir, "Tournament log directory")->required()->check(CLI::ExistingDirectory);

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "Single-elimination self-play over a parameter grid");
  std::string grid_c, grid_d, grid_discount, cal_out;
  int cal_matches = 100;
  uint64_t cal_seed = 1;
  cal->add_option("--c", grid_c, "Comma-separated exploration constants");
  cal->add_option("--d", grid_d, "Comma-separated decay constants");
  cal->add_option("--discount", grid_discount, "Comma-separated discounts");
  cal->add_option("--matches", cal_matches, "Matches per tie");
  cal->add_option("--seed", cal_seed, "Seed bank base");
  cal->add_option("--workers", workers, "Parallel matches");
  cal->add_option("--out", cal_out, "Write the bracket JSON");
  add_budget(cal);

  // train-predictor / eval-predictor
  std::string logs_dir, samples_path, model_out, metrics_out, protocol = "loso", samples_out;
  int self_play = 200;
  uint64_t data_seed = 1;
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--logs", logs_dir, "Match log directory to mine for claims");
    sub->add_option("--samples", samples_path, "Training samples JSONL");
    sub->add_option("--self-play", self_play, "Rollout-bot self-play matches when no data is given");
    sub->add_option("--seed", data_seed, "Self-play seed");
    sub->add_option("--save-samples", samples_out, "Write the samples used as JSONL");
  };
  auto* train_cmd = app.add_subcommand("train-predictor", "Train the linear claim classifier");
  add_data(train_cmd);
  train_cmd->add_option("--out", model_out, "Model JSON path")->required();
  auto* eval_cmd = app.add_subcommand("eval-predictor", "Evaluate the claim classifier");
  add_data(eval_cmd);
  eval_cmd->add_option("--protocol", protocol, "loso or split")->check(CLI::IsMember({"loso", "split"}));
  eval_cmd->add_option("--out", metrics_out, "Metrics JSON path");

  // dump-tree
  auto* dump = app.add_subcommand("dump-tree", "Search a random mid-game state and dump the top nodes");
  uint64_t dump_seed = 1;
  int dump_plies = 6;
  size_t dump_top = 20;
  dump->add_option("--seed", dump_seed, "Game seed");
  dump->add_option("--plies", dump_plies, "Random plies before the search");
  dump->add_option("--top", dump_top, "Nodes to print");
  add_budget(dump);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the human-vs-agent HTTP service");
  std::string host;
  int port = -1;
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--workers", workers, "Agent worker threads");
  add_budget(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    const EngineConfig config = config_from(config_path);
    if (*play) {
      MatchOptions mo;
      mo.record_timing = play_timing;
      const MatchRecord r = play_match(agent_from(config, play_a, iterations, seconds),
                                       agent_from(config, play_b, iterations, seconds), play_seed, mo);
      if (!play_out.empty()) write_match_jsonl(r, play_out);
      std::cout << match_meta(r).dump(2) << '\n';
    } else if (*tour) {
      std::vector<Pairing> ps;
      for (const std::string& p : pairings) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) throw Error("bad_request", "pairing must be A:B, got " + p);
        ps.push_back(Pairing{p, agent_from(config, p.substr(0, colon), iterations, seconds),
                             agent_from(config, p.substr(colon + 1), iterations, seconds)});
      }
      TournamentOptions opt;
      opt.n_matches = tour_matches;
      opt.seed_base = tour_seed;
      opt.log_dir = tour_logs;
      opt.workers = workers;
      print_report(tournament(ps, opt));
    } else if (*report) {
      const TournamentReport r = report_from_logs(report_dir);
      print_report(r);
      std::cout << Json(r).dump(2) << '\n';
    } else if (*cal) {
      CalibrationGrid grid;
      grid.base = config.search.params;
      if (iterations > 0) grid.base.iterations = iterations;
      if (seconds > 0) grid.base.seconds = seconds;
      grid.c = parse_list(grid_c);
      grid.d = parse_list(grid_d);
      grid.discount = parse_list(grid_discount);
      CalibrateOptions opt;
      opt.matches_per_tie = cal_matches;
      opt.seed_base = cal_seed;
      opt.rollout = config.search.rollout;
      opt.workers = workers;
      const CalibrationResult r = calibrate(grid.candidates(), opt);
      const Json j = r;
      if (!cal_out.empty()) write_text(cal_out, j.dump(2) + "\n");
      std::cout << j.dump(2) << '\n';
    } else if (*train_cmd || *eval_cmd) {
      const auto samples = load_samples(logs_dir, samples_path, self_play, data_seed);
      if (!samples_out.empty()) write_samples_jsonl(samples, samples_out);
      if (*train_cmd) {
        LinearClaimModel m = train(samples, config.train);
        save_model(m, model_out);
        std::cout << "trained on " << samples.size() << " samples -> " << model_out << '\n';
      } else {
        const auto result = evaluate(samples, config.train,
                                     protocol == "loso" ? Protocol::leave_one_sample_out : Protocol::train_test_split);
        Json j = result.metrics;
        j["samples"] = samples.size();
        j["protocol"] = protocol;
        if (!metrics_out.empty()) write_text(metrics_out, j.dump(2) + "\n");
        j.erase("roc");
        std::cout << j.dump(2) << '\n';
      }
    } else if (*dump) {
      Rng rng(dump_seed);
      TrackedState s = start_game(dump_seed);
      for (int i = 0; i < dump_plies && !is_terminal(s.game); ++i) advance(s, sample_legal_action(s.game, rng));
      if (is_terminal(s.game)) throw Error("terminal", "game ended before the requested ply");
      SearchConfig sc = config.search;
      if (iterations > 0) sc.params.iterations = iterations;
      if (seconds > 0) sc.params.seconds = seconds;
      const InformationState info = information_state(s, s.game.to_move);
      TreePair<SearchTree> trees;
      const QTree q = search(info, sc, determinizations(info), rng, &trees);
      std::cout << Json{{"simulations", q.simulations},
                        {"nodes", trees[info.viewer].size()},
                        {"top", tree_dump(trees[info.viewer], dump_top)}}
                       .dump(2)
                << '\n';
    } else if (*serve) {
      ServiceConfig sc = config.service;
      if (!host.empty()) sc.host = host;
      if (port >= 0) sc.port = port;
      if (iterations > 0) sc.agent.search.params.iterations = iterations;
      if (seconds > 0) sc.agent.search.params.seconds = seconds;
      SessionManager manager(sc, workers);
      HttpService http(manager, sc);
      const int bound = http.bind();
      std::cout << "listening on http://" << sc.host << ":" << bound << std::endl;
      std::signal(SIGINT, [](int) { g_interrupted = true; });
      std::signal(SIGTERM, [](int) { g_interrupted = true; });
      std::thread server([&] { http.serve(); });
      while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(200));
      manager.shutdown();
      http.stop();
      server.join();
    }
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
