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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cheat/abstraction.hpp"
#include "cheat/knowledge.hpp"
#include "cheat/rollout.hpp"

namespace cheat {

struct SmoothUctParams {
  double c = 0.0025;
  double d = 0.0025;
  double eta = 0.9;
  double gamma = 0.1;
  double discount = 0.995;
  bool discount_enabled = true;
  long long iterations = 10000;
  // Wall-clock budget per move in seconds; 0 selects the iteration budget.
  double seconds = 0.0;

  static SmoothUctParams champion() { return {}; }
  // Pure UCT: eta_k == 1 everywhere.
  static SmoothUctParams uct(double c) {
    SmoothUctParams p;
    p.c = c;
    p.d = 0.0;
    p.eta = 1.0;
    p.gamma = 1.0;
    return p;
  }
  // Throws Error("invalid_params").
  void validate() const;
  bool operator==(const SmoothUctParams&) const = default;
};

struct NodeStats {
  uint32_t visits = 0;
  std::array<uint32_t, AbstractAction::kCount> n{};
  std::array<double, AbstractAction::kCount> q{};
  bool operator==(const NodeStats&) const = default;
};

double eta_k(const SmoothUctParams& params, long long n_k);
// Smooth-UCT selection among the applicable actions.
AbstractAction select(const NodeStats& node, const SmoothUctParams& params, ActionMask applicable, Rng& rng);
// UCB argmax only (the eta branch), ties broken by rng.
AbstractAction ucb_argmax(const NodeStats& node, double c, ActionMask applicable, Rng& rng);
// Draw from the average strategy N(u,a)/N(u) restricted to the applicable set.
AbstractAction average_strategy_sample(const NodeStats& node, ActionMask applicable, Rng& rng);
void update(NodeStats& node, AbstractAction a, double reward);

// Information-set statistics keyed by the packed 31-bit abstraction.
class SearchTree {
 public:
  using Node = NodeStats;

  std::pair<Node*, bool> visit(const AttributeVector& v) {
    auto [it, inserted] = nodes_.try_emplace(encode(v).bits);
    return {&it->second, inserted};
  }
  static AbstractAction select(const Node& node, const SmoothUctParams& p, ActionMask m, Rng& rng) {
    return cheat::select(node, p, m, rng);
  }
  static void update(Node& node, AbstractAction a, double r) { cheat::update(node, a, r); }

  const NodeStats* find(EncodedInfoState key) const;
  std::optional<NodeStats> stats(const AttributeVector& v) const;
  size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }
  const std::unordered_map<uint32_t, NodeStats>& nodes() const { return nodes_; }

 private:
  std::unordered_map<uint32_t, NodeStats> nodes_;
};

// Baseline store that keys nodes and actions by their text form.
class StringKeyedTree {
 public:
  struct ActionStats {
    uint32_t n = 0;
    double q = 0.0;
  };
  struct Node {
    uint32_t visits = 0;
    std::map<std::string, ActionStats> actions;
  };

  static std::string key_of(const AttributeVector& v);

  std::pair<Node*, bool> visit(const AttributeVector& v) {
    auto [it, inserted] = nodes_.try_emplace(key_of(v));
    return {&it->second, inserted};
  }
  static AbstractAction select(const Node& node, const SmoothUctParams& p, ActionMask m, Rng& rng);
  static void update(Node& node, AbstractAction a, double r);

  std::optional<NodeStats> stats(const AttributeVector& v) const;
  size_t size() const { return nodes_.size(); }

 private:
  std::map<std::string, Node> nodes_;
};

template <class Tree>
using TreePair = std::array<Tree, kNumPlayers>;

struct SimulationOutcome {
  RewardVector reward{};
  int plies = 0;
  int in_tree_steps = 0;
};

// One ISMCTS iteration from a fully specified state. Each player descends its
// own tree until it meets an unseen information set, which is added, and then
// plays the rollout policy. Every in-tree step is credited with that player's
// terminal reward times discount^(plies from the step's successor to the end).
template <class Tree>
SimulationOutcome simulate(TrackedState s, TreePair<Tree>& trees, const SmoothUctParams& params,
                           const RolloutPolicy& policy, Rng& rng) {
  struct Step {
    Player player;
    typename Tree::Node* node;
    AbstractAction action;
    int ply;
  };
  Step path[kMaxRounds + 1];
  int path_len = 0;
  std::array<bool, kNumPlayers> out_of_tree{false, false};
  int ply = 0;
  while (!is_terminal(s.game)) {
    const Player i = s.game.to_move;
    const ClaimContext ctx = context_of(s.game);
    AbstractAction a;
    if (out_of_tree[i]) {
      a = rollout_action(policy, s, rng);
    } else {
      auto [node, created] = trees[i].visit(abstract_info(s.game, s.knowledge[i]));
      if (created) {
        a = rollout_action(policy, s, rng);
        out_of_tree[i] = true;
      } else {
        a = Tree::select(*node, params, applicable_mask(ctx), rng);
      }
      path[path_len++] = Step{i, node, a, ply};
    }
    advance(s, concretize(a, ctx, rng));
    ++ply;
  }
  SimulationOutcome out;
  out.reward = reward(s.game);
  out.plies = ply;
  out.in_tree_steps = path_len;
  for (int k = 0; k < path_len; ++k) {
    const Step& st = path[k];
    double r = out.reward[st.player];
    if (params.discount_enabled) r *= std::pow(params.discount, ply - st.ply - 1);
    Tree::update(*st.node, st.action, r);
  }
  return out;
}

}  // namespace cheat
