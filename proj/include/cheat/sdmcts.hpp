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
#include <chrono>
#include <string>
#include <vector>

#include "cheat/abstraction.hpp"
#include "cheat/knowledge.hpp"
#include "cheat/rollout.hpp"
#include "cheat/search.hpp"

namespace cheat {

// Distribution over the opponent's previous action, indexed by DeterminizedKind.
struct PredictorDistribution {
  std::array<double, kNumDeterminizedKinds> p{};

  double operator[](DeterminizedKind k) const { return p[static_cast<int>(k)]; }
  double& operator[](DeterminizedKind k) { return p[static_cast<int>(k)]; }

  static PredictorDistribution point_mass(DeterminizedKind k) {
    PredictorDistribution d;
    d[k] = 1.0;
    return d;
  }
  static PredictorDistribution claim(double p_true, double p_false) {
    PredictorDistribution d;
    d[DeterminizedKind::true_claim] = p_true;
    d[DeterminizedKind::false_claim] = p_false;
    return d;
  }
  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
  // Throws Error("invalid_predictor") unless a probability vector.
  void validate() const;
  bool operator==(const PredictorDistribution&) const = default;
};

struct SearchConfig {
  SmoothUctParams params;
  RolloutPolicy rollout;
  bool operator==(const SearchConfig&) const = default;
};

struct RootStats {
  DeterminizedAction determinization;
  EncodedInfoState key;
  NodeStats stats;
  long long simulations = 0;
  bool dropped = false;
  std::string drop_reason;
};

// Root statistics of one search, one entry per support member.
struct QTree {
  std::vector<RootStats> roots;
  long long simulations = 0;
  std::vector<std::string> warnings;

  const RootStats* find(DeterminizedKind k) const;
};

struct ExpectedPayoffTable {
  ActionMask defined = 0;
  std::array<double, AbstractAction::kCount> e{};
  std::vector<std::string> warnings;

  bool has(AbstractAction a) const { return applicable(defined, a); }
  double at(AbstractAction a) const;
  bool operator==(const ExpectedPayoffTable&) const = default;
};

// Round-robin semi-determinized search over the support members. Members
// with no consistent completion are dropped and reported in the result.
template <class Tree = SearchTree>
QTree search(const InformationState& info, const SearchConfig& config, const std::vector<DeterminizedAction>& support,
             Rng& rng, TreePair<Tree>* trees_out = nullptr) {
  if (support.empty()) throw Error("empty_support", "search needs at least one determinization");
  if (info.own_hand.empty() || info.opponent_card_count == 0 || info.round > kMaxRounds) {
    throw Error("terminal", "no search from a terminal state");
  }
  QTree out;
  std::vector<DeterminizationSampler> samplers;
  std::vector<int> live;
  for (const DeterminizedAction& a : support) {
    RootStats root;
    root.determinization = a;
    root.key = encode(abstract_info(info, a));
    try {
      samplers.emplace_back(info, a);
      live.push_back(static_cast<int>(out.roots.size()));
    } catch (const Error& e) {
      root.dropped = true;
      root.drop_reason = e.what();
      out.warnings.push_back(std::string("dropped ") + to_string(a.kind) + ": " + e.what());
    }
    out.roots.push_back(root);
  }
  TreePair<Tree> local;
  TreePair<Tree>& trees = trees_out != nullptr ? *trees_out : local;
  if (!live.empty()) {
    const auto& p = config.params;
    const auto start = std::chrono::steady_clock::now();
    const bool timed = p.seconds > 0;
    for (long long it = 0;; ++it) {
      if (timed) {
        if (it % 16 == 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= p.seconds) {
          break;
        }
      } else if (it >= p.iterations) {
        break;
      }
      const size_t j = static_cast<size_t>(it % static_cast<long long>(live.size()));
      simulate(samplers[j].sample(rng), trees, p, config.rollout, rng);
      ++out.roots[live[j]].simulations;
      ++out.simulations;
    }
  }
  for (RootStats& root : out.roots) {
    if (root.dropped) continue;
    if (auto s = trees[info.viewer].stats(decode(root.key))) root.stats = *s;
  }
  return out;
}

ExpectedPayoffTable expected_payoffs(const QTree& q_tree, const PredictorDistribution& predictor,
                                     const InformationState& info);

// Argmax of the table; ties go to the larger total root visit count, then rng.
AbstractAction argmax_payoff(const ExpectedPayoffTable& table, const QTree& q_tree, Rng& rng);

struct Decision {
  AbstractAction action;
  ExpectedPayoffTable table;
  QTree q_tree;
  PredictorDistribution predictor;  // after dropping infeasible members
  std::vector<DeterminizedAction> support;
  std::vector<std::string> warnings;
};

// The support is every observation-consistent determinization with positive
// predictor mass. Mass on a determinization of the wrong kind throws
// Error("support_mismatch").
Decision best_response(const InformationState& info, const SearchConfig& config, const PredictorDistribution& predictor,
                       Rng& rng);

}  // namespace cheat
