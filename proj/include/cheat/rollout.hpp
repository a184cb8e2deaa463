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
#include <optional>

#include "cheat/abstraction.hpp"
#include "cheat/knowledge.hpp"

namespace cheat {

inline constexpr double kDefaultCallCheatProbability = 0.105;

using ActionDistribution = std::array<double, AbstractAction::kCount>;

// Default-policy weights over the eighteen abstract actions.
struct RolloutPdf {
  ActionDistribution p{};

  // CallCheat 0.105, the rest share 0.895 evenly.
  static RolloutPdf default_pdf();
  static RolloutPdf uniform();
  // Throws Error("invalid_pdf") unless nonnegative and summing to 1.
  void validate() const;
  bool operator==(const RolloutPdf&) const = default;
};

enum class Normalization {
  proportional,            // p(a) / sum of applicable p
  uniform_redistribution,  // inapplicable mass shared evenly by the applicable actions
};

struct RolloutPolicy {
  RolloutPdf pdf = RolloutPdf::default_pdf();
  Normalization normalization = Normalization::proportional;
  bool heuristics = true;
  bool operator==(const RolloutPolicy&) const = default;
};

// Distribution over the applicable set; uniform if that set carries no mass.
ActionDistribution normalize(const RolloutPdf& pdf, ActionMask applicable,
                             Normalization mode = Normalization::proportional);

// The expert Call-Cheat rules. Fire only when the pending opponent claim is
// false (the truth bit is public inside a simulation).
std::optional<AbstractAction> heuristic_call_cheat(const TrackedState& s);

// Which of the rules a..f hold for the pending claim, ignoring its truth.
struct HeuristicSignals {
  bool opponent_hand_empty = false;
  bool table_over_eight = false;
  bool caught_over_eight = false;
  bool repeated_claim = false;
  bool hold_claimed_rank = false;
  bool caught_on_rank = false;
  bool any() const {
    return opponent_hand_empty || table_over_eight || caught_over_eight || repeated_claim || hold_claimed_rank ||
           caught_on_rank;
  }
};
HeuristicSignals heuristic_signals(const CardSet& own_hand, int opponent_cards, int table_cards,
                                   const KnowledgeTracker& tracker, Player claimant, Rank claimed_rank);

AbstractAction sample_action(const ActionDistribution& dist, Rng& rng);
AbstractAction rollout_action(const RolloutPolicy& policy, const TrackedState& s, Rng& rng);

}  // namespace cheat
