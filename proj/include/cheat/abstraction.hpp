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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cheat/game.hpp"
#include "cheat/knowledge.hpp"

namespace cheat {

// Compressed card counts.
constexpr int psi(int x) { return x <= 4 ? x : (x <= 8 ? 5 : 6); }
constexpr int phi(int x) { return x <= 2 ? x : 3; }

// The sixteen abstract attributes of an information state.
struct AttributeVector {
  DeterminizedKind opponent_prev_action = DeterminizedKind::take_card;  // a1
  bool can_true_claim_higher = false;                                   // a2
  bool can_true_claim_lower = false;                                    // a3
  int own_cards = 1;                                                    // a4, psi
  int opponent_cards = 1;                                               // a5, psi
  int table_cards = 0;                                                  // a6, psi
  int round = 1;                                                        // a7
  int est_opponent_higher = 0;                                          // a8, phi
  int est_opponent_lower = 0;                                           // a9, phi
  bool own_repeat_higher = false;                                       // a10
  bool own_repeat_lower = false;                                        // a11
  bool opponent_repeat_higher = false;                                  // a12
  bool opponent_repeat_lower = false;                                   // a13
  bool caught_higher = false;                                           // a14
  bool caught_lower = false;                                            // a15
  bool caught_any = false;                                              // a16

  bool operator==(const AttributeVector&) const = default;
};

// 31-bit packed attribute vector.
struct EncodedInfoState {
  uint32_t bits = 0;
  bool operator==(const EncodedInfoState&) const = default;
};

struct EncodedInfoStateHash {
  size_t operator()(EncodedInfoState e) const noexcept { return std::hash<uint32_t>{}(e.bits); }
};

// Throws Error("encode_range") if an attribute is outside its domain.
EncodedInfoState encode(const AttributeVector& v);
AttributeVector decode(EncodedInfoState e);
std::string to_hex(EncodedInfoState e);
EncodedInfoState parse_hex(const std::string& text);
std::string to_string(const AttributeVector& v);

// The viewer's abstraction with the opponent's previous action fixed.
AttributeVector abstract_info(const InformationState& info, const DeterminizedAction& opponent_prev);
// The same abstraction read off a full state: a1 is the actual last action.
AttributeVector abstract_info(const GameState& s, const KnowledgeTracker& tracker);

// Eighteen abstract actions: CallCheat, TakeCard and Claim(direction, truth, k).
class AbstractAction {
 public:
  static constexpr int kCount = 18;
  enum class Kind : uint8_t { call_cheat, take_card, claim };

  constexpr AbstractAction() = default;
  constexpr explicit AbstractAction(int index) : index_(static_cast<uint8_t>(index)) {}
  static constexpr AbstractAction call_cheat() { return AbstractAction(0); }
  static constexpr AbstractAction take_card() { return AbstractAction(1); }
  static constexpr AbstractAction claim(Direction d, bool truthful, int k) {
    return AbstractAction(2 + static_cast<int>(d) * 8 + (truthful ? 0 : 4) + (k - 1));
  }

  constexpr int index() const { return index_; }
  constexpr Kind kind() const { return index_ == 0 ? Kind::call_cheat : (index_ == 1 ? Kind::take_card : Kind::claim); }
  constexpr bool is_claim() const { return index_ >= 2; }
  constexpr Direction direction() const { return static_cast<Direction>((index_ - 2) / 8); }
  constexpr bool truthful() const { return ((index_ - 2) / 4) % 2 == 0; }
  constexpr int count() const { return (index_ - 2) % 4 + 1; }
  constexpr bool operator==(const AbstractAction&) const = default;

 private:
  uint8_t index_ = 0;
};

std::string to_string(AbstractAction a);
AbstractAction parse_abstract_action(const std::string& text);

// Bit i set iff AbstractAction(i) is applicable.
using ActionMask = uint32_t;

// What applicability and concretization depend on.
struct ClaimContext {
  CardSet hand;
  Rank anchor = 1;
  bool opening = true;
  bool deck_nonempty = true;
  bool claim_pending = false;
};

ClaimContext context_of(const GameState& s);
ClaimContext context_of(const InformationState& info);

ActionMask applicable_mask(const ClaimContext& c);
std::vector<AbstractAction> applicable_actions(const ClaimContext& c);
inline bool applicable(ActionMask m, AbstractAction a) { return (m >> a.index()) & 1U; }

// Concrete realization. True claims use the lowest suits of the target rank;
// false claims shed the cards farthest (circularly) from the current anchor,
// ties broken by rng. Throws Error("inapplicable_abstract_action").
ConcreteAction concretize(AbstractAction a, const ClaimContext& c, Rng& rng);

// The abstract action a concrete move belongs to, from the mover's context.
AbstractAction abstract_of(const ConcreteAction& a, const ClaimContext& c);

}  // namespace cheat
