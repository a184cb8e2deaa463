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

#include "cheat/search.hpp"

#include <limits>
#include <sstream>

namespace cheat {
namespace {

template <class CountOf, class ValueOf>
AbstractAction ucb_argmax_impl(uint32_t visits, CountOf count_of, ValueOf value_of, double c, ActionMask applicable,
                               Rng& rng) {
  const double log_n = visits > 0 ? std::log(static_cast<double>(visits)) : 0.0;
  double best = -std::numeric_limits<double>::infinity();
  int ties[AbstractAction::kCount];
  int n_ties = 0;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (!((applicable >> i) & 1U)) continue;
    const uint32_t n = count_of(i);
    const double v = n == 0 ? std::numeric_limits<double>::infinity()
                            : value_of(i) + c * std::sqrt(log_n / static_cast<double>(n));
    if (v > best) {
      best = v;
      n_ties = 0;
    }
    if (v == best) ties[n_ties++] = i;
  }
  if (n_ties == 0) throw Error("no_applicable_action", "select over an empty set");
  return AbstractAction(n_ties == 1 ? ties[0] : ties[rng.below(static_cast<uint32_t>(n_ties))]);
}

template <class CountOf>
AbstractAction average_impl(CountOf count_of, ActionMask applicable, Rng& rng) {
  uint64_t total = 0;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if ((applicable >> i) & 1U) total += count_of(i);
  }
  if (total == 0) {
    int options[AbstractAction::kCount];
    int n = 0;
    for (int i = 0; i < AbstractAction::kCount; ++i) {
      if ((applicable >> i) & 1U) options[n++] = i;
    }
    if (n == 0) throw Error("no_applicable_action", "select over an empty set");
    return AbstractAction(options[rng.below(static_cast<uint32_t>(n))]);
  }
  uint64_t pick = static_cast<uint64_t>(rng.uniform() * static_cast<double>(total));
  int last = 0;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    if (!((applicable >> i) & 1U)) continue;
    const uint32_t n = count_of(i);
    if (n == 0) continue;
    last = i;
    if (pick < n) return AbstractAction(i);
    pick -= n;
  }
  return AbstractAction(last);
}

}  // namespace

void SmoothUctParams::validate() const {
  if (!(c > 0)) throw Error("invalid_params", "c must be positive");
  if (!(d >= 0)) throw Error("invalid_params", "d must be nonnegative");
  if (!(0 <= gamma && gamma <= eta && eta <= 1)) throw Error("invalid_params", "need 0 <= gamma <= eta <= 1");
  if (!(0 < discount && discount <= 1)) throw Error("invalid_params", "discount must lie in (0, 1]");
  if (iterations < 1 && !(seconds > 0)) throw Error("invalid_params", "budget must be positive");
}

double eta_k(const SmoothUctParams& p, long long n_k) {
  return std::max(p.gamma, p.eta / (1.0 + p.d * std::sqrt(static_cast<double>(n_k))));
}

AbstractAction ucb_argmax(const NodeStats& node, double c, ActionMask applicable, Rng& rng) {
  return ucb_argmax_impl(
      node.visits, [&](int i) { return node.n[i]; }, [&](int i) { return node.q[i]; }, c, applicable, rng);
}

AbstractAction average_strategy_sample(const NodeStats& node, ActionMask applicable, Rng& rng) {
  return average_impl([&](int i) { return node.n[i]; }, applicable, rng);
}

AbstractAction select(const NodeStats& node, const SmoothUctParams& params, ActionMask applicable, Rng& rng) {
  const double eta = eta_k(params, node.visits);
  if (eta >= 1.0 || rng.uniform() < eta) return ucb_argmax(node, params.c, applicable, rng);
  return average_strategy_sample(node, applicable, rng);
}

void update(NodeStats& node, AbstractAction a, double reward) {
  const int i = a.index();
  ++node.visits;
  ++node.n[i];
  node.q[i] += (reward - node.q[i]) / node.n[i];
}

const NodeStats* SearchTree::find(EncodedInfoState key) const {
  auto it = nodes_.find(key.bits);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::optional<NodeStats> SearchTree::stats(const AttributeVector& v) const {
  const NodeStats* n = find(encode(v));
  if (n == nullptr) return std::nullopt;
  return *n;
}

std::string StringKeyedTree::key_of(const AttributeVector& v) {
  std::ostringstream os;
  os << "opponent_prev_action=" << to_string(v.opponent_prev_action)
     << ";can_true_claim_higher=" << (v.can_true_claim_higher ? "true" : "false")
     << ";can_true_claim_lower=" << (v.can_true_claim_lower ? "true" : "false") << ";own_cards=" << v.own_cards
     << ";opponent_cards=" << v.opponent_cards << ";table_cards=" << v.table_cards << ";round=" << v.round
     << ";est_opponent_higher=" << v.est_opponent_higher << ";est_opponent_lower=" << v.est_opponent_lower
     << ";own_repeat_higher=" << (v.own_repeat_higher ? "true" : "false")
     << ";own_repeat_lower=" << (v.own_repeat_lower ? "true" : "false")
     << ";opponent_repeat_higher=" << (v.opponent_repeat_higher ? "true" : "false")
     << ";opponent_repeat_lower=" << (v.opponent_repeat_lower ? "true" : "false")
     << ";caught_higher=" << (v.caught_higher ? "true" : "false")
     << ";caught_lower=" << (v.caught_lower ? "true" : "false") << ";caught_any=" << (v.caught_any ? "true" : "false");
  return os.str();
}

AbstractAction StringKeyedTree::select(const Node& node, const SmoothUctParams& params, ActionMask applicable,
                                       Rng& rng) {
  auto count_of = [&](int i) -> uint32_t {
    auto it = node.actions.find(to_string(AbstractAction(i)));
    return it == node.actions.end() ? 0 : it->second.n;
  };
  auto value_of = [&](int i) -> double {
    auto it = node.actions.find(to_string(AbstractAction(i)));
    return it == node.actions.end() ? 0.0 : it->second.q;
  };
  const double eta = eta_k(params, node.visits);
  if (eta >= 1.0 || rng.uniform() < eta) return ucb_argmax_impl(node.visits, count_of, value_of, params.c, applicable, rng);
  return average_impl(count_of, applicable, rng);
}

void StringKeyedTree::update(Node& node, AbstractAction a, double reward) {
  ActionStats& s = node.actions[to_string(a)];
  ++node.visits;
  ++s.n;
  s.q += (reward - s.q) / s.n;
}

std::optional<NodeStats> StringKeyedTree::stats(const AttributeVector& v) const {
  auto it = nodes_.find(key_of(v));
  if (it == nodes_.end()) return std::nullopt;
  NodeStats out;
  out.visits = it->second.visits;
  for (int i = 0; i < AbstractAction::kCount; ++i) {
    auto a = it->second.actions.find(to_string(AbstractAction(i)));
    if (a == it->second.actions.end()) continue;
    out.n[i] = a->second.n;
    out.q[i] = a->second.q;
  }
  return out;
}

}  // namespace cheat
