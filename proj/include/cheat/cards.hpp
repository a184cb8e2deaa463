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

#include <bit>
#include <compare>
#include <iterator>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheat {

inline constexpr int kNumRanks = 13;
inline constexpr int kNumSuits = 4;
inline constexpr int kNumCards = 52;
inline constexpr int kNumPlayers = 2;

using Player = int;
constexpr Player other(Player p) { return 1 - p; }

// Ranks are 1..13 (Ace = 1, King = 13). Suit never affects legality.
using Rank = int;

constexpr Rank rank_up(Rank r) { return r == kNumRanks ? 1 : r + 1; }
constexpr Rank rank_down(Rank r) { return r == 1 ? kNumRanks : r - 1; }

constexpr int circular_distance(Rank a, Rank b) {
  const int d = a > b ? a - b : b - a;
  return d < kNumRanks - d ? d : kNumRanks - d;
}

enum class Direction : uint8_t { higher = 0, lower = 1 };

struct Card {
  int8_t rank = 1;
  int8_t suit = 0;

  constexpr int index() const { return (rank - 1) * kNumSuits + suit; }
  static constexpr Card from_index(int i) {
    return Card{static_cast<int8_t>(i / kNumSuits + 1), static_cast<int8_t>(i % kNumSuits)};
  }
  constexpr auto operator<=>(const Card&) const = default;
};

std::string to_string(Card c);
Card parse_card(const std::string& text);

// A set of distinct cards as a 52-bit mask; rank r occupies bits 4(r-1)..4(r-1)+3.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(uint64_t bits) : bits_(bits) {}
  CardSet(std::initializer_list<Card> cards) {
    for (Card c : cards) insert(c);
  }

  static constexpr CardSet full() { return CardSet((uint64_t{1} << kNumCards) - 1); }
  static constexpr CardSet rank_mask(Rank r) { return CardSet(uint64_t{0xF} << ((r - 1) * kNumSuits)); }

  constexpr uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Card c) const { return (bits_ >> c.index()) & 1; }
  constexpr void insert(Card c) { bits_ |= uint64_t{1} << c.index(); }
  constexpr void erase(Card c) { bits_ &= ~(uint64_t{1} << c.index()); }

  constexpr int count_rank(Rank r) const { return (*this & rank_mask(r)).size(); }
  constexpr CardSet of_rank(Rank r) const { return *this & rank_mask(r); }
  constexpr CardSet without_rank(Rank r) const { return *this - rank_mask(r); }
  constexpr bool is_subset_of(CardSet o) const { return (bits_ & ~o.bits_) == 0; }

  friend constexpr CardSet operator|(CardSet a, CardSet b) { return CardSet(a.bits_ | b.bits_); }
  friend constexpr CardSet operator&(CardSet a, CardSet b) { return CardSet(a.bits_ & b.bits_); }
  friend constexpr CardSet operator-(CardSet a, CardSet b) { return CardSet(a.bits_ & ~b.bits_); }
  constexpr CardSet& operator|=(CardSet o) { bits_ |= o.bits_; return *this; }
  constexpr CardSet& operator&=(CardSet o) { bits_ &= o.bits_; return *this; }
  constexpr CardSet& operator-=(CardSet o) { bits_ &= ~o.bits_; return *this; }
  constexpr bool operator==(const CardSet&) const = default;

  // Lowest-index card; set must be nonempty.
  constexpr Card front() const { return Card::from_index(std::countr_zero(bits_)); }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Card;
    using difference_type = std::ptrdiff_t;
    using pointer = const Card*;
    using reference = Card;
    constexpr iterator() = default;
    constexpr explicit iterator(uint64_t rest) : rest_(rest) {}
    constexpr Card operator*() const { return Card::from_index(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
    constexpr bool operator==(const iterator&) const = default;
   private:
    uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Card> to_vector() const { return {begin(), end()}; }

 private:
  uint64_t bits_ = 0;
};

}  // namespace cheat
