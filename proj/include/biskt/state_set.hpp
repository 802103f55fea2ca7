#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "error.hpp"

namespace biskt {

using State = std::size_t;

// A subset of the universe {0, ..., size-1}, stored as a dense bit vector.
class StateSet {
public:
  StateSet() = default;

  explicit StateSet(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  StateSet(std::size_t size, std::initializer_list<State> members) : StateSet(size) {
    for (State s : members) insert(s);
  }

  static StateSet full(std::size_t size) {
    StateSet s(size);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static StateSet from_mask(std::size_t size, std::uint64_t mask) {
    StateSet s(size);
    if (!s.words_.empty()) s.words_[0] = mask;
    s.trim();
    return s;
  }

  std::size_t size() const noexcept { return size_; }

  bool contains(State s) const noexcept {
    return s < size_ && ((words_[s >> 6] >> (s & 63)) & 1u) != 0;
  }

  void insert(State s) {
    check_index(s);
    words_[s >> 6] |= std::uint64_t{1} << (s & 63);
  }

  void erase(State s) {
    check_index(s);
    words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63));
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool is_full() const noexcept { return count() == size_; }

  bool subset_of(StateSet const& other) const {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  bool intersects(StateSet const& other) const {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  StateSet& operator|=(StateSet const& other) {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  StateSet& operator&=(StateSet const& other) {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  // set difference
  StateSet& operator-=(StateSet const& other) {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, StateSet const& b) { return a |= b; }
  friend StateSet operator&(StateSet a, StateSet const& b) { return a &= b; }
  friend StateSet operator-(StateSet a, StateSet const& b) { return a -= b; }

  // complement within the universe
  StateSet operator~() const {
    StateSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  // Lowest 64 members as a mask; meaningful for universes of at most 64 states.
  std::uint64_t mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::vector<State> members() const {
    std::vector<State> out;
    out.reserve(count());
    for_each([&](State s) { out.push_back(s); });
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(State{(i << 6) | bit});
        w &= w - 1;
      }
    }
  }

  friend bool operator==(StateSet const&, StateSet const&) = default;

  // Orders by size, then as a little-endian bit string (highest state most significant).
  friend std::strong_ordering operator<=>(StateSet const& a, StateSet const& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, StateSet const& s) {
    os << '{';
    bool first = true;
    s.for_each([&](State x) {
      os << (first ? "" : ",") << x;
      first = false;
    });
    return os << '}';
  }

private:
  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  void check_index(State s) const {
    if (s >= size_) throw PreconditionError("state " + std::to_string(s) + " outside universe of size " + std::to_string(size_));
  }

  void check_size(StateSet const& other) const {
    if (other.size_ != size_)
      throw SizeMismatch("state sets over universes of size " + std::to_string(size_) + " and " + std::to_string(other.size_));
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace biskt
