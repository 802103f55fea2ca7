#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "error.hpp"
#include "state_set.hpp"

namespace biskt {

// Binary relation on {0, ..., size-1} as a dense bit matrix; row x holds the successors of x.
class Relation {
public:
  Relation() = default;

  explicit Relation(std::size_t size) : size_(size), rows_(size, StateSet(size)) {}

  Relation(std::size_t size, std::initializer_list<std::pair<State, State>> pairs) : Relation(size) {
    for (auto [x, y] : pairs) insert(x, y);
  }

  static Relation identity(std::size_t size) {
    Relation r(size);
    for (State x = 0; x < size; ++x) r.insert(x, x);
    return r;
  }

  static Relation full(std::size_t size) {
    Relation r(size);
    for (auto& row : r.rows_) row = StateSet::full(size);
    return r;
  }

  std::size_t size() const noexcept { return size_; }

  bool contains(State x, State y) const noexcept { return x < size_ && rows_[x].contains(y); }

  void insert(State x, State y) {
    check_index(x);
    rows_[x].insert(y);
  }

  void erase(State x, State y) {
    check_index(x);
    rows_[x].erase(y);
  }

  StateSet const& successors(State x) const {
    check_index(x);
    return rows_[x];
  }

  StateSet predecessors(State y) const {
    check_index(y);
    StateSet out(size_);
    for (State x = 0; x < size_; ++x)
      if (rows_[x].contains(y)) out.insert(x);
    return out;
  }

  bool empty() const noexcept {
    for (auto const& row : rows_)
      if (!row.empty()) return false;
    return true;
  }

  std::size_t pair_count() const noexcept {
    std::size_t n = 0;
    for (auto const& row : rows_) n += row.count();
    return n;
  }

  std::vector<std::pair<State, State>> pairs() const {
    std::vector<std::pair<State, State>> out;
    for (State x = 0; x < size_; ++x) rows_[x].for_each([&](State y) { out.emplace_back(x, y); });
    return out;
  }

  bool subset_of(Relation const& other) const {
    check_size(other);
    for (State x = 0; x < size_; ++x)
      if (!rows_[x].subset_of(other.rows_[x])) return false;
    return true;
  }

  Relation& operator|=(Relation const& other) {
    check_size(other);
    for (State x = 0; x < size_; ++x) rows_[x] |= other.rows_[x];
    return *this;
  }

  Relation& operator&=(Relation const& other) {
    check_size(other);
    for (State x = 0; x < size_; ++x) rows_[x] &= other.rows_[x];
    return *this;
  }

  friend Relation operator|(Relation a, Relation const& b) { return a |= b; }
  friend Relation operator&(Relation a, Relation const& b) { return a &= b; }

  // X ⊕ R: every state reached from some member of x.
  StateSet image(StateSet const& x) const {
    check_set(x);
    StateSet out(size_);
    x.for_each([&](State s) { out |= rows_[s]; });
    return out;
  }

  // States with at least one successor in y.
  StateSet preimage(StateSet const& y) const {
    check_set(y);
    StateSet out(size_);
    for (State x = 0; x < size_; ++x)
      if (rows_[x].intersects(y)) out.insert(x);
    return out;
  }

  // R ⊖ Y: states whose successors all lie in y.
  StateSet universal_preimage(StateSet const& y) const {
    check_set(y);
    StateSet out(size_);
    for (State x = 0; x < size_; ++x)
      if (rows_[x].subset_of(y)) out.insert(x);
    return out;
  }

  friend bool operator==(Relation const&, Relation const&) = default;

  friend std::strong_ordering operator<=>(Relation const& a, Relation const& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (State x = a.size_; x-- > 0;)
      if (auto c = a.rows_[x] <=> b.rows_[x]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, Relation const& r) {
    os << '{';
    bool first = true;
    for (auto [x, y] : r.pairs()) {
      os << (first ? "" : ",") << '(' << x << ',' << y << ')';
      first = false;
    }
    return os << '}';
  }

  void check_size(Relation const& other) const {
    if (other.size_ != size_)
      throw SizeMismatch("relations over universes of size " + std::to_string(size_) + " and " + std::to_string(other.size_));
  }

  void check_set(StateSet const& s) const {
    if (s.size() != size_)
      throw SizeMismatch("state set of size " + std::to_string(s.size()) + " against relation of size " + std::to_string(size_));
  }

private:
  void check_index(State x) const {
    if (x >= size_) throw PreconditionError("state " + std::to_string(x) + " outside universe of size " + std::to_string(size_));
  }

  std::size_t size_ = 0;
  std::vector<StateSet> rows_;
};

// a;b: (x,z) whenever x a y and y b z for some y.
inline Relation compose(Relation const& a, Relation const& b) {
  a.check_size(b);
  Relation out(a.size());
  for (State x = 0; x < a.size(); ++x)
    a.successors(x).for_each([&](State y) {
      b.successors(y).for_each([&](State z) { out.insert(x, z); });
    });
  return out;
}

inline Relation compose(std::initializer_list<Relation> chain) {
  auto it = chain.begin();
  Relation out = *it;
  for (++it; it != chain.end(); ++it) out = compose(out, *it);
  return out;
}

inline Relation converse(Relation const& r) {
  Relation out(r.size());
  for (auto [x, y] : r.pairs()) out.insert(y, x);
  return out;
}

// Smallest transitive superset, by squaring until nothing new appears.
inline Relation transitive_closure(Relation r) {
  for (;;) {
    Relation next = r | compose(r, r);
    if (next == r) return r;
    r = std::move(next);
  }
}

inline Relation reflexive_transitive_closure(Relation const& r) {
  return transitive_closure(r | Relation::identity(r.size()));
}

inline bool is_reflexive(Relation const& r) {
  for (State x = 0; x < r.size(); ++x)
    if (!r.contains(x, x)) return false;
  return true;
}

inline bool is_transitive(Relation const& r) { return compose(r, r).subset_of(r); }

inline bool is_preorder(Relation const& h) { return is_reflexive(h) && is_transitive(h); }

// R is stable over H when H;R;H ⊆ R.
inline bool is_stable(Relation const& h, Relation const& r) {
  h.check_size(r);
  return compose({h, r, h}).subset_of(r);
}

// H;R;H, the least stable relation containing r when h is a preorder.
inline Relation stability_closure(Relation const& h, Relation const& r) {
  h.check_size(r);
  return compose({h, r, h});
}

// ⌣R := H;R˘;H
inline Relation left_converse(Relation const& h, Relation const& r) {
  h.check_size(r);
  if (!is_preorder(h)) throw PreconditionError("left_converse: H is not a preorder");
  if (!is_stable(h, r)) throw PreconditionError("left_converse: R is not stable over H");
  return compose({h, converse(r), h});
}

// Closed under H-successors.
inline bool is_h_set(Relation const& h, StateSet const& x) { return h.image(x).subset_of(x); }

// Least H-set containing x (h must be a preorder).
inline StateSet h_closure(Relation const& h, StateSet const& x) { return h.image(x) | x; }

} // namespace biskt
