#pragma once

// Seeded generators for property tests and sweeps. Draws use raw engine output reduced
// modulo the range, so a seed produces the same objects with every standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "formula.hpp"
#include "model.hpp"
#include "relation.hpp"
#include "state_set.hpp"

namespace biskt {

inline std::set<Op> const AllModalities{Op::BDia, Op::WBox, Op::WDia, Op::BBox};
inline std::set<Op> const CoreModalities{Op::BDia, Op::WBox};
inline std::set<Op> const LeftConverseModalities{Op::WDia, Op::BBox};

inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return bound == 0 ? 0 : static_cast<std::size_t>(rng() % bound); }

// true with probability num/den
inline bool coin(std::mt19937_64& rng, std::size_t num, std::size_t den) { return draw(rng, den) < num; }

// Random formula of depth at most max_depth over the given atoms and modalities.
inline Formula random_formula(std::mt19937_64& rng, std::vector<std::string> const& atom_names, std::size_t max_depth,
                              std::set<Op> const& modalities) {
  auto leaf = [&]() -> Formula {
    std::size_t k = draw(rng, atom_names.size() + 2);
    if (k == atom_names.size()) return top();
    if (k == atom_names.size() + 1) return bot();
    return atom(atom_names[k]);
  };
  if (max_depth == 0 || coin(rng, 1, 4)) return leaf();
  std::vector<Op> ops{Op::And, Op::Or, Op::Imp, Op::Coimp};
  ops.insert(ops.end(), modalities.begin(), modalities.end());
  Op op = ops[draw(rng, ops.size())];
  if (is_unary(op)) return Formula::unary(op, random_formula(rng, atom_names, max_depth - 1, modalities));
  Formula l = random_formula(rng, atom_names, max_depth - 1, modalities);
  Formula r = random_formula(rng, atom_names, max_depth - 1, modalities);
  return Formula::binary(op, l, r);
}

// Each pair present independently with probability num/den.
inline Relation random_relation(std::mt19937_64& rng, std::size_t n, std::size_t num = 1, std::size_t den = 3) {
  Relation r(n);
  for (State x = 0; x < n; ++x)
    for (State y = 0; y < n; ++y)
      if (coin(rng, num, den)) r.insert(x, y);
  return r;
}

inline StateSet random_set(std::mt19937_64& rng, std::size_t n) {
  StateSet s(n);
  for (State x = 0; x < n; ++x)
    if (coin(rng, 1, 2)) s.insert(x);
  return s;
}

// Random preorder: closure of sparse generators, so chains and incomparable elements both occur.
inline Relation random_preorder(std::mt19937_64& rng, std::size_t n) {
  return reflexive_transitive_closure(random_relation(rng, n, 1, 2 * n + 1));
}

inline HFrame random_frame(std::mt19937_64& rng, std::size_t n) {
  Relation h = random_preorder(rng, n);
  return HFrame(h, stability_closure(h, random_relation(rng, n, 1, 2 * n)));
}

// Frame with a transitive stable R.
inline HFrame random_transitive_frame(std::mt19937_64& rng, std::size_t n) {
  Relation h = random_preorder(rng, n);
  return HFrame(h, transitive_closure(stability_closure(h, random_relation(rng, n, 1, 2 * n))));
}

inline HModel random_model(std::mt19937_64& rng, HFrame const& fr, std::vector<std::string> const& atom_names) {
  Valuation v;
  for (auto const& p : atom_names) v.emplace(p, h_closure(fr.H(), random_set(rng, fr.size())));
  return HModel(fr, std::move(v));
}

// Model with 1..max_size states.
inline HModel random_model(std::mt19937_64& rng, std::size_t max_size, std::vector<std::string> const& atom_names) {
  std::size_t n = 1 + draw(rng, max_size);
  return random_model(rng, random_frame(rng, n), atom_names);
}

} // namespace biskt
