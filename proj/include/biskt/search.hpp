#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "correspondence.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "relation.hpp"
#include "semantics.hpp"

namespace biskt {

// All preorders on {0..k-1}, in increasing order of their off-diagonal bit masks.
inline std::vector<Relation> enumerate_preorders(std::size_t k) {
  std::vector<std::pair<State, State>> off;
  for (State x = 0; x < k; ++x)
    for (State y = 0; y < k; ++y)
      if (x != y) off.emplace_back(x, y);
  if (off.size() >= 40) throw PreconditionError("preorder enumeration is limited to universes of at most 6 states");
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << off.size()); ++mask) {
    Relation h = Relation::identity(k);
    for (std::size_t i = 0; i < off.size(); ++i)
      if ((mask >> i) & 1u) h.insert(off[i].first, off[i].second);
    if (is_transitive(h)) out.push_back(std::move(h));
  }
  return out;
}

// All R with H;R;H ⊆ R. These are exactly the up-sets of U×U ordered by (x,y) ≤ (x',y') iff x' H x and y H y',
// so they are enumerated as H-sets of that pair order; pair (x,y) is bit x*k+y.
inline std::vector<Relation> enumerate_stable_relations(Relation const& h) {
  std::size_t k = h.size();
  Relation pair_order(k * k);
  for (State x = 0; x < k; ++x)
    for (State y = 0; y < k; ++y)
      for (State x2 : h.predecessors(x).members())
        for (State y2 : h.successors(y).members()) pair_order.insert(x * k + y, x2 * k + y2);
  std::vector<Relation> out;
  for (auto const& up : enumerate_h_sets(pair_order)) {
    Relation r(k);
    up.for_each([&](State i) { r.insert(i / k, i % k); });
    out.push_back(std::move(r));
  }
  return out;
}

// Visits every H-frame on 1..n states: by size, then preorder, then stable R. Stops when f returns false.
template <typename F>
void for_each_frame(std::size_t n, F&& f) {
  if (n == 0) throw PreconditionError("frame enumeration needs n >= 1");
  std::size_t index = 0;
  for (std::size_t k = 1; k <= n; ++k)
    for (auto const& h : enumerate_preorders(k))
      for (auto& r : enumerate_stable_relations(h))
        if (!f(HFrame(h, std::move(r)), index++)) return;
}

inline std::vector<HFrame> enumerate_frames(std::size_t n) {
  std::vector<HFrame> out;
  for_each_frame(n, [&](HFrame fr, std::size_t) {
    out.push_back(std::move(fr));
    return true;
  });
  return out;
}

inline std::size_t count_frames(std::size_t n) {
  std::size_t c = 0;
  for (std::size_t k = 1; k <= n; ++k)
    for (auto const& h : enumerate_preorders(k)) c += enumerate_stable_relations(h).size();
  return c;
}

struct SearchVerdict {
  bool countermodel_found = false;
  std::optional<HModel> model;
  State state = 0;
  std::size_t frame_index = 0;     // position in the enumeration order
  std::size_t valuation_index = 0; // position among the frame's valuations
  std::size_t bound = 0;
  std::size_t frames_checked = 0; // frames that satisfied every constraint
  std::size_t frames_skipped = 0; // frames rejected by a constraint
};

// First (frame, valuation, state) in enumeration order where f fails, among frames satisfying every spec in sigma.
inline SearchVerdict find_countermodel(Formula const& f, std::size_t bound, std::vector<InclusionSpec> const& sigma = {}) {
  if (bound == 0) throw PreconditionError("search bound must be at least 1");
  SearchVerdict verdict;
  verdict.bound = bound;
  CompiledFormula compiled(f);
  auto atom_names = atoms(f);
  for_each_frame(bound, [&](HFrame fr, std::size_t index) {
    for (auto const& spec : sigma)
      if (!check_inclusion(fr, spec)) {
        ++verdict.frames_skipped;
        return true;
      }
    ++verdict.frames_checked;
    auto fv = valid_in_frame(fr, compiled, atom_names);
    if (fv.valid) return true;
    verdict.countermodel_found = true;
    verdict.model.emplace(std::move(fr), fv.counterexample->valuation);
    verdict.state = fv.counterexample->state;
    verdict.frame_index = index;
    verdict.valuation_index = fv.counterexample->valuation_index;
    return false;
  });
  return verdict;
}

// Search under constraints named by correspondence rows (e.g. "transitive", "reflexive").
inline SearchVerdict decide_bounded(std::vector<std::string> const& row_names, Formula const& f, std::size_t bound) {
  std::vector<InclusionSpec> sigma;
  for (auto const& name : row_names) sigma.push_back(row_or_throw(name).spec);
  return find_countermodel(f, bound, sigma);
}

// Whether the constraints fall in a class known to have the finite model property:
// every inclusion of the form H ⊆ S1;…;Sm or R ⊆ S1;…;Sm, or R transitive, possibly with H ⊆ R.
inline bool has_fmp_guarantee(std::vector<InclusionSpec> const& sigma) {
  bool syntactic = true;
  for (auto const& s : sigma)
    if (!(s.lhs.empty() || s.lhs == Chain{Selector::R})) syntactic = false;
  if (syntactic) return true;
  InclusionSpec const trans{{Selector::R, Selector::R}, {Selector::R}};
  InclusionSpec const refl{{}, {Selector::R}};
  bool has_trans = false;
  for (auto const& s : sigma) {
    if (s == trans)
      has_trans = true;
    else if (!(s == refl))
      return false;
  }
  return has_trans;
}

} // namespace biskt
