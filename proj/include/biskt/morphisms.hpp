#pragma once

// Bounded morphisms for the language with ◇ and ■ as the only modalities.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "report.hpp"
#include "semantics.hpp"

namespace biskt {

// f(u) for each source state u.
using StateMap = std::vector<State>;

inline StateMap map_from_labels(HModel const& m1, HModel const& m2, std::map<std::string, std::string> const& labels) {
  StateMap f(m1.size());
  std::vector<bool> seen(m1.size(), false);
  for (auto const& [src, tgt] : labels) {
    State u = m1.frame().state_of(src);
    f[u] = m2.frame().state_of(tgt);
    seen[u] = true;
  }
  for (State u = 0; u < m1.size(); ++u)
    if (!seen[u]) throw InputError("map is not total: no image for '" + m1.frame().label(u) + "'");
  return f;
}

namespace detail {
inline void check_map_shape(HModel const& m1, HModel const& m2, StateMap const& f) {
  if (f.size() != m1.size()) throw SizeMismatch("state map covers " + std::to_string(f.size()) + " states, source has " + std::to_string(m1.size()));
  for (State t : f)
    if (t >= m2.size()) throw SizeMismatch("state map sends a state outside the target universe");
}
} // namespace detail

inline std::vector<std::string> const& bounded_morphism_conditions() {
  static std::vector<std::string> const names = {"Atom", "H-forth", "H-back", "H~-back", "LC-forth", "LC-back", "LC~-back"};
  return names;
}

inline CheckReport check_bounded_morphism(HModel const& m1, HModel const& m2, StateMap const& f) {
  detail::check_map_shape(m1, m2, f);
  auto const& F1 = m1.frame();
  auto const& F2 = m2.frame();
  auto l1 = [&](State u) { return F1.label(u); };
  auto l2 = [&](State u) { return F2.label(u); };
  CheckReport rep;
  for (auto const& n : bounded_morphism_conditions()) rep.add(n);
  auto& atom_c = rep.checks[0];
  auto& h_forth = rep.checks[1];
  auto& h_back = rep.checks[2];
  auto& hc_back = rep.checks[3];
  auto& lc_forth = rep.checks[4];
  auto& lc_back = rep.checks[5];
  auto& lcc_back = rep.checks[6];

  std::set<std::string> names;
  for (auto const& [p, _] : m1.valuation()) names.insert(p);
  for (auto const& [p, _] : m2.valuation()) names.insert(p);

  // image of a source set under f
  auto image = [&](StateSet const& s) {
    StateSet out(m2.size());
    s.for_each([&](State v) { out.insert(f[v]); });
    return out;
  };

  Relation const& lc1 = F1.left_converse();
  Relation const& lc2 = F2.left_converse();
  for (State u = 0; u < m1.size(); ++u) {
    State fu = f[u];
    for (auto const& p : names)
      if (m1.value(p).contains(u) != m2.value(p).contains(fu))
        fail(atom_c, "state " + l1(u) + ", atom " + p + ": " + (m1.value(p).contains(u) ? "" : "not ") + "in V1, f(" + l1(u) + ")=" + l2(fu) +
                         (m2.value(p).contains(fu) ? "" : " not") + " in V2");
    for (State v : F1.H().successors(u).members())
      if (!F2.H().contains(fu, f[v])) fail(h_forth, l1(u) + " H1 " + l1(v) + " but not " + l2(fu) + " H2 " + l2(f[v]));
    for (State v : lc1.successors(u).members())
      if (!lc2.contains(fu, f[v])) fail(lc_forth, "(" + l1(u) + "," + l1(v) + ") in LC1 but (" + l2(fu) + "," + l2(f[v]) + ") not in LC2");
    auto back = [&](Check& c, StateSet const& required, StateSet const& reached, std::string const& rel) {
      StateSet missing = required - reached;
      if (!missing.empty()) {
        State v = missing.members().front();
        fail(c, "f(" + l1(u) + ")=" + l2(fu) + " " + rel + " " + l2(v) + " has no matching source successor");
      }
    };
    back(h_back, F2.H().successors(fu), image(F1.H().successors(u)), "H2");
    back(hc_back, F2.H().predecessors(fu), image(F1.H().predecessors(u)), "H2~");
    back(lc_back, lc2.successors(fu), image(lc1.successors(u)), "LC2");
    back(lcc_back, lc2.predecessors(fu), image(lc1.predecessors(u)), "LC2~");
  }
  return rep;
}

struct PreservationReport {
  bool ok = true;
  std::optional<Formula> formula; // first formula whose truth differs
  State state = 0;                // a source state where it differs
  std::size_t semantic_classes = 0;  // distinct (truth set in M1, truth set in M2) pairs realised
  std::size_t formulas_covered = 0;  // syntactic formulas of depth ≤ bound represented by those classes
};

// Count of L(◇,■) formulas of depth exactly d over `vars` variables (⊤,⊥,atoms; ∧ ∨ → ⊐; ◇ ■).
inline std::size_t count_diamond_box_formulas(std::size_t vars, std::size_t depth) {
  std::vector<long double> exact{static_cast<long double>(vars + 2)};
  long double below = exact[0];
  for (std::size_t d = 1; d <= depth; ++d) {
    long double prev = exact[d - 1];
    long double at_most_prev = below;
    long double binary = 4 * (at_most_prev * at_most_prev - (at_most_prev - prev) * (at_most_prev - prev));
    exact.push_back(binary + 2 * prev);
    below += exact.back();
  }
  return static_cast<std::size_t>(below);
}

// Every formula of depth ≤ depth over `vars` built from ⊤,⊥,∧,∨,→,⊐,◇,■ has the same truth value at u and f(u).
// Formulas are grouped by their pair of truth sets, so each level is computed on distinct pairs only.
inline PreservationReport check_truth_preservation(HModel const& m1, HModel const& m2, StateMap const& f,
                                                   std::vector<std::string> const& vars, std::size_t depth) {
  detail::check_map_shape(m1, m2, f);
  if (!check_bounded_morphism(m1, m2, f).ok()) throw PreconditionError("check_truth_preservation: map is not a bounded morphism");
  using Sig = std::pair<StateSet, StateSet>;
  std::map<Sig, Formula> seen;
  std::vector<Sig> frontier, all;
  PreservationReport rep;
  auto add = [&](Formula const& phi, StateSet a, StateSet b) {
    Sig sig{std::move(a), std::move(b)};
    if (seen.contains(sig)) return;
    seen.emplace(sig, phi);
    frontier.push_back(sig);
    if (!rep.ok) return;
    for (State u = 0; u < m1.size(); ++u)
      if (sig.first.contains(u) != sig.second.contains(f[u])) {
        rep.ok = false;
        rep.formula = phi;
        rep.state = u;
        return;
      }
  };
  add(top(), StateSet::full(m1.size()), StateSet::full(m2.size()));
  add(bot(), StateSet(m1.size()), StateSet(m2.size()));
  for (auto const& v : vars) add(atom(v), m1.value(v), m2.value(v));

  auto const& H1 = m1.frame().H();
  auto const& H2 = m2.frame().H();
  auto const& L1 = m1.frame().left_converse();
  auto const& L2 = m2.frame().left_converse();
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Sig> prev = std::move(frontier);
    frontier.clear();
    all.insert(all.end(), prev.begin(), prev.end());
    std::vector<Sig> const snapshot = all;
    std::set<Sig> prev_set(prev.begin(), prev.end());
    for (auto const& s : prev) {
      Formula const phi = seen.at(s);
      add(wdia(phi), L1.image(s.first), L2.image(s.second));
      add(bbox(phi), L1.universal_preimage(s.first), L2.universal_preimage(s.second));
    }
    for (auto const& a : snapshot)
      for (auto const& b : snapshot) {
        if (!prev_set.contains(a) && !prev_set.contains(b)) continue;
        Formula const fa = seen.at(a), fb = seen.at(b);
        add(conj(fa, fb), a.first & b.first, a.second & b.second);
        add(disj(fa, fb), a.first | b.first, a.second | b.second);
        add(imp(fa, fb), H1.universal_preimage(~a.first | b.first), H2.universal_preimage(~a.second | b.second));
        add(coimp(fa, fb), H1.image(a.first - b.first), H2.image(a.second - b.second));
      }
  }
  rep.semantic_classes = seen.size();
  rep.formulas_covered = count_diamond_box_formulas(vars.size(), depth);
  return rep;
}

} // namespace biskt
