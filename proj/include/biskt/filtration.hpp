#pragma once

// Filtrations of a finite model through a subformula-closed set Δ.

#include <map>
#include <string>
#include <vector>

#include "correspondence.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "relation.hpp"
#include "report.hpp"
#include "semantics.hpp"

namespace biskt {

struct Partition {
  std::vector<StateSet> classes;  // ordered by least member
  std::vector<std::size_t> class_of; // per source state

  std::size_t size() const { return classes.size(); }
};

enum class FiltrationVariant { Finest, Transitive };

struct FiltrationResult {
  Partition partition;
  HModel model;
  FiltrationVariant variant;
};

namespace detail {
inline void check_delta(FormulaSet const& delta) {
  if (!is_subformula_closed(delta)) throw PreconditionError("filtration: the formula set is not subformula-closed");
  for (auto const& f : delta)
    if (!uses_only(f, {Op::BDia, Op::WBox}))
      throw PreconditionError("filtration: " + render(f) + " uses <> or [*]; desugar first");
}

// [x] S [y] iff x' S y' for some x' ∈ [x], y' ∈ [y]
inline Relation lift(Relation const& s, Partition const& part) {
  Relation out(part.size());
  for (auto [x, y] : s.pairs()) out.insert(part.class_of[x], part.class_of[y]);
  return out;
}
} // namespace detail

// x ~ y iff x and y agree on every formula of Δ.
inline Partition equivalence_classes(HModel const& m, FormulaSet const& delta) {
  detail::check_delta(delta);
  std::vector<Formula> fs(delta.begin(), delta.end());
  CompiledFormula compiled(fs);
  auto sets = compiled.evaluate(m);
  std::map<std::vector<bool>, std::size_t> index;
  Partition part;
  part.class_of.resize(m.size());
  for (State u = 0; u < m.size(); ++u) {
    std::vector<bool> key;
    for (auto r : compiled.roots()) key.push_back(sets[r].contains(u));
    auto [it, inserted] = index.emplace(key, part.classes.size());
    if (inserted) part.classes.emplace_back(m.size());
    part.classes[it->second].insert(u);
    part.class_of[u] = it->second;
  }
  return part;
}

namespace detail {
inline FiltrationResult build_filtration(HModel const& m, FormulaSet const& delta, FiltrationVariant variant) {
  Partition part = equivalence_classes(m, delta);
  auto const& fr = m.frame();
  Relation h_plus = transitive_closure(lift(fr.H(), part));
  Relation r_s = compose({h_plus, lift(fr.R(), part), h_plus});
  if (variant == FiltrationVariant::Transitive) r_s = transitive_closure(r_s);
  std::vector<std::string> labels;
  for (auto const& c : part.classes) labels.push_back(fr.label(c.members().front()));
  Valuation v;
  for (auto const& p : atoms(delta)) {
    StateSet img(part.size());
    m.value(p).for_each([&](State x) { img.insert(part.class_of[x]); });
    v.emplace(p, img);
  }
  return {part, HModel(HFrame(labels, h_plus, r_s), v), variant};
}
} // namespace detail

// Classes of Δ-equivalence with H̲⁺ and R̲ˢ = H̲⁺;R̲;H̲⁺.
inline FiltrationResult finest_filtration(HModel const& m, FormulaSet const& delta) {
  return detail::build_filtration(m, delta, FiltrationVariant::Finest);
}

// As finest_filtration, with R̲ˢ closed transitively; the source R must be transitive.
inline FiltrationResult transitive_filtration(HModel const& m, FormulaSet const& delta) {
  if (!is_transitive(m.frame().R())) throw PreconditionError("transitive_filtration: R is not transitive");
  return detail::build_filtration(m, delta, FiltrationVariant::Transitive);
}

inline std::vector<std::string> const& filtration_conditions() {
  static std::vector<std::string> const names = {"(1) universe", "(2) H-lift", "(3) H-heredity", "(4) R-lift",
                                                 "(5) box",      "(6) diamond", "(7) valuation"};
  return names;
}

inline CheckReport verify_filtration_conditions(HModel const& m, FormulaSet const& delta, FiltrationResult const& filt) {
  CheckReport rep;
  for (auto const& n : filtration_conditions()) rep.add(n);
  auto& c1 = rep.checks[0];
  Partition expected = equivalence_classes(m, delta);
  Partition const& part = filt.partition;
  HModel const& q = filt.model;
  if (part.classes != expected.classes || part.class_of != expected.class_of)
    fail(c1, "partition differs from the classes of Delta-equivalence");
  if (q.size() != part.size()) fail(c1, "filtrated model has " + std::to_string(q.size()) + " states for " + std::to_string(part.size()) + " classes");
  if (!c1.passed) {
    for (std::size_t i = 1; i < rep.checks.size(); ++i) fail(rep.checks[i], "not checked: universe mismatch");
    return rep;
  }
  auto const& fr = m.frame();
  auto const& Hq = q.frame().H();
  auto const& Rq = q.frame().R();
  auto const& cls = part.class_of;
  auto lbl = [&](State x) { return fr.label(x); };
  std::vector<Formula> fs(delta.begin(), delta.end());
  CompiledFormula compiled(fs);
  auto sets = compiled.evaluate(m);
  std::map<Formula, StateSet> truth;
  for (std::size_t i = 0; i < fs.size(); ++i) truth.emplace(fs[i], sets[compiled.roots()[i]]);
  auto t = [&](Formula const& f) -> StateSet const& { return truth.at(f); };

  std::size_t n = m.size();
  for (State x = 0; x < n; ++x)
    for (State y = 0; y < n; ++y) {
      bool hq = Hq.contains(cls[x], cls[y]);
      bool rq = Rq.contains(cls[x], cls[y]);
      if (fr.H().contains(x, y) && !hq) fail(rep.checks[1], lbl(x) + " H " + lbl(y) + " but the classes are not H-related");
      if (fr.R().contains(x, y) && !rq) fail(rep.checks[3], lbl(x) + " R " + lbl(y) + " but the classes are not R-related");
      for (auto const& f : fs) {
        if (hq && t(f).contains(x) && !t(f).contains(y))
          fail(rep.checks[2], "[" + lbl(x) + "] H [" + lbl(y) + "], " + render(f) + " holds at " + lbl(x) + " but not at " + lbl(y));
        if (rq && f.op() == Op::WBox && t(f).contains(x) && !t(f.sub()).contains(y))
          fail(rep.checks[4], "[" + lbl(x) + "] R [" + lbl(y) + "], " + render(f) + " holds at " + lbl(x) + " but " + render(f.sub()) + " fails at " + lbl(y));
        if (rq && f.op() == Op::BDia && t(f.sub()).contains(x) && !t(f).contains(y))
          fail(rep.checks[5], "[" + lbl(x) + "] R [" + lbl(y) + "], " + render(f.sub()) + " holds at " + lbl(x) + " but " + render(f) + " fails at " + lbl(y));
      }
    }
  for (auto const& p : atoms(delta)) {
    StateSet img(part.size());
    m.value(p).for_each([&](State x) { img.insert(cls[x]); });
    if (q.value(p) != img) fail(rep.checks[6], "V(" + p + ") is not the set of classes of V(" + p + ") in the source");
  }
  return rep;
}

struct TruthPreservationReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::optional<Formula> formula;
  State state = 0;
};

// M,x ⊨ φ iff M_Δ,[x] ⊨ φ for every x and φ ∈ Δ.
inline TruthPreservationReport verify_truth_preservation(HModel const& m, FormulaSet const& delta, FiltrationResult const& filt) {
  if (!verify_filtration_conditions(m, delta, filt).ok())
    throw PreconditionError("verify_truth_preservation: not a filtration");
  TruthPreservationReport rep;
  std::vector<Formula> fs(delta.begin(), delta.end());
  CompiledFormula compiled(fs);
  auto src = compiled.evaluate(m);
  auto dst = compiled.evaluate(filt.model);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto r = compiled.roots()[i];
    for (State x = 0; x < m.size(); ++x) {
      ++rep.pairs_checked;
      if (rep.ok && src[r].contains(x) != dst[r].contains(filt.partition.class_of[x])) {
        rep.ok = false;
        rep.formula = fs[i];
        rep.state = x;
      }
    }
  }
  return rep;
}

// (x,y) in the source left converse implies ([x],[y]) in the left converse of the filtrated frame.
inline Check check_left_converse_lifting(HModel const& m, FiltrationResult const& filt) {
  Check c{"left converse lifting", true, {}};
  auto const& lc = m.frame().left_converse();
  auto const& lcq = filt.model.frame().left_converse();
  auto const& cls = filt.partition.class_of;
  for (auto [x, y] : lc.pairs())
    if (!lcq.contains(cls[x], cls[y]))
      fail(c, "(" + m.frame().label(x) + "," + m.frame().label(y) + ") in LC but the classes are not LC-related");
  return c;
}

// Rows whose inclusion has the shape H ⊆ S1;…;Sm or R ⊆ S1;…;Sm and holds in the source are expected to hold after filtrating.
inline CheckReport check_inclusion_transfer(HModel const& m, FiltrationResult const& filt) {
  CheckReport rep;
  for (auto const& row : table_registry()) {
    auto const& lhs = row.spec.lhs;
    if (!(lhs.empty() || lhs == Chain{Selector::R})) continue;
    if (!check_inclusion(m.frame(), row.spec)) continue;
    auto& c = rep.add(row.name);
    if (!check_inclusion(filt.model.frame(), row.spec)) fail(c, render(row.spec) + " holds in the source but not after filtrating");
  }
  return rep;
}

} // namespace biskt
