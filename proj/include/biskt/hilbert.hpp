#pragma once

// Hilbert-style proof system: axiom schemes A0–A13, rules MP, Mon⊐, Mon□, Mon◆.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "parse.hpp"
#include "search.hpp"
#include "semantics.hpp"

namespace biskt {

struct AxiomScheme {
  std::string id;
  Formula schema;
};

inline std::vector<AxiomScheme> const& axiom_schemes() {
  static std::vector<AxiomScheme> const schemes = [] {
    std::pair<char const*, char const*> const raw[] = {
        {"A0", "p -> (q -> p)"},
        {"A1", "(p -> (q -> r)) -> ((p -> q) -> (p -> r))"},
        {"A2", "p -> (p | q)"},
        {"A3", "q -> (p | q)"},
        {"A4", "(p -> r) -> ((q -> r) -> ((p | q) -> r))"},
        {"A5", "(p & q) -> p"},
        {"A6", "(p & q) -> q"},
        {"A7", "p -> (q -> (p & q))"},
        {"A8", "F -> p"},
        {"A9", "p -> T"},
        {"A10", "p -> (q | (p -< q))"},
        {"A11", "((q | r) -< q) -> r"},
        {"A12", "p -> []<*>p"},
        {"A13", "<*>[]p -> p"},
    };
    std::vector<AxiomScheme> out;
    for (auto const& [id, text] : raw) out.push_back({id, parse(text)});
    return out;
  }();
  return schemes;
}

inline AxiomScheme const& axiom_or_throw(std::string const& id) {
  for (auto const& a : axiom_schemes())
    if (a.id == id) return a;
  throw InputError("unknown axiom '" + id + "'");
}

// Extends `subst` so that substitute(schema, subst) == f; false if impossible.
inline bool match_schema(Formula const& schema, Formula const& f, Substitution& subst) {
  if (schema.op() == Op::Atom) {
    auto [it, inserted] = subst.emplace(schema.name(), f);
    return inserted || it->second == f;
  }
  if (schema.op() != f.op()) return false;
  if (is_binary(schema.op())) return match_schema(schema.left(), f.left(), subst) && match_schema(schema.right(), f.right(), subst);
  if (is_unary(schema.op())) return match_schema(schema.sub(), f.sub(), subst);
  return true;
}

inline std::optional<Substitution> match_schema(Formula const& schema, Formula const& f) {
  Substitution s;
  if (match_schema(schema, f, s)) return s;
  return std::nullopt;
}

inline std::vector<std::pair<AxiomScheme, Substitution>> match_axiom(Formula const& f) {
  std::vector<std::pair<AxiomScheme, Substitution>> out;
  for (auto const& a : axiom_schemes())
    if (auto s = match_schema(a.schema, f)) out.emplace_back(a, *s);
  return out;
}

enum class Rule { Axiom, Sigma, MP, MonCoimp, MonBox, MonBDia };

inline char const* rule_name(Rule r) {
  switch (r) {
  case Rule::Axiom: return "Axiom";
  case Rule::Sigma: return "Sigma";
  case Rule::MP: return "MP";
  case Rule::MonCoimp: return "MonCoimp";
  case Rule::MonBox: return "MonBox";
  case Rule::MonBDia: return "MonBDia";
  }
  return "?";
}

struct Line {
  Formula formula;
  Rule rule = Rule::Axiom;
  std::vector<std::size_t> refs; // earlier lines; for Sigma, the index into sigma
  std::string axiom;             // A0–A13 when rule is Axiom
  Substitution subst;            // optional explicit instance for Axiom and Sigma

  friend bool operator==(Line const&, Line const&) = default;
};

using Derivation = std::vector<Line>;

struct LineViolation {
  std::size_t line;
  std::string message;
};

// Justification check for a single line; `sigma` lists the extra schemes of an extended logic.
inline std::optional<std::string> check_line(Derivation const& d, std::size_t index, std::vector<Formula> const& sigma = {}) {
  if (index >= d.size()) throw PreconditionError("check_line: index out of range");
  Line const& ln = d[index];
  Formula const& f = ln.formula;
  auto earlier = [&](std::size_t k) -> std::optional<std::string> {
    if (k >= index) return "reference " + std::to_string(k) + " is not an earlier line";
    return std::nullopt;
  };
  auto want_refs = [&](std::size_t n) -> std::optional<std::string> {
    if (ln.refs.size() != n) return std::string(rule_name(ln.rule)) + " needs " + std::to_string(n) + " reference(s)";
    for (auto k : ln.refs)
      if (auto e = earlier(k)) return e;
    return std::nullopt;
  };
  auto instance_of = [&](Formula const& schema, std::string const& what) -> std::optional<std::string> {
    if (!ln.subst.empty()) {
      if (substitute(schema, ln.subst) != f) return "formula is not the stated instance of " + what;
      return std::nullopt;
    }
    if (!match_schema(schema, f)) return "formula is not an instance of " + what;
    return std::nullopt;
  };
  auto is_imp = [](Formula const& g) { return g.op() == Op::Imp; };

  switch (ln.rule) {
  case Rule::Axiom: {
    if (!ln.refs.empty()) return "axiom lines take no references";
    for (auto const& a : axiom_schemes())
      if (a.id == ln.axiom) return instance_of(a.schema, a.id);
    return "unknown axiom '" + ln.axiom + "'";
  }
  case Rule::Sigma: {
    if (ln.refs.size() != 1) return "Sigma needs one index into the extra schemes";
    if (ln.refs[0] >= sigma.size()) return "no extra scheme with index " + std::to_string(ln.refs[0]);
    return instance_of(sigma[ln.refs[0]], "extra scheme " + std::to_string(ln.refs[0]));
  }
  case Rule::MP: {
    if (auto e = want_refs(2)) return e;
    Formula const& minor = d[ln.refs[0]].formula;
    Formula const& major = d[ln.refs[1]].formula;
    if (!is_imp(major) || major.left() != minor || major.right() != f)
      return "MP: line " + std::to_string(ln.refs[1]) + " is not (line " + std::to_string(ln.refs[0]) + " -> this line)";
    return std::nullopt;
  }
  case Rule::MonCoimp: {
    if (auto e = want_refs(1)) return e;
    Formula const& prem = d[ln.refs[0]].formula;
    bool ok = is_imp(prem) && is_imp(f) && f.left().op() == Op::Coimp && f.right().op() == Op::Coimp &&
              f.left().left() == prem.left() && f.right().left() == prem.right() && f.left().right() == f.right().right();
    if (!ok) return "MonCoimp: expected (d1 -< s) -> (d2 -< s) from d1 -> d2";
    return std::nullopt;
  }
  case Rule::MonBox:
  case Rule::MonBDia: {
    if (auto e = want_refs(1)) return e;
    Op m = ln.rule == Rule::MonBox ? Op::WBox : Op::BDia;
    Formula const& prem = d[ln.refs[0]].formula;
    bool ok = is_imp(prem) && is_imp(f) && f.left().op() == m && f.right().op() == m && f.left().sub() == prem.left() &&
              f.right().sub() == prem.right();
    if (!ok) return std::string(rule_name(ln.rule)) + ": expected " + op_token(m) + "a -> " + op_token(m) + "b from a -> b";
    return std::nullopt;
  }
  }
  return "unknown rule";
}

struct DerivationReport {
  std::vector<LineViolation> violations;
  std::optional<Formula> conclusion;

  bool accepted() const { return violations.empty() && conclusion.has_value(); }
};

inline DerivationReport check_derivation(Derivation const& d, std::vector<Formula> const& sigma = {}) {
  DerivationReport rep;
  if (d.empty()) {
    rep.violations.push_back({0, "empty derivation"});
    return rep;
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    if (auto e = check_line(d, i, sigma)) rep.violations.push_back({i, *e});
  rep.conclusion = d.back().formula;
  return rep;
}

// ⋀Γ' → φ in the logic extended by `sigma`.
struct ProvabilityCertificate {
  std::vector<Formula> premises;
  Formula conclusion;
  std::vector<Formula> sigma;
  Derivation derivation;
};

inline Formula certificate_target(ProvabilityCertificate const& c) { return imp(big_conj(c.premises), c.conclusion); }

inline DerivationReport check_certificate(ProvabilityCertificate const& c) {
  DerivationReport rep = check_derivation(c.derivation, c.sigma);
  Formula target = certificate_target(c);
  if (rep.conclusion && *rep.conclusion != target)
    rep.violations.push_back({c.derivation.size() - 1, "derivation concludes " + render(*rep.conclusion) + ", certificate needs " + render(target)});
  return rep;
}

struct SoundnessReport {
  std::size_t frames_checked = 0;
  std::size_t frames_skipped = 0; // frames not validating sigma
  std::optional<std::size_t> failing_line;
  std::optional<HModel> countermodel;
  State state = 0;

  bool sound() const { return !failing_line; }
};

// Every formula valid on every frame of size ≤ bound that validates sigma.
inline SoundnessReport validity_sweep(std::vector<Formula> const& formulas, std::size_t bound, std::vector<Formula> const& sigma = {}) {
  std::vector<CompiledFormula> lines, extra;
  std::vector<std::set<std::string>> line_atoms, extra_atoms;
  for (auto const& f : formulas) {
    lines.emplace_back(f);
    line_atoms.push_back(atoms(f));
  }
  for (auto const& s : sigma) {
    extra.emplace_back(s);
    extra_atoms.push_back(atoms(s));
  }
  SoundnessReport rep;
  for_each_frame(bound, [&](HFrame const& fr, std::size_t) {
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (!valid_in_frame(fr, extra[i], extra_atoms[i]).valid) {
        ++rep.frames_skipped;
        return true;
      }
    ++rep.frames_checked;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto v = valid_in_frame(fr, lines[i], line_atoms[i]);
      if (!v.valid) {
        rep.failing_line = i;
        rep.countermodel.emplace(fr, v.counterexample->valuation);
        rep.state = v.counterexample->state;
        return false;
      }
    }
    return true;
  });
  return rep;
}

struct ModelSweepReport {
  std::size_t models_checked = 0; // models where every hypothesis holds everywhere
  std::optional<std::size_t> failing_line;
  std::optional<HModel> countermodel;
  State state = 0;

  bool sound() const { return !failing_line; }
};

// Every formula true everywhere in every model of size ≤ bound in which every hypothesis is true everywhere.
// Valuations range over the atoms of formulas and hypotheses together.
inline ModelSweepReport model_validity_sweep(std::vector<Formula> const& formulas, std::size_t bound,
                                             std::vector<Formula> const& hypotheses) {
  std::vector<Formula> all = hypotheses;
  all.insert(all.end(), formulas.begin(), formulas.end());
  CompiledFormula compiled(all);
  std::set<std::string> names;
  for (auto const& f : all) collect_atoms(f, names);
  std::vector<std::string> atom_list(names.begin(), names.end());
  ModelSweepReport rep;
  for_each_frame(bound, [&](HFrame fr, std::size_t) {
    auto shared = std::make_shared<HFrame const>(std::move(fr));
    bool keep_going = true;
    ValuationEnumerator(shared->H(), atom_list).for_each([&](Valuation const& v, std::size_t) {
      HModel m(shared, v);
      auto sets = compiled.evaluate(m);
      auto roots = compiled.roots();
      for (std::size_t i = 0; i < hypotheses.size(); ++i)
        if (!sets[roots[i]].is_full()) return true;
      ++rep.models_checked;
      for (std::size_t i = 0; i < formulas.size(); ++i) {
        StateSet const& t = sets[roots[hypotheses.size() + i]];
        if (!t.is_full()) {
          rep.failing_line = i;
          rep.state = (~t).members().front();
          rep.countermodel.emplace(m);
          keep_going = false;
          return false;
        }
      }
      return true;
    });
    return keep_going;
  });
  return rep;
}

// Every line of an accepted derivation valid on every frame of size ≤ bound that validates sigma.
inline SoundnessReport soundness_sweep(Derivation const& d, std::size_t bound, std::vector<Formula> const& sigma = {}) {
  if (!check_derivation(d, sigma).accepted()) throw PreconditionError("soundness_sweep: derivation is not accepted");
  std::vector<Formula> formulas;
  for (auto const& ln : d) formulas.push_back(ln.formula);
  return validity_sweep(formulas, bound, sigma);
}

// Appends justified lines and returns their indices; helpers cover common derived rules.
class DerivationBuilder {
public:
  explicit DerivationBuilder(std::vector<Formula> sigma = {}) : sigma_(std::move(sigma)) {}

  std::size_t axiom(std::string const& id, Substitution const& s) {
    return push({substitute(axiom_or_throw(id).schema, s), Rule::Axiom, {}, id, s});
  }

  std::size_t sigma(std::size_t k, Substitution const& s = {}) {
    if (k >= sigma_.size()) throw PreconditionError("no extra scheme with that index");
    return push({substitute(sigma_[k], s), Rule::Sigma, {k}, "", s});
  }

  // from a (line i) and a -> b (line j)
  std::size_t mp(std::size_t i, std::size_t j) {
    Formula const& major = at(j);
    if (major.op() != Op::Imp || major.left() != at(i)) throw PreconditionError("mp: shapes do not match");
    return push({major.right(), Rule::MP, {i, j}, "", {}});
  }

  std::size_t mon_box(std::size_t i) { return mon(i, Rule::MonBox, [](Formula const& f) { return wbox(f); }); }
  std::size_t mon_bdia(std::size_t i) { return mon(i, Rule::MonBDia, [](Formula const& f) { return bdia(f); }); }

  std::size_t mon_coimp(std::size_t i, Formula const& psi) {
    Formula const& prem = implication(i);
    return push({imp(coimp(prem.left(), psi), coimp(prem.right(), psi)), Rule::MonCoimp, {i}, "", {}});
  }

  // a -> a
  std::size_t identity(Formula const& a) {
    Formula aa = imp(a, a);
    std::size_t l0 = axiom("A0", {{"p", a}, {"q", aa}});
    std::size_t l1 = axiom("A1", {{"p", a}, {"q", aa}, {"r", a}});
    std::size_t l2 = mp(l0, l1);
    std::size_t l3 = axiom("A0", {{"p", a}, {"q", a}});
    return mp(l3, l2);
  }

  // a -> c from a -> b (line i) and b -> c (line j)
  std::size_t hs(std::size_t i, std::size_t j) {
    Formula const& ab = implication(i);
    Formula const& bc = implication(j);
    if (ab.right() != bc.left()) throw PreconditionError("hs: middle formulas differ");
    Formula a = ab.left(), b = ab.right(), c = bc.right();
    std::size_t k0 = axiom("A0", {{"p", bc}, {"q", a}});
    std::size_t k1 = mp(j, k0); // a -> (b -> c)
    std::size_t k2 = axiom("A1", {{"p", a}, {"q", b}, {"r", c}});
    std::size_t k3 = mp(k1, k2); // (a -> b) -> (a -> c)
    return mp(i, k3);
  }

  // a -> (b & c) from a -> b (line i) and a -> c (line j)
  std::size_t conj_intro(std::size_t i, std::size_t j) {
    Formula const& ab = implication(i);
    Formula const& ac = implication(j);
    if (ab.left() != ac.left()) throw PreconditionError("conj_intro: antecedents differ");
    Formula a = ab.left(), b = ab.right(), c = ac.right();
    std::size_t k0 = axiom("A7", {{"p", b}, {"q", c}});
    std::size_t k1 = hs(i, k0); // a -> (c -> (b & c))
    std::size_t k2 = axiom("A1", {{"p", a}, {"q", c}, {"r", conj(b, c)}});
    std::size_t k3 = mp(k1, k2);
    return mp(j, k3);
  }

  // (d | b) -> (d | c) from b -> c (line i)
  std::size_t disj_mono_right(Formula const& d, std::size_t i) {
    Formula const& bc = implication(i);
    Formula b = bc.left(), c = bc.right(), target = disj(d, c);
    std::size_t k0 = axiom("A2", {{"p", d}, {"q", c}});
    std::size_t k1 = axiom("A3", {{"p", d}, {"q", c}});
    std::size_t k2 = hs(i, k1); // b -> (d | c)
    std::size_t k3 = axiom("A4", {{"p", d}, {"q", b}, {"r", target}});
    std::size_t k4 = mp(k0, k3);
    return mp(k2, k4);
  }

  // T -> a from a (line i)
  std::size_t under_top(std::size_t i) {
    std::size_t k = axiom("A0", {{"p", at(i)}, {"q", top()}});
    return mp(i, k);
  }

  Formula const& at(std::size_t i) const { return lines_.at(i).formula; }
  std::size_t size() const { return lines_.size(); }
  Derivation const& lines() const { return lines_; }
  std::vector<Formula> const& sigma_schemes() const { return sigma_; }

private:
  std::size_t push(Line ln) {
    lines_.push_back(std::move(ln));
    return lines_.size() - 1;
  }

  Formula const& implication(std::size_t i) const {
    Formula const& f = at(i);
    if (f.op() != Op::Imp) throw PreconditionError("line " + std::to_string(i) + " is not an implication");
    return f;
  }

  template <typename Wrap>
  std::size_t mon(std::size_t i, Rule rule, Wrap wrap) {
    Formula const& prem = implication(i);
    return push({imp(wrap(prem.left()), wrap(prem.right())), rule, {i}, "", {}});
  }

  std::vector<Formula> sigma_;
  Derivation lines_;
};

} // namespace biskt
