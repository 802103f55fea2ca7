#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "relation.hpp"
#include "state_set.hpp"

namespace biskt {

// A formula flattened into post-order so that every truth set is computed once per model.
class CompiledFormula {
public:
  explicit CompiledFormula(Formula const& f) { root_ = add(f); }

  explicit CompiledFormula(std::vector<Formula> const& fs) {
    for (auto const& f : fs) roots_.push_back(add(f));
    root_ = roots_.empty() ? 0 : roots_.back();
  }

  // Truth sets of every node; index with root() or roots().
  std::vector<StateSet> evaluate(HModel const& m) const {
    auto const& fr = m.frame();
    std::size_t n = fr.size();
    std::vector<StateSet> val;
    val.reserve(nodes_.size());
    for (auto const& node : nodes_) {
      switch (node.op) {
      case Op::Top: val.push_back(StateSet::full(n)); break;
      case Op::Bot: val.push_back(StateSet(n)); break;
      case Op::Atom: val.push_back(m.value(node.name)); break;
      case Op::And: val.push_back(val[node.l] & val[node.r]); break;
      case Op::Or: val.push_back(val[node.l] | val[node.r]); break;
      // every H-successor in A is in B
      case Op::Imp: val.push_back(fr.H().universal_preimage(~val[node.l] | val[node.r])); break;
      // some H-predecessor is in A but not in B
      case Op::Coimp: val.push_back(fr.H().image(val[node.l] - val[node.r])); break;
      case Op::BDia: val.push_back(fr.R().image(val[node.l])); break;
      case Op::WBox: val.push_back(fr.R().universal_preimage(val[node.l])); break;
      case Op::WDia: val.push_back(fr.left_converse().image(val[node.l])); break;
      case Op::BBox: val.push_back(fr.left_converse().universal_preimage(val[node.l])); break;
      }
    }
    return val;
  }

  StateSet truth_set(HModel const& m) const { return evaluate(m)[root_]; }

  std::size_t root() const noexcept { return root_; }
  std::vector<std::size_t> const& roots() const noexcept { return roots_; }

private:
  struct Node {
    Op op;
    std::string name;
    std::size_t l = 0, r = 0;
  };

  std::size_t add(Formula const& f) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    Node node{f.op(), f.is(Op::Atom) ? f.name() : std::string{}};
    if (is_unary(f.op())) node.l = add(f.sub());
    if (is_binary(f.op())) {
      node.l = add(f.left());
      node.r = add(f.right());
    }
    nodes_.push_back(std::move(node));
    index_.emplace(f, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  std::vector<Node> nodes_;
  std::unordered_map<Formula, std::size_t> index_;
  std::size_t root_ = 0;
  std::vector<std::size_t> roots_;
};

inline StateSet truth_set(HModel const& m, Formula const& f) { return CompiledFormula(f).truth_set(m); }

inline bool satisfies(HModel const& m, State u, Formula const& f) {
  if (u >= m.size()) throw PreconditionError("unknown state " + std::to_string(u));
  return truth_set(m, f).contains(u);
}

inline bool valid_in_model(HModel const& m, Formula const& f) { return truth_set(m, f).is_full(); }

// If every γ in gamma holds at u then f holds at u.
inline bool holds_consequence(HModel const& m, State u, FormulaSet const& gamma, Formula const& f) {
  if (u >= m.size()) throw PreconditionError("unknown state " + std::to_string(u));
  for (auto const& g : gamma)
    if (!satisfies(m, u, g)) return true;
  return satisfies(m, u, f);
}

// All H-sets (up-sets) of a preorder, in increasing order of their bit masks (state i is bit i).
inline std::vector<StateSet> enumerate_h_sets(Relation const& h) {
  std::size_t n = h.size();
  std::vector<StateSet> out;
  std::vector<StateSet> up(n), down(n);
  for (State s = 0; s < n; ++s) {
    up[s] = h.successors(s);
    down[s] = h.predecessors(s);
  }
  // Decide states from the highest index down: "out" before "in" gives increasing mask order.
  std::function<void(std::size_t, StateSet const&, StateSet const&)> rec = [&](std::size_t i, StateSet const& in,
                                                                               StateSet const& excluded) {
    if (i == 0) {
      out.push_back(in);
      return;
    }
    State s = i - 1;
    if (in.contains(s)) {
      rec(i - 1, in, excluded);
      return;
    }
    if (excluded.contains(s)) {
      rec(i - 1, in, excluded);
      return;
    }
    rec(i - 1, in, excluded | down[s]);
    rec(i - 1, in | up[s], excluded);
  };
  rec(n, StateSet(n), StateSet(n));
  return out;
}

// Odometer over valuations atoms → H-sets; the first atom is the most significant digit.
class ValuationEnumerator {
public:
  ValuationEnumerator(Relation const& h, std::vector<std::string> atoms)
      : atoms_(std::move(atoms)), h_sets_(enumerate_h_sets(h)), digits_(atoms_.size(), 0) {}

  std::size_t count() const {
    std::size_t c = 1;
    for (std::size_t i = 0; i < atoms_.size(); ++i) c *= h_sets_.size();
    return c;
  }

  // Calls f(valuation, index) until f returns false or the valuations are exhausted.
  template <typename F>
  void for_each(F&& f) {
    std::fill(digits_.begin(), digits_.end(), 0);
    std::size_t index = 0;
    for (;;) {
      Valuation v;
      for (std::size_t i = 0; i < atoms_.size(); ++i) v.emplace(atoms_[i], h_sets_[digits_[i]]);
      if (!f(std::move(v), index++)) return;
      std::size_t k = atoms_.size();
      while (k > 0) {
        if (++digits_[k - 1] < h_sets_.size()) break;
        digits_[k - 1] = 0;
        --k;
      }
      if (k == 0) return;
    }
  }

private:
  std::vector<std::string> atoms_;
  std::vector<StateSet> h_sets_;
  std::vector<std::size_t> digits_;
};

struct Counterexample {
  Valuation valuation;
  State state;
  std::size_t valuation_index = 0;
};

struct FrameVerdict {
  bool valid = true;
  std::optional<Counterexample> counterexample;
  std::size_t valuations_checked = 0;

  explicit operator bool() const noexcept { return valid; }
};

// F ⊨ φ, quantifying over valuations of the atoms that occur in φ only.
inline FrameVerdict valid_in_frame(HFrame const& fr, CompiledFormula const& compiled, std::set<std::string> const& atom_names) {
  FrameVerdict verdict;
  auto shared = std::make_shared<HFrame const>(fr);
  ValuationEnumerator vals(fr.H(), {atom_names.begin(), atom_names.end()});
  vals.for_each([&](Valuation v, std::size_t index) {
    ++verdict.valuations_checked;
    HModel m(shared, std::move(v));
    StateSet truth = compiled.truth_set(m);
    if (truth.is_full()) return true;
    verdict.valid = false;
    verdict.counterexample = Counterexample{m.valuation(), (~truth).members().front(), index};
    return false;
  });
  return verdict;
}

inline FrameVerdict valid_in_frame(HFrame const& fr, Formula const& f) {
  return valid_in_frame(fr, CompiledFormula(f), atoms(f));
}

} // namespace biskt
