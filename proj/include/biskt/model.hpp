#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "relation.hpp"
#include "state_set.hpp"

namespace biskt {

struct BuildOptions {
  bool stabilize = false; // replace R by H;R;H instead of rejecting an unstable R
  bool h_close = false;   // replace each V(p) by its H-closure instead of rejecting it
};

// x H y, y R z, z H w with (x,w) ∉ R.
struct StabilityWitness {
  State x, y, z, w;
};

inline std::optional<StabilityWitness> find_stability_violation(Relation const& h, Relation const& r) {
  for (State x = 0; x < h.size(); ++x)
    for (State y : h.successors(x).members())
      for (State z : r.successors(y).members())
        for (State w : h.successors(z).members())
          if (!r.contains(x, w)) return StabilityWitness{x, y, z, w};
  return std::nullopt;
}

// u ∈ X, u H v, v ∉ X.
inline std::optional<std::pair<State, State>> find_h_set_violation(Relation const& h, StateSet const& x) {
  for (State u : x.members())
    for (State v : h.successors(u).members())
      if (!x.contains(v)) return std::pair{u, v};
  return std::nullopt;
}

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// (U, H, R) with H a preorder and R stable over it. The left converse is cached.
class HFrame {
public:
  // h may hold generator pairs only; it is closed reflexively and transitively here.
  HFrame(std::vector<std::string> labels, Relation const& h, Relation r, BuildOptions const& opts = {})
      : labels_(std::move(labels)) {
    if (labels_.empty()) throw ModelError(ModelError::Kind::EmptyUniverse, "universe is empty");
    if (h.size() != labels_.size() || r.size() != labels_.size())
      throw SizeMismatch("frame relations do not match the universe size");
    std::set<std::string> seen;
    for (auto const& l : labels_)
      if (!seen.insert(l).second) throw ModelError(ModelError::Kind::BadLabel, "duplicate state label '" + l + "'");
    h_ = reflexive_transitive_closure(h);
    if (opts.stabilize) r = stability_closure(h_, r);
    if (auto w = find_stability_violation(h_, r)) {
      throw ModelError(ModelError::Kind::NotStable,
                       "R is not stable: " + labels_[w->x] + " H " + labels_[w->y] + ", " + labels_[w->y] + " R " +
                           labels_[w->z] + ", " + labels_[w->z] + " H " + labels_[w->w] + " but (" + labels_[w->x] +
                           "," + labels_[w->w] + ") not in R");
    }
    r_ = std::move(r);
    lc_ = compose({h_, converse(r_), h_});
  }

  HFrame(Relation const& h, Relation r, BuildOptions const& opts = {})
      : HFrame(default_labels(h.size()), h, std::move(r), opts) {}

  std::size_t size() const noexcept { return labels_.size(); }
  std::vector<std::string> const& labels() const noexcept { return labels_; }
  std::string const& label(State s) const { return labels_.at(s); }

  std::optional<State> find_label(std::string const& l) const {
    for (State s = 0; s < labels_.size(); ++s)
      if (labels_[s] == l) return s;
    return std::nullopt;
  }

  State state_of(std::string const& l) const {
    if (auto s = find_label(l)) return *s;
    throw InputError("unknown state label '" + l + "'");
  }

  Relation const& H() const noexcept { return h_; }
  Relation const& R() const noexcept { return r_; }
  Relation const& left_converse() const noexcept { return lc_; }

  friend bool operator==(HFrame const& a, HFrame const& b) { return a.h_ == b.h_ && a.r_ == b.r_; }

private:
  std::vector<std::string> labels_;
  Relation h_, r_, lc_;
};

using Valuation = std::map<std::string, StateSet>;

// An H-frame together with a valuation into H-sets. Atoms absent from the valuation are false everywhere.
class HModel {
public:
  HModel(HFrame frame, Valuation valuation, BuildOptions const& opts = {})
      : HModel(std::make_shared<HFrame const>(std::move(frame)), std::move(valuation), opts) {}

  HModel(std::shared_ptr<HFrame const> frame, Valuation valuation, BuildOptions const& opts = {})
      : frame_(std::move(frame)) {
    for (auto& [p, set] : valuation) {
      if (set.size() != frame_->size()) throw SizeMismatch("valuation of '" + p + "' has the wrong universe size");
      if (opts.h_close) set = h_closure(frame_->H(), set);
      if (auto w = find_h_set_violation(frame_->H(), set)) {
        throw ModelError(ModelError::Kind::NotHSet, "V(" + p + ") is not an H-set: " + frame_->label(w->first) +
                                                        " in V(" + p + "), " + frame_->label(w->first) + " H " +
                                                        frame_->label(w->second) + ", " + frame_->label(w->second) +
                                                        " not in V(" + p + ")");
      }
    }
    valuation_ = std::move(valuation);
  }

  HFrame const& frame() const noexcept { return *frame_; }
  std::shared_ptr<HFrame const> const& frame_ptr() const noexcept { return frame_; }
  Valuation const& valuation() const noexcept { return valuation_; }
  std::size_t size() const noexcept { return frame_->size(); }

  StateSet value(std::string const& p) const {
    auto it = valuation_.find(p);
    return it == valuation_.end() ? StateSet(size()) : it->second;
  }

  friend bool operator==(HModel const& a, HModel const& b) { return a.frame() == b.frame() && a.valuation_ == b.valuation_; }

private:
  std::shared_ptr<HFrame const> frame_;
  Valuation valuation_;
};

// Label-level description of a model, as read from a model file.
struct ModelSpec {
  std::vector<std::string> universe;
  std::vector<std::pair<std::string, std::string>> h_pairs;
  std::vector<std::pair<std::string, std::string>> r_pairs;
  std::map<std::string, std::vector<std::string>> valuation;
  BuildOptions options;
};

inline HModel build_model(ModelSpec const& spec) {
  if (spec.universe.empty()) throw ModelError(ModelError::Kind::EmptyUniverse, "universe is empty");
  std::map<std::string, State> index;
  for (State s = 0; s < spec.universe.size(); ++s)
    if (!index.emplace(spec.universe[s], s).second)
      throw ModelError(ModelError::Kind::BadLabel, "duplicate state label '" + spec.universe[s] + "'");
  auto lookup = [&](std::string const& l) {
    auto it = index.find(l);
    if (it == index.end()) throw ModelError(ModelError::Kind::BadLabel, "unknown state label '" + l + "'");
    return it->second;
  };
  std::size_t n = spec.universe.size();
  Relation h(n), r(n);
  for (auto const& [a, b] : spec.h_pairs) h.insert(lookup(a), lookup(b));
  for (auto const& [a, b] : spec.r_pairs) r.insert(lookup(a), lookup(b));
  HFrame frame(spec.universe, h, r, spec.options);
  Valuation v;
  for (auto const& [p, labels] : spec.valuation) {
    if (!is_atom_name(p)) throw InputError("invalid atom name '" + p + "' in valuation");
    StateSet set(n);
    for (auto const& l : labels) set.insert(lookup(l));
    v.emplace(p, set);
  }
  return HModel(std::move(frame), std::move(v), spec.options);
}

// Inverse of build_model: H is listed without its reflexive pairs.
inline ModelSpec to_spec(HModel const& m) {
  ModelSpec spec;
  auto const& fr = m.frame();
  spec.universe = fr.labels();
  for (auto [x, y] : fr.H().pairs())
    if (x != y) spec.h_pairs.emplace_back(fr.label(x), fr.label(y));
  for (auto [x, y] : fr.R().pairs()) spec.r_pairs.emplace_back(fr.label(x), fr.label(y));
  for (auto const& [p, set] : m.valuation()) {
    auto& labels = spec.valuation[p];
    for (State s : set.members()) labels.push_back(fr.label(s));
  }
  return spec;
}

} // namespace biskt
