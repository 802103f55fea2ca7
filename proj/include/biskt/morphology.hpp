#pragma once

// Set-based mathematical morphology over a finite relation, and its hypergraph specialisation.

#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "relation.hpp"
#include "semantics.hpp"
#include "state_set.hpp"

namespace biskt {

// X ⊕ R = {u | x R u for some x ∈ X}
inline StateSet dilate(StateSet const& x, Relation const& r) { return r.image(x); }

// R ⊖ X = {u | u R x implies x ∈ X}
inline StateSet erode(Relation const& r, StateSet const& x) { return r.universal_preimage(x); }

// (R ⊖ X) ⊕ R
inline StateSet opening(StateSet const& x, Relation const& r) { return dilate(erode(r, x), r); }

// R ⊖ (X ⊕ R)
inline StateSet closing(StateSet const& x, Relation const& r) { return erode(r, dilate(x, r)); }

// Reflexive, and x H y H z forces x = y or y = z.
inline bool is_hypergraph(Relation const& h) {
  if (!is_reflexive(h)) return false;
  for (State x = 0; x < h.size(); ++x)
    for (State y : h.successors(x).members()) {
      if (y == x) continue;
      for (State z : h.successors(y).members())
        if (z != y) return false;
    }
  return true;
}

struct Incidence {
  StateSet edges; // has an H-successor other than itself
  StateSet nodes; // H-successors are only itself
};

inline Incidence classify(Relation const& h) {
  if (!is_hypergraph(h)) throw PreconditionError("classify: relation is not a hypergraph incidence relation");
  Incidence out{StateSet(h.size()), StateSet(h.size())};
  for (State u = 0; u < h.size(); ++u) {
    if (h.successors(u) == StateSet(h.size(), {u}))
      out.nodes.insert(u);
    else
      out.edges.insert(u);
  }
  return out;
}

// Truth sets of ◆p, □p, ◆□p, □◆p beside the morphological operations on V(p) they denote.
struct MorphologyBridge {
  StateSet bdia, wbox, bdia_wbox, wbox_bdia;
  StateSet dilation, erosion, opening, closing;

  bool consistent() const {
    return bdia == dilation && wbox == erosion && bdia_wbox == opening && wbox_bdia == closing;
  }
};

inline MorphologyBridge modal_morphology_bridge(HModel const& m, std::string const& atom_name) {
  if (!m.valuation().contains(atom_name)) throw PreconditionError("atom '" + atom_name + "' has no valuation");
  Formula p = atom(atom_name);
  StateSet v = m.value(atom_name);
  Relation const& r = m.frame().R();
  MorphologyBridge b{truth_set(m, bdia(p)), truth_set(m, wbox(p)), truth_set(m, bdia(wbox(p))), truth_set(m, wbox(bdia(p))),
                     dilate(v, r),          erode(r, v),           opening(v, r),                 closing(v, r)};
  if (!b.consistent()) throw Error("modal_morphology_bridge: truth sets disagree with the morphological operations");
  return b;
}

// 4-adjacency grid graph: one node per pixel, one edge element per adjacent pair.
// H links each edge to its two pixels; R = H;H˘;H relates an element to everything in its closed neighbourhood.
// p holds on the black pixels and the edges between two black pixels.
struct GridImage {
  std::size_t width = 0, height = 0;
  std::vector<std::pair<std::size_t, std::size_t>> black;
};

inline ModelSpec grid_model(GridImage const& img) {
  if (img.width == 0 || img.height == 0) throw InputError("grid dimensions must be positive");
  auto pixel = [](std::size_t x, std::size_t y) { return "n" + std::to_string(x) + "_" + std::to_string(y); };
  std::vector<std::vector<bool>> is_black(img.width, std::vector<bool>(img.height, false));
  for (auto [x, y] : img.black) {
    if (x >= img.width || y >= img.height) throw InputError("black pixel outside the grid");
    is_black[x][y] = true;
  }
  ModelSpec spec;
  auto& black = spec.valuation["p"];
  for (std::size_t y = 0; y < img.height; ++y)
    for (std::size_t x = 0; x < img.width; ++x) {
      spec.universe.push_back(pixel(x, y));
      if (is_black[x][y]) black.push_back(pixel(x, y));
    }
  auto add_edge = [&](std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1) {
    std::string e = "e" + std::to_string(x0) + "_" + std::to_string(y0) + "_" + std::to_string(x1) + "_" + std::to_string(y1);
    spec.universe.push_back(e);
    spec.h_pairs.emplace_back(e, pixel(x0, y0));
    spec.h_pairs.emplace_back(e, pixel(x1, y1));
    if (is_black[x0][y0] && is_black[x1][y1]) black.push_back(e);
  };
  for (std::size_t y = 0; y < img.height; ++y)
    for (std::size_t x = 0; x < img.width; ++x) {
      if (x + 1 < img.width) add_edge(x, y, x + 1, y);
      if (y + 1 < img.height) add_edge(x, y, x, y + 1);
    }
  // R = H;H˘;H, computed on indices and written back as label pairs
  ModelSpec frame_only = spec;
  frame_only.valuation.clear();
  HModel tmp = build_model(frame_only);
  Relation const& h = tmp.frame().H();
  Relation r = compose({h, converse(h), h});
  for (auto [a, b] : r.pairs()) spec.r_pairs.emplace_back(tmp.frame().label(a), tmp.frame().label(b));
  return spec;
}

} // namespace biskt
