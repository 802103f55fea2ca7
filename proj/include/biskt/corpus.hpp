#pragma once

// Bundled derivations and provability certificates.

#include <string>
#include <vector>

#include "hilbert.hpp"

namespace biskt::corpus {

inline Formula const P = atom("p");
inline Formula const Q = atom("q");
inline Formula const R = atom("r");

// p -> p
inline Derivation identity() {
  DerivationBuilder b;
  b.identity(P);
  return b.lines();
}

// ([]p & []q) -> [](p & q)
inline Derivation box_conjunction() {
  DerivationBuilder b;
  Formula bp = wbox(P), bq = wbox(Q), both = conj(bp, bq);
  auto to_each = [&](std::string const& proj, Formula const& inner) {
    std::size_t l = b.axiom(proj, {{"p", bp}, {"q", bq}}); // both -> []x
    std::size_t m = b.mon_bdia(l);                          // <*>both -> <*>[]x
    std::size_t a = b.axiom("A13", {{"p", inner}});         // <*>[]x -> x
    return b.hs(m, a);
  };
  std::size_t lp = to_each("A5", P);
  std::size_t lq = to_each("A6", Q);
  std::size_t pq = b.conj_intro(lp, lq);  // <*>both -> (p & q)
  std::size_t boxed = b.mon_box(pq);      // []<*>both -> [](p & q)
  std::size_t unit = b.axiom("A12", {{"p", both}});
  b.hs(unit, boxed);
  return b.lines();
}

// (<*>p | <*>q) -> <*>(p | q)
inline Derivation diamond_disjunction() {
  DerivationBuilder b;
  Formula target = bdia(disj(P, Q));
  std::size_t lp = b.mon_bdia(b.axiom("A2", {{"p", P}, {"q", Q}}));
  std::size_t lq = b.mon_bdia(b.axiom("A3", {{"p", P}, {"q", Q}}));
  std::size_t a4 = b.axiom("A4", {{"p", bdia(P)}, {"q", bdia(Q)}, {"r", target}});
  std::size_t k = b.mp(lp, a4);
  b.mp(lq, k);
  return b.lines();
}

// T -> []T
inline Derivation box_top() {
  DerivationBuilder b;
  std::size_t unit = b.axiom("A12", {{"p", top()}});   // T -> []<*>T
  std::size_t a9 = b.axiom("A9", {{"p", bdia(top())}}); // <*>T -> T
  std::size_t mono = b.mon_box(a9);                     // []<*>T -> []T
  b.hs(unit, mono);
  return b.lines();
}

// <*>F -> F
inline Derivation diamond_bottom() {
  DerivationBuilder b;
  std::size_t a8 = b.axiom("A8", {{"p", wbox(bot())}}); // F -> []F
  std::size_t mono = b.mon_bdia(a8);                    // <*>F -> <*>[]F
  std::size_t counit = b.axiom("A13", {{"p", bot()}});
  b.hs(mono, counit);
  return b.lines();
}

struct NamedDerivation {
  std::string name;
  Derivation derivation;
};

inline std::vector<NamedDerivation> derivations() {
  return {{"identity", identity()},
          {"box-conjunction", box_conjunction()},
          {"diamond-disjunction", diamond_disjunction()},
          {"box-top", box_top()},
          {"diamond-bottom", diamond_bottom()}};
}

// Rule directions of the two residuation laws, each as a certificate over an extra scheme:
// deriving ⊤ -> conclusion in the logic extended by the hypothesis.
inline ProvabilityCertificate finish(DerivationBuilder& b, std::size_t last) {
  Formula concl = b.at(last);
  b.under_top(last);
  return {{}, concl, b.sigma_schemes(), b.lines()};
}

// from (p -< q) -> r infer p -> (q | r)
inline ProvabilityCertificate coimp_residuation_forward() {
  DerivationBuilder b({imp(coimp(P, Q), R)});
  std::size_t hyp = b.sigma(0);
  std::size_t mono = b.disj_mono_right(Q, hyp); // (q | (p -< q)) -> (q | r)
  std::size_t a10 = b.axiom("A10", {{"p", P}, {"q", Q}});
  return finish(b, b.hs(a10, mono));
}

// from p -> (q | r) infer (p -< q) -> r
inline ProvabilityCertificate coimp_residuation_backward() {
  DerivationBuilder b({imp(P, disj(Q, R))});
  std::size_t hyp = b.sigma(0);
  std::size_t mono = b.mon_coimp(hyp, Q); // (p -< q) -> ((q | r) -< q)
  std::size_t a11 = b.axiom("A11", {{"q", Q}, {"r", R}});
  return finish(b, b.hs(mono, a11));
}

// from <*>p -> q infer p -> []q
inline ProvabilityCertificate tense_residuation_forward() {
  DerivationBuilder b({imp(bdia(P), Q)});
  std::size_t mono = b.mon_box(b.sigma(0)); // []<*>p -> []q
  std::size_t unit = b.axiom("A12", {{"p", P}});
  return finish(b, b.hs(unit, mono));
}

// from p -> []q infer <*>p -> q
inline ProvabilityCertificate tense_residuation_backward() {
  DerivationBuilder b({imp(P, wbox(Q))});
  std::size_t mono = b.mon_bdia(b.sigma(0)); // <*>p -> <*>[]q
  std::size_t counit = b.axiom("A13", {{"p", Q}});
  return finish(b, b.hs(mono, counit));
}

// {q} proves q
inline ProvabilityCertificate premise_identity() {
  DerivationBuilder b;
  b.identity(Q);
  return {{Q}, Q, {}, b.lines()};
}

// ∅ proves T
inline ProvabilityCertificate empty_top() {
  DerivationBuilder b;
  b.identity(top());
  return {{}, top(), {}, b.lines()};
}

struct NamedCertificate {
  std::string name;
  ProvabilityCertificate certificate;
};

inline std::vector<NamedCertificate> certificates() {
  return {{"coimp-residuation-forward", coimp_residuation_forward()},
          {"coimp-residuation-backward", coimp_residuation_backward()},
          {"tense-residuation-forward", tense_residuation_forward()},
          {"tense-residuation-backward", tense_residuation_backward()},
          {"premise-identity", premise_identity()},
          {"empty-top", empty_top()}};
}

} // namespace biskt::corpus
