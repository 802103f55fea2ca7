// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biskt/corpus.hpp"
#include "biskt/correspondence.hpp"
#include "biskt/filtration.hpp"
#include "biskt/hilbert.hpp"
#include "biskt/morphisms.hpp"
#include "biskt/morphology.hpp"
#include "biskt/parse.hpp"
#include "biskt/random.hpp"
#include "biskt/search.hpp"
#include "biskt/semantics.hpp"
#include "fixtures.hpp"
#include "mutation.hpp"

using namespace biskt;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream note;

  void require(bool cond, std::string const& what) {
    if (!cond && passed) {
      passed = false;
      note << "failed: " << what << "; ";
    }
  }
};

struct Criterion {
  int id;
  char const* title;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

Formula const p = atom("p");

void worked_examples(Outcome& o) {
  using fixtures::h1, fixtures::r1, fixtures::h2, fixtures::r2;
  o.require(left_converse(h1(), r1()) == Relation(4, {{3, 0}, {3, 1}, {2, 0}, {2, 1}}), "left converse of the first frame");
  o.require(left_converse(h2(), r2()) == Relation(3, {{2, 0}, {2, 1}}), "left converse of the second frame");
  o.require(!is_stable(h1(), converse(r1())), "converse of R1 is not stable");
  o.note << "exact goldens";
}

StateMap first_map() { return {0, 1, 2, 2}; }
StateMap second_map() { return {0, 0, 1, 2}; }

void bounded_morphisms(Outcome& o) {
  HModel m1 = fixtures::m1(), m2 = fixtures::m2(), n1 = fixtures::n1(), n2 = fixtures::n2();
  o.require(check_bounded_morphism(m1, m2, first_map()).ok(), "first map is a bounded morphism");
  o.require(check_bounded_morphism(n1, n2, second_map()).ok(), "second map is a bounded morphism");
  o.require(!satisfies(m1, 2, bdia(p)), "M1,2 does not satisfy <*>p");
  o.require(satisfies(m2, 2, bdia(p)), "M2,c satisfies <*>p");
  o.require(satisfies(n1, 0, wbox(p)), "N1,0 satisfies []p");
  o.require(!satisfies(n2, 0, wbox(p)), "N2,a does not satisfy []p");
  auto a = check_truth_preservation(m1, m2, first_map(), {"p"}, 3);
  auto b = check_truth_preservation(n1, n2, second_map(), {"p"}, 3);
  o.require(a.ok && b.ok, "depth-3 truth preservation");
  o.require(a.formulas_covered == count_diamond_box_formulas(1, 3), "every depth-3 formula covered");
  o.note << a.formulas_covered << " formulas per map";
}

void soundness(Outcome& o) {
  std::size_t frames = count_frames(1) + count_frames(2) + count_frames(3);
  for (auto const& a : axiom_schemes()) {
    std::size_t failures = 0;
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto const& fr : enumerate_frames(n)) failures += !valid_in_frame(fr, a.schema).valid;
    o.require(failures == 0, a.id + " is refuted on some frame");
  }
  o.note << axiom_schemes().size() << " schemes x " << frames << " frames";
}

void correspondence(Outcome& o) {
  std::size_t disagreements = 0, mixed_agree = 0, mixed_total = 0;
  std::vector<HFrame> frames;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& fr : enumerate_frames(n)) frames.push_back(std::move(fr));
  for (auto const& row : table_registry())
    for (auto const& fr : frames) {
      auto rep = verify_correspondence(fr, row.spec);
      if (!rep.agree()) ++disagreements;
      if (row.mixed) {
        ++mixed_total;
        mixed_agree += valid_in_frame(fr, *row.mixed).valid == rep.inclusion;
      }
    }
  o.require(table_registry().size() == 20, "twenty rows");
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.note << table_registry().size() << " rows x " << frames.size() << " frames; mixed forms agree on " << mixed_agree << "/" << mixed_total;
}

void filtration(Outcome& o) {
  std::mt19937_64 rng(20240518);
  std::size_t transitive = 0;
  auto one = [&](HModel const& m, FormulaSet const& delta, FiltrationResult const& filt, char const* what) {
    o.require(verify_filtration_conditions(m, delta, filt).ok(), std::string(what) + " conditions (1)-(7)");
    o.require(verify_filtration_conditions(m, delta, filt).ok() && verify_truth_preservation(m, delta, filt).ok,
              std::string(what) + " truth preservation");
    o.require(check_left_converse_lifting(m, filt).passed, std::string(what) + " left converse lifting");
  };
  for (int i = 0; i < 200; ++i) {
    HModel m = random_model(rng, 6, {"p", "q"});
    FormulaSet delta = subformula_closure(random_formula(rng, {"p", "q"}, 3, CoreModalities));
    one(m, delta, finest_filtration(m, delta), "finest");
    if (is_transitive(m.frame().R())) {
      ++transitive;
      one(m, delta, transitive_filtration(m, delta), "transitive");
    }
  }
  // random frames seldom have transitive R, so a second seeded batch is drawn from transitive frames
  for (int i = 0; i < 200; ++i) {
    HModel m = random_model(rng, random_transitive_frame(rng, 1 + draw(rng, 6)), {"p", "q"});
    FormulaSet delta = subformula_closure(random_formula(rng, {"p", "q"}, 3, CoreModalities));
    one(m, delta, transitive_filtration(m, delta), "transitive");
    ++transitive;
  }
  o.note << "200 models, " << transitive << " transitive instances";
}

void bounded_decision(Outcome& o) {
  auto v = find_countermodel(parse("<*>p -> p"), 2);
  o.require(v.countermodel_found && v.model->size() == 2, "<*>p -> p refuted by a 2-state model");
  for (char const* id : {"A12", "A13"}) {
    auto w = find_countermodel(axiom_or_throw(id).schema, 3);
    o.require(!w.countermodel_found, std::string(id) + " has no countermodel up to 3");
  }
  Formula t = parse("p -> <*>p");
  o.require(!decide_bounded({"reflexive"}, t, 3).countermodel_found, "p -> <*>p holds on reflexive frames up to 3");
  o.require(find_countermodel(t, 2).countermodel_found, "p -> <*>p refuted without constraints");
  o.note << "verdicts exact";
}

void derived_modalities(Outcome& o) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    HModel m = random_model(rng, 4, {"p", "q"});
    Formula f = random_formula(rng, {"p", "q"}, 3, AllModalities);
    o.require(truth_set(m, wdia(f)) == truth_set(m, coneg(wbox(neg(f)))), "<> against its desugaring on " + render(f));
    o.require(truth_set(m, bbox(f)) == truth_set(m, neg(bdia(coneg(f)))), "[*] against its desugaring on " + render(f));
  }
  o.note << "500 pairs";
}

void morphology(Outcome& o) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 1 + draw(rng, 4);
    Relation r = random_relation(rng, n, 1, 2);
    for (std::uint64_t xm = 0; xm < (1u << n); ++xm)
      for (std::uint64_t ym = 0; ym < (1u << n); ++ym) {
        StateSet x = StateSet::from_mask(n, xm), y = StateSet::from_mask(n, ym);
        o.require(dilate(x, r).subset_of(y) == x.subset_of(erode(r, y)), "adjunction");
      }
  }
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 1 + draw(rng, 5);
    Relation r = random_relation(rng, n, 1, 2);
    for (std::uint64_t xm = 0; xm < (1u << n); ++xm) {
      StateSet x = StateSet::from_mask(n, xm);
      StateSet op = opening(x, r), cl = closing(x, r);
      o.require(opening(op, r) == op && closing(cl, r) == cl, "idempotence");
      o.require(op.subset_of(x) && x.subset_of(cl), "anti-extensive opening, extensive closing");
    }
  }
  std::vector<HModel> models{fixtures::m1(), fixtures::m2(), fixtures::n1(), fixtures::n2()};
  for (int i = 0; i < 100; ++i) models.push_back(random_model(rng, 6, {"p"}));
  for (auto const& m : models) {
    bool ok = true;
    try {
      ok = modal_morphology_bridge(m, "p").consistent();
    } catch (Error const&) {
      ok = false;
    }
    o.require(ok, "bridge");
  }
  o.note << "50+50 relations, " << models.size() << " bridge models";
}

void proof_checking(Outcome& o) {
  std::size_t mutants = 0, accepted = 0;
  for (auto const& [name, d] : corpus::derivations()) {
    o.require(check_derivation(d).accepted(), name + " accepted");
    o.require(soundness_sweep(d, 3).sound(), name + " sound");
    ++accepted;
    for (auto const& mu : mutation::mutants(d)) {
      ++mutants;
      o.require(!check_derivation(mu.derivation).accepted(), name + " mutant " + mu.description);
    }
  }
  for (auto const& [name, c] : corpus::certificates()) {
    o.require(check_certificate(c).accepted(), name + " accepted");
    o.require(soundness_sweep(c.derivation, 3, c.sigma).sound(), name + " sound on frames");
    std::vector<Formula> lines;
    for (auto const& ln : c.derivation) lines.push_back(ln.formula);
    o.require(model_validity_sweep(lines, 3, c.sigma).sound(), name + " sound on models");
    ++accepted;
    for (auto const& mu : mutation::mutants(c.derivation)) {
      ++mutants;
      ProvabilityCertificate bad = c;
      bad.derivation = mu.derivation;
      o.require(!check_certificate(bad).accepted(), name + " mutant " + mu.description);
    }
  }
  o.require(mutants >= 20, "at least 20 mutants");
  o.note << accepted << " accepted, " << mutants << " mutants rejected";
}

} // namespace

int main() {
  std::vector<Criterion> const criteria{
      {1, "worked examples", 1, worked_examples},
      {2, "bounded morphisms and depth-3 preservation", 60, bounded_morphisms},
      {3, "axiom soundness on frames up to 3", 600, soundness},
      {4, "correspondence table sweep", 1800, correspondence},
      {5, "filtration", 300, filtration},
      {6, "bounded decision", 600, bounded_decision},
      {7, "derived modalities", 60, derived_modalities},
      {8, "morphology", 120, morphology},
      {9, "proof checking", 300, proof_checking},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (std::exception const& e) {
      o.passed = false;
      o.note << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.passed = false;
      o.note << "; over the " << c.limit_seconds << " s limit";
    }
    failed += !o.passed;
    std::printf("%s  criterion %d: %s (%.2f s) %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, secs, o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
