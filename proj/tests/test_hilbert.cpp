#include <gtest/gtest.h>

#include <random>

#include "biskt/corpus.hpp"
#include "biskt/parse.hpp"
#include "biskt/random.hpp"
#include "mutation.hpp"

using namespace biskt;

namespace {
Formula const p = atom("p"), q = atom("q"), r = atom("r");
}

TEST(Axioms, SchemesAsPublished) {
  auto const& a = axiom_schemes();
  ASSERT_EQ(a.size(), 14u);
  EXPECT_EQ(a[10].schema, imp(p, disj(q, coimp(p, q))));
  EXPECT_EQ(a[11].schema, imp(coimp(disj(q, r), q), r));
  EXPECT_EQ(a[12].schema, imp(p, wbox(bdia(p))));
  EXPECT_EQ(a[13].schema, imp(bdia(wbox(p)), p));
  EXPECT_THROW(axiom_or_throw("A14"), InputError);
}

TEST(MatchAxiom, Examples) {
  Formula a = atom("a"), b = atom("b"), c = atom("c");
  auto m = match_axiom(parse("(a & b) -> (c -> (a & b))"));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].first.id, "A0");
  EXPECT_EQ(m[0].second, (Substitution{{"p", conj(a, b)}, {"q", c}}));

  auto m13 = match_axiom(parse("<*>[](q | r) -> (q | r)"));
  ASSERT_EQ(m13.size(), 1u);
  EXPECT_EQ(m13[0].first.id, "A13");
  EXPECT_EQ(m13[0].second.at("p"), disj(q, r));

  EXPECT_TRUE(match_axiom(parse("q & r")).empty());
  // p -> T matches both A0-shaped and A9 only when consistent
  auto m9 = match_axiom(parse("p -> T"));
  ASSERT_EQ(m9.size(), 1u);
  EXPECT_EQ(m9[0].first.id, "A9");
}

TEST(MatchAxiom, RoundTripsRandomInstances) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    auto const& a = axiom_schemes()[draw(rng, 14)];
    Substitution s;
    for (auto const& v : {"p", "q", "r"}) s[v] = random_formula(rng, {"a", "b"}, 2, AllModalities);
    Formula inst = substitute(a.schema, s);
    bool found = false;
    for (auto const& [scheme, sub] : match_axiom(inst)) {
      EXPECT_EQ(substitute(scheme.schema, sub), inst);
      found |= scheme.id == a.id;
    }
    EXPECT_TRUE(found) << a.id << " " << render(inst);
  }
}

TEST(CheckLine, RuleShapes) {
  Derivation d = {
      {parse("(p & q) -> p"), Rule::Axiom, {}, "A5", {}},
      {parse("[](p & q) -> []p"), Rule::MonBox, {0}, "", {}},
      {parse("<*>(p & q) -> <*>p"), Rule::MonBDia, {0}, "", {}},
      {parse("((p & q) -< r) -> (p -< r)"), Rule::MonCoimp, {0}, "", {}},
      {parse("[]p -> [](p & q)"), Rule::MonBox, {0}, "", {}},
      {parse("((p & q) -< r) -> (p -< s)"), Rule::MonCoimp, {0}, "", {}},
  };
  for (std::size_t i = 0; i < 4; ++i) EXPECT_FALSE(check_line(d, i)) << i;
  EXPECT_TRUE(check_line(d, 4));
  EXPECT_TRUE(check_line(d, 5));
  EXPECT_THROW(check_line(d, 6), PreconditionError);
}

TEST(CheckLine, ModusPonensShape) {
  Derivation d = {
      {parse("p -> (q -> p)"), Rule::Axiom, {}, "A0", {}},
      {parse("q -> (r -> q)"), Rule::Axiom, {}, "A0", {}},
      {parse("q -> p"), Rule::MP, {1, 0}, "", {}},
      {parse("r -> q"), Rule::MP, {2, 1}, "", {}},
  };
  EXPECT_TRUE(check_line(d, 2)); // line 1 is not p
  EXPECT_TRUE(check_line(d, 3));
  d.push_back({parse("q"), Rule::MP, {4, 0}, "", {}});
  EXPECT_TRUE(check_line(d, 4)); // self reference
}

TEST(CheckLine, ExplicitSubstitutionMustMatch) {
  Derivation d = {{parse("a -> (b -> a)"), Rule::Axiom, {}, "A0", {{"p", atom("a")}, {"q", atom("b")}}},
                  {parse("a -> (b -> a)"), Rule::Axiom, {}, "A0", {{"p", atom("a")}, {"q", atom("c")}}},
                  {parse("a -> (b -> a)"), Rule::Axiom, {}, "A1", {}}};
  EXPECT_FALSE(check_line(d, 0));
  EXPECT_TRUE(check_line(d, 1));
  EXPECT_TRUE(check_line(d, 2));
}

TEST(CheckDerivation, IdentityInFiveLines) {
  Derivation d = corpus::identity();
  ASSERT_EQ(d.size(), 5u);
  EXPECT_EQ(d[0].formula, parse("p -> ((p -> p) -> p)"));
  EXPECT_EQ(d[1].axiom, "A1");
  EXPECT_EQ(d[3].formula, parse("p -> (p -> p)"));
  auto rep = check_derivation(d);
  EXPECT_TRUE(rep.accepted());
  EXPECT_EQ(*rep.conclusion, parse("p -> p"));

  std::swap(d[2].refs[0], d[2].refs[1]);
  auto bad = check_derivation(d);
  EXPECT_FALSE(bad.accepted());
  ASSERT_FALSE(bad.violations.empty());
  EXPECT_EQ(bad.violations.front().line, 2u);
  EXPECT_FALSE(check_derivation({}).accepted());
}

TEST(CheckDerivation, BundledCorpus) {
  std::map<std::string, Formula> const conclusions = {
      {"identity", parse("p -> p")},
      {"box-conjunction", parse("([]p & []q) -> [](p & q)")},
      {"diamond-disjunction", parse("(<*>p | <*>q) -> <*>(p | q)")},
      {"box-top", parse("T -> []T")},
      {"diamond-bottom", parse("<*>F -> F")},
  };
  for (auto const& [name, d] : corpus::derivations()) {
    auto rep = check_derivation(d);
    EXPECT_TRUE(rep.accepted()) << name;
    EXPECT_EQ(*rep.conclusion, conclusions.at(name)) << name;
  }
}

TEST(Certificates, Bundled) {
  for (auto const& [name, c] : corpus::certificates()) {
    auto rep = check_certificate(c);
    EXPECT_TRUE(rep.accepted()) << name << ": " << (rep.violations.empty() ? "" : rep.violations[0].message);
  }
  auto fwd = corpus::tense_residuation_forward();
  EXPECT_EQ(fwd.conclusion, parse("p -> []q"));
  EXPECT_EQ(fwd.sigma, std::vector<Formula>{parse("<*>p -> q")});
  EXPECT_EQ(certificate_target(corpus::empty_top()), parse("T -> T"));
  EXPECT_EQ(certificate_target(corpus::premise_identity()), parse("q -> q"));
}

TEST(Certificates, RejectsWrongConclusionOrMissingSigma) {
  auto c = corpus::premise_identity();
  c.conclusion = atom("p");
  EXPECT_FALSE(check_certificate(c).accepted());
  auto s = corpus::coimp_residuation_backward();
  s.sigma.clear();
  EXPECT_FALSE(check_certificate(s).accepted());
}

TEST(Mutation, EveryMutantIsRejected) {
  std::size_t total = 0;
  for (auto const& [name, d] : corpus::derivations())
    for (auto const& m : mutation::mutants(d)) {
      ++total;
      EXPECT_FALSE(check_derivation(m.derivation).accepted()) << name << " " << m.description;
    }
  for (auto const& [name, c] : corpus::certificates())
    for (auto const& m : mutation::mutants(c.derivation)) {
      ++total;
      auto mc = c;
      mc.derivation = m.derivation;
      EXPECT_FALSE(check_certificate(mc).accepted()) << name << " " << m.description;
    }
  EXPECT_GE(total, 20u);
}

TEST(Soundness, AxiomSchemesOnSmallFrames) {
  for (auto const& a : axiom_schemes()) {
    Derivation d = {{a.schema, Rule::Axiom, {}, a.id, {}}};
    EXPECT_TRUE(soundness_sweep(d, 3).sound()) << a.id;
  }
}

TEST(Soundness, BundledDerivations) {
  for (auto const& [name, d] : corpus::derivations()) EXPECT_TRUE(soundness_sweep(d, 3).sound()) << name;
  for (auto const& [name, c] : corpus::certificates()) EXPECT_TRUE(soundness_sweep(c.derivation, 3, c.sigma).sound()) << name;
}

// (p -< q) -> r holds on no frame, so the frame-level sweep is vacuous there; per model it is not.
TEST(Soundness, CertificatesHoldInEveryModelOfTheirHypotheses) {
  EXPECT_EQ(soundness_sweep(corpus::coimp_residuation_forward().derivation, 2, corpus::coimp_residuation_forward().sigma).frames_checked, 0u);
  for (auto const& [name, c] : corpus::certificates()) {
    std::vector<Formula> lines;
    for (auto const& ln : c.derivation) lines.push_back(ln.formula);
    auto rep = model_validity_sweep(lines, 3, c.sigma);
    EXPECT_TRUE(rep.sound()) << name;
    EXPECT_GT(rep.models_checked, 0u) << name;
  }
  // the converse direction of a rule is not a consequence per model
  auto rep = model_validity_sweep({parse("<*>p -> q")}, 2, {parse("p -> []q")});
  EXPECT_TRUE(rep.sound());
  auto wrong = model_validity_sweep({parse("p -> []q")}, 2, {parse("p -> q")});
  EXPECT_FALSE(wrong.sound());
}

TEST(Soundness, CorruptedLineIsCaught) {
  std::vector<Formula> lines;
  for (auto const& ln : corpus::identity()) lines.push_back(ln.formula);
  EXPECT_TRUE(validity_sweep(lines, 3).sound());
  lines.insert(lines.begin() + 2, parse("<*>p -> p"));
  auto rep = validity_sweep(lines, 2);
  ASSERT_FALSE(rep.sound());
  EXPECT_EQ(*rep.failing_line, 2u);
  EXPECT_EQ(rep.countermodel->size(), 2u);
  EXPECT_FALSE(satisfies(*rep.countermodel, rep.state, parse("<*>p -> p")));

  Derivation bad = corpus::identity();
  bad[0].formula = parse("<*>p -> p");
  EXPECT_THROW(soundness_sweep(bad, 2), PreconditionError);
}

TEST(Semantics, DistributionLawsOnSmallFrames) {
  std::vector<Formula> laws = {
      parse("([]p & []q) <-> [](p & q)"), parse("(<*>p | <*>q) <-> <*>(p | q)"),
      parse("T <-> []T"),                 parse("F <-> <*>F"),
      parse("<>F <-> F"),                 parse("<>(p | q) <-> (<>p | <>q)"),
  };
  EXPECT_TRUE(validity_sweep(laws, 3).sound());
}
