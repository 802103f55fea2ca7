#include <gtest/gtest.h>

#include <random>

#include "biskt/formula.hpp"
#include "biskt/parse.hpp"
#include "biskt/random.hpp"

using namespace biskt;

namespace {
Formula const p = atom("p");
Formula const q = atom("q");
Formula const r = atom("r");
} // namespace

TEST(Parse, CoimplicationAxiomShape) {
  EXPECT_EQ(parse("p -> (q | (p -< q))"), imp(p, disj(q, coimp(p, q))));
}

TEST(Parse, Constants) {
  EXPECT_EQ(parse("T"), top());
  EXPECT_EQ(parse("F"), bot());
}

TEST(Parse, TenseAxiomShape) { EXPECT_EQ(parse("<*>[]p -> p"), imp(bdia(wbox(p)), p)); }

TEST(Parse, Precedence) {
  EXPECT_EQ(parse("p & q | r"), disj(conj(p, q), r));
  EXPECT_EQ(parse("p | q & r"), disj(p, conj(q, r)));
  EXPECT_EQ(parse("p -> q -> r"), imp(p, imp(q, r)));
  EXPECT_EQ(parse("p -< q -> r"), coimp(p, imp(q, r)));
  EXPECT_EQ(parse("p -> q <-> r"), iff(imp(p, q), r));
  EXPECT_EQ(parse("[]p & <*>q"), conj(wbox(p), bdia(q)));
  EXPECT_EQ(parse("<>[*]p"), wdia(bbox(p)));
}

TEST(Parse, Sugar) {
  EXPECT_EQ(parse("~p"), imp(p, bot()));
  EXPECT_EQ(parse("!p"), coimp(top(), p));
  EXPECT_EQ(parse("p <-> q"), conj(imp(p, q), imp(q, p)));
}

TEST(Parse, MaximalMunch) {
  // "<->" must win over "<>", and "<>" over "<".
  EXPECT_EQ(parse("p<->q"), iff(p, q));
  EXPECT_EQ(parse("<>p->q"), imp(wdia(p), q));
  EXPECT_EQ(parse("p-<q->r"), coimp(p, imp(q, r)));
}

TEST(Parse, WhitespaceInsensitive) { EXPECT_EQ(parse("  p\t->\n(q|r) "), parse("p->(q|r)")); }

TEST(Parse, AtomNames) {
  EXPECT_EQ(parse("foo_Bar9"), atom("foo_Bar9"));
  EXPECT_THROW(parse("Foo"), ParseError);
  EXPECT_THROW(atom("_x"), PreconditionError);
}

TEST(Parse, ErrorsCarryPositions) {
  auto offset = [](char const* text) {
    try {
      parse(text);
    } catch (ParseError const& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  EXPECT_EQ(offset("p -> "), 5);
  EXPECT_EQ(offset("(p & q"), 6);
  EXPECT_EQ(offset("p # q"), 2);
  EXPECT_EQ(offset("p q"), 2);
  EXPECT_EQ(offset(""), 0);
  EXPECT_EQ(offset("p - q"), 2);
}

TEST(Render, Examples) {
  EXPECT_EQ(render(p), "p");
  EXPECT_EQ(render(imp(p, wbox(bdia(p)))), "(p -> []<*>p)");
  EXPECT_EQ(render(coneg(p)), "(T -< p)");
  EXPECT_EQ(render(conj(bot(), wdia(bbox(q)))), "(F & <>[*]q)");
}

TEST(Render, RoundTripOnRandomFormulas) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, {"p", "q", "r"}, 4, AllModalities);
    ASSERT_EQ(parse(render(f)), f) << render(f);
  }
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(imp(p, q), {{"p", bdia(r)}}), imp(bdia(r), q));
  EXPECT_EQ(substitute(p, {}), p);
  Formula a = atom("a"), b = atom("b");
  // Hand-applied: every p becomes a∧b and every q becomes ⊥, simultaneously.
  EXPECT_EQ(substitute(parse("p -> (q | (p -< q))"), {{"p", conj(a, b)}, {"q", bot()}}),
            imp(conj(a, b), disj(bot(), coimp(conj(a, b), bot()))));
}

TEST(Substitute, IsSimultaneous) {
  EXPECT_EQ(substitute(imp(p, q), {{"p", q}, {"q", p}}), imp(q, p));
}

TEST(SubformulaClosure, Examples) {
  EXPECT_EQ(subformula_closure(bdia(p)), (FormulaSet{bdia(p), p}));
  EXPECT_EQ(subformula_closure(coimp(p, q)), (FormulaSet{coimp(p, q), p, q}));
  EXPECT_EQ(subformula_closure(wbox(bdia(p))), (FormulaSet{wbox(bdia(p)), bdia(p), p}));
}

TEST(SubformulaClosure, IdempotentAndMonotone) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, {"p", "q"}, 4, AllModalities);
    FormulaSet c = subformula_closure(f);
    EXPECT_TRUE(is_subformula_closed(c));
    EXPECT_EQ(subformula_closure(c), c);
    // closure of a subformula is contained in the closure of the whole
    for (auto const& g : c) {
      FormulaSet cg = subformula_closure(g);
      EXPECT_TRUE(std::includes(c.begin(), c.end(), cg.begin(), cg.end()));
    }
  }
}

TEST(Desugar, DerivedModalities) {
  EXPECT_EQ(desugar(wdia(p)), coimp(top(), wbox(imp(p, bot()))));
  EXPECT_EQ(desugar(bbox(p)), imp(bdia(coimp(top(), p)), bot()));
  EXPECT_EQ(desugar(conj(p, q)), conj(p, q));
}

TEST(Desugar, ResultIsCore) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, {"p", "q"}, 4, AllModalities);
    EXPECT_TRUE(uses_only(desugar(f), {Op::BDia, Op::WBox})) << render(f);
  }
}

TEST(Formula, StructuralOrderingAndMetrics) {
  Formula f = parse("(p & q) -> []p");
  EXPECT_EQ(f.node_count(), 6u);
  EXPECT_EQ(f.depth(), 2u);
  EXPECT_LT(p, f);
  EXPECT_EQ(atoms(f), (std::set<std::string>{"p", "q"}));
  EXPECT_EQ(big_conj({}), top());
  EXPECT_EQ(big_conj({p, q, r}), conj(conj(p, q), r));
}
