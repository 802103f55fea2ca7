#pragma once

// The worked examples used throughout the suites.

#include "biskt/model.hpp"
#include "biskt/relation.hpp"

namespace fixtures {

using biskt::Relation;

// U1 = {0,1,2,3}, H1 = {(0,1),(2,3)} ∪ id
inline Relation h1() { return Relation(4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {2, 3}}); }
inline Relation r1() { return Relation(4, {{0, 3}, {1, 3}}); }

// U2 = {a,b,c} as {0,1,2}, H2 = {(a,b)} ∪ id
inline Relation h2() { return Relation(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}}); }
inline Relation r2() { return Relation(3, {{0, 2}, {1, 2}}); }

// M1: the first frame with V(p) = {1,2,3}
inline biskt::ModelSpec m1_spec() {
  biskt::ModelSpec s;
  s.universe = {"0", "1", "2", "3"};
  s.h_pairs = {{"0", "1"}, {"2", "3"}};
  s.r_pairs = {{"0", "3"}, {"1", "3"}};
  s.valuation["p"] = {"1", "2", "3"};
  return s;
}

// M2: the second frame with V(p) = {b,c}
inline biskt::ModelSpec m2_spec() {
  biskt::ModelSpec s;
  s.universe = {"a", "b", "c"};
  s.h_pairs = {{"a", "b"}};
  s.r_pairs = {{"a", "c"}, {"b", "c"}};
  s.valuation["p"] = {"b", "c"};
  return s;
}

// N1: H = {(1,0),(3,2)} ∪ id, R = {(1,2),(1,3)}, V(p) = {0,1,2}
inline biskt::ModelSpec n1_spec() {
  biskt::ModelSpec s;
  s.universe = {"0", "1", "2", "3"};
  s.h_pairs = {{"1", "0"}, {"3", "2"}};
  s.r_pairs = {{"1", "2"}, {"1", "3"}};
  s.valuation["p"] = {"0", "1", "2"};
  return s;
}

// N2: H = {(c,b)} ∪ id, R = {(a,b),(a,c)}, V(p) = {a,b}
inline biskt::ModelSpec n2_spec() {
  biskt::ModelSpec s;
  s.universe = {"a", "b", "c"};
  s.h_pairs = {{"c", "b"}};
  s.r_pairs = {{"a", "b"}, {"a", "c"}};
  s.valuation["p"] = {"a", "b"};
  return s;
}

inline biskt::HModel m1() { return biskt::build_model(m1_spec()); }
inline biskt::HModel m2() { return biskt::build_model(m2_spec()); }
inline biskt::HModel n1() { return biskt::build_model(n1_spec()); }
inline biskt::HModel n2() { return biskt::build_model(n2_spec()); }

} // namespace fixtures
