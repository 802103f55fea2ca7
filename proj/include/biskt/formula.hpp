#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace biskt {

// Connectives. BDia/WBox look along R (◆ backwards, □ forwards); WDia/BBox along the left converse.
enum class Op { Top, Bot, Atom, And, Or, Imp, Coimp, BDia, WBox, WDia, BBox };

inline bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Imp || op == Op::Coimp; }
inline bool is_unary(Op op) { return op == Op::BDia || op == Op::WBox || op == Op::WDia || op == Op::BBox; }

inline bool is_atom_name(std::string const& name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// Immutable formula tree with shared subterms. Equality and ordering are structural.
class Formula {
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<Node const> left, right;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
  };

public:
  // Defaults to ⊤.
  Formula() : Formula(make(Op::Top, {}, nullptr, nullptr)) {}

  static Formula top() { return Formula(make(Op::Top, {}, nullptr, nullptr)); }
  static Formula bot() { return Formula(make(Op::Bot, {}, nullptr, nullptr)); }

  static Formula atom(std::string name) {
    if (!is_atom_name(name)) throw PreconditionError("invalid atom name '" + name + "'");
    return Formula(make(Op::Atom, std::move(name), nullptr, nullptr));
  }

  static Formula binary(Op op, Formula const& l, Formula const& r) {
    if (!is_binary(op)) throw PreconditionError("not a binary connective");
    return Formula(make(op, {}, l.node_, r.node_));
  }

  static Formula unary(Op op, Formula const& sub) {
    if (!is_unary(op)) throw PreconditionError("not a modality");
    return Formula(make(op, {}, sub.node_, nullptr));
  }

  Op op() const noexcept { return node_->op; }
  std::string const& name() const noexcept { return node_->name; }

  Formula left() const { return child(node_->left); }
  Formula right() const { return child(node_->right); }
  Formula sub() const { return child(node_->left); }

  std::size_t node_count() const noexcept { return node_->size; }
  std::size_t depth() const noexcept { return node_->depth; }
  std::size_t hash() const noexcept { return node_->hash; }

  bool is(Op op) const noexcept { return node_->op == op; }

  friend bool operator==(Formula const& a, Formula const& b) { return equal(a.node_.get(), b.node_.get()); }

  // Smaller trees first; ties broken by connective, atom name, then children.
  friend std::strong_ordering operator<=>(Formula const& a, Formula const& b) { return compare(a.node_.get(), b.node_.get()); }

private:
  explicit Formula(std::shared_ptr<Node const> n) : node_(std::move(n)) {}

  static Formula child(std::shared_ptr<Node const> const& n) {
    if (!n) throw PreconditionError("formula has no such child");
    return Formula(n);
  }

  static std::shared_ptr<Node const> make(Op op, std::string name, std::shared_ptr<Node const> l, std::shared_ptr<Node const> r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->name = std::move(name);
    std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x9e3779b97f4a7c15ULL;
    h ^= std::hash<std::string>{}(n->name) + 0x9e3779b9 + (h << 6) + (h >> 2);
    if (l) {
      h ^= l->hash + 0x517cc1b727220a95ULL + (h << 6) + (h >> 2);
      n->size += l->size;
      n->depth = l->depth + 1;
    }
    if (r) {
      h ^= r->hash * 31 + 0x2545f4914f6cdd1dULL + (h << 6) + (h >> 2);
      n->size += r->size;
      n->depth = std::max(n->depth, r->depth + 1);
    }
    n->hash = h;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
  }

  static bool equal(Node const* a, Node const* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->op != b->op || a->size != b->size || a->name != b->name) return false;
    return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
  }

  static std::strong_ordering compare(Node const* a, Node const* b) {
    if (a == b) return std::strong_ordering::equal;
    if (!a || !b) return (a ? 1 : 0) <=> (b ? 1 : 0);
    if (auto c = a->size <=> b->size; c != 0) return c;
    if (auto c = a->op <=> b->op; c != 0) return c;
    if (auto c = a->name.compare(b->name) <=> 0; c != 0) return c;
    if (auto c = compare(a->left.get(), b->left.get()); c != 0) return c;
    return compare(a->right.get(), b->right.get());
  }

  std::shared_ptr<Node const> node_;
};

struct FormulaHash {
  std::size_t operator()(Formula const& f) const noexcept { return f.hash(); }
};

// Duplicate-free, ordered by Formula's structural ordering.
using FormulaSet = std::set<Formula>;

using Substitution = std::map<std::string, Formula>;

// Constructors in the order of the grammar.
inline Formula top() { return Formula::top(); }
inline Formula bot() { return Formula::bot(); }
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula conj(Formula const& a, Formula const& b) { return Formula::binary(Op::And, a, b); }
inline Formula disj(Formula const& a, Formula const& b) { return Formula::binary(Op::Or, a, b); }
inline Formula imp(Formula const& a, Formula const& b) { return Formula::binary(Op::Imp, a, b); }
inline Formula coimp(Formula const& a, Formula const& b) { return Formula::binary(Op::Coimp, a, b); }
inline Formula bdia(Formula const& a) { return Formula::unary(Op::BDia, a); }
inline Formula wbox(Formula const& a) { return Formula::unary(Op::WBox, a); }
inline Formula wdia(Formula const& a) { return Formula::unary(Op::WDia, a); }
inline Formula bbox(Formula const& a) { return Formula::unary(Op::BBox, a); }

// Abbreviations: ¬φ := φ→⊥, ⌐φ := ⊤⊐φ, φ↔ψ := (φ→ψ)∧(ψ→φ).
inline Formula neg(Formula const& a) { return imp(a, bot()); }
inline Formula coneg(Formula const& a) { return coimp(top(), a); }
inline Formula iff(Formula const& a, Formula const& b) { return conj(imp(a, b), imp(b, a)); }

// ⋀ of a list, folded to the left; the empty conjunction is ⊤.
inline Formula big_conj(std::vector<Formula> const& fs) {
  if (fs.empty()) return top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

inline char const* op_token(Op op) {
  switch (op) {
  case Op::Top: return "T";
  case Op::Bot: return "F";
  case Op::Atom: return "";
  case Op::And: return "&";
  case Op::Or: return "|";
  case Op::Imp: return "->";
  case Op::Coimp: return "-<";
  case Op::BDia: return "<*>";
  case Op::WBox: return "[]";
  case Op::WDia: return "<>";
  case Op::BBox: return "[*]";
  }
  return "?";
}

namespace detail {
inline void render_to(Formula const& f, std::string& out) {
  switch (f.op()) {
  case Op::Top:
  case Op::Bot: out += op_token(f.op()); return;
  case Op::Atom: out += f.name(); return;
  case Op::BDia:
  case Op::WBox:
  case Op::WDia:
  case Op::BBox:
    out += op_token(f.op());
    render_to(f.sub(), out);
    return;
  default:
    out += '(';
    render_to(f.left(), out);
    out += ' ';
    out += op_token(f.op());
    out += ' ';
    render_to(f.right(), out);
    out += ')';
  }
}
} // namespace detail

// Canonical, fully parenthesised ASCII form.
inline std::string render(Formula const& f) {
  std::string out;
  detail::render_to(f, out);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, Formula const& f) { return os << render(f); }

// Simultaneous replacement of atoms; unmapped atoms are left alone.
inline Formula substitute(Formula const& f, Substitution const& map) {
  switch (f.op()) {
  case Op::Top:
  case Op::Bot: return f;
  case Op::Atom: {
    auto it = map.find(f.name());
    return it == map.end() ? f : it->second;
  }
  default:
    if (is_unary(f.op())) return Formula::unary(f.op(), substitute(f.sub(), map));
    return Formula::binary(f.op(), substitute(f.left(), map), substitute(f.right(), map));
  }
}

inline void collect_atoms(Formula const& f, std::set<std::string>& out) {
  if (f.is(Op::Atom)) {
    out.insert(f.name());
  } else if (is_unary(f.op())) {
    collect_atoms(f.sub(), out);
  } else if (is_binary(f.op())) {
    collect_atoms(f.left(), out);
    collect_atoms(f.right(), out);
  }
}

inline std::set<std::string> atoms(Formula const& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

inline std::set<std::string> atoms(FormulaSet const& fs) {
  std::set<std::string> out;
  for (auto const& f : fs) collect_atoms(f, out);
  return out;
}

inline void add_subformulas(Formula const& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  if (is_unary(f.op())) {
    add_subformulas(f.sub(), out);
  } else if (is_binary(f.op())) {
    add_subformulas(f.left(), out);
    add_subformulas(f.right(), out);
  }
}

inline FormulaSet subformula_closure(Formula const& f) {
  FormulaSet out;
  add_subformulas(f, out);
  return out;
}

inline FormulaSet subformula_closure(FormulaSet const& fs) {
  FormulaSet out;
  for (auto const& f : fs) add_subformulas(f, out);
  return out;
}

inline bool is_subformula_closed(FormulaSet const& fs) {
  for (auto const& f : fs) {
    if (is_unary(f.op()) && !fs.contains(f.sub())) return false;
    if (is_binary(f.op()) && (!fs.contains(f.left()) || !fs.contains(f.right()))) return false;
  }
  return true;
}

// True when f uses only the given modalities (propositional connectives are always allowed).
inline bool uses_only(Formula const& f, std::set<Op> const& modalities) {
  if (is_unary(f.op())) return modalities.contains(f.op()) && uses_only(f.sub(), modalities);
  if (is_binary(f.op())) return uses_only(f.left(), modalities) && uses_only(f.right(), modalities);
  return true;
}

// Rewrites ◇φ to ⊤⊐□(φ→⊥) and ■φ to ◆(⊤⊐φ)→⊥, leaving only ⊤,⊥,atoms,∧,∨,→,⊐,◆,□.
inline Formula desugar(Formula const& f) {
  switch (f.op()) {
  case Op::Top:
  case Op::Bot:
  case Op::Atom: return f;
  case Op::WDia: return coneg(wbox(neg(desugar(f.sub()))));
  case Op::BBox: return neg(bdia(coneg(desugar(f.sub()))));
  case Op::BDia:
  case Op::WBox: return Formula::unary(f.op(), desugar(f.sub()));
  default: return Formula::binary(f.op(), desugar(f.left()), desugar(f.right()));
  }
}

} // namespace biskt

template <>
struct std::hash<biskt::Formula> {
  std::size_t operator()(biskt::Formula const& f) const noexcept { return f.hash(); }
};
