#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "formula.hpp"

namespace biskt {

namespace detail {

enum class Tok {
  Top, Bot, Ident, And, Or, Imp, Coimp, Iff, Neg, Coneg, BDia, WBox, WDia, BBox, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

// Maximal munch: "<->" before "<>", "->"/"-<" before a bare '-'.
inline std::vector<Token> tokenize(std::string_view src) {
  struct Fixed {
    std::string_view text;
    Tok kind;
  };
  static constexpr Fixed fixed[] = {
      {"<->", Tok::Iff}, {"<*>", Tok::BDia}, {"[*]", Tok::BBox}, {"<>", Tok::WDia}, {"[]", Tok::WBox},
      {"->", Tok::Imp},  {"-<", Tok::Coimp}, {"&", Tok::And},    {"|", Tok::Or},    {"~", Tok::Neg},
      {"!", Tok::Coneg}, {"(", Tok::LParen}, {")", Tok::RParen},
  };

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    bool matched = false;
    for (auto const& f : fixed) {
      if (src.substr(i, f.text.size()) == f.text) {
        out.push_back({f.kind, std::string(f.text), i});
        i += f.text.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word(src.substr(i, j - i));
      if (word == "T") {
        out.push_back({Tok::Top, word, i});
      } else if (word == "F") {
        out.push_back({Tok::Bot, word, i});
      } else if (is_atom_name(word)) {
        out.push_back({Tok::Ident, word, i});
      } else {
        throw ParseError("invalid atom name '" + word + "' (atoms match [a-z][A-Za-z0-9_]*)", i);
      }
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

// Precedence, loosest first: <->, then -> / -< (right associative), |, &, unary.
class Parser {
public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

private:
  Token const& peek() const { return toks_[at_]; }
  Token const& next() { return toks_[at_++]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++at_;
    return true;
  }

  Formula parse_iff() {
    Formula lhs = parse_arrow();
    if (accept(Tok::Iff)) return iff(lhs, parse_iff());
    return lhs;
  }

  Formula parse_arrow() {
    Formula lhs = parse_or();
    if (accept(Tok::Imp)) return imp(lhs, parse_arrow());
    if (accept(Tok::Coimp)) return coimp(lhs, parse_arrow());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::Or)) lhs = disj(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(Tok::And)) lhs = conj(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    Token const& t = next();
    switch (t.kind) {
    case Tok::Neg: return neg(parse_unary());
    case Tok::Coneg: return coneg(parse_unary());
    case Tok::BDia: return bdia(parse_unary());
    case Tok::WBox: return wbox(parse_unary());
    case Tok::WDia: return wdia(parse_unary());
    case Tok::BBox: return bbox(parse_unary());
    case Tok::Top: return top();
    case Tok::Bot: return bot();
    case Tok::Ident: return atom(t.text);
    case Tok::LParen: {
      Formula inner = parse_iff();
      if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
      return inner;
    }
    case Tok::End: throw ParseError("unexpected end of input", t.pos);
    default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

} // namespace detail

// Parses the ASCII formula grammar; sugar (~, !, <->) is expanded on the way in.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

} // namespace biskt
