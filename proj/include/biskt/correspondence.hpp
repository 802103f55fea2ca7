#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "parse.hpp"
#include "relation.hpp"
#include "semantics.hpp"

namespace biskt {

// R, or its left converse H;R˘;H.
enum class Selector { R, LC };

using Chain = std::vector<Selector>;

// lhs ⊆ rhs, each side a left-to-right composition; an empty chain stands for H.
struct InclusionSpec {
  Chain lhs, rhs;

  friend bool operator==(InclusionSpec const&, InclusionSpec const&) = default;
};

inline std::string render_chain(Chain const& c) {
  if (c.empty()) return "H";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ";" : "") + std::string(c[i] == Selector::R ? "R" : "LC");
  return out;
}

inline std::string render(InclusionSpec const& s) { return render_chain(s.lhs) + " <= " + render_chain(s.rhs); }

namespace detail {
inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline Chain parse_chain(std::string_view text) {
  std::string side = trim(text);
  if (side == "H") return {};
  Chain out;
  std::size_t start = 0;
  for (;;) {
    std::size_t semi = side.find(';', start);
    std::string tok = trim(std::string_view(side).substr(start, semi == std::string::npos ? std::string::npos : semi - start));
    if (tok == "R")
      out.push_back(Selector::R);
    else if (tok == "LC")
      out.push_back(Selector::LC);
    else
      throw InputError("bad chain element '" + tok + "' (expected R or LC)");
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}
} // namespace detail

// "LC;R <= H"
inline InclusionSpec parse_inclusion(std::string_view text) {
  auto at = text.find("<=");
  if (at == std::string_view::npos) throw InputError("inclusion needs '<=': " + std::string(text));
  return {detail::parse_chain(text.substr(0, at)), detail::parse_chain(text.substr(at + 2))};
}

inline Relation relation_of_chain(HFrame const& fr, Chain const& chain) {
  if (chain.empty()) return fr.H();
  Relation out = chain.front() == Selector::R ? fr.R() : fr.left_converse();
  for (std::size_t i = 1; i < chain.size(); ++i)
    out = compose(out, chain[i] == Selector::R ? fr.R() : fr.left_converse());
  return out;
}

inline bool check_inclusion(HFrame const& fr, InclusionSpec const& spec) {
  return relation_of_chain(fr, spec.lhs).subset_of(relation_of_chain(fr, spec.rhs));
}

// D_k⋯D_1 p → D_m⋯D_{k+1} p, with ◆ for R and ◇ for LC.
inline Formula diamond_form(InclusionSpec const& spec) {
  auto side = [](Chain const& c) {
    Formula f = atom("p");
    for (Selector s : c) f = s == Selector::R ? bdia(f) : wdia(f);
    return f;
  };
  return imp(side(spec.lhs), side(spec.rhs));
}

// B_{k+1}⋯B_m p → B_1⋯B_k p, with □ for R and ■ for LC.
inline Formula box_form(InclusionSpec const& spec) {
  auto side = [](Chain const& c) {
    Formula f = atom("p");
    for (auto it = c.rbegin(); it != c.rend(); ++it) f = *it == Selector::R ? wbox(f) : bbox(f);
    return f;
  };
  return imp(side(spec.rhs), side(spec.lhs));
}

struct CorrespondenceRow {
  std::string name;
  InclusionSpec spec;
  Formula diamond;
  Formula box;
  std::optional<Formula> mixed;
};

// The twenty chain-inclusion conditions with their diamond, box and (where known) mixed correspondents.
inline std::vector<CorrespondenceRow> const& table_registry() {
  static std::vector<CorrespondenceRow> const rows = [] {
    struct Raw {
      char const* name;
      char const* inclusion;
      char const* mixed;
    };
    Raw const raw[] = {
        {"reflexive", "H <= R", nullptr},
        {"converse reflexive", "H <= LC", nullptr},
        {"pathetic", "R <= H", nullptr},
        {"converse pathetic", "LC <= H", nullptr},
        {"functional", "LC;R <= H", "<>p -> []p"},
        {"injective", "R;LC <= H", "<*>p -> [*]p"},
        {"surjective", "H <= LC;R", "[*]p -> <*>p"},
        {"total", "H <= R;LC", "[]p -> <>p"},
        {"weakly symmetric", "R <= LC", "p -> []<>p"},
        {"strongly symmetric", "LC <= R", "<>[]p -> p"},
        {"transitive", "R;R <= R", nullptr},
        {"converse transitive", "LC;LC <= LC", nullptr},
        {"dense", "R <= R;R", nullptr},
        {"converse dense", "LC <= LC;LC", nullptr},
        {"Euclidean", "LC;R <= R", "<>[]p -> []p"},
        {"weak Euclidean", "LC;R <= LC", "<>p -> []<>p"},
        {"converse Euclidean", "R;LC <= R", nullptr},
        {"weak converse Euclidean", "R;LC <= LC", nullptr},
        {"confluent", "LC;R <= R;LC", "<>[]p -> []<>p"},
        {"divergent", "R;LC <= LC;R", "<*>[*]p -> [*]<*>p"},
    };
    std::vector<CorrespondenceRow> out;
    for (auto const& r : raw) {
      InclusionSpec spec = parse_inclusion(r.inclusion);
      std::optional<Formula> mixed;
      if (r.mixed) mixed = parse(r.mixed);
      out.push_back({r.name, spec, diamond_form(spec), box_form(spec), mixed});
    }
    return out;
  }();
  return rows;
}

namespace detail {
inline std::string normalize_row_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-' || std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}
} // namespace detail

// Case-insensitive; '_' and '-' count as spaces.
inline std::optional<CorrespondenceRow> find_row(std::string_view name) {
  std::string key = detail::normalize_row_name(name);
  for (auto const& row : table_registry())
    if (detail::normalize_row_name(row.name) == key) return row;
  return std::nullopt;
}

inline CorrespondenceRow const& row_or_throw(std::string_view name) {
  for (auto const& row : table_registry())
    if (detail::normalize_row_name(row.name) == detail::normalize_row_name(name)) return row;
  throw InputError("unknown correspondence row '" + std::string(name) + "'");
}

struct CorrespondenceReport {
  bool inclusion = false;
  FrameVerdict diamond;
  FrameVerdict box;

  bool agree() const { return inclusion == diamond.valid && inclusion == box.valid; }
};

inline CorrespondenceReport verify_correspondence(HFrame const& fr, InclusionSpec const& spec) {
  return {check_inclusion(fr, spec), valid_in_frame(fr, diamond_form(spec)), valid_in_frame(fr, box_form(spec))};
}

} // namespace biskt
