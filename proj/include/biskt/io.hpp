#pragma once

// JSON file formats: models, state maps, derivations and certificates. Needs nlohmann/json on the include path.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "hilbert.hpp"
#include "model.hpp"
#include "parse.hpp"

namespace biskt::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json read_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (json::exception const& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(std::string const& path, std::string const& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

namespace detail {
template <typename T>
T get(json const& j, char const* what) {
  try {
    return j.get<T>();
  } catch (json::exception const&) {
    throw InputError(std::string("malformed ") + what);
  }
}

inline std::vector<std::pair<std::string, std::string>> pairs(json const& j, char const* key) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!j.contains(key)) return out;
  for (auto const& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2) throw InputError(std::string("each entry of '") + key + "' must be a [from, to] pair");
    out.emplace_back(get<std::string>(p[0], "state label"), get<std::string>(p[1], "state label"));
  }
  return out;
}

inline Formula formula(json const& j) { return parse(get<std::string>(j, "formula string")); }
} // namespace detail

inline ModelSpec model_spec_from_json(json const& j) {
  if (!j.is_object()) throw InputError("model file must hold a JSON object");
  if (!j.contains("universe")) throw InputError("model file lacks 'universe'");
  ModelSpec spec;
  spec.universe = detail::get<std::vector<std::string>>(j.at("universe"), "universe");
  spec.h_pairs = detail::pairs(j, "H");
  spec.r_pairs = detail::pairs(j, "R");
  if (j.contains("valuation")) spec.valuation = detail::get<std::map<std::string, std::vector<std::string>>>(j.at("valuation"), "valuation");
  if (j.contains("options")) {
    auto const& o = j.at("options");
    spec.options.stabilize = o.value("stabilize", false);
    spec.options.h_close = o.value("h_close", false);
  }
  return spec;
}

inline HModel read_model_file(std::string const& path) { return build_model(model_spec_from_json(read_json_file(path))); }

inline ordered_json model_to_json(HModel const& m) {
  ModelSpec spec = to_spec(m);
  ordered_json j;
  j["universe"] = spec.universe;
  auto pairs = [](auto const& ps) {
    ordered_json a = ordered_json::array();
    for (auto const& [x, y] : ps) a.push_back({x, y});
    return a;
  };
  j["H"] = pairs(spec.h_pairs);
  j["R"] = pairs(spec.r_pairs);
  ordered_json v = ordered_json::object();
  for (auto const& [p, labels] : spec.valuation) v[p] = labels;
  j["valuation"] = v;
  return j;
}

inline std::map<std::string, std::string> read_map_file(std::string const& path) {
  json j = read_json_file(path);
  if (!j.is_object()) throw InputError("map file must hold a JSON object of label -> label");
  return detail::get<std::map<std::string, std::string>>(j, "map file");
}

inline Rule rule_from_name(std::string const& name, std::string& axiom) {
  axiom.clear();
  if (name == "Sigma") return Rule::Sigma;
  if (name == "MP") return Rule::MP;
  if (name == "MonCoimp") return Rule::MonCoimp;
  if (name == "MonBox") return Rule::MonBox;
  if (name == "MonBDia") return Rule::MonBDia;
  for (auto const& a : axiom_schemes())
    if (a.id == name) {
      axiom = name;
      return Rule::Axiom;
    }
  throw InputError("unknown rule '" + name + "'");
}

inline Derivation derivation_from_json(json const& j) {
  if (!j.is_array()) throw InputError("derivation must be a JSON array of lines");
  Derivation d;
  for (auto const& ln : j) {
    if (!ln.is_object() || !ln.contains("formula") || !ln.contains("rule")) throw InputError("each line needs 'formula' and 'rule'");
    Line line{detail::formula(ln.at("formula"))};
    line.rule = rule_from_name(detail::get<std::string>(ln.at("rule"), "rule"), line.axiom);
    if (ln.contains("refs")) line.refs = detail::get<std::vector<std::size_t>>(ln.at("refs"), "refs");
    if (ln.contains("subst"))
      for (auto const& [var, f] : ln.at("subst").items()) line.subst.emplace(var, detail::formula(f));
    d.push_back(std::move(line));
  }
  return d;
}

inline ordered_json derivation_to_json(Derivation const& d) {
  ordered_json out = ordered_json::array();
  for (auto const& ln : d) {
    ordered_json j;
    j["formula"] = render(ln.formula);
    j["rule"] = ln.rule == Rule::Axiom ? ln.axiom : rule_name(ln.rule);
    j["refs"] = ln.refs;
    if (!ln.subst.empty()) {
      ordered_json s = ordered_json::object();
      for (auto const& [var, f] : ln.subst) s[var] = render(f);
      j["subst"] = s;
    }
    out.push_back(j);
  }
  return out;
}

inline std::vector<Formula> formulas_from_json(json const& j, char const* what) {
  std::vector<Formula> out;
  for (auto const& f : detail::get<std::vector<std::string>>(j, what)) out.push_back(parse(f));
  return out;
}

inline ProvabilityCertificate certificate_from_json(json const& j) {
  if (!j.is_object() || !j.contains("derivation") || !j.contains("conclusion"))
    throw InputError("certificate needs 'derivation' and 'conclusion'");
  ProvabilityCertificate c{{}, detail::formula(j.at("conclusion")), {}, derivation_from_json(j.at("derivation"))};
  if (j.contains("premises")) c.premises = formulas_from_json(j.at("premises"), "premises");
  if (j.contains("sigma")) c.sigma = formulas_from_json(j.at("sigma"), "sigma");
  return c;
}

inline ordered_json certificate_to_json(ProvabilityCertificate const& c) {
  ordered_json j;
  auto list = [](std::vector<Formula> const& fs) {
    ordered_json a = ordered_json::array();
    for (auto const& f : fs) a.push_back(render(f));
    return a;
  };
  j["premises"] = list(c.premises);
  j["conclusion"] = render(c.conclusion);
  j["sigma"] = list(c.sigma);
  j["derivation"] = derivation_to_json(c.derivation);
  return j;
}

} // namespace biskt::io
