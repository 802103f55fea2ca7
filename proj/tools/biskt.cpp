// biskt: command-line front end for the library.
// Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or input error, 3 internal failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biskt/correspondence.hpp"
#include "biskt/filtration.hpp"
#include "biskt/hilbert.hpp"
#include "biskt/io.hpp"
#include "biskt/morphisms.hpp"
#include "biskt/morphology.hpp"
#include "biskt/parse.hpp"
#include "biskt/search.hpp"
#include "biskt/semantics.hpp"

using namespace biskt;
using ordered_json = io::ordered_json;

namespace {

constexpr char const* kVersion = "biskt 0.1.0";

struct Run {
  ordered_json result = ordered_json::object();
  std::ostringstream text;
  int exit_code = 0;
};

std::vector<std::string> labels_of(HFrame const& fr, StateSet const& s) {
  std::vector<std::string> out;
  for (State u : s.members()) out.push_back(fr.label(u));
  return out;
}

std::string brace(std::vector<std::string> const& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
  return out + "}";
}

std::vector<std::string> split(std::string const& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t\r");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Formula read_formula(std::string const& text, std::string const& file) {
  if (file.empty()) return parse(text);
  std::ifstream in(file);
  if (!in) throw InputError("cannot open '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

ordered_json check_report_json(CheckReport const& rep) {
  ordered_json a = ordered_json::array();
  for (auto const& c : rep.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    if (!c.passed) j["witness"] = c.witness;
    a.push_back(j);
  }
  return a;
}

ordered_json counterexample_json(HFrame const& fr, FrameVerdict const& v) {
  if (v.valid) return nullptr;
  ordered_json j;
  ordered_json val = ordered_json::object();
  for (auto const& [p, set] : v.counterexample->valuation) val[p] = labels_of(fr, set);
  j["valuation"] = val;
  j["state"] = fr.label(v.counterexample->state);
  return j;
}

// --- commands ---------------------------------------------------------------

void cmd_check(Run& run, std::string const& model_file, std::string const& formula_text, std::string const& formula_file,
               std::string const& state) {
  HModel m = io::read_model_file(model_file);
  Formula f = read_formula(formula_text, formula_file);
  StateSet t = truth_set(m, f);
  auto const& fr = m.frame();
  run.result["formula"] = render(f);
  run.result["truth_set"] = labels_of(fr, t);
  run.result["valid"] = t.is_full();
  run.text << "formula: " << render(f) << "\ntruth set: " << brace(labels_of(fr, t)) << "\nvalid in model: " << (t.is_full() ? "yes" : "no") << '\n';
  if (!state.empty()) {
    bool holds = t.contains(fr.state_of(state));
    run.result["state"] = state;
    run.result["satisfied"] = holds;
    run.text << "at " << state << ": " << (holds ? "true" : "false") << '\n';
    run.exit_code = holds ? 0 : 1;
  } else {
    run.exit_code = t.is_full() ? 0 : 1;
  }
}

void cmd_frame(Run& run, std::string const& model_file, std::string const& what) {
  HModel m = io::read_model_file(model_file);
  InclusionSpec spec;
  std::string name;
  if (what.find("<=") != std::string::npos) {
    spec = parse_inclusion(what);
  } else {
    auto const& row = row_or_throw(what);
    spec = row.spec;
    name = row.name;
  }
  auto const& fr = m.frame();
  auto rep = verify_correspondence(fr, spec);
  if (!name.empty()) run.result["row"] = name;
  run.result["inclusion"] = render(spec);
  run.result["diamond_form"] = render(diamond_form(spec));
  run.result["box_form"] = render(box_form(spec));
  run.result["inclusion_holds"] = rep.inclusion;
  run.result["diamond_valid"] = rep.diamond.valid;
  run.result["box_valid"] = rep.box.valid;
  run.result["agree"] = rep.agree();
  run.result["diamond_counterexample"] = counterexample_json(fr, rep.diamond);
  run.result["box_counterexample"] = counterexample_json(fr, rep.box);
  if (!name.empty()) run.text << "row: " << name << '\n';
  run.text << "inclusion " << render(spec) << ": " << (rep.inclusion ? "holds" : "fails") << '\n'
           << "diamond form " << render(diamond_form(spec)) << ": " << (rep.diamond.valid ? "valid" : "not valid") << '\n'
           << "box form " << render(box_form(spec)) << ": " << (rep.box.valid ? "valid" : "not valid") << '\n'
           << "agree: " << (rep.agree() ? "yes" : "NO") << '\n';
  run.exit_code = !rep.agree() ? 3 : rep.inclusion ? 0 : 1;
}

void cmd_prove(Run& run, std::string const& file, std::size_t sweep_bound) {
  io::json j = io::read_json_file(file);
  bool is_certificate = j.is_object();
  ProvabilityCertificate cert{{}, top(), {}, {}};
  DerivationReport rep;
  if (is_certificate) {
    cert = io::certificate_from_json(j);
    rep = check_certificate(cert);
  } else {
    cert.derivation = io::derivation_from_json(j);
    rep = check_derivation(cert.derivation);
  }
  run.result["kind"] = is_certificate ? "certificate" : "derivation";
  run.result["lines"] = cert.derivation.size();
  run.result["accepted"] = rep.accepted();
  if (rep.conclusion) run.result["conclusion"] = render(is_certificate ? certificate_target(cert) : *rep.conclusion);
  ordered_json violations = ordered_json::array();
  for (auto const& v : rep.violations) violations.push_back({{"line", v.line}, {"message", v.message}});
  run.result["violations"] = violations;
  run.text << (is_certificate ? "certificate" : "derivation") << " with " << cert.derivation.size() << " lines: "
           << (rep.accepted() ? "accepted" : "rejected") << '\n';
  if (rep.conclusion) run.text << "conclusion: " << render(is_certificate ? certificate_target(cert) : *rep.conclusion) << '\n';
  for (auto const& v : rep.violations) run.text << "  line " << v.line << ": " << v.message << '\n';
  run.exit_code = rep.accepted() ? 0 : 1;
  if (!rep.accepted() || sweep_bound == 0) return;

  std::vector<Formula> lines;
  for (auto const& ln : cert.derivation) lines.push_back(ln.formula);
  auto frames = validity_sweep(lines, sweep_bound, cert.sigma);
  auto models = model_validity_sweep(lines, sweep_bound, cert.sigma);
  ordered_json sweep;
  sweep["bound"] = sweep_bound;
  sweep["frames_checked"] = frames.frames_checked;
  sweep["models_checked"] = models.models_checked;
  sweep["sound"] = frames.sound() && models.sound();
  if (!frames.sound()) sweep["failing_line"] = *frames.failing_line;
  else if (!models.sound()) sweep["failing_line"] = *models.failing_line;
  run.result["soundness_sweep"] = sweep;
  run.text << "soundness sweep up to " << sweep_bound << " states: " << frames.frames_checked << " frames, " << models.models_checked
           << " models, " << (sweep["sound"].get<bool>() ? "every line valid" : "INVALID LINE FOUND") << '\n';
  if (!sweep["sound"].get<bool>()) run.exit_code = 3;
}

std::vector<InclusionSpec> read_sigma(std::string const& arg) {
  std::vector<std::string> items;
  if (arg.empty()) return {};
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::string line;
    while (std::getline(in, line)) {
      auto parts = split(line, '#');
      if (!parts.empty() && line.find_first_not_of(" \t") != line.find('#')) items.push_back(parts.front());
    }
  } else {
    items = split(arg, ',');
  }
  std::vector<InclusionSpec> out;
  for (auto const& item : items) out.push_back(item.find("<=") != std::string::npos ? parse_inclusion(item) : row_or_throw(item).spec);
  return out;
}

void cmd_search(Run& run, std::string const& formula_text, std::size_t bound, std::string const& sigma_arg, std::string const& emit) {
  Formula f = parse(formula_text);
  auto sigma = read_sigma(sigma_arg);
  auto verdict = find_countermodel(f, bound, sigma);
  bool fmp = has_fmp_guarantee(sigma);
  std::size_t closure = subformula_closure(desugar(f)).size();
  bool decisive = fmp && closure < 63 && bound >= (std::size_t{1} << closure);
  ordered_json constraints = ordered_json::array();
  for (auto const& s : sigma) constraints.push_back(render(s));
  run.result["formula"] = render(f);
  run.result["bound"] = bound;
  run.result["constraints"] = constraints;
  run.result["frames_checked"] = verdict.frames_checked;
  run.result["frames_skipped"] = verdict.frames_skipped;
  run.result["countermodel_found"] = verdict.countermodel_found;
  run.result["finite_model_property"] = fmp;
  run.result["decisive"] = verdict.countermodel_found || decisive;
  run.text << "formula: " << render(f) << "\nbound: " << bound << " states\nconstraints: "
           << (sigma.empty() ? std::string("none") : constraints.dump()) << '\n'
           << "frames checked: " << verdict.frames_checked << " (skipped " << verdict.frames_skipped << ")\n";
  if (verdict.countermodel_found) {
    HModel const& m = *verdict.model;
    run.result["state"] = m.frame().label(verdict.state);
    run.result["model"] = io::model_to_json(m);
    run.text << "countermodel found: fails at state " << m.frame().label(verdict.state) << "\n" << io::model_to_json(m).dump() << '\n';
    if (!emit.empty()) io::write_text_file(emit, io::model_to_json(m).dump(2) + "\n");
    run.exit_code = 1;
    return;
  }
  run.text << "no countermodel with at most " << bound << " states\n";
  if (!fmp)
    run.text << "note: these constraints are outside the classes known to have the finite model property; the result says nothing about larger models\n";
  else if (!decisive)
    run.text << "note: the class has the finite model property, but a complete search needs up to 2^" << closure
             << " states for this formula; the result is bounded evidence only\n";
  else
    run.text << "the bound covers every filtrated countermodel, so the formula is valid in this class\n";
  run.exit_code = 0;
}

void cmd_filtrate(Run& run, std::string const& model_file, std::string const& formula_text, bool transitive, std::string const& emit) {
  HModel m = io::read_model_file(model_file);
  Formula f = parse(formula_text);
  FormulaSet delta = subformula_closure(desugar(f));
  auto filt = transitive ? transitive_filtration(m, delta) : finest_filtration(m, delta);
  auto conditions = verify_filtration_conditions(m, delta, filt);
  auto const& src = m.frame();
  auto const& q = filt.model.frame();
  ordered_json classes = ordered_json::object();
  for (std::size_t i = 0; i < filt.partition.size(); ++i) classes[q.label(i)] = labels_of(src, filt.partition.classes[i]);
  ordered_json delta_json = ordered_json::array();
  for (auto const& d : delta) delta_json.push_back(render(d));
  run.result["formula"] = render(f);
  run.result["variant"] = transitive ? "transitive" : "finest";
  run.result["delta"] = delta_json;
  run.result["classes"] = classes;
  run.result["conditions"] = check_report_json(conditions);
  run.text << "delta: " << delta.size() << " formulas\nvariant: " << (transitive ? "transitive" : "finest") << "\nclasses:\n";
  for (std::size_t i = 0; i < filt.partition.size(); ++i)
    run.text << "  " << q.label(i) << " = " << brace(labels_of(src, filt.partition.classes[i])) << '\n';
  run.text << "filtration conditions:\n" << conditions;
  bool ok = conditions.ok();
  if (ok) {
    auto tp = verify_truth_preservation(m, delta, filt);
    auto lc = check_left_converse_lifting(m, filt);
    run.result["truth_preserved"] = tp.ok;
    run.result["left_converse_lifted"] = lc.passed;
    run.text << "truth preserved on " << tp.pairs_checked << " (state, formula) pairs: " << (tp.ok ? "yes" : "NO") << '\n'
             << "left converse lifted: " << (lc.passed ? "yes" : "NO: " + lc.witness) << '\n';
    ok = tp.ok && lc.passed;
  }
  run.result["model"] = io::model_to_json(filt.model);
  run.text << "model: " << io::model_to_json(filt.model).dump() << '\n';
  if (!emit.empty()) io::write_text_file(emit, io::model_to_json(filt.model).dump(2) + "\n");
  run.exit_code = ok ? 0 : 3;
}

void cmd_morph(Run& run, std::string const& op, std::string const& dims, std::string const& model_file, std::string const& set_arg,
               std::string const& atom_arg, std::string const& black, std::string const& emit) {
  if (op == "grid") {
    auto wh = split(dims, 'x');
    if (wh.size() != 2) throw InputError("grid dimensions must look like WxH");
    GridImage img;
    try {
      img.width = std::stoul(wh[0]);
      img.height = std::stoul(wh[1]);
      for (auto const& xy : split(black, ';')) {
        auto c = split(xy, ',');
        if (c.size() != 2) throw InputError("black pixels must look like x,y;x,y");
        img.black.emplace_back(std::stoul(c[0]), std::stoul(c[1]));
      }
    } catch (std::logic_error const&) {
      throw InputError("grid dimensions and pixels must be non-negative integers");
    }
    auto j = io::model_to_json(build_model(grid_model(img)));
    run.result = j;
    run.text << j.dump(2) << '\n';
    if (!emit.empty()) io::write_text_file(emit, j.dump(2) + "\n");
    return;
  }
  if (model_file.empty()) throw InputError("morph " + op + " needs --model");
  HModel m = io::read_model_file(model_file);
  auto const& fr = m.frame();
  if (op == "bridge") {
    if (atom_arg.empty()) throw InputError("morph bridge needs --atom");
    auto b = modal_morphology_bridge(m, atom_arg);
    std::string p = atom_arg;
    std::pair<std::string, StateSet const*> const rows[] = {{"<*>" + p, &b.bdia},       {"[]" + p, &b.wbox},
                                                            {"<*>[]" + p, &b.bdia_wbox}, {"[]<*>" + p, &b.wbox_bdia}};
    char const* names[] = {"dilation", "erosion", "opening", "closing"};
    for (std::size_t i = 0; i < 4; ++i) {
      run.result[names[i]] = labels_of(fr, *rows[i].second);
      run.text << names[i] << " = " << rows[i].first << " = " << brace(labels_of(fr, *rows[i].second)) << '\n';
    }
    run.result["consistent"] = b.consistent();
    return;
  }
  if (set_arg.empty() == atom_arg.empty()) throw InputError("give exactly one of --set and --atom");
  StateSet x(fr.size());
  if (!atom_arg.empty()) {
    if (!m.valuation().contains(atom_arg)) throw InputError("atom '" + atom_arg + "' has no valuation");
    x = m.value(atom_arg);
  } else {
    for (auto const& l : split(set_arg, ',')) x.insert(fr.state_of(l));
  }
  Relation const& r = fr.R();
  StateSet out(fr.size());
  if (op == "dilate") out = dilate(x, r);
  else if (op == "erode") out = erode(r, x);
  else if (op == "open") out = opening(x, r);
  else if (op == "close") out = closing(x, r);
  else throw InputError("unknown morphology operation '" + op + "'");
  run.result["operation"] = op;
  run.result["input"] = labels_of(fr, x);
  run.result["output"] = labels_of(fr, out);
  run.text << op << " " << brace(labels_of(fr, x)) << " = " << brace(labels_of(fr, out)) << '\n';
}

void cmd_bmorph(Run& run, std::string const& f1, std::string const& f2, std::string const& map_file, std::size_t depth,
                std::string const& vars_arg) {
  HModel m1 = io::read_model_file(f1);
  HModel m2 = io::read_model_file(f2);
  StateMap f = map_from_labels(m1, m2, io::read_map_file(map_file));
  auto rep = check_bounded_morphism(m1, m2, f);
  run.result["conditions"] = check_report_json(rep);
  run.result["bounded_morphism"] = rep.ok();
  run.text << "bounded morphism conditions:\n" << rep;
  if (!rep.ok()) {
    run.exit_code = 1;
    return;
  }
  std::vector<std::string> vars;
  if (!vars_arg.empty()) {
    vars = split(vars_arg, ',');
  } else {
    std::set<std::string> names;
    for (auto const& [p, _] : m1.valuation()) names.insert(p);
    for (auto const& [p, _] : m2.valuation()) names.insert(p);
    vars.assign(names.begin(), names.end());
  }
  auto tp = check_truth_preservation(m1, m2, f, vars, depth);
  ordered_json pres;
  pres["depth"] = depth;
  pres["variables"] = vars;
  pres["formulas"] = tp.formulas_covered;
  pres["distinct_truth_set_pairs"] = tp.semantic_classes;
  pres["preserved"] = tp.ok;
  if (!tp.ok) {
    pres["formula"] = render(*tp.formula);
    pres["state"] = m1.frame().label(tp.state);
  }
  run.result["truth_preservation"] = pres;
  run.text << "truth preservation up to depth " << depth << " (" << tp.formulas_covered << " formulas, " << tp.semantic_classes
           << " distinct truth-set pairs): " << (tp.ok ? "holds" : "FAILS") << '\n';
  if (!tp.ok) run.text << "  " << render(*tp.formula) << " differs at " << m1.frame().label(tp.state) << '\n';
  run.exit_code = tp.ok ? 0 : 3;
}

void cmd_table(Run& run) {
  ordered_json rows = ordered_json::array();
  for (auto const& row : table_registry()) {
    ordered_json j;
    j["name"] = row.name;
    j["inclusion"] = render(row.spec);
    j["diamond"] = render(row.diamond);
    j["box"] = render(row.box);
    j["mixed"] = row.mixed ? ordered_json(render(*row.mixed)) : ordered_json(nullptr);
    rows.push_back(j);
    run.text << row.name << "\n  " << render(row.spec) << "\n  " << render(row.diamond) << "\n  " << render(row.box) << '\n';
    if (row.mixed) run.text << "  " << render(*row.mixed) << '\n';
  }
  run.result["rows"] = rows;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-intuitionistic stable tense logic toolkit"};
  app.require_subcommand(1);
  bool as_json = false, timing = false;
  app.add_flag("--json", as_json, "Print the JSON report instead of text")->configurable(false);
  app.add_flag("--timing", timing, "Include wall-clock time in the report");
  app.set_version_flag("--version", kVersion);

  std::string model_file, model2_file, map_file, formula, formula_file, state, what, file, sigma, emit, op, dims, set_arg, atom_arg,
      black, vars;
  std::size_t bound = 3, depth = 3, sweep = 0;
  bool transitive = false;

  auto* check = app.add_subcommand("check", "Evaluate a formula on a model");
  check->add_option("model", model_file, "Model file")->required();
  check->add_option("formula", formula, "Formula");
  check->add_option("--formula-file", formula_file, "Read the formula from a file");
  check->add_option("--state", state, "Evaluate at this state only");

  auto* frame = app.add_subcommand("frame", "Check a correspondence row or inclusion on a model's frame");
  frame->add_option("model", model_file, "Model file (the valuation is ignored)")->required();
  frame->add_option("spec", what, "Row name or inclusion such as 'LC;R <= H'")->required();

  auto* prove = app.add_subcommand("prove", "Check a derivation or certificate file");
  prove->add_option("file", file, "Derivation (JSON array) or certificate (JSON object)")->required();
  prove->add_option("--sweep", sweep, "Also check every line semantically on frames up to this size");

  auto* search = app.add_subcommand("search", "Bounded countermodel search");
  search->add_option("formula", formula, "Formula")->required();
  search->add_option("--bound", bound, "Largest universe size")->capture_default_str();
  search->add_option("--sigma", sigma, "Comma-separated row names, or a file with one row or inclusion per line");
  search->add_option("--emit-model", emit, "Write the countermodel to this file");

  auto* filtrate = app.add_subcommand("filtrate", "Filtrate a model through the subformulas of a formula");
  filtrate->add_option("model", model_file, "Model file")->required();
  filtrate->add_option("formula", formula, "Formula")->required();
  filtrate->add_flag("--transitive", transitive, "Close the filtrated R transitively (R must be transitive)");
  filtrate->add_option("--emit-model", emit, "Write the filtrated model to this file");

  auto* morph = app.add_subcommand("morph", "Dilation, erosion, opening, closing; grid model generator");
  morph->add_option("op", op, "dilate | erode | open | close | bridge | grid")->required();
  morph->add_option("dims", dims, "Grid size WxH (grid only)");
  morph->add_option("--model", model_file, "Model file");
  morph->add_option("--set", set_arg, "Comma-separated state labels");
  morph->add_option("--atom", atom_arg, "Use V(atom) as the input set");
  morph->add_option("--black", black, "Black pixels as x,y;x,y (grid only)");
  morph->add_option("--emit-model", emit, "Write the grid model to this file");

  auto* bmorph = app.add_subcommand("bmorph", "Check a bounded morphism and truth preservation");
  bmorph->add_option("source", model_file, "Source model file")->required();
  bmorph->add_option("target", model2_file, "Target model file")->required();
  bmorph->add_option("map", map_file, "Map file: {source label: target label}")->required();
  bmorph->add_option("--depth", depth, "Formula depth")->capture_default_str();
  bmorph->add_option("--vars", vars, "Comma-separated variables (default: atoms of both valuations)");

  auto* table = app.add_subcommand("table", "Print the correspondence table");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Run run;
  auto start = std::chrono::steady_clock::now();
  std::string command;
  try {
    if (check->parsed()) {
      command = "check";
      if (formula.empty() == formula_file.empty()) throw InputError("give a formula or --formula-file");
      cmd_check(run, model_file, formula, formula_file, state);
    } else if (frame->parsed()) {
      command = "frame";
      cmd_frame(run, model_file, what);
    } else if (prove->parsed()) {
      command = "prove";
      cmd_prove(run, file, sweep);
    } else if (search->parsed()) {
      command = "search";
      cmd_search(run, formula, bound, sigma, emit);
    } else if (filtrate->parsed()) {
      command = "filtrate";
      cmd_filtrate(run, model_file, formula, transitive, emit);
    } else if (morph->parsed()) {
      command = "morph";
      cmd_morph(run, op, dims, model_file, set_arg, atom_arg, black, emit);
    } else if (bmorph->parsed()) {
      command = "bmorph";
      cmd_bmorph(run, model_file, model2_file, map_file, depth, vars);
    } else if (table->parsed()) {
      command = "table";
      cmd_table(run);
    }
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (InputError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (ModelError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (SizeMismatch const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (PreconditionError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }

  if (as_json) {
    ordered_json report;
    report["tool"] = kVersion;
    report["command"] = command;
    report["exit_code"] = run.exit_code;
    report["result"] = run.result;
    if (timing)
      report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << run.text.str();
    if (timing)
      std::cout << "time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  }
  return run.exit_code;
}
