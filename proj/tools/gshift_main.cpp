// Command-line front end: analyze property verdicts, construct and verify
// witnesses, print the canned-system table, and run the brute-force
// cross-checks.
//
// Exit codes: 0 decided (including refusals backed by a No verdicture),
// 2 bad input, 3 undecided within budget, 4 internal invariant failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gshift/oracle.hpp"
#include "gshift/report.hpp"

namespace {

using namespace gshift;

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

struct LoadedSystem {
  std::string name;
  std::optional<FunctionalMap> shift;
  std::optional<FortSystem> fort;
  ConfigFile cfg;  // carries alphabet/window/sequence/segments when from a file
};

LoadedSystem load_system(const std::string& system, const std::string& config_path) {
  if (!system.empty() && !config_path.empty())
    throw input_error("give either --system or --config, not both");
  LoadedSystem out;
  if (!system.empty()) {
    if (auto s = builtins::find_shift(system)) {
      out.name = s->name;
      out.shift = s->map;
      return out;
    }
    if (auto f = builtins::find_fort(system)) {
      out.name = f->name;
      out.fort = f->system;
      return out;
    }
    throw input_error("unknown system '" + system + "'; bundled names: C1 C2 C3 D1 D2 D3");
  }
  if (config_path.empty()) throw input_error("need --system NAME or --config FILE");
  out.cfg = load_config(config_path);
  out.name = config_path;
  out.shift = out.cfg.shift;
  out.fort = out.cfg.fort;
  return out;
}

std::vector<Int> parse_index_list(const std::string& text, const IndexSet& dom) {
  std::vector<Int> out;
  std::string item;
  for (char c : text + ",") {
    if (c == ',') {
      if (!item.empty()) out.push_back(dom.parse_index(item));
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  return out;
}

int run_analyze(const LoadedSystem& sys, bool as_json) {
  if (sys.shift) {
    auto rows = analyze_shift(*sys.shift);
    if (as_json) {
      json j;
      j["system"] = sys.name;
      j["kind"] = "shift";
      j["properties"] = rows_json(sys.shift->domain(), rows);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "system: " << sys.name << " (shift)\n"
                << render_rows_text(sys.shift->domain(), rows);
    }
    return all_decided(rows) ? 0 : 3;
  }
  auto fa = analyze_fort(*sys.fort);
  if (as_json) {
    json j;
    j["system"] = sys.name;
    j["kind"] = "fort";
    j["properties"] = rows_json(sys.fort->points(), fa.rows);
    j["image"] = describe_image(sys.fort->points(), fa.image);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "system: " << sys.name << " (fort)\n"
              << render_rows_text(sys.fort->points(), fa.rows)
              << describe_image(sys.fort->points(), fa.image) << "\n";
  }
  return all_decided(fa.rows) ? 0 : 3;
}

int refuse(const std::string& property, const IndexSet& dom, const Verdict& v) {
  json j;
  j["kind"] = "refusal";
  j["property"] = property;
  j["verdict"] = show(v.truth);
  j["certificate"] = describe_certificate(dom, v.cert);
  if (!v.detail.empty()) j["detail"] = v.detail;
  std::cout << j.dump(2) << "\n";
  return 0;  // a certified No settles the question
}

int run_witness(LoadedSystem& sys, const std::string& property,
                const std::string& window_opt, const std::string& sequence_opt,
                long trials, unsigned long long seed) {
  if (!sequence_opt.empty()) sys.cfg.sequence = parse_sequence_text(sequence_opt, 0);

  if (sys.shift) {
    const FunctionalMap& m = *sys.shift;
    std::optional<Window> w = sys.cfg.window;
    if (!window_opt.empty()) w = Window(parse_index_list(window_opt, m.domain()));

    if (property == "tracing") {
      Verdict per = decide_weak_specification(m);
      if (per.is_no()) return refuse(property, m.domain(), per);
      if (!per.decided()) throw budget_error(per.detail);
      if (!w) throw input_error("tracing needs a window");
      if (sys.cfg.segments.empty())
        throw input_error("tracing needs segments and windows in the config");
      TracingWitness tw =
          build_tracing_point(m, sys.cfg.alphabet, *w, sys.cfg.segments, sys.cfg.fill);
      json j = tracing_json(tw);
      j["gap_bound"] = gap_bound(m, *w).str();
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (property == "return-map") {
      Verdict st = decide_stroboscopic(m);
      if (st.is_no()) return refuse(property, m.domain(), st);
      if (!st.decided()) throw budget_error(st.detail);
      if (!w) throw input_error("return maps need a window");
      RhoMap rho = build_rho(m, *w, sys.cfg.sequence);
      auto conv = verify_uniform_convergence(m, sys.cfg.alphabet, rho, *w, trials, seed);
      if (!conv.ok) throw invariant_error("return-map verification failed: " + conv.failure);
      json j = rho_json(rho);
      j["verified_checks"] = conv.checks;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (property == "refutation") {
      Verdict per = decide_periodic_free(m);
      if (per.is_yes())
        return refuse(property, m.domain(),
                      Verdict::no(per.cert, "no periodic index, nothing to refute"));
      if (!per.decided()) throw budget_error(per.detail);
      Refutation r = refute_weak_specification(m);
      std::cout << refutation_json(r).dump(2) << "\n";
      return 0;
    }
    throw input_error("shift witnesses: tracing, return-map, refutation");
  }

  const FortSystem& fs = *sys.fort;
  if (property == "return-map") {
    Verdict st = decide_fort_stroboscopic(fs);
    if (st.is_no()) return refuse(property, fs.points(), st);
    if (!st.decided()) throw budget_error(st.detail);
    std::vector<Int> pts;
    if (!window_opt.empty()) pts = parse_index_list(window_opt, fs.points());
    else if (sys.cfg.window) pts = sys.cfg.window->coords;
    else throw input_error("fort return maps need a window of points");
    FortRho rho = build_fort_rho(fs, pts, sys.cfg.sequence);
    std::cout << fort_rho_json(rho).dump(2) << "\n";
    return 0;
  }
  if (property == "gap-constant") {
    Verdict weak = decide_fort_weak_specification(fs);
    if (weak.is_no()) return refuse(property, fs.points(), weak);
    if (!weak.decided()) throw budget_error(weak.detail);
    json j;
    j["kind"] = "gap-constant";
    j["value"] = fort_gap_constant(fs).str();
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  throw input_error("fort witnesses: return-map, gap-constant");
}

int run_table(bool as_json) {
  CannedTable t = render_canned_table();
  if (as_json) std::cout << t.data.dump(2) << "\n";
  else std::cout << t.text;
  if (t.drift) throw invariant_error("canned classifications drifted");
  return 0;
}

int run_crosscheck(long atoms, unsigned long long seed, bool as_json) {
  CrosscheckReport rep = crosscheck(atoms, seed);
  if (as_json) {
    json j;
    j["tables"] = rep.tables;
    j["checks"] = rep.checks;
    j["disagreements"] = rep.disagreements;
    j["failures"] = rep.failures;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "tables " << rep.tables << ", checks " << rep.checks
              << ", disagreements " << rep.disagreements << "\n";
    for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
  }
  if (!rep.ok()) throw invariant_error("cross-check found disagreements");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decide and witness tracing/return properties of shift and fort systems"};
  app.require_subcommand(1);

  bool as_json = false;
  unsigned long long seed = 12345;
  app.add_flag("--json", as_json, "emit JSON instead of text");
  app.add_option("--seed", seed, "seed for randomized verification");

  std::string system, config_path;
  auto* analyze = app.add_subcommand("analyze", "decide all properties of one system");
  analyze->add_option("--system", system, "bundled system name (C1..C3, D1..D3)");
  analyze->add_option("--config", config_path, "system definition file");

  std::string property, window_opt, sequence_opt;
  long trials = 8;
  auto* witness = app.add_subcommand("witness", "construct and verify a witness");
  witness->add_option("--system", system, "bundled system name");
  witness->add_option("--config", config_path, "system definition file");
  witness->add_option("--property", property,
                      "tracing | return-map | refutation | gap-constant")
      ->required();
  witness->add_option("--window", window_opt, "comma-separated window indices");
  witness->add_option("--sequence", sequence_opt,
                      "naturals[:PREFIX] | arithmetic:START:STEP[:PREFIX] | explicit:...");
  witness->add_option("--trials", trials, "randomized verification trials");

  auto* table = app.add_subcommand("table-a", "summary table of the bundled systems");

  long atoms = 4;
  auto* cross = app.add_subcommand("crosscheck",
                                   "deciders against brute force on all small tables");
  cross->add_option("--atoms", atoms, "largest table size to sweep (2..5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) {
      LoadedSystem sys = load_system(system, config_path);
      return run_analyze(sys, as_json);
    }
    if (app.got_subcommand(witness)) {
      LoadedSystem sys = load_system(system, config_path);
      return run_witness(sys, property, window_opt, sequence_opt, trials, seed);
    }
    if (app.got_subcommand(table)) return run_table(as_json);
    if (app.got_subcommand(cross)) return run_crosscheck(atoms, seed, as_json);
    throw input_error("no subcommand");
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return 3;
  } catch (const invariant_error& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 4;
  }
}
