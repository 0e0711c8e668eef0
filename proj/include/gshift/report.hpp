#pragma once
// Presentation layer: property tables as aligned text and as JSON. The JSON
// side keeps every big integer as a decimal string so nothing silently
// truncates. This is the only library header that pulls in the JSON vendor.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "builtins.hpp"
#include "config_parse.hpp"
#include "fort.hpp"
#include "specification.hpp"
#include "strobo.hpp"

#include "json.hpp"

namespace gshift {

using nlohmann::json;

struct PropertyRow {
  std::string name;
  Verdict verdict;
};

inline std::vector<PropertyRow> analyze_shift(const FunctionalMap& m) {
  return {
      {"weak specification", decide_weak_specification(m)},
      {"specification", decide_specification(m)},
      {"stroboscopic", decide_stroboscopic(m)},
      {"strong stroboscopic", decide_strong_stroboscopic(m)},
  };
}

struct FortAnalysis {
  std::vector<PropertyRow> rows;
  EventualImage image;
};

inline FortAnalysis analyze_fort(const FortSystem& fs) {
  FortAnalysis out;
  out.rows = {
      {"continuity", validate_fort_continuity(fs)},
      {"weak specification", decide_fort_weak_specification(fs)},
      {"specification", decide_fort_specification(fs)},
      {"stroboscopic", decide_fort_stroboscopic(fs)},
      {"strong stroboscopic", decide_fort_strong_stroboscopic(fs)},
  };
  out.image = eventual_image(fs);
  return out;
}

inline bool all_decided(const std::vector<PropertyRow>& rows) {
  for (const auto& r : rows)
    if (!r.verdict.decided()) return false;
  return true;
}

inline std::string describe_image(const IndexSet& pts, const EventualImage& ei) {
  auto list = [&](const std::vector<Int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += pts.show(v[i]);
    }
    return s.empty() ? std::string("none") : s;
  };
  switch (ei.kind) {
    case EventualImage::Kind::ExactSet:
      return "image intersection = { " + list(ei.points) + " }";
    case EventualImage::Kind::CofiniteDead:
      return "image intersection is cofinite; dying points: " + list(ei.points);
    case EventualImage::Kind::CyclesPlusBase:
      return "image intersection = base plus cycle points: " + list(ei.points);
    case EventualImage::Kind::Full:
      return "image intersection is the whole space";
    case EventualImage::Kind::Undetermined: break;
  }
  return "image intersection not settled (" + ei.note + ")";
}

inline std::string render_rows_text(const IndexSet& dom,
                                    const std::vector<PropertyRow>& rows) {
  std::ostringstream out;
  size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width + 2)) << r.name
        << std::setw(9) << show(r.verdict.truth)
        << describe_certificate(dom, r.verdict.cert);
    if (!r.verdict.detail.empty()) out << " -- " << r.verdict.detail;
    out << "\n";
  }
  return out.str();
}

inline json rows_json(const IndexSet& dom, const std::vector<PropertyRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["name"] = r.name;
    j["verdict"] = show(r.verdict.truth);
    j["certificate"] = describe_certificate(dom, r.verdict.cert);
    if (!r.verdict.detail.empty()) j["detail"] = r.verdict.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

// --- canned-system summary table ---------------------------------------------

struct CannedTable {
  std::string text;
  json data;
  bool drift = false;  // any verdict moved off its frozen expectation
};

inline CannedTable render_canned_table() {
  CannedTable out;
  std::ostringstream t;
  std::size_t rule_w = 4;
  for (const auto& e : builtins::canned_shifts()) rule_w = std::max(rule_w, e.summary.size());
  for (const auto& e : builtins::canned_forts()) rule_w = std::max(rule_w, e.summary.size());
  rule_w += 2;
  t << std::left << std::setw(8) << "system" << std::setw(static_cast<int>(rule_w)) << "rule"
    << std::setw(11) << "weak-spec" << std::setw(7) << "spec" << std::setw(9)
    << "strobo" << std::setw(13) << "strong-strobo" << "\n";
  out.data = json::array();

  auto emit = [&](const std::string& name, const std::string& summary, Truth w,
                  Truth s, Truth st, Truth ss, Truth ew, Truth es, Truth est,
                  Truth ess) {
    bool row_drift = w != ew || s != es || st != est || ss != ess;
    out.drift |= row_drift;
    t << std::left << std::setw(8) << name << std::setw(static_cast<int>(rule_w)) << summary
      << std::setw(11) << show(w) << std::setw(7) << show(s) << std::setw(9)
      << show(st) << std::setw(13) << show(ss) << (row_drift ? "  DRIFT" : "")
      << "\n";
    json j;
    j["system"] = name;
    j["rule"] = summary;
    j["weak_specification"] = show(w);
    j["specification"] = show(s);
    j["stroboscopic"] = show(st);
    j["strong_stroboscopic"] = show(ss);
    j["matches_expected"] = !row_drift;
    out.data.push_back(std::move(j));
  };

  for (const auto& e : builtins::canned_shifts()) {
    emit(e.name, e.summary, decide_weak_specification(e.map).truth,
         decide_specification(e.map).truth, decide_stroboscopic(e.map).truth,
         decide_strong_stroboscopic(e.map).truth, e.weak_specification,
         e.specification, e.stroboscopic, e.strong_stroboscopic);
  }
  for (const auto& e : builtins::canned_forts()) {
    emit(e.name, e.summary, decide_fort_weak_specification(e.system).truth,
         decide_fort_specification(e.system).truth,
         decide_fort_stroboscopic(e.system).truth,
         decide_fort_strong_stroboscopic(e.system).truth, e.weak_specification,
         e.specification, e.stroboscopic, e.strong_stroboscopic);
  }
  out.text = t.str();
  return out;
}

// --- witness serialization ----------------------------------------------------

inline json configuration_json(const Configuration& z) {
  json j;
  j["fill"] = z.fill;
  json ov = json::object();
  for (const auto& [c, s] : z.overrides) ov[c.str()] = s;
  j["overrides"] = std::move(ov);
  return j;
}

inline json tracing_json(const TracingWitness& w) {
  json j;
  j["kind"] = "tracing-point";
  j["point"] = configuration_json(w.point);
  j["gap_required"] = w.gap_required.str();
  j["assigned_coordinates"] = w.assignments;
  return j;
}

inline json truncated_terms(const std::vector<Int>& all) {
  constexpr size_t kShown = 40;
  json terms = json::array();
  for (size_t i = 0; i < all.size() && i < kShown; ++i) terms.push_back(all[i].str());
  return terms;
}

inline json rho_json(const RhoMap& rho) {
  json j;
  j["kind"] = "return-map";
  j["threshold"] = rho.threshold.str();
  j["construction"] = rho.construction;
  j["terms"] = truncated_terms(rho.terms);
  j["terms_total"] = rho.terms.size();
  json rel = json::object();
  for (const auto& [c, src] : rho.relocation) rel[c.str()] = src.str();
  j["relocation"] = std::move(rel);
  return j;
}

inline json refutation_json(const Refutation& r) {
  json j;
  j["kind"] = "refutation";
  j["periodic_point"] = r.point.str();
  j["period"] = r.period.str();
  json cases = json::array();
  for (const auto& c : r.cases) {
    json cj;
    cj["claimed_gap"] = c.claimed_gap.str();
    cj["t1"] = c.t1.str();
    cj["t2"] = c.t2.str();
    cj["shared_coordinate"] = c.coord.str();
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

inline json fort_rho_json(const FortRho& rho) {
  json j;
  j["kind"] = "fort-return-map";
  j["threshold"] = rho.threshold.str();
  j["terms"] = truncated_terms(rho.terms);
  j["terms_total"] = rho.terms.size();
  json asg = json::object();
  for (const auto& [x, v] : rho.assignment) asg[x.str()] = v.str();
  j["assignment"] = std::move(asg);
  json f = json::array();
  for (size_t k = 1; k < rho.table.f.size(); ++k) f.push_back(rho.table.f[k].str());
  j["residues"] = std::move(f);
  return j;
}

}  // namespace gshift
