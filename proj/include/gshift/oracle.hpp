#pragma once
// Brute-force oracles. Everything here avoids the analytic machinery on
// purpose: exhaustive search over configuration assignments, direct scans
// over small tables, and literal descending-image iteration, so the fast
// deciders have something honest to disagree with.

#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "builtins.hpp"
#include "fort.hpp"
#include "specification.hpp"
#include "strobo.hpp"

namespace gshift {

// ---------------------------------------------------------------------------
// Exhaustive tracing search: try every assignment over the support actually
// read by the segment checks, first hit wins (fill everywhere else).

inline std::optional<Configuration> search_tracing_point(
    const FunctionalMap& m, const Alphabet& alpha, const Window& w,
    const std::vector<TracingSegment>& segments, Symbol fill = 0) {
  std::set<Int> support_set;
  for (const auto& s : segments)
    for (Int t = s.from; t <= s.to; ++t)
      for (const Int& g : w.coords) support_set.insert(m.iterate(g, t));
  std::vector<Int> support(support_set.begin(), support_set.end());

  double bits = static_cast<double>(support.size()) *
                std::log2(static_cast<double>(alpha.size));
  if (bits > 20.0)
    throw budget_error("assignment space too large for exhaustive search");

  std::vector<int> digits(support.size(), 0);
  for (;;) {
    Configuration z(fill);
    for (size_t i = 0; i < support.size(); ++i) z.set(support[i], digits[i]);
    bool ok = true;
    for (const auto& s : segments) {
      for (Int t = s.from; ok && t <= s.to; ++t)
        for (const Int& g : w.coords)
          if (orbit_value(m, z, g, t) != s.target.at(m.iterate(g, t))) {
            ok = false;
            break;
          }
      if (!ok) break;
    }
    if (ok) return z;
    size_t p = 0;
    while (p < digits.size() && ++digits[p] == alpha.size) digits[p++] = 0;
    if (p == digits.size()) return std::nullopt;
  }
}

// Does some checked term at or past the horizon bring z's orbit back to the
// target across the window? Returns the first such term index.
inline std::optional<size_t> omega_window_check(const FunctionalMap& m,
                                                const Configuration& z,
                                                const Configuration& target,
                                                const Window& w,
                                                const std::vector<Int>& terms,
                                                size_t horizon) {
  for (size_t i = horizon; i < terms.size(); ++i)
    if (window_agree(m, z, target, w, terms[i])) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Small-table enumeration

inline std::vector<TableRule> enumerate_tables(long n) {
  if (n < 1 || n > 6) throw input_error("table enumeration supports 1..6 atoms");
  std::vector<TableRule> out;
  std::vector<long> image(static_cast<size_t>(n), 0);
  for (;;) {
    out.push_back(TableRule{image});
    size_t p = 0;
    while (p < image.size() && ++image[p] == n) image[p++] = 0;
    if (p == image.size()) break;
  }
  return out;
}

namespace oracle_detail {

inline bool table_injective(const TableRule& t) {
  std::set<long> seen;
  for (long v : t.image)
    if (!seen.insert(v).second) return false;
  return true;
}

inline bool table_all_periodic(const TableRule& t) {
  // On a finite set, all points periodic iff the table is a bijection.
  return table_injective(t);
}

// Literal descending-image iteration for a finite fort table.
inline std::vector<Int> descending_intersection(const FortSystem& fs) {
  std::set<Int> cur;
  for (long i = 0; i < fs.points().size(); ++i) cur.insert(Int(i));
  for (;;) {
    std::set<Int> next;
    for (const Int& x : cur) next.insert(fs.apply(x));
    if (next == cur) break;
    cur = std::move(next);
  }
  return std::vector<Int>(cur.begin(), cur.end());
}

}  // namespace oracle_detail

// ---------------------------------------------------------------------------
// Systematic cross-checks over every small table

struct CrosscheckReport {
  long tables = 0;
  long checks = 0;
  long disagreements = 0;
  std::vector<std::string> failures;

  bool ok() const { return disagreements == 0; }
  void fail(std::string what) {
    ++disagreements;
    if (failures.size() < 32) failures.push_back(std::move(what));
  }
};

inline std::vector<std::string> default_atoms(long n) {
  std::vector<std::string> atoms;
  for (long i = 0; i < n; ++i) atoms.push_back("a" + std::to_string(i));
  return atoms;
}

inline void crosscheck_shift_tables(CrosscheckReport& rep, long atoms,
                                    unsigned long long seed) {
  std::mt19937_64 rng(seed);
  Alphabet alpha(2);
  for (long n = 2; n <= atoms; ++n) {
    for (const TableRule& tab : enumerate_tables(n)) {
      ++rep.tables;
      FunctionalMap m(IndexSet::finite(default_atoms(n)), tab);
      std::string tag = "table n=" + std::to_string(n) + " [";
      for (long v : tab.image) tag += std::to_string(v);
      tag += "]";

      bool inj = oracle_detail::table_injective(tab);
      Verdict vi = decide_injective(m);
      ++rep.checks;
      if (!vi.decided() || vi.is_yes() != inj) rep.fail(tag + ": injectivity disagrees");

      Verdict vs = decide_stroboscopic(m);
      ++rep.checks;
      if (!vs.decided() || vs.is_yes() != inj) rep.fail(tag + ": stroboscopic disagrees");

      // Finite index sets always carry a cycle, so both tracing properties
      // and the strong return property fail.
      ++rep.checks;
      if (!decide_weak_specification(m).is_no()) rep.fail(tag + ": weak tracing not refused");
      ++rep.checks;
      if (!decide_specification(m).is_no()) rep.fail(tag + ": tracing not refused");
      ++rep.checks;
      if (!decide_strong_stroboscopic(m).is_no()) rep.fail(tag + ": strong return not refused");

      // The refutation's demands must clash for real: same coordinate, both
      // demanded, no assignment satisfying them.
      Refutation ref = refute_weak_specification(m);
      for (const auto& c : ref.cases) {
        Window w({ref.point});
        Configuration zeros(0), ones(1);
        std::vector<TracingSegment> segs{{zeros, c.t1, c.t1}, {ones, c.t2, c.t2}};
        ++rep.checks;
        if (m.iterate(ref.point, c.t1) != m.iterate(ref.point, c.t2)) {
          rep.fail(tag + ": refutation coordinates differ");
          continue;
        }
        auto found = search_tracing_point(m, alpha, w, segs);
        ++rep.checks;
        if (found) rep.fail(tag + ": exhaustive search satisfied a refuted instance");
      }

      // Bijections: the return map must restore random configurations.
      if (inj) {
        std::vector<Int> all;
        for (long i = 0; i < n; ++i) all.push_back(Int(i));
        Window w(all);
        RhoMap rho = build_rho(m, w, SequenceSpec::naturals(512));
        auto conv = verify_uniform_convergence(m, alpha, rho, w, 4, rng());
        ++rep.checks;
        if (!conv.ok) rep.fail(tag + ": return map fails (" + conv.failure + ")");

        Int start(static_cast<long>(rng() % 7 + 1));
        Int step(static_cast<long>(rng() % 5 + 1));
        RhoMap rho2 = build_rho(m, w, SequenceSpec::arithmetic(start, step, 512));
        auto conv2 = verify_uniform_convergence(m, alpha, rho2, w, 4, rng());
        ++rep.checks;
        if (!conv2.ok) rep.fail(tag + ": arithmetic return map fails (" + conv2.failure + ")");
      }
    }
  }
}

inline void crosscheck_fort_tables(CrosscheckReport& rep, long atoms) {
  for (long n = 1; n <= std::min(atoms, 3L); ++n) {
    for (const TableRule& tab : enumerate_tables(n)) {
      for (long base = 0; base < n; ++base) {
        ++rep.tables;
        FortSystem fs =
            FortSystem::finite_space(IndexSet::finite(default_atoms(n)), tab, base);
        std::string tag = "fort n=" + std::to_string(n) + " base=" + std::to_string(base);

        auto inter = oracle_detail::descending_intersection(fs);
        bool singleton_base = inter.size() == 1 && inter[0] == fs.base();
        Verdict vw = decide_fort_weak_specification(fs);
        ++rep.checks;
        if (!vw.decided() || vw.is_yes() != singleton_base)
          rep.fail(tag + ": weak tracing disagrees with the literal intersection");

        bool perm = oracle_detail::table_all_periodic(tab);
        Verdict vs = decide_fort_stroboscopic(fs);
        ++rep.checks;
        if (!vs.decided() || vs.is_yes() != perm)
          rep.fail(tag + ": stroboscopic disagrees with the permutation check");

        ++rep.checks;
        if (decide_fort_specification(fs).is_yes() != (n == 1))
          rep.fail(tag + ": tracing verdict wrong");
        ++rep.checks;
        if (decide_fort_strong_stroboscopic(fs).is_yes() != (n == 1))
          rep.fail(tag + ": strong return verdict wrong");
      }
    }
  }
}

// Canned systems against their frozen classifications.
inline void crosscheck_canned(CrosscheckReport& rep) {
  for (const auto& e : builtins::canned_shifts()) {
    ++rep.tables;
    ++rep.checks;
    if (decide_weak_specification(e.map).truth != e.weak_specification)
      rep.fail(e.name + ": weak tracing drifted");
    ++rep.checks;
    if (decide_specification(e.map).truth != e.specification)
      rep.fail(e.name + ": tracing drifted");
    ++rep.checks;
    if (decide_stroboscopic(e.map).truth != e.stroboscopic)
      rep.fail(e.name + ": return property drifted");
    ++rep.checks;
    if (decide_strong_stroboscopic(e.map).truth != e.strong_stroboscopic)
      rep.fail(e.name + ": strong return drifted");
  }
  for (const auto& e : builtins::canned_forts()) {
    ++rep.tables;
    ++rep.checks;
    if (decide_fort_weak_specification(e.system).truth != e.weak_specification)
      rep.fail(e.name + ": weak tracing drifted");
    ++rep.checks;
    if (decide_fort_specification(e.system).truth != e.specification)
      rep.fail(e.name + ": tracing drifted");
    ++rep.checks;
    if (decide_fort_stroboscopic(e.system).truth != e.stroboscopic)
      rep.fail(e.name + ": return property drifted");
    ++rep.checks;
    if (decide_fort_strong_stroboscopic(e.system).truth != e.strong_stroboscopic)
      rep.fail(e.name + ": strong return drifted");
  }
}

inline CrosscheckReport crosscheck(long atoms, unsigned long long seed) {
  if (atoms < 2 || atoms > 5) throw input_error("crosscheck supports 2..5 atoms");
  CrosscheckReport rep;
  crosscheck_shift_tables(rep, atoms, seed);
  crosscheck_fort_tables(rep, atoms);
  crosscheck_canned(rep);
  return rep;
}

}  // namespace gshift
