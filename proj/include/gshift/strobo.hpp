#pragma once
// Stroboscopic structure of shift systems: deciders, residue-stabilized and
// gap-spaced subsequence selection, and explicit rho-maps witnessing that
// the selected shift powers return every configuration to itself on a given
// finite window, exactly, from a computed threshold onward.

#include <random>
#include <vector>

#include "analysis.hpp"
#include "config_space.hpp"

namespace gshift {

// Stroboscopic behaviour needs the shift invertible on orbits, i.e. the
// index map injective; the strong variant additionally bans periodic indices.
inline Verdict decide_stroboscopic(const FunctionalMap& m) {
  Verdict inj = decide_injective(m);
  if (inj.is_yes())
    return Verdict::yes(inj.cert, "injective index map; uniform variant included");
  if (inj.is_no())
    return Verdict::no(inj.cert, "a collision of indices defeats every return map");
  return inj;
}

inline Verdict decide_strong_stroboscopic(const FunctionalMap& m) {
  Verdict inj = decide_injective(m);
  if (inj.is_no()) return Verdict::no(inj.cert, "not injective");
  Verdict per = decide_periodic_free(m);
  if (per.is_no())
    return Verdict::no(per.cert, "periodic index pins the return times");
  if (inj.is_yes() && per.is_yes())
    return Verdict::yes(AnalyticCertificate{"injective and free of periodic indices"});
  return Verdict::unknown(!inj.decided() ? inj.detail : per.detail);
}

// ---------------------------------------------------------------------------
// Time sequences

struct SequenceSpec {
  enum class Kind { Naturals, Arithmetic, Explicit };
  Kind kind = Kind::Naturals;
  Int start = 1, step = 1;
  std::vector<Int> terms;
  long prefix = 4096;

  static SequenceSpec naturals(long prefix = 4096) {
    SequenceSpec s;
    s.prefix = prefix;
    s.check();
    return s;
  }
  static SequenceSpec arithmetic(Int start, Int step, long prefix = 4096) {
    SequenceSpec s;
    s.kind = Kind::Arithmetic;
    s.start = std::move(start);
    s.step = std::move(step);
    s.prefix = prefix;
    s.check();
    return s;
  }
  static SequenceSpec explicit_terms(std::vector<Int> ts) {
    SequenceSpec s;
    s.kind = Kind::Explicit;
    s.terms = std::move(ts);
    s.check();
    return s;
  }

  void check() const {
    if (kind == Kind::Explicit) {
      if (terms.size() < 2) throw input_error("explicit sequence needs at least two terms");
      for (size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < 0) throw input_error("sequence terms must be nonnegative");
        if (i > 0 && terms[i] <= terms[i - 1])
          throw input_error("sequence terms must be strictly increasing");
      }
      return;
    }
    if (start < 0) throw input_error("sequence start must be nonnegative");
    if (step < 1) throw input_error("sequence step must be positive");
    if (prefix < 2 || prefix > 10000000)
      throw input_error("sequence prefix must be in [2, 10^7]");
  }

  // The working prefix the selectors operate on.
  std::vector<Int> materialize() const {
    if (kind == Kind::Explicit) return terms;
    std::vector<Int> out;
    out.reserve(static_cast<size_t>(prefix));
    Int v = start;
    for (long i = 0; i < prefix; ++i, v += step) out.push_back(v);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Residue-stabilized subsequence: a table f with f(k) in [1, k] and terms
// n_0 < n_1 < ... drawn from the sequence so that n_i = f(k) (mod k)
// whenever i >= k, for every k up to the requested level.

struct ResidueTable {
  Int level;               // table covers moduli 1..level
  std::vector<Int> f;      // f[k] for k = 1..level (f[0] unused)

  const Int& at(const Int& k) const {
    if (k < 1 || k > level) throw input_error("modulus outside the residue table");
    return f[k.convert_to<size_t>()];
  }
};

struct CongruenceSubsequence {
  ResidueTable table;
  std::vector<Int> terms;
  std::vector<size_t> stage_sizes;  // surviving terms after each stage 2..level
};

inline CongruenceSubsequence congruence_subsequence(const SequenceSpec& seq, const Int& level) {
  if (level < 1 || level > 64) throw input_error("residue level must be in [1, 64]");
  std::vector<Int> base = seq.materialize();
  if (base.size() < 2) throw budget_error("sequence prefix too short");

  size_t M = level.convert_to<size_t>();
  CongruenceSubsequence out;
  out.table.level = level;
  out.table.f.assign(M + 1, Int(1));  // f(1) = 1

  // stages[s]: terms satisfying every residue constraint up to modulus s.
  std::vector<std::vector<Int>> stages(M + 1);
  stages[1] = base;
  std::vector<Int> cur = base;
  for (size_t s = 2; s <= M; ++s) {
    Int mod(static_cast<long>(s));
    std::map<Int, size_t> totals;
    for (const Int& x : cur) ++totals[mod_floor(x, mod)];
    size_t threshold = (cur.size() + s - 1) / s;
    // earliest term whose residue class is populous enough from here on
    std::optional<Int> pick;
    for (const Int& x : cur) {
      if (totals[mod_floor(x, mod)] >= threshold) { pick = mod_floor(x, mod); break; }
    }
    if (!pick) throw invariant_error("pigeonhole failed during residue selection");
    out.table.f[s] = (*pick == 0) ? mod : *pick;
    std::vector<Int> next;
    for (const Int& x : cur)
      if (mod_floor(x, mod) == *pick) next.push_back(x);
    cur = std::move(next);
    stages[s] = cur;
    out.stage_sizes.push_back(cur.size());
    if (cur.size() < 2)
      throw budget_error("residue stage " + std::to_string(s) +
                         " leaves fewer than two terms; supply a longer sequence");
  }

  // Diagonal: the i-th term honours every constraint up to modulus min(i, level),
  // giving the guarantee n_i = f(k) (mod k) for all i >= k.
  out.terms.push_back(stages[1].front());
  for (;;) {
    size_t i = out.terms.size();
    const auto& pool = stages[std::min(i, M)];
    auto it = std::upper_bound(pool.begin(), pool.end(), out.terms.back());
    if (it == pool.end()) break;
    out.terms.push_back(*it);
  }
  return out;
}

// Gap-spaced subsequence: picks the terms at positions 0, 1, 4, 9, ... (the
// squares), so consecutive picks are more than 2i apart in value.
inline std::vector<Int> gap_subsequence(const SequenceSpec& seq, long count) {
  if (count < 1) throw input_error("need at least one spaced term");
  std::vector<Int> base = seq.materialize();
  size_t need = static_cast<size_t>(count - 1) * static_cast<size_t>(count - 1) + 1;
  if (base.size() < need)
    throw budget_error("sequence prefix of " + std::to_string(base.size()) +
                       " terms cannot supply " + std::to_string(count) +
                       " spaced terms (needs " + std::to_string(need) + ")");
  std::vector<Int> out;
  out.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i)
    out.push_back(base[static_cast<size_t>(i) * static_cast<size_t>(i)]);
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i + 1] - out[i] <= 2 * Int(static_cast<long>(i)))
      throw invariant_error("spaced subsequence violates its gap law");
  return out;
}

// ---------------------------------------------------------------------------
// Return maps

struct RhoMap {
  std::map<Int, Int> relocation;  // coordinate -> source coordinate it copies
  Int threshold = 0;              // agreement holds for term indices >= threshold
  std::vector<Int> terms;         // selected time subsequence
  std::string construction;

  Configuration apply(const Configuration& z) const {
    Configuration out = z;
    for (const auto& [coord, src] : relocation) out.set(coord, z.at(src));
    return out;
  }
};

namespace detail {

inline long small_long(const Int& v, const char* what) {
  if (v < 0 || v > 1000000) throw budget_error(std::string(what) + " out of workable range");
  return v.convert_to<long>();
}

// Signed position of `member` relative to `rep` on a shared injective orbit.
inline Int signed_offset(const FunctionalMap& m, const Int& rep, const Int& member) {
  EscapePredicate esc = escape_predicate(m);
  auto fwd = hunt(m, rep, member, esc);
  if (fwd.outcome == HuntOutcome::Found) return fwd.steps;
  auto bwd = hunt(m, member, rep, esc);
  if (bwd.outcome == HuntOutcome::Found) return -bwd.steps;
  throw budget_error("cannot place two window indices on their shared orbit");
}

}  // namespace detail

// Build a return map for the window: rho relocates finitely many coordinates
// so that applying the shift terms[i] times (any i >= threshold) restores
// every configuration on the window exactly.
inline RhoMap build_rho(const FunctionalMap& m, const Window& w, const SequenceSpec& seq) {
  Verdict inj = decide_injective(m);
  if (inj.is_no())
    throw input_error("return maps need an injective index map");
  if (!inj.decided())
    throw budget_error("cannot certify the index map injective");

  std::vector<Int> periodic, aperiodic;
  Int max_period = 0;
  for (const Int& g : w.coords) {
    PeriodReport pr = period(m, g);
    if (pr.kind == PeriodReport::Kind::Unknown)
      throw budget_error("cannot settle periodicity of window index " + m.domain().show(g));
    if (pr.periodic()) {
      periodic.push_back(g);
      max_period = std::max(max_period, pr.period);
    } else {
      aperiodic.push_back(g);
    }
  }

  RhoMap rho;

  // Aperiodic part: measure orbit offsets within each class of the window.
  Int spread = 0;
  std::vector<std::pair<Int, Int>> placed;  // (index, offset from its class rep)
  if (!aperiodic.empty()) {
    std::vector<Int> reps;
    for (const Int& g : aperiodic) {
      std::optional<size_t> cls;
      for (size_t r = 0; r < reps.size(); ++r) {
        Verdict v = same_class(m, reps[r], g);
        if (!v.decided()) throw budget_error("cannot certify the window's class structure");
        if (v.is_yes()) { cls = r; break; }
      }
      if (!cls) { reps.push_back(g); cls = reps.size() - 1; }
      Int off = detail::signed_offset(m, reps[*cls], g);
      spread = std::max(spread, abs_int(off));
      placed.emplace_back(g, off);
    }
  }

  // Cycle relocation: each periodic index is copied from the coordinate its
  // cycle presents at the stabilized residue, the same one for every checked term.
  auto attach_periodic = [&](const ResidueTable& table) {
    for (const Int& g : periodic) {
      Int k = period(m, g).period;
      Int shift = mod_floor(table.at(k), k);
      Int target = m.iterate(g, shift);
      auto [it, fresh] = rho.relocation.emplace(target, g);
      if (!fresh && it->second != g)
        throw invariant_error("cycle relocation targets collide");
    }
  };

  // Select terms and the agreement threshold.
  if (aperiodic.empty()) {
    auto cong = congruence_subsequence(seq, std::max(max_period, Int(1)));
    rho.terms = cong.terms;
    rho.threshold = max_period;
    rho.construction = "residue-stabilized terms; cycle relocation";
    attach_periodic(cong.table);
  } else {
    long count = detail::small_long(spread + 14 + 12 * max_period, "orbit spread");
    std::vector<Int> spaced = gap_subsequence(seq, count);
    if (periodic.empty()) {
      rho.terms = spaced;
      rho.threshold = spread + 2;
      rho.construction = "gap-spaced terms; orbit zone relocation";
    } else {
      auto cong = congruence_subsequence(SequenceSpec::explicit_terms(spaced),
                                         std::max(max_period, Int(1)));
      rho.terms = cong.terms;
      rho.threshold = std::max(max_period, Int(spread + 2));
      rho.construction = "gap-spaced then residue-stabilized terms; mixed relocation";
      attach_periodic(cong.table);
    }
  }

  long from = detail::small_long(rho.threshold, "agreement threshold");
  if (static_cast<size_t>(from) + 1 >= rho.terms.size())
    throw budget_error("selected subsequence too short past the threshold; "
                       "supply a longer sequence");

  // Aperiodic relocation entries: send the landing coordinate of each checked
  // term back to its window source. Injectivity plus term spacing keeps the
  // entries consistent; any clash is a bug.
  if (!aperiodic.empty()) {
    for (size_t i = static_cast<size_t>(from); i < rho.terms.size(); ++i) {
      for (const auto& [g, off] : placed) {
        Int coord = m.iterate(g, rho.terms[i]);
        auto [it, fresh] = rho.relocation.emplace(coord, g);
        if (!fresh && it->second != g)
          throw invariant_error("orbit zone relocation entries collide");
      }
    }
  }

  // Structural verification: every checked term lands every window index on
  // a coordinate that copies from exactly that index.
  for (size_t i = static_cast<size_t>(from); i < rho.terms.size(); ++i) {
    for (const Int& g : w.coords) {
      Int coord = m.iterate(g, rho.terms[i]);
      auto it = rho.relocation.find(coord);
      if (it == rho.relocation.end() || it->second != g)
        throw invariant_error("return-map landing check failed");
    }
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Randomized end-to-end verification of a return map

struct ConvergenceReport {
  bool ok = true;
  long checks = 0;
  std::string failure;
};

inline ConvergenceReport verify_uniform_convergence(const FunctionalMap& m,
                                                    const Alphabet& alpha,
                                                    const RhoMap& rho, const Window& w,
                                                    long trials, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sym(0, alpha.size - 1);
  ConvergenceReport rep;

  // Coordinates worth randomizing: the window, every relocation source and
  // target, and a few unrelated spots.
  std::vector<Int> coords(w.coords);
  for (const auto& [c, src] : rho.relocation) {
    coords.push_back(c);
    coords.push_back(src);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  long from = detail::small_long(rho.threshold, "agreement threshold");
  size_t last = std::min(rho.terms.size(), static_cast<size_t>(from) + 24);

  for (long t = 0; t < trials; ++t) {
    Configuration z(sym(rng));
    for (const Int& c : coords) z.set(c, sym(rng));
    for (int extra = 0; extra < 4; ++extra)
      z.set(Int(static_cast<long>(rng() % 4001)) - 2000, sym(rng));
    Configuration rz = rho.apply(z);
    for (size_t i = static_cast<size_t>(from); i < last; ++i) {
      for (const Int& g : w.coords) {
        ++rep.checks;
        if (orbit_value(m, rz, g, rho.terms[i]) != z.at(g)) {
          rep.ok = false;
          rep.failure = "window index " + m.domain().show(g) + " disagrees at term " +
                        std::to_string(i);
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace gshift
