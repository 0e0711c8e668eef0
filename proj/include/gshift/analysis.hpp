#pragma once
// Functional-graph analysis of finitely presented self-maps: injectivity,
// existence of periodic points, minimal periods, orbit equivalence, the
// cycle/chain classification of orbit classes under injective maps, and
// confluence data (common forward meeting points) for finite index sets.
//
// Anything answered Yes or No carries a certificate; exploration that ends
// without a certificate comes back Unknown (or budget_error for operations
// whose result is not verdict-shaped).

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "map.hpp"
#include "verdict.hpp"

namespace gshift {

// ---------------------------------------------------------------------------
// Structural views shared by the deciders

namespace detail {

struct PieceLaws {
  bool is_piecewise = false;
  bool guards_bounded = true;    // every guard is a point or finite range
  Int hull_lo = 0, hull_hi = 0;  // envelope of bounded guard structure
  bool has_hull = false;

  void absorb(const Int& v) {
    if (!has_hull) {
      hull_lo = hull_hi = v;
      has_hull = true;
    } else {
      hull_lo = std::min(hull_lo, v);
      hull_hi = std::max(hull_hi, v);
    }
  }
};

inline PieceLaws piece_laws(const FunctionalMap& m) {
  PieceLaws L;
  const auto* pw = std::get_if<PiecewiseRule>(&m.rule());
  if (!pw) return L;
  L.is_piecewise = true;
  for (const auto& br : pw->branches) {
    const Guard& g = br.guard;
    switch (g.kind) {
      case Guard::Kind::Point: L.absorb(g.lo); break;
      case Guard::Kind::Range: L.absorb(g.lo); L.absorb(g.hi); break;
      case Guard::Kind::AtLeast: L.absorb(g.lo); L.guards_bounded = false; break;
      case Guard::Kind::AtMost: L.absorb(g.hi); L.guards_bounded = false; break;
      case Guard::Kind::Residue: L.guards_bounded = false; break;
    }
  }
  if (!L.has_hull) { L.hull_lo = 0; L.hull_hi = 0; L.has_hull = true; }
  return L;
}

// Magnitude-growth core of a single sub-rule: outside |n| > bound the rule
// strictly increases magnitude, so orbits that leave never return. Affine
// pieces with |a| <= 1 have no such core.
inline std::optional<Int> growth_core(const SubRule& r) {
  if (const auto* aff = std::get_if<AffineRule>(&r)) {
    if (abs_int(aff->a) >= 2) return abs_int(aff->b);
    return std::nullopt;
  }
  const auto& sq = std::get<SquarePlusRule>(r);
  // |n^2 + c| >= n^2 - |c| > |n| once |n| (|n| - 1) > |c|.
  Int b = sqrt(abs_int(sq.c)) + 2;
  return std::max(Int(2), b);
}

// Escape predicate: when usable, any value v with escaped(v) true provably
// never revisits previously seen territory (so no cycle can pass through it).
struct EscapePredicate {
  bool usable = false;
  Int sweep_radius;  // cycles, if any, live inside [-sweep_radius, sweep_radius]
  std::string law;
  // drift: fallback n -> n + b with b != 0; one side of the hull escapes
  bool drift = false;
  Int drift_b;
  Int hull_lo, hull_hi;
  bool growth = false;  // magnitude growth beyond sweep_radius

  bool escaped(const Int& v) const {
    if (!usable) return false;
    if (growth) return abs_int(v) > sweep_radius;
    if (drift) return drift_b > 0 ? v > hull_hi : v < hull_lo;
    return false;
  }
};

inline EscapePredicate escape_predicate(const FunctionalMap& m) {
  EscapePredicate e;
  if (const auto* sq = std::get_if<SquarePlusRule>(&m.rule())) {
    e.usable = true;
    e.growth = true;
    e.sweep_radius = *growth_core(SubRule(*sq));
    e.law = "n^2 + c strictly grows in magnitude outside the core";
    return e;
  }
  const auto* pw = std::get_if<PiecewiseRule>(&m.rule());
  if (!pw) return e;
  PieceLaws L = piece_laws(m);

  // Strict growth in every piece certifies escape regardless of guard shape:
  // a cycle's largest-magnitude point would have to shrink somewhere.
  bool all_growth = true;
  Int radius = 0;
  for (const auto& br : pw->branches) {
    auto c = growth_core(br.rule);
    if (!c) { all_growth = false; break; }
    radius = std::max(radius, *c);
  }
  if (all_growth) {
    if (auto c = growth_core(pw->fallback)) {
      e.usable = true;
      e.growth = true;
      e.sweep_radius = std::max(radius, *c);
      e.law = "every piece strictly grows in magnitude outside the core";
      return e;
    }
  }

  if (!L.guards_bounded) return e;  // no certification for unbounded guards here

  Int hull = std::max(abs_int(L.hull_lo), abs_int(L.hull_hi));
  if (auto c = growth_core(pw->fallback)) {
    e.usable = true;
    e.growth = true;
    e.sweep_radius = std::max(hull, *c);
    e.law = "fallback grows in magnitude outside the guard hull";
    return e;
  }
  if (const auto* aff = std::get_if<AffineRule>(&pw->fallback)) {
    if (aff->a == 1 && aff->b != 0) {
      e.usable = true;
      e.drift = true;
      e.drift_b = aff->b;
      e.hull_lo = L.hull_lo;
      e.hull_hi = L.hull_hi;
      e.sweep_radius = hull;
      e.law = "fallback translation drifts away once past the guard hull";
      return e;
    }
  }
  return e;
}

enum class OrbitFate { Cycles, Escapes, Budget };

struct OrbitOutcome {
  OrbitFate fate = OrbitFate::Budget;
  Int cycle_point;  // a point on the discovered cycle
  Int cycle_length;
};

// Follow one forward orbit until it revisits a value, satisfies the escape
// predicate, or runs out of steps.
inline OrbitOutcome explore_orbit(const FunctionalMap& m, const Int& start,
                                  const EscapePredicate& esc, long steps) {
  std::map<Int, long> seen;
  Int cur = start;
  for (long s = 0; s <= steps; ++s) {
    if (esc.escaped(cur)) return {OrbitFate::Escapes, 0, 0};
    auto it = seen.find(cur);
    if (it != seen.end())
      return {OrbitFate::Cycles, cur, Int(s - it->second)};
    seen.emplace(cur, s);
    cur = m.apply(cur);
  }
  return {OrbitFate::Budget, 0, 0};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Injectivity

inline Verdict decide_injective(const FunctionalMap& m) {
  const IndexSet& dom = m.domain();

  if (const auto* tab = std::get_if<TableRule>(&m.rule())) {
    std::map<long, long> first;
    for (long i = 0; i < dom.size(); ++i) {
      auto [it, fresh] = first.emplace(tab->image[static_cast<size_t>(i)], i);
      if (!fresh)
        return Verdict::no(InjectivityCollision{Int(it->second), Int(i)},
                           "two atoms share an image");
    }
    return Verdict::yes(FiniteExhaustive{}, "every atom has a distinct image");
  }

  if (const auto* aff = std::get_if<AffineRule>(&m.rule())) {
    if (aff->a == 0)
      return Verdict::no(InjectivityCollision{Int(0), Int(1)}, "constant map");
    return Verdict::yes(AnalyticCertificate{"affine with a != 0 is injective"});
  }

  if (std::holds_alternative<SquarePlusRule>(m.rule()))
    return Verdict::no(InjectivityCollision{Int(1), Int(-1)},
                       "n and -n share a square");

  const auto& pw = std::get<PiecewiseRule>(m.rule());

  // Exact path: finitely many exceptional points over an injective fallback.
  bool point_guards_only = true;
  for (const auto& br : pw.branches)
    if (br.guard.kind != Guard::Kind::Point) { point_guards_only = false; break; }

  if (point_guards_only) {
    std::set<Int> exceptional;
    for (const auto& br : pw.branches) exceptional.insert(br.guard.lo);
    auto in_default = [&](const Int& n) { return !exceptional.count(n); };

    if (const auto* fb = std::get_if<AffineRule>(&pw.fallback)) {
      if (fb->a != 0) {
        std::map<Int, Int> images;  // branch image -> branch point
        for (const auto& br : pw.branches) {
          Int v = apply_subrule(br.rule, br.guard.lo);
          auto [it, fresh] = images.emplace(v, br.guard.lo);
          if (!fresh)
            return Verdict::no(InjectivityCollision{it->second, br.guard.lo},
                               "two exceptional points share an image");
        }
        for (const auto& [v, p] : images) {
          Int num = v - fb->b;
          if (num % fb->a != 0) continue;
          Int n = num / fb->a;
          if (in_default(n))
            return Verdict::no(InjectivityCollision{std::min(n, p), std::max(n, p)},
                               "exceptional image collides with the fallback");
        }
        return Verdict::yes(
            AnalyticCertificate{"injective fallback; exceptional images stay clear"});
      }
      // Constant fallback over a cofinite region: collision guaranteed.
      Int n = 0;
      while (exceptional.count(n) || exceptional.count(n + 1)) ++n;
      return Verdict::no(InjectivityCollision{n, n + 1}, "constant fallback");
    }
    // SquarePlus fallback over a cofinite region: some +/- pair survives.
    Int n = 1;
    while (exceptional.count(n) || exceptional.count(-n)) ++n;
    return Verdict::no(InjectivityCollision{-n, n}, "n and -n share a square");
  }

  // Fallback: bounded collision scan.
  Int window = std::min(m.budget().magnitude, Int(200000));
  std::map<Int, Int> images;
  for (Int n = -window; n <= window; ++n) {
    auto [it, fresh] = images.emplace(m.apply(n), n);
    if (!fresh)
      return Verdict::no(InjectivityCollision{it->second, n},
                         "collision found by scan");
  }
  return Verdict::unknown("no collision in [-" + window.str() + ", " +
                          window.str() + "]; injectivity not certified");
}

// ---------------------------------------------------------------------------
// Periodic points

inline Verdict decide_periodic_free(const FunctionalMap& m) {
  const IndexSet& dom = m.domain();

  if (std::holds_alternative<TableRule>(m.rule())) {
    // A finite domain always carries a cycle; report the first one found.
    detail::EscapePredicate none;
    for (long i = 0; i < dom.size(); ++i) {
      auto out = detail::explore_orbit(m, Int(i), none, dom.size() + 1);
      if (out.fate == detail::OrbitFate::Cycles)
        return Verdict::no(PeriodicWitness{out.cycle_point, out.cycle_length},
                           "finite domains always cycle");
    }
    throw invariant_error("finite map without a cycle");
  }

  if (const auto* aff = std::get_if<AffineRule>(&m.rule())) {
    if (aff->a == 1) {
      if (aff->b == 0) return Verdict::no(PeriodicWitness{Int(0), Int(1)}, "identity");
      return Verdict::yes(AnalyticCertificate{"translation by a nonzero step"});
    }
    if (aff->a == -1) {
      if (aff->b == 0) return Verdict::no(PeriodicWitness{Int(0), Int(1)}, "negation fixes 0");
      return Verdict::no(PeriodicWitness{Int(0), Int(2)},
                         "n -> -n + b is an involution");
    }
    if (aff->a == 0)
      return Verdict::no(PeriodicWitness{aff->b, Int(1)}, "constant value is fixed");
    // |a| >= 2: any periodic point solves a^k n + b(a^k-1)/(a-1) = n, which
    // forces n = b / (1 - a) for every k; only the fixed point can exist.
    Int num = aff->b, den = 1 - aff->a;
    if (num % den == 0)
      return Verdict::no(PeriodicWitness{num / den, Int(1)}, "affine fixed point");
    return Verdict::yes(
        AnalyticCertificate{"|a| >= 2 and the unique fixed-point candidate is not integral"});
  }

  detail::EscapePredicate esc = detail::escape_predicate(m);

  if (std::holds_alternative<SquarePlusRule>(m.rule())) {
    Int radius = esc.sweep_radius;
    if (radius > 65536)
      return Verdict::unknown("square core too wide to sweep");
    for (Int n = -radius; n <= radius; ++n) {
      auto out = detail::explore_orbit(m, n, esc, m.budget().steps);
      if (out.fate == detail::OrbitFate::Cycles)
        return Verdict::no(PeriodicWitness{out.cycle_point, out.cycle_length},
                           "cycle inside the core");
    }
    return Verdict::yes(EscapeCertificate{radius, esc.law},
                        "no cycle in the swept core");
  }

  const auto& pw = std::get<PiecewiseRule>(m.rule());
  detail::PieceLaws L = detail::piece_laws(m);

  // Candidate seeds: guard structure, constant values, fixed-point solutions.
  std::set<Int> seeds;
  auto seed_subrule = [&](const SubRule& r, const Guard* g) {
    if (const auto* aff = std::get_if<AffineRule>(&r)) {
      if (aff->a == 0) seeds.insert(aff->b);
      else if (aff->a != 1 && (aff->b % (1 - aff->a)) == 0) {
        Int fix = aff->b / (1 - aff->a);
        if (!g || g->matches(fix)) seeds.insert(fix);
      } else if (aff->a == 1 && aff->b == 0 && g) {
        // identity piece: every guarded point is fixed
        if (g->kind == Guard::Kind::Point) seeds.insert(g->lo);
        else if (g->kind == Guard::Kind::Range) seeds.insert(g->lo);
        else if (g->kind == Guard::Kind::AtLeast) seeds.insert(g->lo);
        else if (g->kind == Guard::Kind::AtMost) seeds.insert(g->hi);
        else seeds.insert(g->res);
      }
    }
  };
  for (const auto& br : pw.branches) {
    const Guard& g = br.guard;
    switch (g.kind) {
      case Guard::Kind::Point: seeds.insert(g.lo); break;
      case Guard::Kind::Range:
        if (g.hi - g.lo <= 256)
          for (Int n = g.lo; n <= g.hi; ++n) seeds.insert(n);
        else { seeds.insert(g.lo); seeds.insert(g.hi); }
        break;
      case Guard::Kind::AtLeast: for (Int k = 0; k < 3; ++k) seeds.insert(g.lo + k); break;
      case Guard::Kind::AtMost: for (Int k = 0; k < 3; ++k) seeds.insert(g.hi - k); break;
      case Guard::Kind::Residue:
        for (Int k = -2; k <= 2; ++k) seeds.insert(g.res + k * g.mod);
        break;
    }
    seed_subrule(br.rule, &g);
  }
  seed_subrule(pw.fallback, nullptr);
  seeds.insert(0);

  // Fallback shapes that force cycles outright (when large points use it).
  if (L.guards_bounded) {
    if (const auto* fb = std::get_if<AffineRule>(&pw.fallback)) {
      Int far = std::max(abs_int(L.hull_lo), abs_int(L.hull_hi)) +
                abs_int(fb->b) + 7;
      if (fb->a == 1 && fb->b == 0)
        return Verdict::no(PeriodicWitness{far, Int(1)},
                           "identity fallback beyond the guard hull");
      if (fb->a == -1) {
        // n and b - n both land beyond the hull, giving a two-cycle.
        if (2 * far != fb->b)
          return Verdict::no(PeriodicWitness{far, Int(2)},
                             "involution fallback beyond the guard hull");
      }
    }
  }

  bool cycle_possible_outside_sweep = !esc.usable;
  Int sweep = esc.usable ? esc.sweep_radius : Int(0);
  if (esc.usable && sweep <= 4096)
    for (Int n = -sweep; n <= sweep; ++n) seeds.insert(n);
  else if (esc.usable)
    cycle_possible_outside_sweep = true;  // core too wide to enumerate

  for (const Int& s : seeds) {
    auto out = detail::explore_orbit(m, s, esc, m.budget().steps);
    if (out.fate == detail::OrbitFate::Cycles)
      return Verdict::no(PeriodicWitness{out.cycle_point, out.cycle_length},
                         "cycle reached from structural seed");
    if (out.fate == detail::OrbitFate::Budget)
      cycle_possible_outside_sweep = true;
  }

  if (!cycle_possible_outside_sweep)
    return Verdict::yes(EscapeCertificate{sweep, esc.law},
                        "no cycle in the swept core");
  return Verdict::unknown("periodic structure not certifiable for this rule shape");
}

// ---------------------------------------------------------------------------
// Minimal period of a single index

struct PeriodReport {
  enum class Kind { Periodic, NotPeriodic, Unknown };
  Kind kind = Kind::Unknown;
  Int period;  // Periodic only; minimal
  std::string note;

  bool periodic() const { return kind == Kind::Periodic; }
};

inline PeriodReport period(const FunctionalMap& m, const Int& idx) {
  m.domain().require(idx);

  if (const auto* aff = std::get_if<AffineRule>(&m.rule())) {
    if (aff->a == 1)
      return aff->b == 0 ? PeriodReport{PeriodReport::Kind::Periodic, 1, "identity"}
                         : PeriodReport{PeriodReport::Kind::NotPeriodic, 0, "translation"};
    if (aff->a == -1) {
      if (2 * idx == aff->b) return {PeriodReport::Kind::Periodic, 1, "involution center"};
      return {PeriodReport::Kind::Periodic, 2, "involution"};
    }
    if (aff->a == 0) {
      if (idx == aff->b) return {PeriodReport::Kind::Periodic, 1, "constant value"};
      return {PeriodReport::Kind::NotPeriodic, 0, "funnels into the constant"};
    }
    Int num = aff->b, den = 1 - aff->a;
    if (num % den == 0 && idx == num / den)
      return {PeriodReport::Kind::Periodic, 1, "affine fixed point"};
    return {PeriodReport::Kind::NotPeriodic, 0, "|a| >= 2 admits only the fixed point"};
  }

  detail::EscapePredicate esc = detail::escape_predicate(m);
  std::map<Int, long> seen;
  Int cur = idx;
  for (long s = 0; s <= m.budget().steps; ++s) {
    if (s > 0 && cur == idx) return {PeriodReport::Kind::Periodic, Int(s), ""};
    if (esc.escaped(cur))
      return {PeriodReport::Kind::NotPeriodic, 0, "orbit escapes for good"};
    auto it = seen.find(cur);
    if (it != seen.end())
      return {PeriodReport::Kind::NotPeriodic, 0, "enters a cycle that misses the start"};
    seen.emplace(cur, s);
    cur = m.apply(cur);
  }
  return {PeriodReport::Kind::Unknown, 0, "step budget exhausted"};
}

// The cycle through a periodic index, starting at idx.
inline std::vector<Int> cycle_of(const FunctionalMap& m, const Int& idx) {
  PeriodReport pr = period(m, idx);
  if (!pr.periodic()) throw input_error("cycle_of wants a periodic index");
  std::vector<Int> cyc;
  Int cur = idx;
  for (Int k = 0; k < pr.period; ++k) {
    cyc.push_back(cur);
    cur = m.apply(cur);
  }
  return cyc;
}

// ---------------------------------------------------------------------------
// Orbit equivalence (smallest equivalence relating n to its image)

namespace detail {

enum class HuntOutcome { Found, Separated, Budget };

struct HuntResult {
  HuntOutcome outcome;
  Int steps;  // Found: iterate(from, steps) == target
};

// Walk the forward orbit of `from` looking for `target`. Separation is
// certified when the orbit closes a cycle without the target, or escapes
// with magnitude/drift beyond any chance of returning to the target.
inline HuntResult hunt(const FunctionalMap& m, const Int& from, const Int& target,
                       const EscapePredicate& esc) {
  std::map<Int, long> seen;
  Int cur = from;
  for (long s = 0; s <= m.budget().steps; ++s) {
    if (cur == target) return {HuntOutcome::Found, Int(s)};
    if (esc.escaped(cur)) {
      bool gone = false;
      if (esc.growth) gone = abs_int(cur) > abs_int(target);
      else if (esc.drift)
        gone = esc.drift_b > 0 ? cur > target : cur < target;
      if (gone) return {HuntOutcome::Separated, 0};
    }
    auto it = seen.find(cur);
    if (it != seen.end()) return {HuntOutcome::Separated, 0};
    seen.emplace(cur, s);
    cur = m.apply(cur);
  }
  return {HuntOutcome::Budget, 0};
}

}  // namespace detail

inline Verdict same_class(const FunctionalMap& m, const Int& a, const Int& b) {
  m.domain().require(a);
  m.domain().require(b);
  if (a == b) return Verdict::yes(AnalyticCertificate{"same index"});

  if (const auto* aff = std::get_if<AffineRule>(&m.rule())) {
    if (aff->a == 1) {
      if (aff->b == 0)
        return Verdict::no(AnalyticCertificate{"identity map separates distinct indices"});
      bool rel = mod_floor(a - b, abs_int(aff->b)) == 0;
      return rel ? Verdict::yes(AnalyticCertificate{"same residue class modulo the step"})
                 : Verdict::no(AnalyticCertificate{"orbit residue modulo the step is invariant"});
    }
    if (aff->a == -1) {
      bool rel = (b == aff->b - a);
      return rel ? Verdict::yes(AnalyticCertificate{"paired by the involution"})
                 : Verdict::no(AnalyticCertificate{"involution classes are pairs"});
    }
    if (aff->a == 0) return Verdict::yes(AnalyticCertificate{"all orbits meet at the constant"});
  }

  detail::EscapePredicate esc = detail::escape_predicate(m);

  // For square maps the only way two deep orbit tails can first meet is via
  // a +/- pair of small magnitude, so checking first values against the
  // opposite orbit (until both escape) is complete.
  bool square = std::holds_alternative<SquarePlusRule>(m.rule());
  std::vector<std::pair<Int, Int>> probes;  // (from, target)
  probes.push_back({a, b});
  probes.push_back({b, a});
  if (square) {
    probes.push_back({b, m.apply(a)});
    probes.push_back({a, m.apply(b)});
  }

  bool budget = false;
  for (auto& [from, target] : probes) {
    auto r = detail::hunt(m, from, target, esc);
    if (r.outcome == detail::HuntOutcome::Found)
      return Verdict::yes(AnalyticCertificate{"one orbit reaches the other"},
                          "meet after " + r.steps.str() + " steps");
    if (r.outcome == detail::HuntOutcome::Budget) budget = true;
  }
  if (budget) return Verdict::unknown("orbit search budget exhausted");

  // Separation for non-injective piecewise rules is not certified here.
  if (std::holds_alternative<PiecewiseRule>(m.rule()) &&
      !decide_injective(m).is_yes())
    return Verdict::unknown("separation needs an injective map");

  return Verdict::no(AnalyticCertificate{"forward orbits provably never meet"});
}

// ---------------------------------------------------------------------------
// Class shape under an injective map: a cycle, a one-sided chain grown from
// a root with empty fiber, or a two-sided chain.

struct ClassDescriptor {
  enum class Kind { Cycle, ChainN, ChainZ, Undetermined };
  Kind kind = Kind::Undetermined;
  Int cycle_length;  // Cycle
  Int root;          // ChainN
  std::string note;

  bool operator==(const ClassDescriptor& o) const {
    return kind == o.kind &&
           (kind != Kind::Cycle || cycle_length == o.cycle_length) &&
           (kind != Kind::ChainN || root == o.root);
  }
};

inline ClassDescriptor class_type(const FunctionalMap& m, const Int& idx) {
  if (!decide_injective(m).is_yes())
    throw input_error("class_type needs a certified injective map");
  m.domain().require(idx);

  PeriodReport pr = period(m, idx);
  if (pr.periodic()) return {ClassDescriptor::Kind::Cycle, pr.period, 0, ""};
  if (pr.kind == PeriodReport::Kind::Unknown)
    return {ClassDescriptor::Kind::Undetermined, 0, 0, "period search exhausted"};

  // Affine bijections with no periodic points have two-sided orbits.
  if (const auto* aff = std::get_if<AffineRule>(&m.rule()))
    if (abs_int(aff->a) == 1)
      return {ClassDescriptor::Kind::ChainZ, 0, 0, "affine bijection"};

  detail::PieceLaws L = detail::piece_laws(m);
  const auto* pw = std::get_if<PiecewiseRule>(&m.rule());

  Int cur = idx;
  for (long s = 0; s <= m.budget().steps; ++s) {
    Preimages pre = m.preimages(cur);
    if (pre.kind != Preimages::Kind::Finite)
      return {ClassDescriptor::Kind::Undetermined, 0, 0, "fiber not finite"};
    if (pre.points.empty())
      return {ClassDescriptor::Kind::ChainN, 0, cur, ""};
    if (pre.points.size() > 1)
      throw invariant_error("injective map with a two-point fiber");
    cur = pre.points[0];

    // Once the backward ray is past the guard hull and the fallback is an
    // affine bijection stepping away from it, the walk continues forever.
    if (pw && L.guards_bounded) {
      if (const auto* fb = std::get_if<AffineRule>(&pw->fallback)) {
        if (abs_int(fb->a) == 1 && fb->a == 1 && fb->b != 0) {
          bool away = fb->b > 0 ? cur < L.hull_lo : cur > L.hull_hi;
          if (away)
            return {ClassDescriptor::Kind::ChainZ, 0, 0,
                    "backward ray leaves the guard hull for good"};
        }
      }
    }
  }
  return {ClassDescriptor::Kind::Undetermined, 0, 0, "backward walk exhausted"};
}

// ---------------------------------------------------------------------------
// Confluence: common forward meeting points for a finite set of indices.

struct Confluence {
  struct Group {
    Int rep;                                    // meeting point
    std::vector<std::pair<Int, Int>> members;   // (index, depth to rep)
  };
  std::vector<Group> groups;
  Int depth = 0;  // max depth across all members
};

inline Confluence confluence(const FunctionalMap& m, const std::vector<Int>& coords) {
  if (coords.empty()) throw input_error("confluence wants at least one index");
  std::vector<Int> pts(coords);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (const Int& p : pts) m.domain().require(p);

  // Group by orbit equivalence against each group's first member.
  std::vector<std::vector<Int>> groups;
  for (const Int& p : pts) {
    bool placed = false;
    for (auto& g : groups) {
      Verdict v = same_class(m, g.front(), p);
      if (!v.decided())
        throw budget_error("cannot certify the class structure of the window");
      if (v.is_yes()) {
        g.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({p});
  }

  Confluence out;
  for (const auto& g : groups) {
    // Lockstep rounds: advance every member one step per round and pick the
    // first value seen by all of them (ties broken by smaller value).
    std::vector<Int> cur(g);
    std::map<Int, std::map<size_t, Int>> hits;  // value -> member -> first depth
    std::optional<Int> rep;
    Int rep_round = 0;
    for (long round = 0; round <= m.budget().steps; ++round) {
      std::vector<Int> completed;
      for (size_t i = 0; i < g.size(); ++i) {
        auto& h = hits[cur[i]];
        h.emplace(i, Int(round));
        if (h.size() == g.size()) completed.push_back(cur[i]);
      }
      if (!completed.empty()) {
        rep = *std::min_element(completed.begin(), completed.end());
        rep_round = round;
        break;
      }
      for (size_t i = 0; i < g.size(); ++i) cur[i] = m.apply(cur[i]);
    }
    if (!rep)
      throw budget_error("no common meeting point within the step budget");

    Confluence::Group grp;
    grp.rep = *rep;
    const auto& h = hits[*rep];
    for (size_t i = 0; i < g.size(); ++i) {
      Int d = h.at(i);
      if (m.iterate(g[i], d) != *rep)
        throw invariant_error("confluence depth check failed");
      grp.members.emplace_back(g[i], d);
      out.depth = std::max(out.depth, d);
    }
    (void)rep_round;
    out.groups.push_back(std::move(grp));
  }
  return out;
}

}  // namespace gshift
