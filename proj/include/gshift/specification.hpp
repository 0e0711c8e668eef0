#pragma once
// Specification-type properties of the shift induced by an index map:
// deciders, the gap bound that makes segment tracing consistent, an explicit
// tracing-point builder, and a constructive refutation when periodic indices
// rule the weak property out.

#include <vector>

#include "analysis.hpp"
#include "config_space.hpp"

namespace gshift {

// Weak specification holds exactly when the map has no periodic index.
inline Verdict decide_weak_specification(const FunctionalMap& m) {
  Verdict per = decide_periodic_free(m);
  if (per.is_yes()) return Verdict::yes(per.cert, "no periodic index");
  if (per.is_no()) return Verdict::no(per.cert, "periodic index obstructs tracing");
  return per;
}

// Full specification additionally needs the map injective.
inline Verdict decide_specification(const FunctionalMap& m) {
  Verdict inj = decide_injective(m);
  if (inj.is_no()) return Verdict::no(inj.cert, "not injective");
  Verdict per = decide_periodic_free(m);
  if (per.is_no()) return Verdict::no(per.cert, "periodic index obstructs tracing");
  if (inj.is_yes() && per.is_yes())
    return Verdict::yes(AnalyticCertificate{"injective and free of periodic indices"});
  return Verdict::unknown(!inj.decided() ? inj.detail : per.detail);
}

// Segments become independently traceable once separated by this many steps.
inline Int gap_bound(const FunctionalMap& m, const Window& w) {
  return confluence(m, w.coords).depth + 1;
}

struct TracingSegment {
  Configuration target;
  Int from, to;  // inclusive time window [from, to]
};

struct TracingWitness {
  Configuration point;
  Int gap_required;
  size_t assignments = 0;
};

// Build a point whose shift orbit matches each segment's target across the
// window during that segment's time interval. Requires an aperiodic map and
// gaps of at least gap_bound between consecutive segments.
inline TracingWitness build_tracing_point(const FunctionalMap& m, const Alphabet& alpha,
                                          const Window& w,
                                          const std::vector<TracingSegment>& segments,
                                          Symbol fill = 0) {
  Verdict per = decide_periodic_free(m);
  if (per.is_no())
    throw input_error("tracing needs a map without periodic indices");
  if (!per.decided())
    throw budget_error("cannot certify the map free of periodic indices");
  if (segments.empty()) throw input_error("no segments to trace");
  alpha.require(fill);
  for (const auto& s : segments) require_symbols(alpha, s.target);

  Int gap = gap_bound(m, w);
  for (size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (s.from < 0 || s.to < s.from)
      throw input_error("segment windows must satisfy 0 <= from <= to");
    if (i > 0) {
      const auto& prev = segments[i - 1];
      if (s.from - prev.to < gap)
        throw input_error("segments " + std::to_string(i) + " and " +
                          std::to_string(i + 1) + " need a gap of at least " +
                          gap.str() + " steps");
    }
  }

  TracingWitness out;
  out.point = Configuration(fill);
  out.gap_required = gap;
  std::map<Int, Symbol> assigned;
  for (const auto& s : segments) {
    for (Int t = s.from; t <= s.to; ++t) {
      for (const Int& g : w.coords) {
        Int coord = m.iterate(g, t);
        Symbol want = s.target.at(coord);
        auto [it, fresh] = assigned.emplace(coord, want);
        if (!fresh && it->second != want)
          throw invariant_error("tracing assignment conflict despite valid gaps");
        out.point.set(coord, want);
      }
    }
  }
  out.assignments = assigned.size();

  for (const auto& s : segments)
    for (Int t = s.from; t <= s.to; ++t)
      for (const Int& g : w.coords)
        if (orbit_value(m, out.point, g, t) != s.target.at(m.iterate(g, t)))
          throw invariant_error("tracing verification failed");
  return out;
}

// Constructive failure of weak specification from a periodic index: for any
// claimed transition length N there are two one-step demands that pull the
// same coordinate toward different symbols.
struct RefutationCase {
  Int claimed_gap;
  Int t1, t2;   // conflicting demand times (t2 - t1 > claimed_gap)
  Int coord;    // shared pullback coordinate
};

struct Refutation {
  Int point;
  Int period;
  std::vector<RefutationCase> cases;
};

inline Refutation refute_weak_specification(const FunctionalMap& m) {
  Verdict per = decide_periodic_free(m);
  if (!per.is_no())
    throw input_error("refutation needs a map with a periodic index");
  const auto& wit = std::get<PeriodicWitness>(per.cert);

  Refutation out;
  out.point = wit.point;
  out.period = wit.period;
  for (Int n : {Int(0), Int(1), Int(2), Int(3), Int(4), Int(5), Int(17)}) {
    RefutationCase c;
    c.claimed_gap = n;
    c.t1 = 1;
    c.t2 = n + 2 + mod_floor(1 - (n + 2), wit.period);
    c.coord = m.iterate(wit.point, c.t1);
    if (m.iterate(wit.point, c.t2) != c.coord)
      throw invariant_error("refutation coordinates fail to coincide");
    out.cases.push_back(c);
  }
  return out;
}

}  // namespace gshift
