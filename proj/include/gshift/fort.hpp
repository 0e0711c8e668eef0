#pragma once
// Self-maps of Fort spaces: a set with one distinguished base point whose
// neighbourhoods are the cofinite sets, every other point isolated. Systems
// come as finite tables (base included) or as integer rules acting on the
// nonzero integers with 0 standing for the base point.
//
// Provides: continuity validation, the descending-image intersection with a
// structured description, deciders for the specification and stroboscopic
// properties, and explicit return maps on finite windows.

#include <optional>
#include <set>
#include <vector>

#include "analysis.hpp"
#include "strobo.hpp"

namespace gshift {

class FortSystem {
 public:
  // Finite space: table over all atoms, one of them the base.
  static FortSystem finite_space(IndexSet atoms, TableRule table, long base_atom) {
    if (!atoms.is_finite()) throw input_error("finite_space wants a finite index set");
    if (base_atom < 0 || base_atom >= atoms.size())
      throw input_error("base atom out of range");
    FortSystem fs(FunctionalMap(std::move(atoms), std::move(table)), Int(base_atom));
    fs.base_image_ = fs.map_.apply(fs.base_);
    return fs;
  }

  // Infinite space: integer rule on the nonzero points, 0 is the base.
  static FortSystem integer_space(Rule nonzero_rule, Int base_image, Budget budget = {}) {
    FortSystem fs(FunctionalMap(IndexSet::integers(), std::move(nonzero_rule), budget),
                  Int(0));
    fs.base_image_ = std::move(base_image);
    return fs;
  }

  bool finite() const { return map_.domain().is_finite(); }
  const IndexSet& points() const { return map_.domain(); }
  const Int& base() const { return base_; }
  const Int& base_image() const { return base_image_; }
  const FunctionalMap& rule_map() const { return map_; }
  const Budget& budget() const { return map_.budget(); }

  Int apply(const Int& x) const {
    points().require(x);
    if (!finite() && x == 0) return base_image_;
    return map_.apply(x);
  }

  // t-th image, folding large t into the detected cycle.
  Int iterate(const Int& x, const Int& t) const {
    if (t < 0) throw input_error("iteration count must be nonnegative");
    std::vector<Int> trail;
    std::map<Int, long> pos;
    Int cur = x;
    Int remaining = t;
    while (remaining > 0) {
      auto it = pos.find(cur);
      if (it != pos.end()) {
        long tail = it->second;  // cur sits at trail[tail]; the cycle follows
        long cycle = static_cast<long>(trail.size()) - tail;
        long r = mod_floor(remaining, Int(cycle)).convert_to<long>();
        return trail[static_cast<size_t>(tail + r)];
      }
      pos.emplace(cur, static_cast<long>(trail.size()));
      trail.push_back(cur);
      if (static_cast<long>(trail.size()) > map_.budget().steps)
        throw budget_error("iteration exceeded the step budget");
      cur = apply(cur);
      --remaining;
    }
    return cur;
  }

  // Full preimage of y, base handled explicitly.
  Preimages fiber(const Int& y) const {
    if (finite()) return map_.preimages(y);
    Preimages raw = map_.preimages(y);
    if (raw.kind == Preimages::Kind::Finite) {
      std::vector<Int> pts;
      for (const Int& p : raw.points)
        if (p != 0) pts.push_back(p);
      if (base_image_ == y) pts.push_back(0);
      std::sort(pts.begin(), pts.end());
      return Preimages::finite(std::move(pts));
    }
    return raw;  // Infinite / Unknown pass through
  }

 private:
  FortSystem(FunctionalMap m, Int base) : map_(std::move(m)), base_(std::move(base)) {}

  FunctionalMap map_;
  Int base_;
  Int base_image_;
};

// ---------------------------------------------------------------------------
// Continuity of the map in the Fort topology. With the base fixed the demand
// is finite fibers away from the base; with the base moved it is eventual
// constancy at the base's image.

inline Verdict validate_fort_continuity(const FortSystem& fs) {
  if (fs.finite())
    return Verdict::yes(FiniteExhaustive{}, "finite spaces are discrete");

  const Rule& rule = fs.rule_map().rule();
  bool base_fixed = fs.base_image() == 0;

  struct ConstPiece { Int value; bool unbounded_region; };
  std::vector<ConstPiece> consts;
  auto add_sub = [&](const SubRule& r, bool unbounded) {
    if (const auto* aff = std::get_if<AffineRule>(&r))
      if (aff->a == 0) consts.push_back({aff->b, unbounded});
  };
  bool fallback_const = false;
  Int fallback_value = 0;
  bool nonconst_unbounded = false;  // a non-constant piece on an unbounded region

  if (const auto* aff = std::get_if<AffineRule>(&rule)) {
    if (aff->a == 0) { fallback_const = true; fallback_value = aff->b; }
    else nonconst_unbounded = true;
  } else if (std::holds_alternative<SquarePlusRule>(rule)) {
    nonconst_unbounded = true;
  } else {
    const auto& pw = std::get<PiecewiseRule>(rule);
    for (const auto& br : pw.branches) {
      bool unbounded = br.guard.kind == Guard::Kind::AtLeast ||
                       br.guard.kind == Guard::Kind::AtMost ||
                       br.guard.kind == Guard::Kind::Residue;
      add_sub(br.rule, unbounded);
      if (unbounded && !std::get_if<AffineRule>(&br.rule))
        nonconst_unbounded = true;
      else if (unbounded) {
        const auto& a = std::get<AffineRule>(br.rule);
        if (a.a != 0) nonconst_unbounded = true;
      }
    }
    if (const auto* fb = std::get_if<AffineRule>(&pw.fallback)) {
      if (fb->a == 0) { fallback_const = true; fallback_value = fb->b; }
      else nonconst_unbounded = true;
    } else {
      nonconst_unbounded = true;
    }
  }

  if (base_fixed) {
    // Need every fiber over a nonbase point finite: no constant piece of
    // nonbase value on an infinite region.
    if (fallback_const && fallback_value != 0)
      return Verdict::no(AnalyticCertificate{"cofinitely many points share a nonbase image"},
                         "fiber over " + fallback_value.str() + " is infinite");
    for (const auto& c : consts)
      if (c.unbounded_region && c.value != 0)
        return Verdict::no(AnalyticCertificate{"an unbounded region shares a nonbase image"},
                           "fiber over " + c.value.str() + " is infinite");
    return Verdict::yes(AnalyticCertificate{"base fixed and all nonbase fibers finite"});
  }

  // Base moves: the map must send all but finitely many points to the base's
  // image.
  if (!fallback_const || fallback_value != fs.base_image())
    return Verdict::no(
        AnalyticCertificate{"the map is not eventually constant at the base's image"},
        "base maps to " + fs.base_image().str() + " but the tail does not");
  for (const auto& c : consts)
    if (c.unbounded_region && c.value != fs.base_image())
      return Verdict::no(
          AnalyticCertificate{"an unbounded region disagrees with the base's image"},
          "tail value " + c.value.str() + " differs from " + fs.base_image().str());
  if (nonconst_unbounded)
    return Verdict::no(
        AnalyticCertificate{"a non-constant piece covers an unbounded region"},
        "the tail is not constant at the base's image");
  return Verdict::yes(AnalyticCertificate{"eventually constant at the base's image"});
}

// ---------------------------------------------------------------------------
// Periodicity of a single point under the fort map

namespace detail {

inline bool fort_escaped(const EscapePredicate& esc, const Int& v) {
  if (!esc.usable || !esc.escaped(v)) return false;
  if (esc.growth) return true;  // |v| > radius >= 0 keeps it off the base
  return esc.drift_b > 0 ? v > 0 : v < 0;
}

}  // namespace detail

inline PeriodReport fort_period(const FortSystem& fs, const Int& x) {
  fs.points().require(x);
  detail::EscapePredicate esc =
      fs.finite() ? detail::EscapePredicate{} : detail::escape_predicate(fs.rule_map());
  std::map<Int, long> seen;
  Int cur = x;
  for (long s = 0; s <= fs.budget().steps; ++s) {
    if (s > 0 && cur == x) return {PeriodReport::Kind::Periodic, Int(s), ""};
    if (cur != 0 || fs.finite())
      if (detail::fort_escaped(esc, cur))
        return {PeriodReport::Kind::NotPeriodic, 0, "orbit escapes for good"};
    auto it = seen.find(cur);
    if (it != seen.end())
      return {PeriodReport::Kind::NotPeriodic, 0, "enters a cycle that misses the start"};
    seen.emplace(cur, s);
    cur = fs.apply(cur);
  }
  return {PeriodReport::Kind::Unknown, 0, "step budget exhausted"};
}

// ---------------------------------------------------------------------------
// The descending intersection of forward images

struct EventualImage {
  enum class Kind {
    ExactSet,       // points lists the whole intersection
    CofiniteDead,   // points lists the complement (the dying points)
    CyclesPlusBase, // intersection = listed cycle points plus the base
    Full,           // nothing ever dies
    Undetermined
  };
  Kind kind = Kind::Undetermined;
  std::vector<Int> points;
  std::string note;
};

namespace detail {

// Bounded guards only: every integer a guard can match. Returns nullopt when
// a range is too wide to enumerate.
inline std::optional<std::vector<Int>> guard_points(const PiecewiseRule& pw) {
  std::vector<Int> out;
  for (const auto& br : pw.branches) {
    const Guard& g = br.guard;
    if (g.kind == Guard::Kind::Point) out.push_back(g.lo);
    else if (g.kind == Guard::Kind::Range) {
      if (g.hi - g.lo > 4096) return std::nullopt;
      for (Int v = g.lo; v <= g.hi; ++v) out.push_back(v);
    } else return std::nullopt;
  }
  return out;
}

}  // namespace detail

inline EventualImage eventual_image(const FortSystem& fs) {
  EventualImage out;

  auto settle_finite_set = [&](std::vector<Int> cur) {
    // Descending set iteration: stabilizes within |cur| rounds.
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    for (;;) {
      std::set<Int> next;
      for (const Int& x : cur) next.insert(fs.apply(x));
      std::vector<Int> nx(next.begin(), next.end());
      if (nx == cur) break;
      cur = std::move(nx);
    }
    out.kind = EventualImage::Kind::ExactSet;
    out.points = cur;
  };

  if (fs.finite()) {
    std::vector<Int> all;
    for (long i = 0; i < fs.points().size(); ++i) all.push_back(Int(i));
    settle_finite_set(std::move(all));
    return out;
  }

  const auto* pw = std::get_if<PiecewiseRule>(&fs.rule_map().rule());
  const Rule& rule = fs.rule_map().rule();

  // Base moves: continuity-shaped maps are eventually constant, so the image
  // collapses to a finite set after one step.
  if (fs.base_image() != 0) {
    std::vector<Int> first;
    const AffineRule* fb = nullptr;
    if (pw) fb = std::get_if<AffineRule>(&pw->fallback);
    else fb = std::get_if<AffineRule>(&rule);
    if (!fb || fb->a != 0) {
      out.note = "image stays infinite; no finite collapse to follow";
      return out;
    }
    first.push_back(fb->b);
    first.push_back(fs.base_image());
    if (pw) {
      auto gp = detail::guard_points(*pw);
      if (!gp) {
        out.note = "guard regions too wide to enumerate";
        return out;
      }
      for (const Int& g : *gp)
        if (g != 0) first.push_back(fs.apply(g));
    }
    settle_finite_set(std::move(first));
    return out;
  }

  // Base fixed: survival means an infinite backward chain.
  detail::EscapePredicate esc = detail::escape_predicate(fs.rule_map());

  const AffineRule* fb = nullptr;
  if (pw) fb = std::get_if<AffineRule>(&pw->fallback);
  else fb = std::get_if<AffineRule>(&rule);

  bool bounded_guards = !pw || detail::guard_points(*pw).has_value();

  if (esc.growth && bounded_guards) {
    // Shrinking fibers: backward chains are bounded, so survivors are exactly
    // the points on cycles, plus the base.
    Int radius = esc.sweep_radius;
    if (radius > 65536) {
      out.note = "core too wide to sweep";
      return out;
    }
    std::set<Int> on_cycles;
    for (Int n = -radius; n <= radius; ++n) {
      if (n == 0) continue;
      std::map<Int, long> seen;
      Int cur = n;
      bool alive = false;
      for (long s = 0; s <= fs.budget().steps; ++s) {
        if (cur == 0 || detail::fort_escaped(esc, cur)) break;
        auto it = seen.find(cur);
        if (it != seen.end()) { alive = true; break; }
        seen.emplace(cur, s);
        cur = fs.apply(cur);
      }
      if (alive) {
        // collect the cycle through cur
        Int c = cur;
        do {
          on_cycles.insert(c);
          c = fs.apply(c);
        } while (c != cur);
      }
    }
    out.kind = EventualImage::Kind::CyclesPlusBase;
    out.points.assign(on_cycles.begin(), on_cycles.end());
    return out;
  }

  if (fb && abs_int(fb->a) == 1 && bounded_guards &&
      !(fb->a == 1 && fb->b != 0)) {
    // Involution or identity tail: survivors are cofinite; propagate the dead.
    std::vector<Int> guard_pts;
    if (pw) guard_pts = *detail::guard_points(*pw);

    // Candidate holes: nonbase points whose fallback preimage is invalid.
    std::set<Int> candidates;
    for (const Int& g : guard_pts) candidates.insert(fb->a * g + fb->b);
    candidates.insert(fb->b);  // preimage 0 is not in the rule's domain
    std::set<Int> dead;
    std::vector<Int> frontier;
    auto is_dead_now = [&](const Int& y) {
      if (y == 0) return false;  // the base never dies while fixed
      Preimages f = fs.fiber(y);
      if (f.kind != Preimages::Kind::Finite) return false;
      for (const Int& p : f.points)
        if (!dead.count(p)) return false;
      return true;
    };
    for (const Int& y : candidates)
      if (y != 0 && !dead.count(y) && is_dead_now(y)) {
        dead.insert(y);
        frontier.push_back(y);
      }
    long rounds = 0;
    while (!frontier.empty() && rounds++ < 512) {
      std::vector<Int> next;
      for (const Int& d : frontier) {
        Int e = fs.apply(d);
        if (e != 0 && !dead.count(e) && is_dead_now(e)) {
          dead.insert(e);
          next.push_back(e);
        }
      }
      frontier = std::move(next);
    }
    if (!frontier.empty()) {
      out.note = "dead set kept growing; not settled";
      return out;
    }
    if (dead.empty()) {
      out.kind = EventualImage::Kind::Full;
      return out;
    }
    out.kind = EventualImage::Kind::CofiniteDead;
    out.points.assign(dead.begin(), dead.end());
    return out;
  }

  out.note = "tail shape outside the settled cases";
  return out;
}

// A pair of points that provably survive every image, when one is evident.
inline std::optional<std::pair<Int, Int>> two_survivors(const FortSystem& fs) {
  if (fs.finite()) return std::nullopt;
  if (fs.base_image() != 0) return std::nullopt;
  const auto* pw = std::get_if<PiecewiseRule>(&fs.rule_map().rule());
  const AffineRule* fb = pw ? std::get_if<AffineRule>(&pw->fallback)
                            : std::get_if<AffineRule>(&fs.rule_map().rule());
  if (!fb || fb->a != 1 || fb->b == 0) return std::nullopt;
  if (pw && !detail::guard_points(*pw)) return std::nullopt;
  detail::PieceLaws L = pw ? detail::piece_laws(fs.rule_map()) : detail::PieceLaws{};
  // Backward ray along the drift keeps a point alive forever.
  Int alive = fb->b > 0 ? std::min(L.hull_lo, Int(0)) - abs_int(fb->b) - 1
                        : std::max(L.hull_hi, Int(0)) + abs_int(fb->b) + 1;
  return std::make_pair(Int(0), alive);
}

// ---------------------------------------------------------------------------
// Property deciders

inline Verdict decide_fort_weak_specification(const FortSystem& fs) {
  EventualImage ei = eventual_image(fs);
  switch (ei.kind) {
    case EventualImage::Kind::ExactSet:
      if (ei.points.size() == 1 && ei.points[0] == fs.base())
        return Verdict::yes(FiniteExhaustive{},
                            "every image chain collapses onto the base");
      return Verdict::no(FiniteExhaustive{},
                         std::to_string(ei.points.size()) + " points survive every image");
    case EventualImage::Kind::CyclesPlusBase:
      if (ei.points.empty())
        return Verdict::yes(AnalyticCertificate{"backward chains are bounded and cycle-free"},
                            "only the base survives");
      return Verdict::no(AnalyticCertificate{"a nonbase cycle survives every image"},
                         "cycle point " + ei.points.front().str() + " never dies");
    case EventualImage::Kind::CofiniteDead:
    case EventualImage::Kind::Full:
      return Verdict::no(AnalyticCertificate{"cofinitely many points survive every image"});
    case EventualImage::Kind::Undetermined: break;
  }
  if (auto pair = two_survivors(fs))
    return Verdict::no(AnalyticCertificate{"two points survive every image"},
                       fs.points().show(pair->first) + " and " +
                           fs.points().show(pair->second) + " both survive");
  return Verdict::unknown(ei.note.empty() ? "image intersection not settled" : ei.note);
}

inline Verdict decide_fort_specification(const FortSystem& fs) {
  if (fs.finite() && fs.points().size() == 1)
    return Verdict::yes(FiniteExhaustive{}, "one-point space");
  return Verdict::no(AnalyticCertificate{"tracing across the base demands a one-point space"},
                     "the space has more than one point");
}

inline Verdict decide_fort_stroboscopic(const FortSystem& fs) {
  if (fs.finite()) {
    // Every point periodic on a finite set means the table is a permutation.
    Verdict inj = decide_injective(fs.rule_map());
    if (inj.is_no())
      return Verdict::no(inj.cert, "a shared image leaves some point unrevisited");
    return Verdict::yes(FiniteExhaustive{}, "permutation of a finite space");
  }

  PeriodReport pb = fort_period(fs, 0);
  if (pb.kind == PeriodReport::Kind::NotPeriodic)
    return Verdict::no(AnalyticCertificate{"the base never returns"}, pb.note);
  if (pb.kind == PeriodReport::Kind::Unknown)
    return Verdict::unknown("cannot settle the base's period");

  const auto* pw = std::get_if<PiecewiseRule>(&fs.rule_map().rule());
  const AffineRule* fb = pw ? std::get_if<AffineRule>(&pw->fallback)
                            : std::get_if<AffineRule>(&fs.rule_map().rule());
  std::optional<std::vector<Int>> gp =
      pw ? detail::guard_points(*pw) : std::optional<std::vector<Int>>(std::vector<Int>{});
  detail::PieceLaws L = pw ? detail::piece_laws(fs.rule_map()) : detail::PieceLaws{};

  if (!gp) return Verdict::unknown("guard regions too wide to enumerate");

  if (fb && (fb->a == -1 || (fb->a == 1 && fb->b == 0))) {
    // Cofinite involution or identity tail: only finitely many exceptional
    // orbits need individual checks.
    std::set<Int> exceptional{0, fs.base_image(), fb->b};
    for (const Int& g : *gp) {
      exceptional.insert(g);
      if (fb->a == -1) exceptional.insert(fb->b - g);
    }
    for (const Int& x : exceptional) {
      PeriodReport pr = fort_period(fs, x);
      if (pr.kind == PeriodReport::Kind::NotPeriodic)
        return Verdict::no(AnalyticCertificate{"an exceptional point never returns"},
                           fs.points().show(x) + " is not periodic");
      if (pr.kind == PeriodReport::Kind::Unknown)
        return Verdict::unknown("cannot settle an exceptional point's period");
    }
    return Verdict::yes(
        AnalyticCertificate{fb->a == -1
                                ? "cofinite involution; exceptional orbits all return"
                                : "cofinite identity; exceptional orbits all return"});
  }

  // Any other tail moves far points for good.
  detail::EscapePredicate esc = detail::escape_predicate(fs.rule_map());
  if (esc.usable) {
    Int far = esc.growth ? Int(esc.sweep_radius + 1)
                         : (esc.drift_b > 0 ? Int(std::max(esc.hull_hi, Int(0)) + 1)
                                            : Int(std::min(esc.hull_lo, Int(0)) - 1));
    PeriodReport pr = fort_period(fs, far);
    if (pr.kind == PeriodReport::Kind::NotPeriodic)
      return Verdict::no(AnalyticCertificate{"a far point never returns"},
                         fs.points().show(far) + " is not periodic");
  }
  if (fb && fb->a == 0) {
    // Constant tail: far points funnel into the constant's cycle and cannot
    // come back to themselves.
    std::set<Int> orbit;
    Int cur = fb->b;
    for (long s = 0; s <= fs.budget().steps && !orbit.count(cur); ++s) {
      orbit.insert(cur);
      cur = fs.apply(cur);
    }
    Int hull = std::max(abs_int(L.hull_lo), abs_int(L.hull_hi));
    Int far = hull + 1;
    while (orbit.count(far)) ++far;
    PeriodReport pr = fort_period(fs, far);
    if (pr.kind == PeriodReport::Kind::NotPeriodic)
      return Verdict::no(AnalyticCertificate{"a far point funnels into a foreign cycle"},
                         fs.points().show(far) + " is not periodic");
  }
  return Verdict::unknown("tail shape outside the settled cases");
}

inline Verdict decide_fort_strong_stroboscopic(const FortSystem& fs) {
  if (fs.finite() && fs.points().size() == 1)
    return Verdict::yes(FiniteExhaustive{}, "one-point space");
  return Verdict::no(AnalyticCertificate{"free return times demand a one-point space"},
                     "the space has more than one point");
}

// ---------------------------------------------------------------------------
// Dying-time bookkeeping (finite spaces)

// Sum over nonbase points of the first level at which their iterated fiber
// empties. A finite uniform constant for the collapse onto the base.
inline Int fort_gap_constant(const FortSystem& fs) {
  if (!fs.finite()) throw input_error("gap constant needs a finite space");
  Verdict weak = decide_fort_weak_specification(fs);
  if (!weak.is_yes())
    throw input_error("gap constant needs the image chain to collapse onto the base");
  Int total = 0;
  long n = fs.points().size();
  for (long y = 0; y < n; ++y) {
    if (Int(y) == fs.base()) continue;
    std::set<Int> level{Int(y)};
    Int depth = 0;
    while (!level.empty()) {
      ++depth;
      if (depth > n + 1) throw invariant_error("fiber levels outlive the space");
      std::set<Int> next;
      for (const Int& p : level) {
        Preimages f = fs.fiber(p);
        for (const Int& q : f.points) next.insert(q);
      }
      level = std::move(next);
    }
    total += depth;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Return maps on a finite window

struct FortRho {
  std::map<Int, Int> assignment;  // window point -> its return representative
  Int threshold = 0;
  std::vector<Int> terms;
  ResidueTable table;

  Int at(const Int& x) const {
    auto it = assignment.find(x);
    if (it == assignment.end()) throw input_error("point outside the tabulated window");
    return it->second;
  }
};

inline FortRho build_fort_rho(const FortSystem& fs, const std::vector<Int>& window,
                              const SequenceSpec& seq) {
  Verdict strobo = decide_fort_stroboscopic(fs);
  if (strobo.is_no())
    throw input_error("return maps need every point periodic");
  if (!strobo.decided())
    throw budget_error("cannot certify every point periodic");

  std::vector<Int> pts(window);
  pts.push_back(fs.base());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Int level = 1;
  std::map<Int, Int> periods;
  for (const Int& x : pts) {
    PeriodReport pr = fort_period(fs, x);
    if (!pr.periodic()) throw invariant_error("strobo-certified point is not periodic");
    periods[x] = pr.period;
    level = std::max(level, pr.period);
  }

  auto cong = congruence_subsequence(seq, level);
  FortRho rho;
  rho.table = cong.table;
  rho.terms = cong.terms;
  rho.threshold = level;

  for (const Int& x : pts) {
    const Int& k = periods[x];
    Int shift = k - mod_floor(cong.table.at(k), k);  // in [1, k]
    rho.assignment[x] = fs.iterate(x, shift);
  }

  long from = detail::small_long(rho.threshold, "agreement threshold");
  if (static_cast<size_t>(from) + 1 >= rho.terms.size())
    throw budget_error("selected subsequence too short past the threshold");
  size_t last = std::min(rho.terms.size(), static_cast<size_t>(from) + 24);
  for (const Int& x : pts) {
    const Int& k = periods[x];
    for (size_t i = static_cast<size_t>(from); i < last; ++i) {
      if (mod_floor(rho.terms[i] - cong.table.at(k), k) != 0)
        throw invariant_error("stabilized residue broken on a checked term");
      if (fs.iterate(rho.assignment[x], rho.terms[i]) != x)
        throw invariant_error("return map fails to restore a window point");
    }
  }
  return rho;
}

}  // namespace gshift
