#pragma once
// Finitely presented self-maps of an index set. A map is one of:
//   Table       explicit images over a finite atom list,
//   Affine      n -> a*n + b over the integers,
//   SquarePlus  n -> n^2 + c over the integers,
//   Piecewise   finitely many guarded affine/square pieces plus a fallback.
// Guards are points, bounded ranges, half-lines, or residue classes, and
// must be pairwise disjoint so that evaluation is order-independent.
//
// Every exploratory operation is bounded by an explicit Budget; running out
// of budget raises budget_error rather than returning a guess.

#include <optional>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "index.hpp"

namespace gshift {

struct Budget {
  Int magnitude = 1000000;  // half-width of the scan window for searches
  long steps = 10000;       // iteration / exploration step allowance
  long bit_cap = 1 << 22;   // hard cap on coordinate size in bits

  void check_bits(const Int& v) const {
    if (static_cast<long>(msb(abs_int(v) + 1)) > bit_cap)
      throw budget_error("coordinate magnitude exceeded the arithmetic cap");
  }
};

// ---------------------------------------------------------------------------
// Guards

struct Guard {
  enum class Kind { Point, Range, AtLeast, AtMost, Residue };

  Kind kind = Kind::Point;
  Int lo, hi;    // Point: lo == hi; Range: [lo, hi]; AtLeast: lo; AtMost: hi
  Int mod, res;  // Residue: n == res (mod mod), 0 <= res < mod

  static Guard point(Int v) { return Guard{Kind::Point, v, v, 0, 0}; }
  static Guard range(Int lo, Int hi) {
    if (lo > hi) throw input_error("guard range with lo > hi");
    return Guard{Kind::Range, lo, hi, 0, 0};
  }
  static Guard at_least(Int lo) { return Guard{Kind::AtLeast, lo, 0, 0, 0}; }
  static Guard at_most(Int hi) { return Guard{Kind::AtMost, 0, hi, 0, 0}; }
  static Guard residue(Int m, Int r) {
    if (m < 1) throw input_error("residue guard needs modulus >= 1");
    if (m > 1000000) throw input_error("residue modulus too large");
    return Guard{Kind::Residue, 0, 0, m, mod_floor(r, m)};
  }

  bool matches(const Int& n) const {
    switch (kind) {
      case Kind::Point:   return n == lo;
      case Kind::Range:   return lo <= n && n <= hi;
      case Kind::AtLeast: return n >= lo;
      case Kind::AtMost:  return n <= hi;
      case Kind::Residue: return mod_floor(n, mod) == res;
    }
    return false;
  }

  bool bounded() const { return kind == Kind::Point || kind == Kind::Range; }
};

namespace detail {

// A guard viewed as interval-with-optional-residue, for exact emptiness tests.
struct GuardShape {
  bool has_lo = false, has_hi = false;
  Int lo, hi;
  bool has_res = false;
  Int mod, res;
};

inline GuardShape shape_of(const Guard& g) {
  GuardShape s;
  switch (g.kind) {
    case Guard::Kind::Point:   s.has_lo = s.has_hi = true; s.lo = g.lo; s.hi = g.lo; break;
    case Guard::Kind::Range:   s.has_lo = s.has_hi = true; s.lo = g.lo; s.hi = g.hi; break;
    case Guard::Kind::AtLeast: s.has_lo = true; s.lo = g.lo; break;
    case Guard::Kind::AtMost:  s.has_hi = true; s.hi = g.hi; break;
    case Guard::Kind::Residue: s.has_res = true; s.mod = g.mod; s.res = g.res; break;
  }
  return s;
}

// Does the set described by two overlaid shapes contain an integer?
inline bool shapes_intersect(const GuardShape& a, const GuardShape& b) {
  bool has_lo = a.has_lo || b.has_lo;
  bool has_hi = a.has_hi || b.has_hi;
  Int lo = a.has_lo ? (b.has_lo ? std::max(a.lo, b.lo) : a.lo) : b.lo;
  Int hi = a.has_hi ? (b.has_hi ? std::min(a.hi, b.hi) : a.hi) : b.hi;
  if (has_lo && has_hi && lo > hi) return false;

  // Merge residue constraints by CRT.
  bool has_res = a.has_res || b.has_res;
  Int mod = 1, res = 0;
  if (a.has_res && b.has_res) {
    Int g = gcd(a.mod, b.mod);
    if (mod_floor(a.res - b.res, g) != 0) return false;
    // Walk to a common representative; moduli here are small in practice.
    mod = lcm(a.mod, b.mod);
    Int r = a.res;
    while (mod_floor(r, b.mod) != b.res) r += a.mod;
    res = mod_floor(r, mod);
  } else if (has_res) {
    mod = a.has_res ? a.mod : b.mod;
    res = a.has_res ? a.res : b.res;
  }

  if (!has_res) return true;  // nonempty interval, no residue constraint
  if (!has_lo && !has_hi) return true;
  if (has_lo) {
    Int first = lo + mod_floor(res - lo, mod);
    return !has_hi || first <= hi;
  }
  // Only an upper bound: the class extends to -infinity, so it reaches it.
  return true;
}

}  // namespace detail

inline bool guards_disjoint(const Guard& a, const Guard& b) {
  return !detail::shapes_intersect(detail::shape_of(a), detail::shape_of(b));
}

// ---------------------------------------------------------------------------
// Rules

struct TableRule {
  std::vector<long> image;  // image[i] = internal index the i-th atom maps to
};

struct AffineRule {
  Int a, b;  // n -> a*n + b
};

struct SquarePlusRule {
  Int c;  // n -> n^2 + c
};

using SubRule = std::variant<AffineRule, SquarePlusRule>;

inline Int apply_subrule(const SubRule& r, const Int& n) {
  if (std::holds_alternative<AffineRule>(r)) {
    const auto& f = std::get<AffineRule>(r);
    return f.a * n + f.b;
  }
  const auto& f = std::get<SquarePlusRule>(r);
  return n * n + f.c;
}

struct PiecewiseRule {
  struct Branch {
    Guard guard;
    SubRule rule;
  };
  std::vector<Branch> branches;
  SubRule fallback;
};

using Rule = std::variant<TableRule, AffineRule, SquarePlusRule, PiecewiseRule>;

// ---------------------------------------------------------------------------
// Preimage sets. Exact finite sets are returned sorted. A constant piece on
// an unbounded guard yields an infinite fiber, reported as such; Unknown is
// reserved for regions the algebra cannot certify.

struct Preimages {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Finite;
  std::vector<Int> points;  // Finite only, sorted ascending
  std::string note;

  static Preimages finite(std::vector<Int> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return Preimages{Kind::Finite, std::move(pts), {}};
  }
  static Preimages infinite(std::string why) {
    return Preimages{Kind::Infinite, {}, std::move(why)};
  }
  static Preimages unknown(std::string why) {
    return Preimages{Kind::Unknown, {}, std::move(why)};
  }
};

// ---------------------------------------------------------------------------

class FunctionalMap {
 public:
  FunctionalMap(IndexSet domain, Rule rule, Budget budget = {})
      : domain_(std::move(domain)), rule_(std::move(rule)), budget_(budget) {
    validate();
  }

  const IndexSet& domain() const { return domain_; }
  const Rule& rule() const { return rule_; }
  const Budget& budget() const { return budget_; }

  FunctionalMap with_budget(Budget b) const {
    return FunctionalMap(domain_, rule_, b);
  }

  Int apply(const Int& idx) const {
    domain_.require(idx);
    Int out = apply_unchecked(idx);
    budget_.check_bits(out);
    return out;
  }

  // t-fold composition, t >= 0. Exact; affine maps with |a| = 1 and finite
  // tables take closed-form shortcuts so large exponents stay cheap.
  Int iterate(const Int& idx, const Int& t) const {
    if (t < 0) throw input_error("iterate wants t >= 0");
    domain_.require(idx);
    if (t == 0) return idx;

    if (const auto* aff = std::get_if<AffineRule>(&rule_)) {
      if (aff->a == 1) return idx + t * aff->b;
      if (aff->a == -1) {
        // Involution up to translation: even steps return, odd steps flip.
        return mod_floor(t, 2) == 0 ? idx : Int(-idx + aff->b);
      }
    }
    if (const auto* tab = std::get_if<TableRule>(&rule_)) return iterate_table(*tab, idx, t);

    if (t > budget_.steps)
      throw budget_error("iteration count " + t.str() + " exceeds the step budget");
    Int cur = idx;
    for (Int k = 0; k < t; ++k) {
      cur = apply_unchecked(cur);
      budget_.check_bits(cur);
    }
    return cur;
  }

  // Exact fiber of idx under this map.
  Preimages preimages(const Int& idx) const {
    domain_.require(idx);
    if (const auto* tab = std::get_if<TableRule>(&rule_)) {
      std::vector<Int> pts;
      for (size_t i = 0; i < tab->image.size(); ++i)
        if (Int(tab->image[i]) == idx) pts.emplace_back(i);
      return Preimages::finite(std::move(pts));
    }
    if (const auto* aff = std::get_if<AffineRule>(&rule_)) {
      if (aff->a == 0) {
        if (idx == aff->b) return Preimages::infinite("constant map: every index");
        return Preimages::finite({});
      }
      return Preimages::finite(affine_solutions(*aff, idx));
    }
    if (const auto* sq = std::get_if<SquarePlusRule>(&rule_))
      return Preimages::finite(square_solutions(*sq, idx));

    return piecewise_preimages(std::get<PiecewiseRule>(rule_), idx);
  }

 private:
  IndexSet domain_;
  Rule rule_;
  Budget budget_;

  void validate() const {
    if (domain_.is_finite()) {
      const auto* tab = std::get_if<TableRule>(&rule_);
      if (!tab) throw input_error("finite index sets take table rules");
      if (static_cast<long>(tab->image.size()) != domain_.size())
        throw input_error("table size does not match the atom count");
      for (long v : tab->image)
        if (v < 0 || v >= domain_.size())
          throw input_error("table image out of range");
      return;
    }
    if (std::holds_alternative<TableRule>(rule_))
      throw input_error("table rules need a finite index set");
    if (const auto* pw = std::get_if<PiecewiseRule>(&rule_)) {
      if (pw->branches.size() > 64)
        throw input_error("too many piecewise branches");
      for (size_t i = 0; i < pw->branches.size(); ++i)
        for (size_t j = i + 1; j < pw->branches.size(); ++j)
          if (!guards_disjoint(pw->branches[i].guard, pw->branches[j].guard))
            throw input_error("piecewise guards overlap (branches " +
                              std::to_string(i) + " and " + std::to_string(j) + ")");
    }
  }

  Int apply_unchecked(const Int& n) const {
    if (const auto* tab = std::get_if<TableRule>(&rule_))
      return Int(tab->image[static_cast<size_t>(n)]);
    if (const auto* aff = std::get_if<AffineRule>(&rule_)) return aff->a * n + aff->b;
    if (const auto* sq = std::get_if<SquarePlusRule>(&rule_)) return n * n + sq->c;
    const auto& pw = std::get<PiecewiseRule>(rule_);
    for (const auto& br : pw.branches)
      if (br.guard.matches(n)) return apply_subrule(br.rule, n);
    return apply_subrule(pw.fallback, n);
  }

  Int iterate_table(const TableRule& tab, const Int& idx, Int t) const {
    // Reduce along the rho-shaped orbit: tail into a cycle, then modulo.
    std::vector<long> seen_at(tab.image.size(), -1);
    long cur = static_cast<long>(idx);
    long step = 0;
    while (true) {
      if (Int(step) == t) return Int(cur);
      if (seen_at[cur] >= 0) {
        long cycle_len = step - seen_at[cur];
        Int rem = mod_floor(t - seen_at[cur], cycle_len);
        for (Int k = 0; k < rem; ++k) cur = tab.image[cur];
        return Int(cur);
      }
      seen_at[cur] = step;
      cur = tab.image[cur];
      ++step;
    }
  }

  static std::vector<Int> affine_solutions(const AffineRule& f, const Int& y) {
    // a*n + b = y with a != 0
    Int num = y - f.b;
    if (num % f.a != 0) return {};
    return {num / f.a};
  }

  static std::vector<Int> square_solutions(const SquarePlusRule& f, const Int& y) {
    Int d = y - f.c;
    if (d < 0) return {};
    Int r = sqrt(d);
    if (r * r != d) return {};
    if (r == 0) return {Int(0)};
    return {-r, r};
  }

  Preimages piecewise_preimages(const PiecewiseRule& pw, const Int& y) const {
    std::vector<Int> pts;
    auto in_some_guard = [&](const Int& n) {
      for (const auto& br : pw.branches)
        if (br.guard.matches(n)) return true;
      return false;
    };

    for (const auto& br : pw.branches) {
      if (const auto* aff = std::get_if<AffineRule>(&br.rule)) {
        if (aff->a == 0) {
          if (y != aff->b) continue;
          // Constant piece hitting y: the whole guard region is the fiber.
          if (!br.guard.bounded())
            return Preimages::infinite("constant piece on an unbounded guard");
          if (br.guard.kind == Guard::Kind::Point) {
            pts.push_back(br.guard.lo);
          } else {
            if (br.guard.hi - br.guard.lo > 4096)
              return Preimages::unknown("constant piece over a very wide range");
            for (Int n = br.guard.lo; n <= br.guard.hi; ++n) pts.push_back(n);
          }
          continue;
        }
        for (const auto& n : affine_solutions(*aff, y))
          if (br.guard.matches(n)) pts.push_back(n);
      } else {
        for (const auto& n : square_solutions(std::get<SquarePlusRule>(br.rule), y))
          if (br.guard.matches(n)) pts.push_back(n);
      }
    }

    // Fallback piece applies off every guard.
    if (const auto* aff = std::get_if<AffineRule>(&pw.fallback)) {
      if (aff->a == 0) {
        if (y == aff->b) {
          // Fiber is the whole default region; locate one member to be sure
          // the region is nonempty before declaring it infinite.
          for (Int n = 0; n <= 4096; ++n) {
            if (!in_some_guard(n)) return Preimages::infinite("constant fallback");
            if (!in_some_guard(-n)) return Preimages::infinite("constant fallback");
          }
          return Preimages::unknown("constant fallback behind dense guards");
        }
      } else {
        for (const auto& n : affine_solutions(*aff, y))
          if (!in_some_guard(n)) pts.push_back(n);
      }
    } else {
      for (const auto& n : square_solutions(std::get<SquarePlusRule>(pw.fallback), y))
        if (!in_some_guard(n)) pts.push_back(n);
    }
    return Preimages::finite(std::move(pts));
  }
};

}  // namespace gshift
