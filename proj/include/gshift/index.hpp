#pragma once
// Index sets: the coordinate spaces that self-maps act on. Either a finite
// list of named atoms (addressed internally as 0..n-1) or the full signed
// integers. Indices are arbitrary-precision so that iterating maps with
// super-linear growth stays exact instead of silently wrapping.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace gshift {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// Mathematical mod: result in [0, m) for m > 0 regardless of sign of v.
inline Int mod_floor(const Int& v, const Int& m) {
  Int r = v % m;
  if (r < 0) r += abs_int(m);
  return r;
}

struct IndexSet {
  enum class Kind { Finite, Integers };

  Kind kind = Kind::Integers;
  std::vector<std::string> atoms;  // Finite only; position = internal index

  static IndexSet integers() { return IndexSet{Kind::Integers, {}}; }

  static IndexSet finite(std::vector<std::string> names) {
    if (names.empty()) throw input_error("finite index set needs at least one atom");
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (n.empty()) throw input_error("atom names must be nonempty");
      if (!seen.insert(n).second) throw input_error("duplicate atom name: " + n);
    }
    return IndexSet{Kind::Finite, std::move(names)};
  }

  bool is_finite() const { return kind == Kind::Finite; }

  long size() const {
    if (!is_finite()) throw input_error("integer index set has no finite size");
    return static_cast<long>(atoms.size());
  }

  bool contains(const Int& idx) const {
    if (!is_finite()) return true;
    return idx >= 0 && idx < Int(atoms.size());
  }

  void require(const Int& idx) const {
    if (!contains(idx))
      throw input_error("index " + idx.str() + " outside the domain");
  }

  // Rendering and parsing of single indices (atom name or decimal literal).
  std::string show(const Int& idx) const {
    if (is_finite()) {
      require(idx);
      return atoms[static_cast<size_t>(idx)];
    }
    return idx.str();
  }

  Int parse_index(const std::string& text) const {
    if (is_finite()) {
      auto it = std::find(atoms.begin(), atoms.end(), text);
      if (it != atoms.end()) return Int(it - atoms.begin());
    }
    try {
      Int v(text);
      require(v);
      return v;
    } catch (const std::runtime_error&) {
      throw input_error("cannot read index '" + text + "'");
    }
  }

  bool operator==(const IndexSet& o) const {
    return kind == o.kind && atoms == o.atoms;
  }
};

}  // namespace gshift
