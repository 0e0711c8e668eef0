#pragma once
// Symbol configurations over an index set, with the shift action evaluated
// by pulling indices back through the map: the value of the t-th image of z
// at coordinate a is z at iterate(a, t). Configurations are a uniform fill
// plus finitely many overrides, kept canonical (no override equal to fill).

#include <map>
#include <vector>

#include "index.hpp"
#include "map.hpp"

namespace gshift {

using Symbol = int;

struct Alphabet {
  int size = 2;

  explicit Alphabet(int n) : size(n) {
    if (n < 2 || n > 1000000) throw input_error("alphabet size must be in [2, 10^6]");
  }

  bool contains(Symbol s) const { return s >= 0 && s < size; }
  void require(Symbol s) const {
    if (!contains(s))
      throw input_error("symbol " + std::to_string(s) + " outside alphabet of size " +
                        std::to_string(size));
  }
};

struct Configuration {
  Symbol fill = 0;
  std::map<Int, Symbol> overrides;

  Configuration() = default;
  explicit Configuration(Symbol f) : fill(f) {}

  Symbol at(const Int& coord) const {
    auto it = overrides.find(coord);
    return it == overrides.end() ? fill : it->second;
  }

  void set(const Int& coord, Symbol s) {
    if (s == fill) overrides.erase(coord);
    else overrides[coord] = s;
  }

  bool operator==(const Configuration& o) const {
    return fill == o.fill && overrides == o.overrides;
  }
};

struct Window {
  std::vector<Int> coords;  // sorted, distinct

  Window() = default;
  explicit Window(std::vector<Int> cs) : coords(std::move(cs)) {
    if (coords.empty()) throw input_error("window must be nonempty");
    std::sort(coords.begin(), coords.end());
    if (std::adjacent_find(coords.begin(), coords.end()) != coords.end())
      throw input_error("window coordinates must be distinct");
  }

  size_t size() const { return coords.size(); }
  bool contains(const Int& c) const {
    return std::binary_search(coords.begin(), coords.end(), c);
  }
};

// Value of the t-th shift image of z at one coordinate.
inline Symbol orbit_value(const FunctionalMap& m, const Configuration& z,
                          const Int& coord, const Int& t) {
  return z.at(m.iterate(coord, t));
}

// Window snapshot of the t-th shift image of z.
inline std::vector<Symbol> orbit_window(const FunctionalMap& m, const Configuration& z,
                                        const Window& w, const Int& t) {
  std::vector<Symbol> out;
  out.reserve(w.size());
  for (const Int& c : w.coords) out.push_back(orbit_value(m, z, c, t));
  return out;
}

// Does the t-th shift image of z agree with target across the window?
inline bool window_agree(const FunctionalMap& m, const Configuration& z,
                         const Configuration& target, const Window& w, const Int& t) {
  for (const Int& c : w.coords)
    if (orbit_value(m, z, c, t) != target.at(c)) return false;
  return true;
}

inline void require_symbols(const Alphabet& a, const Configuration& z) {
  a.require(z.fill);
  for (const auto& [c, s] : z.overrides) a.require(s);
}

}  // namespace gshift
