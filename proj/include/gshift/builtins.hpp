#pragma once
// Bundled example systems, referenced by name from the command line and the
// tests. Expected classifications are frozen here so regressions surface as
// test failures rather than silent drift.

#include <optional>
#include <string>
#include <vector>

#include "fort.hpp"
#include "map.hpp"
#include "verdict.hpp"

namespace gshift::builtins {

struct ShiftEntry {
  std::string name;
  std::string summary;
  FunctionalMap map;
  Truth weak_specification, specification, stroboscopic, strong_stroboscopic;
};

struct FortEntry {
  std::string name;
  std::string summary;
  FortSystem system;
  Truth weak_specification, specification, stroboscopic, strong_stroboscopic;
};

inline std::vector<ShiftEntry> canned_shifts() {
  std::vector<ShiftEntry> out;
  out.push_back({"C1", "n -> n^2 + 1 on the integers",
                 FunctionalMap(IndexSet::integers(), SquarePlusRule{Int(1)}),
                 Truth::Yes, Truth::No, Truth::No, Truth::No});
  out.push_back({"C2", "n -> -n on the integers",
                 FunctionalMap(IndexSet::integers(), AffineRule{Int(-1), Int(0)}),
                 Truth::No, Truth::No, Truth::Yes, Truth::No});
  out.push_back({"C3", "n -> n + 1 on the integers",
                 FunctionalMap(IndexSet::integers(), AffineRule{Int(1), Int(1)}),
                 Truth::Yes, Truth::Yes, Truth::Yes, Truth::Yes});
  return out;
}

inline std::vector<FortEntry> canned_forts() {
  std::vector<FortEntry> out;
  {
    PiecewiseRule r;
    r.branches.push_back({Guard::point(Int(1)), AffineRule{Int(0), Int(0)}});
    r.fallback = AffineRule{Int(-1), Int(1)};
    out.push_back({"D1", "x -> 1 - x except 1 -> base; base fixed",
                   FortSystem::integer_space(r, Int(0)),
                   Truth::No, Truth::No, Truth::No, Truth::No});
  }
  {
    PiecewiseRule r;
    r.branches.push_back({Guard::point(Int(1)), AffineRule{Int(0), Int(-1)}});
    r.fallback = AffineRule{Int(-1), Int(1)};
    out.push_back({"D2", "x -> 1 - x except 1 -> -1; base fixed",
                   FortSystem::integer_space(r, Int(0)),
                   Truth::No, Truth::No, Truth::No, Truth::No});
  }
  out.push_back({"D3", "x -> -x; base fixed",
                 FortSystem::integer_space(AffineRule{Int(-1), Int(0)}, Int(0)),
                 Truth::No, Truth::No, Truth::Yes, Truth::No});
  return out;
}

inline std::optional<ShiftEntry> find_shift(const std::string& name) {
  for (auto& e : canned_shifts())
    if (e.name == name) return e;
  return std::nullopt;
}

inline std::optional<FortEntry> find_fort(const std::string& name) {
  for (auto& e : canned_forts())
    if (e.name == name) return e;
  return std::nullopt;
}

}  // namespace gshift::builtins
