#pragma once
// Three-valued decision results. Yes/No answers always carry a checkable
// certificate; Unknown names the budget that ran out. Decision procedures
// in this library never guess: an uncertified answer is reported as Unknown.

#include <string>
#include <variant>

#include "index.hpp"

namespace gshift {

enum class Truth { Yes, No, Unknown };

inline const char* show(Truth t) {
  switch (t) {
    case Truth::Yes: return "yes";
    case Truth::No: return "no";
    default: return "unknown";
  }
}

// point has minimal period `period` under the map in question
struct PeriodicWitness {
  Int point;
  Int period;
};

// two distinct indices with equal images
struct InjectivityCollision {
  Int a, b;
};

// beyond |n| > core_bound the stated law forces orbits to leave for good;
// everything inside the core was checked exhaustively
struct EscapeCertificate {
  Int core_bound;
  std::string law;
};

// the whole (finite) domain was swept
struct FiniteExhaustive {};

// a closed-form reason, e.g. "affine with a != 0 is injective"
struct AnalyticCertificate {
  std::string law;
};

// the honest outcome when exploration hit its limits
struct BudgetExhausted {
  std::string what;
};

using Certificate = std::variant<std::monostate, PeriodicWitness, InjectivityCollision,
                                 EscapeCertificate, FiniteExhaustive, AnalyticCertificate,
                                 BudgetExhausted>;

struct Verdict {
  Truth truth = Truth::Unknown;
  Certificate cert;
  std::string detail;

  static Verdict yes(Certificate c, std::string d = {}) {
    return {Truth::Yes, std::move(c), std::move(d)};
  }
  static Verdict no(Certificate c, std::string d = {}) {
    return {Truth::No, std::move(c), std::move(d)};
  }
  static Verdict unknown(std::string what) {
    return {Truth::Unknown, BudgetExhausted{what}, what};
  }

  bool is_yes() const { return truth == Truth::Yes; }
  bool is_no() const { return truth == Truth::No; }
  bool decided() const { return truth != Truth::Unknown; }
};

inline std::string describe_certificate(const IndexSet& dom, const Certificate& c) {
  if (const auto* w = std::get_if<PeriodicWitness>(&c))
    return "periodic point " + dom.show(w->point) + " with period " + w->period.str();
  if (const auto* col = std::get_if<InjectivityCollision>(&c))
    return "collision: " + dom.show(col->a) + " and " + dom.show(col->b) +
           " share an image";
  if (const auto* esc = std::get_if<EscapeCertificate>(&c))
    return "escape beyond |n| > " + esc->core_bound.str() + ": " + esc->law;
  if (std::holds_alternative<FiniteExhaustive>(c)) return "finite domain swept";
  if (const auto* an = std::get_if<AnalyticCertificate>(&c)) return an->law;
  if (const auto* b = std::get_if<BudgetExhausted>(&c)) return "budget exhausted: " + b->what;
  return "";
}

}  // namespace gshift
