#pragma once
// Error taxonomy. Three failure modes are kept apart deliberately:
//   input_error     -- the caller handed us something malformed (bad config,
//                      out-of-domain index, violated precondition),
//   budget_error    -- the exploration budget ran out before an answer could
//                      be certified; the honest result is "don't know",
//   invariant_error -- a guarantee the library itself promises was violated;
//                      this is a bug, not a user problem.

#include <stdexcept>
#include <string>

namespace gshift {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failures carry the position so the CLI can point at the offending line.
struct parse_error : input_error {
  int line = 0;
  int column = 0;
  parse_error(const std::string& msg, int ln, int col)
      : input_error(msg + " (line " + std::to_string(ln) + ", column " +
                    std::to_string(col) + ")"),
        line(ln),
        column(col) {}
};

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace gshift
