#pragma once
// Plain-text system configuration: a small key = value format (strings,
// integers, single-line arrays, # comments) plus compact grammars for rules,
// guards, sequences, and tracing segments. Syntax problems raise parse_error
// with the offending line; semantic problems raise input_error.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fort.hpp"
#include "specification.hpp"
#include "strobo.hpp"

namespace gshift {

namespace cfg_detail {

struct Value {
  bool is_array = false;
  std::string scalar;
  std::vector<std::string> items;
  int line = 0;
};

using Doc = std::map<std::string, Value>;

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& line) {
  bool in_quote = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    else if (line[i] == '#' && !in_quote) return line.substr(0, i);
  }
  return line;
}

inline std::string parse_scalar_token(const std::string& tok, int line, int col) {
  std::string t = trim(tok);
  if (t.empty()) throw parse_error("empty value", line, col);
  if (t.front() == '"') {
    if (t.size() < 2 || t.back() != '"')
      throw parse_error("unterminated string", line, col);
    return t.substr(1, t.size() - 2);
  }
  return t;
}

inline Doc parse_doc(const std::string& text) {
  Doc doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected key = value", line_no, 1);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw parse_error("missing key", line_no, 1);
    for (char c : key)
      if (!(std::islower(static_cast<unsigned char>(c)) || c == '_'))
        throw parse_error("keys are lower_case words", line_no, 1);
    if (doc.count(key))
      throw parse_error("duplicate key '" + key + "'", line_no, 1);
    if (val.empty())
      throw parse_error("missing value for '" + key + "'", line_no,
                        static_cast<int>(eq + 2));

    Value v;
    v.line = line_no;
    if (val.front() == '[') {
      if (val.back() != ']')
        throw parse_error("array must close on the same line", line_no,
                          static_cast<int>(val.size()));
      v.is_array = true;
      std::string body = val.substr(1, val.size() - 2);
      std::string cur;
      bool in_quote = false;
      for (char c : body) {
        if (c == '"') in_quote = !in_quote;
        if (c == ',' && !in_quote) {
          v.items.push_back(parse_scalar_token(cur, line_no, 1));
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!trim(cur).empty()) v.items.push_back(parse_scalar_token(cur, line_no, 1));
    } else {
      v.scalar = parse_scalar_token(val, line_no, static_cast<int>(eq + 2));
    }
    doc.emplace(std::move(key), std::move(v));
  }
  return doc;
}

inline Int parse_int_text(const std::string& s, int line) {
  try {
    if (s.empty()) throw std::runtime_error("empty");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::runtime_error("sign only");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::runtime_error("digit");
    return Int(s);
  } catch (const std::exception&) {
    throw parse_error("'" + s + "' is not an integer", line, 1);
  }
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace cfg_detail

// --- rule / guard / sequence grammars --------------------------------------

inline SubRule parse_subrule_text(const std::vector<std::string>& tok, size_t at,
                                  int line) {
  using cfg_detail::parse_int_text;
  if (at >= tok.size()) throw parse_error("missing rule", line, 1);
  const std::string& head = tok[at];
  if (head == "affine") {
    if (at + 2 >= tok.size()) throw parse_error("affine wants two integers", line, 1);
    return AffineRule{parse_int_text(tok[at + 1], line), parse_int_text(tok[at + 2], line)};
  }
  if (head == "square_plus") {
    if (at + 1 >= tok.size()) throw parse_error("square_plus wants one integer", line, 1);
    return SquarePlusRule{parse_int_text(tok[at + 1], line)};
  }
  if (head == "const") {
    if (at + 1 >= tok.size()) throw parse_error("const wants one integer", line, 1);
    return AffineRule{Int(0), parse_int_text(tok[at + 1], line)};
  }
  throw parse_error("unknown rule '" + head + "'", line, 1);
}

inline Guard parse_guard_text(const std::vector<std::string>& tok, size_t& at, int line) {
  using cfg_detail::parse_int_text;
  if (at >= tok.size()) throw parse_error("missing guard", line, 1);
  const std::string& head = tok[at];
  if (head == "point") {
    if (at + 1 >= tok.size()) throw parse_error("point wants one integer", line, 1);
    Guard g = Guard::point(parse_int_text(tok[at + 1], line));
    at += 2;
    return g;
  }
  if (head == "range") {
    if (at + 2 >= tok.size()) throw parse_error("range wants two integers", line, 1);
    Guard g = Guard::range(parse_int_text(tok[at + 1], line),
                           parse_int_text(tok[at + 2], line));
    at += 3;
    return g;
  }
  if (head == "ge" || head == "le") {
    if (at + 1 >= tok.size()) throw parse_error(head + " wants one integer", line, 1);
    Int v = parse_int_text(tok[at + 1], line);
    at += 2;
    return head == "ge" ? Guard::at_least(v) : Guard::at_most(v);
  }
  if (head == "mod") {
    if (at + 2 >= tok.size()) throw parse_error("mod wants two integers", line, 1);
    Guard g = Guard::residue(parse_int_text(tok[at + 1], line),
                             parse_int_text(tok[at + 2], line));
    at += 3;
    return g;
  }
  throw parse_error("unknown guard '" + head + "'", line, 1);
}

inline PiecewiseRule::Branch parse_branch_text(const std::string& text, int line) {
  size_t arrow = text.find("=>");
  if (arrow == std::string::npos)
    throw parse_error("branch wants 'GUARD => RULE'", line, 1);
  auto left = cfg_detail::split_ws(text.substr(0, arrow));
  auto right = cfg_detail::split_ws(text.substr(arrow + 2));
  size_t at = 0;
  Guard g = parse_guard_text(left, at, line);
  if (at != left.size()) throw parse_error("trailing tokens after guard", line, 1);
  return {g, parse_subrule_text(right, 0, line)};
}

inline SequenceSpec parse_sequence_text(const std::string& text, int line) {
  using cfg_detail::parse_int_text;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') { parts.push_back(cur); cur.clear(); }
    else cur += c;
  }
  parts.push_back(cur);
  const std::string& head = parts[0];
  auto long_at = [&](size_t i) {
    Int v = parse_int_text(parts[i], line);
    if (v < 2 || v > 10000000) throw parse_error("prefix out of range", line, 1);
    return v.convert_to<long>();
  };
  if (head == "naturals") {
    if (parts.size() == 1) return SequenceSpec::naturals();
    if (parts.size() == 2) return SequenceSpec::naturals(long_at(1));
    throw parse_error("naturals takes at most one ':PREFIX'", line, 1);
  }
  if (head == "arithmetic") {
    if (parts.size() == 3)
      return SequenceSpec::arithmetic(parse_int_text(parts[1], line),
                                      parse_int_text(parts[2], line));
    if (parts.size() == 4)
      return SequenceSpec::arithmetic(parse_int_text(parts[1], line),
                                      parse_int_text(parts[2], line), long_at(3));
    throw parse_error("arithmetic wants 'arithmetic:START:STEP[:PREFIX]'", line, 1);
  }
  if (head == "explicit") {
    if (parts.size() != 2)
      throw parse_error("explicit wants 'explicit:N,N,...'", line, 1);
    std::vector<Int> terms;
    std::string item;
    for (char c : parts[1] + ",") {
      if (c == ',') {
        if (!item.empty()) terms.push_back(parse_int_text(item, line));
        item.clear();
      } else item += c;
    }
    return SequenceSpec::explicit_terms(std::move(terms));
  }
  throw parse_error("unknown sequence '" + head + "'", line, 1);
}

// --- whole-file assembly ----------------------------------------------------

struct ConfigFile {
  std::optional<FunctionalMap> shift;
  std::optional<FortSystem> fort;
  Alphabet alphabet{2};
  std::optional<Window> window;
  SequenceSpec sequence = SequenceSpec::naturals();
  std::vector<TracingSegment> segments;
  Symbol fill = 0;
  unsigned long long seed = 12345;
};

inline ConfigFile parse_config(const std::string& text) {
  using namespace cfg_detail;
  Doc doc = parse_doc(text);

  auto take = [&](const char* key) -> std::optional<Value> {
    auto it = doc.find(key);
    if (it == doc.end()) return std::nullopt;
    Value v = it->second;
    doc.erase(it);
    return v;
  };
  auto need_scalar = [&](const Value& v, const char* key) -> const std::string& {
    if (v.is_array)
      throw parse_error(std::string(key) + " wants a scalar", v.line, 1);
    return v.scalar;
  };
  auto need_array = [&](const Value& v, const char* key) -> const std::vector<std::string>& {
    if (!v.is_array)
      throw parse_error(std::string(key) + " wants an array", v.line, 1);
    return v.items;
  };

  ConfigFile out;
  Budget budget;
  if (auto v = take("magnitude")) budget.magnitude = parse_int_text(need_scalar(*v, "magnitude"), v->line);
  if (auto v = take("steps")) {
    Int s = parse_int_text(need_scalar(*v, "steps"), v->line);
    if (s < 1 || s > 100000000) throw parse_error("steps out of range", v->line, 1);
    budget.steps = s.convert_to<long>();
  }

  auto kind_v = take("kind");
  if (!kind_v) throw input_error("config needs kind = \"shift\" or \"fort\"");
  std::string kind = need_scalar(*kind_v, "kind");

  // Rule assembly, shared by both kinds.
  std::optional<IndexSet> atoms_set;
  if (auto v = take("atoms")) {
    std::vector<std::string> names = need_array(*v, "atoms");
    atoms_set = IndexSet::finite(names);
  }
  std::optional<Rule> rule;
  auto rule_v = take("rule");
  if (rule_v) {
    std::string text = need_scalar(*rule_v, "rule");
    int line = rule_v->line;
    auto tok = split_ws(text);
    if (tok.empty()) throw parse_error("empty rule", line, 1);
    if (tok[0] == "table") {
      if (!atoms_set) throw input_error("table rules need an atoms array");
      auto entries_v = take("table");
      if (!entries_v) throw input_error("table rules need a table array");
      const auto& entries = need_array(*entries_v, "table");
      if (static_cast<long>(entries.size()) != atoms_set->size())
        throw input_error("table must list every atom exactly once");
      std::vector<long> image(entries.size(), -1);
      for (const std::string& e : entries) {
        size_t gt = e.find('>');
        if (gt == std::string::npos)
          throw parse_error("table entries look like \"from>to\"", entries_v->line, 1);
        Int from = atoms_set->parse_index(trim(e.substr(0, gt)));
        Int to = atoms_set->parse_index(trim(e.substr(gt + 1)));
        long f = from.convert_to<long>();
        if (image[static_cast<size_t>(f)] != -1)
          throw input_error("atom '" + trim(e.substr(0, gt)) + "' mapped twice");
        image[static_cast<size_t>(f)] = to.convert_to<long>();
      }
      rule = TableRule{std::move(image)};
    } else if (tok[0] == "piecewise") {
      PiecewiseRule pw;
      auto branches_v = take("branches");
      if (!branches_v) throw input_error("piecewise rules need a branches array");
      for (const std::string& b : need_array(*branches_v, "branches"))
        pw.branches.push_back(parse_branch_text(b, branches_v->line));
      auto fb_v = take("fallback");
      if (!fb_v) throw input_error("piecewise rules need a fallback");
      auto fb_tok = split_ws(need_scalar(*fb_v, "fallback"));
      pw.fallback = parse_subrule_text(fb_tok, 0, fb_v->line);
      rule = pw;
    } else {
      SubRule sr = parse_subrule_text(tok, 0, line);
      if (const auto* a = std::get_if<AffineRule>(&sr)) rule = *a;
      else rule = std::get<SquarePlusRule>(sr);
    }
  }

  IndexSet domain = atoms_set ? *atoms_set : IndexSet::integers();

  if (kind == "shift") {
    if (!rule) throw input_error("shift configs need a rule");
    out.shift = FunctionalMap(domain, *rule, budget);
  } else if (kind == "fort") {
    if (!rule) throw input_error("fort configs need a rule");
    if (atoms_set) {
      auto base_v = take("base");
      if (!base_v) throw input_error("finite fort configs need base = \"atom\"");
      Int base = atoms_set->parse_index(need_scalar(*base_v, "base"));
      const auto* tab = std::get_if<TableRule>(&*rule);
      if (!tab) throw input_error("finite fort configs use a table rule");
      out.fort = FortSystem::finite_space(*atoms_set, *tab, base.convert_to<long>());
    } else {
      auto bi_v = take("base_image");
      Int base_image = 0;
      if (bi_v) base_image = parse_int_text(need_scalar(*bi_v, "base_image"), bi_v->line);
      out.fort = FortSystem::integer_space(*rule, base_image, budget);
    }
  } else {
    throw input_error("kind must be \"shift\" or \"fort\"");
  }

  if (auto v = take("alphabet")) {
    Int a = parse_int_text(need_scalar(*v, "alphabet"), v->line);
    if (a < 2 || a > 1000000) throw input_error("alphabet size must be in [2, 10^6]");
    out.alphabet = Alphabet(a.convert_to<int>());
  }
  if (auto v = take("window")) {
    std::vector<Int> coords;
    for (const std::string& c : need_array(*v, "window"))
      coords.push_back(domain.parse_index(c));
    out.window = Window(coords);
  }
  if (auto v = take("sequence"))
    out.sequence = parse_sequence_text(need_scalar(*v, "sequence"), v->line);
  if (auto v = take("seed")) {
    Int s = parse_int_text(need_scalar(*v, "seed"), v->line);
    if (s < 0) throw input_error("seed must be nonnegative");
    out.seed = s.convert_to<unsigned long long>();
  }
  if (auto v = take("fill")) {
    Int f = parse_int_text(need_scalar(*v, "fill"), v->line);
    out.fill = f.convert_to<int>();
    out.alphabet.require(out.fill);
  }

  // Tracing segments: "FROM TO" windows paired with "FILL [coord:sym]..." targets.
  auto seg_v = take("segments");
  auto win_v = take("windows");
  if (seg_v || win_v) {
    if (!seg_v || !win_v)
      throw input_error("tracing needs both segments and windows arrays");
    const auto& segs = need_array(*seg_v, "segments");
    const auto& wins = need_array(*win_v, "windows");
    if (segs.size() != wins.size())
      throw input_error("segments and windows must have the same length");
    for (size_t i = 0; i < segs.size(); ++i) {
      auto wt = split_ws(wins[i]);
      if (wt.size() != 2)
        throw parse_error("windows entries look like \"FROM TO\"", win_v->line, 1);
      TracingSegment seg;
      seg.from = parse_int_text(wt[0], win_v->line);
      seg.to = parse_int_text(wt[1], win_v->line);
      auto st = split_ws(segs[i]);
      if (st.empty())
        throw parse_error("segments entries look like \"FILL [coord:sym]...\"",
                          seg_v->line, 1);
      Int fill = parse_int_text(st[0], seg_v->line);
      seg.target = Configuration(fill.convert_to<int>());
      out.alphabet.require(seg.target.fill);
      for (size_t t = 1; t < st.size(); ++t) {
        size_t colon = st[t].find(':');
        if (colon == std::string::npos)
          throw parse_error("overrides look like coord:sym", seg_v->line, 1);
        Int coord = domain.parse_index(st[t].substr(0, colon));
        Int sym = parse_int_text(st[t].substr(colon + 1), seg_v->line);
        out.alphabet.require(sym.convert_to<int>());
        seg.target.set(coord, sym.convert_to<int>());
      }
      out.segments.push_back(std::move(seg));
    }
  }

  if (!doc.empty()) {
    const auto& [key, v] = *doc.begin();
    throw parse_error("unknown key '" + key + "'", v.line, 1);
  }
  return out;
}

}  // namespace gshift
