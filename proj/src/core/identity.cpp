#include "core/identity.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace agpar {

namespace {

[[noreturn]] void syntax_fail(size_t pos, const std::string& msg) {
  fail(ErrorKind::Parse, "syntax error at position " + std::to_string(pos + 1) + ": " + msg);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Identity parse() {
    auto first = parse_eq();
    skip_ws();
    Identity id;
    if (peek() == '-' && peek(1) == '>') {
      pos_ += 2;
      auto second = parse_eq();
      id.premise = first;
      id.lhs = second.first;
      id.rhs = second.second;
    } else {
      id.lhs = first.first;
      id.rhs = first.second;
    }
    skip_ws();
    if (pos_ != src_.size()) syntax_fail(pos_, "unexpected trailing input");
    std::set<char> vars;
    collect_vars(*id.lhs, vars);
    collect_vars(*id.rhs, vars);
    if (id.premise) {
      collect_vars(*id.premise->first, vars);
      collect_vars(*id.premise->second, vars);
    }
    id.variables.assign(vars.begin(), vars.end());
    id.source = std::string(src_);
    return id;
  }

 private:
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  std::pair<TermPtr, TermPtr> parse_eq() {
    TermPtr lhs = parse_term();
    skip_ws();
    if (peek() != '=') syntax_fail(pos_, "expected '='");
    ++pos_;
    TermPtr rhs = parse_term();
    return {lhs, rhs};
  }

  TermPtr parse_term() {
    TermPtr t = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') return t;
      ++pos_;
      TermPtr f = parse_factor();
      auto node = std::make_shared<Term>();
      node->kind = Term::Kind::Product;
      node->lhs = t;
      node->rhs = f;
      t = node;
    }
  }

  TermPtr parse_factor() {
    TermPtr atom = parse_atom();
    skip_ws();
    if (peek() == '\'') {
      ++pos_;
      auto node = std::make_shared<Term>();
      node->kind = Term::Kind::Inverse;
      node->lhs = atom;
      return node;
    }
    return atom;
  }

  TermPtr parse_atom() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      const size_t open = pos_;
      ++pos_;
      TermPtr t = parse_term();
      skip_ws();
      if (peek() != ')') syntax_fail(open, "unbalanced parenthesis");
      ++pos_;
      return t;
    }
    if (c == 'e') {
      ++pos_;
      auto node = std::make_shared<Term>();
      node->kind = Term::Kind::LeftIdentity;
      return node;
    }
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      auto node = std::make_shared<Term>();
      node->kind = Term::Kind::Variable;
      node->var = c;
      return node;
    }
    if (c == '\0') syntax_fail(pos_, "unexpected end of input, expected an atom");
    syntax_fail(pos_, std::string("unexpected character '") + c + "', expected an atom");
  }

  static void collect_vars(const Term& t, std::set<char>& out) {
    switch (t.kind) {
      case Term::Kind::Variable:
        out.insert(t.var);
        break;
      case Term::Kind::LeftIdentity:
        break;
      case Term::Kind::Product:
        collect_vars(*t.lhs, out);
        collect_vars(*t.rhs, out);
        break;
      case Term::Kind::Inverse:
        collect_vars(*t.lhs, out);
        break;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
};

// Terms are flattened to postfix programs so the odometer loop stays cheap.
struct Op {
  enum class Kind { PushVar, PushIdentity, Mul, Inv };
  Kind kind;
  int slot = 0;
};

void compile_term(const Term& t, const std::vector<char>& vars, std::vector<Op>& out) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      const auto it = std::find(vars.begin(), vars.end(), t.var);
      out.push_back({Op::Kind::PushVar, static_cast<int>(it - vars.begin())});
      break;
    }
    case Term::Kind::LeftIdentity:
      out.push_back({Op::Kind::PushIdentity, 0});
      break;
    case Term::Kind::Product:
      compile_term(*t.lhs, vars, out);
      compile_term(*t.rhs, vars, out);
      out.push_back({Op::Kind::Mul, 0});
      break;
    case Term::Kind::Inverse:
      compile_term(*t.lhs, vars, out);
      out.push_back({Op::Kind::Inv, 0});
      break;
  }
}

bool term_uses(const Term& t, Term::Kind kind) {
  if (t.kind == kind) return true;
  if (t.lhs && term_uses(*t.lhs, kind)) return true;
  if (t.rhs && term_uses(*t.rhs, kind)) return true;
  return false;
}

struct Program {
  std::vector<Op> ops;
  // -3 = evaluation error (inverse missing); only surfaces through eval().
  Element eval(const CayleyTable& t, const Element* asg, Element e,
               const Element* inv_map) const {
    Element stack[32];
    int sp = 0;
    for (const Op& op : ops) {
      switch (op.kind) {
        case Op::Kind::PushVar:
          stack[sp++] = asg[op.slot];
          break;
        case Op::Kind::PushIdentity:
          stack[sp++] = e;
          break;
        case Op::Kind::Mul:
          --sp;
          stack[sp - 1] = t.at(stack[sp - 1], stack[sp]);
          break;
        case Op::Kind::Inv: {
          const Element v = inv_map[stack[sp - 1]];
          if (v < 0) return -3;
          stack[sp - 1] = v;
          break;
        }
      }
    }
    return stack[0];
  }
};

size_t term_depth(const Term& t) {
  size_t d = 0;
  if (t.lhs) d = std::max(d, term_depth(*t.lhs));
  if (t.rhs) d = std::max(d, term_depth(*t.rhs));
  return d + 1;
}

}  // namespace

Identity parse_identity(std::string_view src) { return Parser(src).parse(); }

bool uses_identity_or_inverse(const Identity& id) {
  auto check = [](const TermPtr& t) {
    return term_uses(*t, Term::Kind::LeftIdentity) || term_uses(*t, Term::Kind::Inverse);
  };
  if (check(id.lhs) || check(id.rhs)) return true;
  if (id.premise && (check(id.premise->first) || check(id.premise->second))) return true;
  return false;
}

Element eval_term(const Term& term, const CayleyTable& table, const Assignment& assignment) {
  switch (term.kind) {
    case Term::Kind::Variable: {
      const auto it = assignment.find(term.var);
      if (it == assignment.end())
        fail(ErrorKind::InvalidArgument,
             std::string("assignment is missing variable '") + term.var + "'");
      if (it->second < 0 || it->second >= table.order())
        fail(ErrorKind::InvalidArgument, "assignment value out of range");
      return it->second;
    }
    case Term::Kind::LeftIdentity: {
      const auto e = table.left_identity();
      if (!e) fail(ErrorKind::Domain, "identity constant 'e' used but table has no left identity");
      return *e;
    }
    case Term::Kind::Product:
      return table.at(eval_term(*term.lhs, table, assignment),
                      eval_term(*term.rhs, table, assignment));
    case Term::Kind::Inverse:
      return table.inverse(eval_term(*term.lhs, table, assignment));
  }
  fail(ErrorKind::Internal, "unreachable term kind");
}

Verdict holds(const CayleyTable& table, const Identity& id, int threads) {
  require_threads(threads);
  const int n = table.order();
  const auto& vars = id.variables;
  const size_t k = vars.size();

  const bool wants_e = uses_identity_or_inverse(id);
  if (wants_e && !table.left_identity())
    fail(ErrorKind::Domain,
         "identity '" + id.source + "' uses e or inverse but the table has no left identity");

  size_t max_depth = term_depth(*id.lhs);
  max_depth = std::max(max_depth, term_depth(*id.rhs));
  if (id.premise) {
    max_depth = std::max(max_depth, term_depth(*id.premise->first));
    max_depth = std::max(max_depth, term_depth(*id.premise->second));
  }
  if (max_depth > 30) fail(ErrorKind::Limit, "term too deep for the fixed evaluation stack");

  Program lhs, rhs, plhs, prhs;
  compile_term(*id.lhs, vars, lhs.ops);
  compile_term(*id.rhs, vars, rhs.ops);
  if (id.premise) {
    compile_term(*id.premise->first, vars, plhs.ops);
    compile_term(*id.premise->second, vars, prhs.ops);
  }

  const Element e = table.left_identity().value_or(0);
  // Inverse lookups resolved once; -1 marks elements without one so the scan
  // can report the offending assignment instead of guessing.
  std::vector<Element> inv_map(static_cast<size_t>(n), -1);
  if (wants_e)
    for (Element a = 0; a < n; ++a)
      for (Element x = 0; x < n; ++x)
        if (table.at(a, x) == e) {
          inv_map[a] = x;
          break;
        }

  std::uint64_t total = 1;
  for (size_t i = 0; i < k; ++i) {
    if (total > UINT64_MAX / static_cast<std::uint64_t>(n))
      fail(ErrorKind::Limit, "assignment space overflows; too many variables");
    total *= static_cast<std::uint64_t>(n);
  }

  const bool has_premise = id.premise.has_value();
  auto scan_assignment = [&](const Element* asg) -> int {
    // 0 = fine, 1 = violation, 2 = evaluation error
    if (has_premise) {
      const Element pl = plhs.eval(table, asg, e, inv_map.data());
      if (pl == -3) return 2;
      const Element pr = prhs.eval(table, asg, e, inv_map.data());
      if (pr == -3) return 2;
      if (pl != pr) return 0;
    }
    const Element l = lhs.eval(table, asg, e, inv_map.data());
    if (l == -3) return 2;
    const Element r = rhs.eval(table, asg, e, inv_map.data());
    if (r == -3) return 2;
    return l == r ? 0 : 1;
  };
  auto decode = [&](std::uint64_t index, Element* asg) {
    for (size_t i = k; i-- > 0;) {
      asg[i] = static_cast<Element>(index % n);
      index /= n;
    }
  };

  std::optional<std::uint64_t> bad;
  if (threads == 1) {
    Element asg[26] = {0};
    for (std::uint64_t i = 0; i < total; ++i) {
      if (scan_assignment(asg) != 0) {
        bad = i;
        break;
      }
      // odometer step, last variable fastest
      for (size_t j = k; j-- > 0;) {
        if (++asg[j] < n) break;
        asg[j] = 0;
        if (j == 0) break;
      }
    }
  } else {
    bad = find_first_index(total, threads, [&](std::uint64_t i) {
      Element asg[26];
      decode(i, asg);
      return scan_assignment(asg) != 0;
    });
  }

  if (!bad) return Verdict{};

  Element asg[26];
  decode(*bad, asg);
  Assignment cex;
  for (size_t i = 0; i < k; ++i) cex[vars[i]] = asg[i];
  if (scan_assignment(asg) == 2) {
    // Re-run through the checked evaluator to produce the precise message.
    try {
      if (has_premise) {
        eval_term(*id.premise->first, table, cex);
        eval_term(*id.premise->second, table, cex);
      }
      eval_term(*id.lhs, table, cex);
      eval_term(*id.rhs, table, cex);
    } catch (const Error&) {
      throw;
    }
    fail(ErrorKind::Internal, "evaluation error did not reproduce");
  }
  Verdict v;
  v.holds = false;
  v.counterexample = std::move(cex);
  return v;
}

namespace {

std::vector<Preset> build_catalog() {
  auto P = [](std::string key, std::vector<std::string> sources) {
    Preset p;
    p.key = std::move(key);
    for (const auto& s : sources) p.conjuncts.push_back(parse_identity(s));
    p.sources = std::move(sources);
    return p;
  };
  std::vector<Preset> cat;
  cat.push_back(P("preL1.i", {"(a*b)*(c*d) = (a*c)*(b*d)"}));
  cat.push_back(P("preL1.ii", {"a*b = c*d -> b*a = d*c"}));
  cat.push_back(P("preL1.iii", {"a*(b*c) = b*(a*c)"}));
  cat.push_back(P("preL1.iv", {"(a*b)*(c*d) = (d*b)*(c*a)"}));
  cat.push_back(P("preL1.v", {"(a*b)*(c*d) = (d*c)*(b*a)"}));
  cat.push_back(P("preL1.vi", {"a*b = c*d -> d'*b = c*a'", "d'*b = c*a' -> a*b = c*d"}));
  cat.push_back(P("preL1.vii", {"a*e = a -> e*a = a"}));
  cat.push_back(P("preL1.viii", {"a*b = e -> b*a = e"}));
  cat.push_back(P("preL1.ix", {"(a*b)' = a'*b'"}));
  cat.push_back(P("preL1.x", {"a*(b*(c*d)) = a*(c*(b*d))", "a*(c*(b*d)) = b*(a*(c*d))",
                              "b*(a*(c*d)) = b*(c*(a*d))", "b*(c*(a*d)) = c*(a*(b*d))",
                              "c*(a*(b*d)) = c*(b*(a*d))"}));
  cat.push_back(P("preL1.xi", {"a*((b*c)*d) = c*((b*a)*d)"}));
  cat.push_back(P("preL1.xii", {"(a*(b*c))*d = (a*(d*c))*b"}));
  cat.push_back(P("preL1.xiii", {"((a*b)*c)*d = a*((b*c)*d)"}));
  cat.push_back(P("medial", {"(a*b)*(c*d) = (a*c)*(b*d)"}));
  cat.push_back(P("paramedial", {"(a*b)*(c*d) = (d*b)*(c*a)"}));
  cat.push_back(P("left-invertive", {"(x*y)*z = (z*y)*x"}));
  cat.push_back(P("idempotent", {"x*x = x"}));
  cat.push_back(P("commutative", {"x*y = y*x"}));
  cat.push_back(P("associative", {"(x*y)*z = x*(y*z)"}));
  return cat;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> catalog = build_catalog();
  return catalog;
}

const Preset* find_preset(std::string_view key) {
  for (const auto& p : preset_catalog())
    if (p.key == key) return &p;
  return nullptr;
}

PresetVerdict check_preset(const CayleyTable& table, const Preset& preset, int threads) {
  for (size_t i = 0; i < preset.conjuncts.size(); ++i) {
    const Verdict v = holds(table, preset.conjuncts[i], threads);
    if (!v.holds) {
      PresetVerdict out;
      out.holds = false;
      out.counterexample = v.counterexample;
      out.failed_source = preset.sources[i];
      return out;
    }
  }
  return PresetVerdict{};
}

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (const auto& [var, value] : a) {
    if (!out.empty()) out += ',';
    out += var;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

}  // namespace agpar
