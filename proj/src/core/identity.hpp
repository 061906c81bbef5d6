#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/table.hpp"

namespace agpar {

// Term over variables (single lowercase letters, 'e' excluded), the constant
// e, binary '*' and postfix inverse '.
struct Term {
  enum class Kind { Variable, LeftIdentity, Product, Inverse };
  Kind kind = Kind::Variable;
  char var = 0;
  std::shared_ptr<const Term> lhs, rhs;  // Product uses both, Inverse uses lhs
};
using TermPtr = std::shared_ptr<const Term>;

// Grammar:
//   identity := eq | eq "->" eq
//   eq       := term "=" term
//   term     := factor | term "*" factor
//   factor   := atom | atom "'"
//   atom     := letter | "e" | "(" term ")"
// Juxtaposition is not multiplication; '*' is explicit.
struct Identity {
  TermPtr lhs, rhs;                                // conclusion
  std::optional<std::pair<TermPtr, TermPtr>> premise;
  std::vector<char> variables;                     // sorted, unique
  std::string source;
};

using Assignment = std::map<char, Element>;

struct Verdict {
  bool holds = true;
  std::optional<Assignment> counterexample;
};

Identity parse_identity(std::string_view src);

// Decides the identity over the table by exhaustive assignment in odometer
// order (first variable most significant); the counterexample, if any, is the
// lexicographically first violating assignment. Errors when the identity uses
// e or inverse and the table cannot supply them.
Verdict holds(const CayleyTable& table, const Identity& id, int threads = 1);

// Re-evaluates one side under a fixed assignment (counterexample replay).
Element eval_term(const Term& term, const CayleyTable& table, const Assignment& assignment);

bool uses_identity_or_inverse(const Identity& id);

// A named law; multi-equation laws (chained equalities, biconditionals) are
// expanded into conjuncts decided together.
struct Preset {
  std::string key;
  std::vector<std::string> sources;
  std::vector<Identity> conjuncts;
};

struct PresetVerdict {
  bool holds = true;
  std::optional<Assignment> counterexample;
  std::string failed_source;  // conjunct that produced the counterexample
};

const std::vector<Preset>& preset_catalog();
const Preset* find_preset(std::string_view key);
PresetVerdict check_preset(const CayleyTable& table, const Preset& preset, int threads = 1);

std::string format_assignment(const Assignment& a);  // "x=0,y=2"

}  // namespace agpar
