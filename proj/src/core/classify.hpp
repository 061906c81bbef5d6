#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/identity.hpp"
#include "core/table.hpp"
#include "vendor_json.hpp"

namespace agpar {

struct FlagResult {
  bool holds = false;
  std::optional<Assignment> counterexample;
  std::string note;
};

// Where a table sits in the hierarchy
// groupoid -> quasigroup -> medial/paramedial -> AG-groupoid -> AG-group -> abelian group.
struct StructureReport {
  int order = 0;
  std::string table_name;
  std::optional<Element> left_identity;

  FlagResult is_quasigroup;
  FlagResult has_left_identity;
  FlagResult has_right_identity;
  FlagResult has_inverses;       // with respect to the left identity
  FlagResult is_left_invertive;
  FlagResult is_medial;
  FlagResult is_paramedial;
  FlagResult is_commutative;
  FlagResult is_associative;
  FlagResult is_idempotent;
  FlagResult is_ag_groupoid;     // left invertive law alone
  FlagResult is_ag_group;
  FlagResult is_abelian_group;
};

StructureReport classify(const CayleyTable& table, int threads = 1);

struct SuiteEntry {
  enum class Status { Holds, Fails, Error };
  std::string key;
  Status status = Status::Holds;
  std::optional<Assignment> counterexample;
  std::string message;  // failing conjunct or error text
};

// One verdict per stock law preL1.i .. preL1.xiii; evaluation errors are
// recorded per item rather than aborting the suite.
std::vector<SuiteEntry> pre_l1_suite(const CayleyTable& table, int threads = 1);

nlohmann::ordered_json to_json(const StructureReport& report);
nlohmann::ordered_json to_json(const std::vector<SuiteEntry>& suite);

}  // namespace agpar
