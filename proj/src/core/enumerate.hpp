#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "core/table.hpp"

namespace agpar {

enum class ModelClass { Quasigroup, MedialQuasigroup, AgGroup, AbelianGroup };

ModelClass model_class_from_string(std::string_view name);
const char* to_string(ModelClass cls);
int default_order_bound(ModelClass cls);

struct SearchSpec {
  int order = 1;
  ModelClass cls = ModelClass::AgGroup;
  bool up_to_iso = false;
  bool count_only = false;
  bool force = false;
  int threads = 1;
  // Pre-assigned cells (row, col, value); used by the completeness tests.
  std::vector<std::tuple<int, int, Element>> seed;
};

struct EnumerationResult {
  // Number of labeled models; absent when symmetry breaking pruned the
  // labeled space (identity pinned to 0 in up-to-iso searches).
  std::optional<std::uint64_t> labeled_count;
  // up_to_iso: canonical forms, lexicographically sorted.
  // labeled: every model in generation order.
  std::vector<CayleyTable> models;
};

// Backtracking over table cells in row-major order with Latin-square masks
// and per-class unit propagation (the unknown cell of a constraint instance
// whose other cells are known is forced, cascading).
EnumerationResult enumerate_models(const SearchSpec& spec);

// Trust anchor: enumerates every function table of the given order (bound 3),
// filters by directly coded axioms, canonicalizes and deduplicates.
// Deliberately single-threaded and propagation-free.
EnumerationResult naive_oracle(int order, ModelClass cls);

struct CanonicalForm {
  CayleyTable table;
  std::vector<Element> permutation;  // permutation[original] = new label
};

// Minimizes the row-major entry sequence over relabelings. When the table has
// left identities, only permutations relocating one of them to 0 compete
// (sound: isomorphisms map left identities to left identities).
CanonicalForm canonical_form(const CayleyTable& table, bool force = false);

}  // namespace agpar
