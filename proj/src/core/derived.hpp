#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/par.hpp"
#include "core/table.hpp"

namespace agpar {

// The algebra of valid parallelogram quadruples under the componentwise
// product @. The carrier is indexed lexicographically by (a,b,c) — the fourth
// component is determined — so the carrier is in bijection with G^3 and has
// size n^3 exactly when the base has unique fourth points.
class DerivedAlgebra {
 public:
  const CayleyTable& base() const { return base_; }
  std::int64_t order() const { return order_; }

  Quad quad_of(std::int64_t index) const;
  std::int64_t index_of(const Quad& quad) const;  // errors when quad is not in the carrier

  // index_of(componentwise product); closure violations are loud errors.
  std::int64_t product(std::int64_t i, std::int64_t j) const;

  std::int64_t identity_index() const;            // requires base left identity
  std::int64_t inverse(std::int64_t index) const; // requires base AG-group

  bool materialized() const { return table_.has_value(); }
  const CayleyTable& table() const;  // errors when not materialized

  // Standard table format prefixed with a '#' block mapping indices to quads.
  std::string serialize() const;

  bool base_is_ag() const { return base_ag_; }

 private:
  friend DerivedAlgebra build_derived(const CayleyTable&, const struct DerivedBuildOptions&);

  CayleyTable base_{1, {0}};
  bool base_ag_ = false;
  std::int64_t order_ = 0;
  std::vector<Element> fourth_;          // fourth_[(a*n+b)*n+c] = d
  std::vector<Element> base_inverse_;    // only for AG bases
  std::optional<CayleyTable> table_;
};

struct DerivedBuildOptions {
  std::int64_t max_table_order = 4096;  // larger derived algebras stay on-demand
  int threads = 1;
};

// Base must be an AG-group or a medial quasigroup; unique fourth points are
// established during carrier construction (a P4 failure is an error naming
// the offending triple).
DerivedAlgebra build_derived(const CayleyTable& base, const DerivedBuildOptions& options = {});

struct SampleCheck {
  std::uint64_t checked = 0;
  bool ok = true;
  std::vector<std::int64_t> counterexample;  // (i,j,k) when ok is false
};

// Left invertive law (x@y)@z = (z@y)@x on uniformly sampled triples.
SampleCheck check_left_invertive_sampled(const DerivedAlgebra& d, std::uint64_t count,
                                         std::uint64_t seed, int threads = 1);

// Exhaustive checks used by the verification suites.
bool check_identity_exhaustive(const DerivedAlgebra& d);   // e@x = x for all x
bool check_inverses_exhaustive(const DerivedAlgebra& d);   // x@x^-1 = x^-1@x = e
bool check_left_invertive_over(const DerivedAlgebra& d, const std::vector<std::int64_t>& subset);
bool check_medial_exhaustive(const DerivedAlgebra& d);
bool check_latin_exhaustive(const DerivedAlgebra& d);

// Closure of the generators under @; errors past cap.
std::vector<std::int64_t> subalgebra_closure(const DerivedAlgebra& d,
                                             std::vector<std::int64_t> generators, size_t cap);

}  // namespace agpar
