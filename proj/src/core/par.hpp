#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/table.hpp"
#include "vendor_json.hpp"

namespace agpar {

struct Quad {
  Element a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Quad&, const Quad&) = default;
};

struct Parallelogram {
  Quad quad;
  bool valid = false;  // whether Par(a,b,c,d) holds in the owning table
};

struct WitnessPair {
  Element p = 0, q = 0;
};

struct AxiomResult {
  bool holds = true;
  std::vector<Element> counterexample;  // empty when the axiom holds
  std::string note;
};

// P1..P4 are the parallelogram-space conditions, checked over the relation
// P(a,b,c,d) <=> Par(a,b,d,c); V1..V3 are the companion properties of Par
// itself (unique fourth point, cyclic permutations, composition).
struct AxiomReport {
  AxiomResult p1, p2, p3, p4, v1, v2, v3;
  bool all_hold() const {
    return p1.holds && p2.holds && p3.holds && p4.holds && v1.holds && v2.holds && v3.holds;
  }
};

struct AxiomOptions {
  int p3_order_cap = 16;  // the six-tuple loops are n^6; larger orders need force
  bool force = false;
  int threads = 1;
};

// Parallelogram relation over one quasigroup table. Construction probes the
// table once (Latin, identity, inverses, left invertive law); all queries are
// then cheap scans. Holds a reference: the table must outlive the ParSpace.
class ParSpace {
 public:
  explicit ParSpace(const CayleyTable& table);  // errors unless table is a quasigroup

  const CayleyTable& table() const { return table_; }
  bool is_ag_group() const { return ag_; }

  // Definitional decider: some p (with q forced by q*b = p*a) has p*d = q*c.
  bool holds(Element a, Element b, Element c, Element d) const;

  // The unique d completing (a,b,c). Closed formula (c*b^-1)*a on AG-groups,
  // uniqueness scan otherwise; the scan errors when no unique d exists.
  Element fourth_vertex(Element a, Element b, Element c) const;

  // (x,y) with x*b = a, b*y = c and b*(x*y) = d; empty exactly when the
  // relation fails. AG-groups only.
  std::optional<std::pair<Element, Element>> t1_decompose(Element a, Element b, Element c,
                                                          Element d) const;

  Element c1_ratio(Element a, Element b) const;  // a*b^-1

  // All n witness pairs of a valid parallelogram, ordered by q ascending;
  // p is recovered from p^-1*q = a*b^-1. Verifies the defining equations and
  // the distinctness of the recovered p's.
  std::vector<WitnessPair> witnesses(Element a, Element b, Element c, Element d) const;

  Parallelogram construct_t3(Element a, Element b, Element p) const;  // (a,b,p*b,p*a)
  Parallelogram construct_t4(Element a, Element b) const;  // (a,b,a^-1,(a*b)^-1*a)
  Parallelogram construct_t5(Element a, Element b) const;  // (a,a*b,(a*e)*a^-1,b), a != e

  struct C2Result {
    Parallelogram par;  // (a,a*e,(a*e)*a^-1,e), a != e
    bool nontrivial = false;  // a*e != a
  };
  C2Result construct_c2(Element a) const;

  // Componentwise product of two valid parallelograms; the result is
  // validated (closure).
  Parallelogram product(const Parallelogram& lhs, const Parallelogram& rhs) const;

  bool p_relation(Element a, Element b, Element c, Element d) const;  // Par(a,b,d,c)

  AxiomReport verify_axioms(const AxiomOptions& options = {}) const;

  // The full relation as a bitset over n^4 quadruple indices.
  std::vector<bool> relation_bitset() const;

 private:
  void check_index(Element v, const char* role) const;
  void require_ag(const char* op) const;

  const CayleyTable& table_;
  bool ag_ = false;
  bool has_inverses_ = false;
  bool left_invertive_ = false;
};

// One-shot helpers for callers that do not keep a ParSpace around.
bool par_holds(const CayleyTable& table, Element a, Element b, Element c, Element d);
Element fourth_vertex(const CayleyTable& table, Element a, Element b, Element c);
AxiomReport verify_parallelogram_space(const CayleyTable& table, const AxiomOptions& options = {});

nlohmann::ordered_json to_json(const AxiomReport& report);

}  // namespace agpar
