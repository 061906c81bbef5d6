#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agpar {

using Element = std::int32_t;

// A finite groupoid presented by its Cayley table: entries[a*n+b] = a*b.
// Immutable after construction, so instances can be shared across threads.
// Quasigroup-ness is never required to build one; it is a classifier verdict.
class CayleyTable {
 public:
  CayleyTable(int order, std::vector<Element> entries, std::string name = "");

  // File format: first significant line is the order n, then n rows of n
  // whitespace-separated integers in [0,n). Blank lines and lines starting
  // with '#' are skipped; CRLF accepted. Errors carry the physical line.
  static CayleyTable parse(std::string_view text, std::string name = "");
  static CayleyTable read_file(const std::string& path);

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  const std::vector<Element>& entries() const { return entries_; }

  // a*b with index validation.
  Element product(Element a, Element b) const;
  // Unchecked lookup for hot loops.
  Element at(Element a, Element b) const {
    return entries_[static_cast<size_t>(a) * order_ + b];
  }

  // Unique x with a*x == b; errors when the row has no or several solutions.
  Element left_divide(Element a, Element b) const;
  // Unique y with y*a == b; errors when the column has no or several solutions.
  Element right_divide(Element b, Element a) const;

  // Smallest e with e*x == x for all x, recorded at construction.
  std::optional<Element> left_identity() const { return left_identity_; }

  // x with a*x == e (smallest such x). Requires a left identity.
  Element inverse(Element a) const;

  // Latin-square probe recorded at construction (every row and column a
  // permutation). The classifier reproduces it with a counterexample.
  bool is_latin() const { return latin_; }

  std::string serialize() const;

  friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  void check_index(Element a, const char* role) const;

  int order_ = 0;
  std::vector<Element> entries_;
  std::string name_;
  std::optional<Element> left_identity_;
  bool latin_ = false;
  // Division tables, built once at construction for orders >= 64. Sentinels:
  // kNoSolution / kManySolutions.
  std::vector<Element> ldiv_, rdiv_;
};

// Convenience builders used all over the tests and the enumerator.
CayleyTable table_from_rows(const std::vector<std::vector<Element>>& rows,
                            std::string name = "");
CayleyTable cyclic_group_table(int order);      // (a+b) mod n
CayleyTable subtraction_table(int order);       // (b-a) mod n, an AG-group for n>=1

}  // namespace agpar
