#include "core/par.hpp"

#include <algorithm>
#include <array>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace agpar {

ParSpace::ParSpace(const CayleyTable& table) : table_(table) {
  if (!table_.is_latin())
    fail(ErrorKind::Domain, "parallelogram relation needs a quasigroup (Latin square) table");
  const int n = table_.order();
  if (table_.left_identity()) {
    const Element e = *table_.left_identity();
    has_inverses_ = true;
    for (Element a = 0; a < n && has_inverses_; ++a) {
      bool found = false;
      for (Element x = 0; x < n; ++x)
        if (table_.at(a, x) == e) {
          found = true;
          break;
        }
      has_inverses_ = found;
    }
  }
  left_invertive_ = true;
  for (Element x = 0; x < n && left_invertive_; ++x)
    for (Element y = 0; y < n && left_invertive_; ++y)
      for (Element z = 0; z < n; ++z)
        if (table_.at(table_.at(x, y), z) != table_.at(table_.at(z, y), x)) {
          left_invertive_ = false;
          break;
        }
  ag_ = table_.left_identity().has_value() && has_inverses_ && left_invertive_;
}

void ParSpace::check_index(Element v, const char* role) const {
  if (v < 0 || v >= table_.order())
    fail(ErrorKind::InvalidArgument, std::string(role) + " index " + std::to_string(v) +
                                         " out of range [0," + std::to_string(table_.order()) +
                                         ")");
}

void ParSpace::require_ag(const char* op) const {
  if (!ag_)
    fail(ErrorKind::Domain, std::string(op) + " needs an AG-group table");
}

bool ParSpace::holds(Element a, Element b, Element c, Element d) const {
  check_index(a, "a");
  check_index(b, "b");
  check_index(c, "c");
  check_index(d, "d");
  const int n = table_.order();
  for (Element p = 0; p < n; ++p) {
    // q is determined by p in a quasigroup: q*b = p*a
    const Element q = table_.right_divide(table_.at(p, a), b);
    if (table_.at(p, d) == table_.at(q, c)) return true;
  }
  return false;
}

Element ParSpace::fourth_vertex(Element a, Element b, Element c) const {
  check_index(a, "a");
  check_index(b, "b");
  check_index(c, "c");
  if (ag_) return table_.at(table_.at(c, table_.inverse(b)), a);
  // Fallback for general quasigroups: scan d and insist on uniqueness.
  Element found = -1;
  int count = 0;
  for (Element d = 0; d < table_.order(); ++d)
    if (holds(a, b, c, d)) {
      ++count;
      if (found < 0) found = d;
    }
  if (count != 1)
    fail(ErrorKind::Domain,
         "no unique fourth vertex for (" + std::to_string(a) + "," + std::to_string(b) + "," +
             std::to_string(c) + "): " + std::to_string(count) +
             " candidates; table is not a parallelogram space");
  return found;
}

std::optional<std::pair<Element, Element>> ParSpace::t1_decompose(Element a, Element b, Element c,
                                                                  Element d) const {
  require_ag("t1 decomposition");
  check_index(a, "a");
  check_index(b, "b");
  check_index(c, "c");
  check_index(d, "d");
  const Element x = table_.right_divide(a, b);  // x*b = a
  const Element y = table_.left_divide(b, c);   // b*y = c
  if (table_.at(b, table_.at(x, y)) != d) return std::nullopt;
  return std::make_pair(x, y);
}

Element ParSpace::c1_ratio(Element a, Element b) const {
  require_ag("witness ratio");
  check_index(a, "a");
  check_index(b, "b");
  return table_.at(a, table_.inverse(b));
}

std::vector<WitnessPair> ParSpace::witnesses(Element a, Element b, Element c, Element d) const {
  require_ag("witness recovery");
  if (!holds(a, b, c, d))
    fail(ErrorKind::Domain, "Par(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + "," + std::to_string(d) + ") does not hold");
  const int n = table_.order();
  const Element ratio = c1_ratio(a, b);
  std::vector<WitnessPair> out;
  out.reserve(static_cast<size_t>(n));
  std::vector<char> seen_p(static_cast<size_t>(n), 0);
  for (Element q = 0; q < n; ++q) {
    const Element p_inv = table_.right_divide(ratio, q);  // p^-1 * q = ratio
    const Element p = table_.inverse(p_inv);
    if (table_.at(p, a) != table_.at(q, b) || table_.at(p, d) != table_.at(q, c))
      fail(ErrorKind::Internal, "recovered witness pair (p=" + std::to_string(p) +
                                    ",q=" + std::to_string(q) + ") fails the defining equations");
    if (seen_p[p])
      fail(ErrorKind::Internal,
           "witness p=" + std::to_string(p) + " recovered for two different q");
    seen_p[p] = 1;
    out.push_back({p, q});
  }
  return out;
}

Parallelogram ParSpace::construct_t3(Element a, Element b, Element p) const {
  require_ag("construct t3");
  check_index(a, "a");
  check_index(b, "b");
  check_index(p, "p");
  const Quad quad{a, b, table_.at(p, b), table_.at(p, a)};
  if (!holds(quad.a, quad.b, quad.c, quad.d))
    fail(ErrorKind::Internal, "t3 produced an invalid parallelogram");
  return {quad, true};
}

Parallelogram ParSpace::construct_t4(Element a, Element b) const {
  require_ag("construct t4");
  check_index(a, "a");
  check_index(b, "b");
  const Element ai = table_.inverse(a);
  const Quad quad{a, b, ai, table_.at(table_.inverse(table_.at(a, b)), a)};
  if (!holds(quad.a, quad.b, quad.c, quad.d))
    fail(ErrorKind::Internal, "t4 produced an invalid parallelogram");
  return {quad, true};
}

Parallelogram ParSpace::construct_t5(Element a, Element b) const {
  require_ag("construct t5");
  check_index(a, "a");
  check_index(b, "b");
  const Element e = *table_.left_identity();
  if (a == e) fail(ErrorKind::InvalidArgument, "construct t5 requires a != e");
  const Element ae = table_.at(a, e);
  const Quad quad{a, table_.at(a, b), table_.at(ae, table_.inverse(a)), b};
  if (!holds(quad.a, quad.b, quad.c, quad.d))
    fail(ErrorKind::Internal, "t5 produced an invalid parallelogram");
  return {quad, true};
}

ParSpace::C2Result ParSpace::construct_c2(Element a) const {
  require_ag("construct c2");
  check_index(a, "a");
  const Element e = *table_.left_identity();
  if (a == e) fail(ErrorKind::InvalidArgument, "construct c2 requires a != e");
  const Element ae = table_.at(a, e);
  const Quad quad{a, ae, table_.at(ae, table_.inverse(a)), e};
  if (!holds(quad.a, quad.b, quad.c, quad.d))
    fail(ErrorKind::Internal, "c2 produced an invalid parallelogram");
  return {{quad, true}, ae != a};
}

Parallelogram ParSpace::product(const Parallelogram& lhs, const Parallelogram& rhs) const {
  if (!lhs.valid || !rhs.valid)
    fail(ErrorKind::InvalidArgument, "componentwise product needs two valid parallelograms");
  const Quad quad{table_.product(lhs.quad.a, rhs.quad.a), table_.product(lhs.quad.b, rhs.quad.b),
                  table_.product(lhs.quad.c, rhs.quad.c), table_.product(lhs.quad.d, rhs.quad.d)};
  const bool valid = holds(quad.a, quad.b, quad.c, quad.d);
  return {quad, valid};
}

bool ParSpace::p_relation(Element a, Element b, Element c, Element d) const {
  return holds(a, b, d, c);
}

std::vector<bool> ParSpace::relation_bitset() const {
  const int n = table_.order();
  const size_t n2 = static_cast<size_t>(n) * n;
  std::vector<bool> par(n2 * n2, false);
  // For each (a,b,p): q is forced; then each c forces the d that p witnesses.
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element p = 0; p < n; ++p) {
        const Element q = table_.right_divide(table_.at(p, a), b);
        for (Element c = 0; c < n; ++c) {
          const Element d = table_.left_divide(p, table_.at(q, c));
          par[((static_cast<size_t>(a) * n + b) * n + c) * n + d] = true;
        }
      }
  return par;
}

namespace {

struct RelView {
  const std::vector<bool>& par;
  int n;
  bool operator()(Element a, Element b, Element c, Element d) const {
    return par[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
  }
};

std::vector<Element> decode_tuple(std::uint64_t index, int n, int arity) {
  std::vector<Element> out(static_cast<size_t>(arity));
  for (int i = arity; i-- > 0;) {
    out[static_cast<size_t>(i)] = static_cast<Element>(index % static_cast<std::uint64_t>(n));
    index /= static_cast<std::uint64_t>(n);
  }
  return out;
}

AxiomResult quad_axiom(const RelView& rel, int threads,
                       bool (*violates)(const RelView&, Element, Element, Element, Element),
                       const char* note_on_fail) {
  const int n = rel.n;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * n * n * n;
  const auto bad = find_first_index(total, threads, [&](std::uint64_t i) {
    const auto t = decode_tuple(i, n, 4);
    return violates(rel, t[0], t[1], t[2], t[3]);
  });
  AxiomResult r;
  if (bad) {
    r.holds = false;
    r.counterexample = decode_tuple(*bad, n, 4);
    r.note = note_on_fail;
  }
  return r;
}

AxiomResult sextuple_axiom(const RelView& rel, int threads,
                           bool (*violates)(const RelView&, const std::vector<Element>&),
                           const char* note_on_fail) {
  const int n = rel.n;
  std::uint64_t total = 1;
  for (int i = 0; i < 6; ++i) total *= static_cast<std::uint64_t>(n);
  const auto bad = find_first_index(total, threads, [&](std::uint64_t i) {
    return violates(rel, decode_tuple(i, n, 6));
  });
  AxiomResult r;
  if (bad) {
    r.holds = false;
    r.counterexample = decode_tuple(*bad, n, 6);
    r.note = note_on_fail;
  }
  return r;
}

AxiomResult unique_fourth(const RelView& rel, int threads, bool swapped, const char* what) {
  const int n = rel.n;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * n * n;
  AxiomResult r;
  const auto bad = find_first_index(total, threads, [&](std::uint64_t i) {
    const auto t = decode_tuple(i, n, 3);
    int count = 0;
    for (Element d = 0; d < n; ++d)
      if (swapped ? rel(t[0], t[1], d, t[2]) : rel(t[0], t[1], t[2], d)) ++count;
    return count != 1;
  });
  if (bad) {
    r.holds = false;
    r.counterexample = decode_tuple(*bad, n, 3);
    int count = 0;
    for (Element d = 0; d < n; ++d)
      if (swapped ? rel(r.counterexample[0], r.counterexample[1], d, r.counterexample[2])
                  : rel(r.counterexample[0], r.counterexample[1], r.counterexample[2], d))
        ++count;
    r.note = std::string(what) + ": " + std::to_string(count) + " fourth points";
  }
  return r;
}

}  // namespace

AxiomReport ParSpace::verify_axioms(const AxiomOptions& options) const {
  require_threads(options.threads);
  const int n = table_.order();
  if (n > options.p3_order_cap && !options.force)
    fail(ErrorKind::Limit, "order " + std::to_string(n) + " exceeds the n^6 axiom-loop cap of " +
                               std::to_string(options.p3_order_cap) + "; pass force to override");

  const std::vector<bool> par = relation_bitset();
  const RelView rel{par, n};
  const int threads = options.threads;

  AxiomReport report;
  // P axioms are about P(a,b,c,d) = Par(a,b,d,c).
  report.p1 = quad_axiom(
      rel, threads,
      [](const RelView& par_rel, Element a, Element b, Element c, Element d) {
        return par_rel(a, b, d, c) && !par_rel(a, c, d, b);  // P(a,b,c,d) -> P(a,c,b,d)
      },
      "P(a,b,c,d) holds but P(a,c,b,d) does not");
  report.p2 = quad_axiom(
      rel, threads,
      [](const RelView& par_rel, Element a, Element b, Element c, Element d) {
        return par_rel(a, b, d, c) && !par_rel(c, d, b, a);  // P(a,b,c,d) -> P(c,d,a,b)
      },
      "P(a,b,c,d) holds but P(c,d,a,b) does not");
  report.p3 = sextuple_axiom(
      rel, threads,
      [](const RelView& par_rel, const std::vector<Element>& t) {
        const Element a = t[0], b = t[1], c = t[2], d = t[3], f = t[4], g = t[5];
        return par_rel(a, b, g, f) && par_rel(f, g, d, c) && !par_rel(a, b, d, c);
      },
      "P(a,b,f,g) and P(f,g,c,d) hold but P(a,b,c,d) does not");
  report.p4 = unique_fourth(rel, threads, /*swapped=*/true, "P(a,b,c,.)");
  report.v1 = unique_fourth(rel, threads, /*swapped=*/false, "Par(a,b,c,.)");
  report.v2 = quad_axiom(
      rel, threads,
      [](const RelView& par_rel, Element a, Element b, Element c, Element d) {
        if (!par_rel(a, b, c, d)) return false;
        const std::array<std::array<Element, 4>, 8> images{{{a, b, c, d},
                                                            {b, c, d, a},
                                                            {c, d, a, b},
                                                            {d, a, b, c},
                                                            {d, c, b, a},
                                                            {c, b, a, d},
                                                            {b, a, d, c},
                                                            {a, d, c, b}}};
        for (const auto& im : images)
          if (!par_rel(im[0], im[1], im[2], im[3])) return true;
        return false;
      },
      "a cyclic permutation of (a,b,c,d) or (d,c,b,a) leaves the relation");
  report.v3 = sextuple_axiom(
      rel, threads,
      [](const RelView& par_rel, const std::vector<Element>& t) {
        const Element a = t[0], b = t[1], c = t[2], d = t[3], e = t[4], f = t[5];
        return par_rel(a, b, c, d) && par_rel(c, d, e, f) && !par_rel(a, b, f, e);
      },
      "Par(a,b,c,d) and Par(c,d,e,f) hold but Par(a,b,f,e) does not");
  return report;
}

bool par_holds(const CayleyTable& table, Element a, Element b, Element c, Element d) {
  return ParSpace(table).holds(a, b, c, d);
}

Element fourth_vertex(const CayleyTable& table, Element a, Element b, Element c) {
  return ParSpace(table).fourth_vertex(a, b, c);
}

AxiomReport verify_parallelogram_space(const CayleyTable& table, const AxiomOptions& options) {
  return ParSpace(table).verify_axioms(options);
}

nlohmann::ordered_json to_json(const AxiomReport& report) {
  auto axiom_json = [](const AxiomResult& r) {
    nlohmann::ordered_json j;
    j["holds"] = r.holds;
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
  };
  nlohmann::ordered_json axioms;
  axioms["P1"] = axiom_json(report.p1);
  axioms["P2"] = axiom_json(report.p2);
  axioms["P3"] = axiom_json(report.p3);
  axioms["P4"] = axiom_json(report.p4);
  axioms["V1"] = axiom_json(report.v1);
  axioms["V2"] = axiom_json(report.v2);
  axioms["V3"] = axiom_json(report.v3);
  nlohmann::ordered_json out;
  out["axioms"] = std::move(axioms);
  out["all_hold"] = report.all_hold();
  return out;
}

}  // namespace agpar
