#include "core/derived.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <set>

#include "core/error.hpp"
#include "core/identity.hpp"
#include "core/parallel.hpp"

namespace agpar {

namespace {

std::string quad_str(const Quad& q) {
  return "(" + std::to_string(q.a) + "," + std::to_string(q.b) + "," + std::to_string(q.c) + "," +
         std::to_string(q.d) + ")";
}

}  // namespace

Quad DerivedAlgebra::quad_of(std::int64_t index) const {
  if (index < 0 || index >= order_)
    fail(ErrorKind::InvalidArgument, "derived index " + std::to_string(index) + " out of range");
  const int n = base_.order();
  const Element c = static_cast<Element>(index % n);
  const Element b = static_cast<Element>((index / n) % n);
  const Element a = static_cast<Element>(index / (static_cast<std::int64_t>(n) * n));
  return Quad{a, b, c, fourth_[static_cast<size_t>(index)]};
}

std::int64_t DerivedAlgebra::index_of(const Quad& quad) const {
  const int n = base_.order();
  for (Element v : {quad.a, quad.b, quad.c, quad.d})
    if (v < 0 || v >= n)
      fail(ErrorKind::InvalidArgument, "quadruple " + quad_str(quad) + " out of range");
  const std::int64_t index =
      (static_cast<std::int64_t>(quad.a) * n + quad.b) * n + quad.c;
  if (fourth_[static_cast<size_t>(index)] != quad.d)
    fail(ErrorKind::Domain, "quadruple " + quad_str(quad) + " is not a valid parallelogram (" +
                                "fourth vertex is " +
                                std::to_string(fourth_[static_cast<size_t>(index)]) + ")");
  return index;
}

std::int64_t DerivedAlgebra::product(std::int64_t i, std::int64_t j) const {
  if (table_) {
    if (i < 0 || i >= order_ || j < 0 || j >= order_)
      fail(ErrorKind::InvalidArgument, "derived index out of range");
    return table_->at(static_cast<Element>(i), static_cast<Element>(j));
  }
  const Quad x = quad_of(i);
  const Quad y = quad_of(j);
  const Quad prod{base_.at(x.a, y.a), base_.at(x.b, y.b), base_.at(x.c, y.c),
                  base_.at(x.d, y.d)};
  const std::int64_t k =
      (static_cast<std::int64_t>(prod.a) * base_.order() + prod.b) * base_.order() + prod.c;
  if (fourth_[static_cast<size_t>(k)] != prod.d)
    fail(ErrorKind::Internal, "closure violation: product quadruple " + quad_str(prod) +
                                  " is not a valid parallelogram");
  return k;
}

std::int64_t DerivedAlgebra::identity_index() const {
  const auto e = base_.left_identity();
  if (!e) fail(ErrorKind::Domain, "base table has no left identity");
  const int n = base_.order();
  const std::int64_t index = (static_cast<std::int64_t>(*e) * n + *e) * n + *e;
  if (fourth_[static_cast<size_t>(index)] != *e)
    fail(ErrorKind::Internal, "identity quadruple is not in the carrier");
  if (table_) {
    const auto derived_e = table_->left_identity();
    if (!derived_e || *derived_e != index)
      fail(ErrorKind::Internal, "derived table identity does not match the identity quadruple");
  }
  return index;
}

std::int64_t DerivedAlgebra::inverse(std::int64_t index) const {
  if (!base_ag_) fail(ErrorKind::Domain, "derived inverses need an AG-group base");
  const Quad q = quad_of(index);
  const Quad inv{base_inverse_[static_cast<size_t>(q.a)], base_inverse_[static_cast<size_t>(q.b)],
                 base_inverse_[static_cast<size_t>(q.c)], base_inverse_[static_cast<size_t>(q.d)]};
  const int n = base_.order();
  const std::int64_t k = (static_cast<std::int64_t>(inv.a) * n + inv.b) * n + inv.c;
  if (fourth_[static_cast<size_t>(k)] != inv.d)
    fail(ErrorKind::Domain, "componentwise inverse quadruple " + quad_str(inv) +
                                " is not a valid parallelogram");
  const std::int64_t e = identity_index();
  if (product(index, k) != e || product(k, index) != e)
    fail(ErrorKind::Internal, "inverse quadruple does not multiply to the identity quadruple");
  return k;
}

const CayleyTable& DerivedAlgebra::table() const {
  if (!table_)
    fail(ErrorKind::Domain, "derived table of order " + std::to_string(order_) +
                                " was not materialized; raise the max-order cap");
  return *table_;
}

std::string DerivedAlgebra::serialize() const {
  const CayleyTable& t = table();  // mapping block only makes sense alongside the table
  std::string out = "# parallelogram algebra of ";
  out += base_.name().empty() ? ("an order-" + std::to_string(base_.order()) + " base")
                              : base_.name();
  out += "\n# index = (a,b,c,d)\n";
  for (std::int64_t i = 0; i < order_; ++i)
    out += "# " + std::to_string(i) + " = " + quad_str(quad_of(i)) + "\n";
  out += t.serialize();
  return out;
}

DerivedAlgebra build_derived(const CayleyTable& base, const DerivedBuildOptions& options) {
  require_threads(options.threads);
  const ParSpace space(base);
  const int n = base.order();

  bool medial = space.is_ag_group();
  if (!medial) {
    const Preset* p = find_preset("medial");
    medial = check_preset(base, *p, options.threads).holds;
    if (!medial)
      fail(ErrorKind::Domain,
           "derived algebra needs an AG-group or medial quasigroup base");
  }

  DerivedAlgebra d;
  d.base_ = base;
  d.base_ag_ = space.is_ag_group();
  d.order_ = static_cast<std::int64_t>(n) * n * n;
  d.fourth_.resize(static_cast<size_t>(d.order_));

  // Carrier: unique fourth point per (a,b,c). On non-AG medial bases the
  // uniqueness scan doubles as the P4 check the build requires.
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        d.fourth_[(static_cast<size_t>(a) * n + b) * n + c] = space.fourth_vertex(a, b, c);

  if (d.base_ag_) {
    d.base_inverse_.resize(static_cast<size_t>(n));
    for (Element a = 0; a < n; ++a) d.base_inverse_[static_cast<size_t>(a)] = base.inverse(a);
  }

  if (d.order_ <= options.max_table_order) {
    const size_t m = static_cast<size_t>(d.order_);
    std::vector<Element> entries(m * m);
    std::atomic<std::int64_t> violation{-1};
    parallel_chunks(0, m, options.threads, [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t i = lo; i < hi; ++i) {
        const Element a1 = static_cast<Element>(i / (static_cast<std::uint64_t>(n) * n));
        const Element b1 = static_cast<Element>((i / n) % n);
        const Element c1 = static_cast<Element>(i % n);
        const Element d1 = d.fourth_[i];
        for (std::uint64_t j = 0; j < m; ++j) {
          const Element a2 = static_cast<Element>(j / (static_cast<std::uint64_t>(n) * n));
          const Element b2 = static_cast<Element>((j / n) % n);
          const Element c2 = static_cast<Element>(j % n);
          const std::uint64_t k =
              (static_cast<std::uint64_t>(base.at(a1, a2)) * n + base.at(b1, b2)) * n +
              base.at(c1, c2);
          if (d.fourth_[k] != base.at(d1, d.fourth_[j])) {
            std::int64_t expected = -1;
            violation.compare_exchange_strong(expected, static_cast<std::int64_t>(i));
            return;
          }
          entries[i * m + j] = static_cast<Element>(k);
        }
      }
    });
    if (violation.load() >= 0)
      fail(ErrorKind::Internal,
           "closure violation while populating the derived table (row " +
               std::to_string(violation.load()) + ")");
    d.table_.emplace(static_cast<int>(m), std::move(entries),
                     base.name().empty() ? "" : base.name() + ".par");
  }
  return d;
}

SampleCheck check_left_invertive_sampled(const DerivedAlgebra& d, std::uint64_t count,
                                         std::uint64_t seed, int threads) {
  require_threads(threads);
  SampleCheck result;
  result.checked = count;
  std::atomic<bool> ok{true};
  std::mutex mu;
  std::uint64_t best_index = UINT64_MAX;
  parallel_chunks(0, count, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::mt19937_64 rng(seed + lo);
    std::uniform_int_distribution<std::int64_t> dist(0, d.order() - 1);
    for (std::uint64_t i = lo; i < hi && ok.load(std::memory_order_relaxed); ++i) {
      const std::int64_t x = dist(rng), y = dist(rng), z = dist(rng);
      if (d.product(d.product(x, y), z) != d.product(d.product(z, y), x)) {
        ok.store(false);
        std::lock_guard<std::mutex> lock(mu);
        if (i < best_index) {
          best_index = i;
          result.counterexample = {x, y, z};
        }
        return;
      }
    }
  });
  result.ok = ok.load();
  return result;
}

bool check_identity_exhaustive(const DerivedAlgebra& d) {
  const std::int64_t e = d.identity_index();
  for (std::int64_t x = 0; x < d.order(); ++x)
    if (d.product(e, x) != x) return false;
  return true;
}

bool check_inverses_exhaustive(const DerivedAlgebra& d) {
  const std::int64_t e = d.identity_index();
  for (std::int64_t x = 0; x < d.order(); ++x) {
    const std::int64_t xi = d.inverse(x);
    if (d.product(x, xi) != e || d.product(xi, x) != e) return false;
  }
  return true;
}

bool check_left_invertive_over(const DerivedAlgebra& d, const std::vector<std::int64_t>& subset) {
  for (const std::int64_t x : subset)
    for (const std::int64_t y : subset)
      for (const std::int64_t z : subset)
        if (d.product(d.product(x, y), z) != d.product(d.product(z, y), x)) return false;
  return true;
}

bool check_medial_exhaustive(const DerivedAlgebra& d) {
  const std::int64_t m = d.order();
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b)
      for (std::int64_t c = 0; c < m; ++c)
        for (std::int64_t e = 0; e < m; ++e)
          if (d.product(d.product(a, b), d.product(c, e)) !=
              d.product(d.product(a, c), d.product(b, e)))
            return false;
  return true;
}

bool check_latin_exhaustive(const DerivedAlgebra& d) {
  const std::int64_t m = d.order();
  std::vector<char> seen(static_cast<size_t>(m));
  for (std::int64_t a = 0; a < m; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::int64_t b = 0; b < m; ++b) {
      const std::int64_t v = d.product(a, b);
      if (seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  for (std::int64_t b = 0; b < m; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::int64_t a = 0; a < m; ++a) {
      const std::int64_t v = d.product(a, b);
      if (seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  return true;
}

std::vector<std::int64_t> subalgebra_closure(const DerivedAlgebra& d,
                                             std::vector<std::int64_t> generators, size_t cap) {
  std::set<std::int64_t> closure(generators.begin(), generators.end());
  std::vector<std::int64_t> frontier(closure.begin(), closure.end());
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (const std::int64_t x : frontier)
      for (const std::int64_t y : std::vector<std::int64_t>(closure.begin(), closure.end())) {
        for (const std::int64_t p : {d.product(x, y), d.product(y, x)})
          if (closure.insert(p).second) {
            if (closure.size() > cap)
              fail(ErrorKind::Limit,
                   "subalgebra closure exceeded cap of " + std::to_string(cap));
            next.push_back(p);
          }
      }
    frontier = std::move(next);
  }
  return {closure.begin(), closure.end()};
}

}  // namespace agpar
