#include "core/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "core/error.hpp"

namespace agpar {

ModelClass model_class_from_string(std::string_view name) {
  if (name == "quasigroup") return ModelClass::Quasigroup;
  if (name == "medial-quasigroup") return ModelClass::MedialQuasigroup;
  if (name == "ag-group") return ModelClass::AgGroup;
  if (name == "abelian-group") return ModelClass::AbelianGroup;
  fail(ErrorKind::InvalidArgument,
       "unknown class '" + std::string(name) +
           "' (expected quasigroup|medial-quasigroup|ag-group|abelian-group)");
}

const char* to_string(ModelClass cls) {
  switch (cls) {
    case ModelClass::Quasigroup:
      return "quasigroup";
    case ModelClass::MedialQuasigroup:
      return "medial-quasigroup";
    case ModelClass::AgGroup:
      return "ag-group";
    case ModelClass::AbelianGroup:
      return "abelian-group";
  }
  return "?";
}

int default_order_bound(ModelClass cls) {
  switch (cls) {
    case ModelClass::Quasigroup:
    case ModelClass::MedialQuasigroup:
      return 5;
    case ModelClass::AgGroup:
    case ModelClass::AbelianGroup:
      return 8;
  }
  return 0;
}

namespace {

constexpr Element kUnknown = -1;

// Cell-by-cell backtracking with Latin masks and per-class unit propagation:
// each constraint instance whose cells are known up to one is either checked
// or has its last cell forced, cascading through assign().
class ModelSearch {
 public:
  ModelSearch(int n, ModelClass cls, bool pinned_identity)
      : n_(n), cls_(cls), pinned_(pinned_identity) {
    cells_.assign(static_cast<size_t>(n_) * n_, kUnknown);
    rowmask_.assign(static_cast<size_t>(n_), 0);
    colmask_.assign(static_cast<size_t>(n_), 0);
    occ_.assign(static_cast<size_t>(n_), {});
  }

  bool seed(int r, int c, Element v) { return assign(r * n_ + c, v); }

  bool seed_identity_row() {
    for (Element j = 0; j < n_; ++j)
      if (!assign(j, j)) return false;
    return true;
  }

  void run(const std::function<void(const std::vector<Element>&)>& sink) {
    descend(0, sink);
  }

 private:
  Element cell(int r, int c) const { return cells_[static_cast<size_t>(r) * n_ + c]; }

  bool assign(int pos, Element v) {
    if (cells_[static_cast<size_t>(pos)] != kUnknown)
      return cells_[static_cast<size_t>(pos)] == v;
    const int r = pos / n_, c = pos % n_;
    const std::uint32_t bit = 1u << v;
    if ((rowmask_[static_cast<size_t>(r)] & bit) || (colmask_[static_cast<size_t>(c)] & bit))
      return false;
    cells_[static_cast<size_t>(pos)] = v;
    rowmask_[static_cast<size_t>(r)] |= bit;
    colmask_[static_cast<size_t>(c)] |= bit;
    occ_[static_cast<size_t>(v)].push_back(pos);
    trail_.push_back(pos);
    switch (cls_) {
      case ModelClass::Quasigroup:
        return true;
      case ModelClass::MedialQuasigroup:
        return propagate_medial(r, c, v);
      case ModelClass::AgGroup:
        return propagate_lil(r, c, v);
      case ModelClass::AbelianGroup:
        return propagate_comm(r, c, v) && propagate_assoc(r, c, v);
    }
    return true;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      const int pos = trail_.back();
      trail_.pop_back();
      const Element v = cells_[static_cast<size_t>(pos)];
      cells_[static_cast<size_t>(pos)] = kUnknown;
      rowmask_[static_cast<size_t>(pos / n_)] &= ~(1u << v);
      colmask_[static_cast<size_t>(pos % n_)] &= ~(1u << v);
      occ_[static_cast<size_t>(v)].pop_back();
    }
  }

  // (x*y)*z = (z*y)*x with x*y = u and z*y = t: check or force the outer pair.
  bool lil_outer(Element u, Element z, Element t, Element x) {
    const int pb = u * n_ + z, pd = t * n_ + x;
    const Element vb = cells_[static_cast<size_t>(pb)], vd = cells_[static_cast<size_t>(pd)];
    if (vb != kUnknown && vd != kUnknown) return vb == vd;
    if (vb != kUnknown) return assign(pd, vb);
    if (vd != kUnknown) return assign(pb, vd);
    return true;
  }

  bool propagate_lil(int r, int c, Element v) {
    // as inner-left (x,y)=(r,c)
    for (Element z = 0; z < n_; ++z) {
      const Element t = cell(z, c);
      if (t != kUnknown && !lil_outer(v, z, t, r)) return false;
    }
    // as inner-right (z,y)=(r,c)
    for (Element x = 0; x < n_; ++x) {
      const Element u = cell(x, c);
      if (u != kUnknown && !lil_outer(u, r, v, x)) return false;
    }
    // as outer-left cell (u,z)=(r,c): pairs with value u=r give the inner-left cell
    auto& as_value_r = occ_[static_cast<size_t>(r)];
    for (size_t i = 0; i < as_value_r.size(); ++i) {
      const int p = as_value_r[i];
      const int x = p / n_, y = p % n_;
      const Element t = cell(c, y);
      if (t != kUnknown && !lil_outer(r, c, t, x)) return false;
    }
    // as outer-right cell (t,x)=(r,c): pairs with value t=r give the inner-right cell
    for (size_t i = 0; i < as_value_r.size(); ++i) {
      const int p = as_value_r[i];
      const int z = p / n_, y = p % n_;
      const Element u = cell(c, y);
      if (u != kUnknown && !lil_outer(u, z, r, c)) return false;
    }
    return true;
  }

  // (a*b)*(c*d) = (a*c)*(b*d): check or force the outer pair.
  bool medial_outer(Element u1, Element u2, Element w1, Element w2) {
    const int p1 = u1 * n_ + u2, p2 = w1 * n_ + w2;
    const Element v1 = cells_[static_cast<size_t>(p1)], v2 = cells_[static_cast<size_t>(p2)];
    if (v1 != kUnknown && v2 != kUnknown) return v1 == v2;
    if (v1 != kUnknown) return assign(p2, v1);
    if (v2 != kUnknown) return assign(p1, v2);
    return true;
  }

  bool propagate_medial(int r, int c, Element v) {
    for (Element c2 = 0; c2 < n_; ++c2)
      for (Element d = 0; d < n_; ++d) {
        // as (a,b)=(r,c)
        {
          const Element u2 = cell(c2, d), w1 = cell(r, c2), w2 = cell(c, d);
          if (u2 != kUnknown && w1 != kUnknown && w2 != kUnknown &&
              !medial_outer(v, u2, w1, w2))
            return false;
        }
        // as (c,d)=(r,c) with (a,b)=(c2,d)
        {
          const Element u1 = cell(c2, d), w1 = cell(c2, r), w2 = cell(d, c);
          if (u1 != kUnknown && w1 != kUnknown && w2 != kUnknown &&
              !medial_outer(u1, v, w1, w2))
            return false;
        }
        // as (a,c)=(r,c) with (b,d)=(c2,d)
        {
          const Element u1 = cell(r, c2), u2 = cell(c, d), w2 = cell(c2, d);
          if (u1 != kUnknown && u2 != kUnknown && w2 != kUnknown &&
              !medial_outer(u1, u2, v, w2))
            return false;
        }
        // as (b,d)=(r,c) with (a,c)=(c2,d)
        {
          const Element u1 = cell(c2, r), u2 = cell(d, c), w1 = cell(c2, d);
          if (u1 != kUnknown && u2 != kUnknown && w1 != kUnknown &&
              !medial_outer(u1, u2, w1, v))
            return false;
        }
      }
    // as the left outer cell (u1,u2)=(r,c)
    auto& lhs_pairs = occ_[static_cast<size_t>(r)];
    auto& rhs_pairs = occ_[static_cast<size_t>(c)];
    for (size_t i = 0; i < lhs_pairs.size(); ++i)
      for (size_t j = 0; j < rhs_pairs.size(); ++j) {
        const int pa = lhs_pairs[i], pc = rhs_pairs[j];
        const Element a = pa / n_, b = pa % n_, c2 = pc / n_, d = pc % n_;
        const Element w1 = cell(a, c2), w2 = cell(b, d);
        if (w1 != kUnknown && w2 != kUnknown && !medial_outer(r, c, w1, w2)) return false;
      }
    // as the right outer cell (w1,w2)=(r,c)
    for (size_t i = 0; i < lhs_pairs.size(); ++i)
      for (size_t j = 0; j < rhs_pairs.size(); ++j) {
        const int p1 = lhs_pairs[i], p2 = rhs_pairs[j];
        const Element a = p1 / n_, c2 = p1 % n_, b = p2 / n_, d = p2 % n_;
        const Element u1 = cell(a, b), u2 = cell(c2, d);
        if (u1 != kUnknown && u2 != kUnknown && !medial_outer(u1, u2, r, c)) return false;
      }
    return true;
  }

  bool propagate_comm(int r, int c, Element v) {
    if (r == c) return true;
    const Element mirror = cell(c, r);
    if (mirror != kUnknown) return mirror == v;
    return assign(c * n_ + r, v);
  }

  // (x*y)*z = x*(y*z) with x*y = p and y*z = q: check or force the outer pair.
  bool assoc_outer(Element p, Element z, Element q, Element x) {
    const int pq = p * n_ + z, ps = x * n_ + q;
    const Element vq = cells_[static_cast<size_t>(pq)], vs = cells_[static_cast<size_t>(ps)];
    if (vq != kUnknown && vs != kUnknown) return vq == vs;
    if (vq != kUnknown) return assign(ps, vq);
    if (vs != kUnknown) return assign(pq, vs);
    return true;
  }

  bool propagate_assoc(int r, int c, Element v) {
    // as (x,y)=(r,c)
    for (Element z = 0; z < n_; ++z) {
      const Element q = cell(c, z);
      if (q != kUnknown && !assoc_outer(v, z, q, r)) return false;
    }
    // as (y,z)=(r,c)
    for (Element x = 0; x < n_; ++x) {
      const Element p = cell(x, r);
      if (p != kUnknown && !assoc_outer(p, c, v, x)) return false;
    }
    // as the (x*y)*z cell (p,z)=(r,c)
    auto& as_value_r = occ_[static_cast<size_t>(r)];
    for (size_t i = 0; i < as_value_r.size(); ++i) {
      const int p = as_value_r[i];
      const int x = p / n_, y = p % n_;
      const Element q = cell(y, c);
      if (q != kUnknown && !assoc_outer(r, c, q, x)) return false;
    }
    // as the x*(y*z) cell (x,q)=(r,c)
    auto& as_value_c = occ_[static_cast<size_t>(c)];
    for (size_t i = 0; i < as_value_c.size(); ++i) {
      const int p = as_value_c[i];
      const int y = p / n_, z = p % n_;
      const Element u = cell(r, y);
      if (u != kUnknown && !assoc_outer(u, z, c, r)) return false;
    }
    return true;
  }

  bool leaf_ok() const {
    if (pinned_) return true;
    if (cls_ == ModelClass::AgGroup || cls_ == ModelClass::AbelianGroup) {
      // Left identity must exist; inverses follow from the Latin rows.
      for (Element e = 0; e < n_; ++e) {
        bool id = true;
        for (Element x = 0; x < n_; ++x)
          if (cell(e, x) != x) {
            id = false;
            break;
          }
        if (id) return true;
      }
      return false;
    }
    return true;
  }

  void descend(int from, const std::function<void(const std::vector<Element>&)>& sink) {
    int pos = -1;
    for (int i = from; i < n_ * n_; ++i)
      if (cells_[static_cast<size_t>(i)] == kUnknown) {
        pos = i;
        break;
      }
    if (pos < 0) {
      if (leaf_ok()) sink(cells_);
      return;
    }
    const int r = pos / n_, c = pos % n_;
    for (Element v = 0; v < n_; ++v) {
      const std::uint32_t bit = 1u << v;
      if ((rowmask_[static_cast<size_t>(r)] & bit) || (colmask_[static_cast<size_t>(c)] & bit))
        continue;
      const size_t mark = trail_.size();
      if (assign(pos, v)) descend(pos + 1, sink);
      undo_to(mark);
    }
  }

  int n_;
  ModelClass cls_;
  bool pinned_;
  std::vector<Element> cells_;
  std::vector<std::uint32_t> rowmask_, colmask_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> trail_;
};

}  // namespace

EnumerationResult enumerate_models(const SearchSpec& spec) {
  const int n = spec.order;
  if (n < 1) fail(ErrorKind::InvalidArgument, "order must be >= 1");
  if (n > 31) fail(ErrorKind::Limit, "orders beyond 31 are unsupported");
  if (n > default_order_bound(spec.cls) && !spec.force)
    fail(ErrorKind::Limit, "order " + std::to_string(n) + " exceeds the default bound " +
                               std::to_string(default_order_bound(spec.cls)) + " for class " +
                               to_string(spec.cls) + "; pass force to override");

  const bool pinned =
      spec.up_to_iso && (spec.cls == ModelClass::AgGroup || spec.cls == ModelClass::AbelianGroup);

  ModelSearch search(n, spec.cls, pinned);
  bool feasible = true;
  if (pinned) feasible = search.seed_identity_row();
  for (const auto& [r, c, v] : spec.seed) {
    if (!feasible) break;
    if (r < 0 || r >= n || c < 0 || c >= n || v < 0 || v >= n)
      fail(ErrorKind::InvalidArgument, "seed cell out of range");
    feasible = search.seed(r, c, v);
  }

  EnumerationResult result;
  std::uint64_t found = 0;
  std::set<std::vector<Element>> canonical_set;
  if (feasible) {
    search.run([&](const std::vector<Element>& cells) {
      ++found;
      if (spec.up_to_iso) {
        CayleyTable t(n, cells);
        canonical_set.insert(canonical_form(t, spec.force).table.entries());
      } else {
        result.models.emplace_back(n, cells);
      }
    });
  }
  if (!pinned) result.labeled_count = found;
  if (spec.up_to_iso)
    for (const auto& entries : canonical_set) result.models.emplace_back(n, entries);
  return result;
}

namespace {

// Direct-loop axiom checks on a raw table; deliberately independent of the
// identity engine and the classifier.
bool raw_latin(const std::vector<Element>& t, int n) {
  std::vector<char> seen(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      const Element v = t[static_cast<size_t>(a) * n + b];
      if (seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      const Element v = t[static_cast<size_t>(a) * n + b];
      if (seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  return true;
}

int raw_left_identity(const std::vector<Element>& t, int n) {
  for (int e = 0; e < n; ++e) {
    bool id = true;
    for (int x = 0; x < n; ++x)
      if (t[static_cast<size_t>(e) * n + x] != x) {
        id = false;
        break;
      }
    if (id) return e;
  }
  return -1;
}

bool raw_class_check(const std::vector<Element>& t, int n, ModelClass cls) {
  auto mul = [&](Element a, Element b) { return t[static_cast<size_t>(a) * n + b]; };
  if (!raw_latin(t, n)) return false;
  switch (cls) {
    case ModelClass::Quasigroup:
      return true;
    case ModelClass::MedialQuasigroup: {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          for (Element c = 0; c < n; ++c)
            for (Element d = 0; d < n; ++d)
              if (mul(mul(a, b), mul(c, d)) != mul(mul(a, c), mul(b, d))) return false;
      return true;
    }
    case ModelClass::AgGroup: {
      const int e = raw_left_identity(t, n);
      if (e < 0) return false;
      for (Element a = 0; a < n; ++a) {
        bool inv = false;
        for (Element x = 0; x < n; ++x)
          if (mul(a, x) == e) {
            inv = true;
            break;
          }
        if (!inv) return false;
      }
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          for (Element z = 0; z < n; ++z)
            if (mul(mul(x, y), z) != mul(mul(z, y), x)) return false;
      return true;
    }
    case ModelClass::AbelianGroup: {
      const int e = raw_left_identity(t, n);
      if (e < 0) return false;
      for (Element a = 0; a < n; ++a) {
        bool inv = false;
        for (Element x = 0; x < n; ++x)
          if (mul(a, x) == e) {
            inv = true;
            break;
          }
        if (!inv) return false;
      }
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (mul(x, y) != mul(y, x)) return false;
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          for (Element z = 0; z < n; ++z)
            if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

EnumerationResult naive_oracle(int order, ModelClass cls) {
  if (order < 1) fail(ErrorKind::InvalidArgument, "order must be >= 1");
  if (order > 3)
    fail(ErrorKind::Limit, "naive oracle is capped at order 3 (n^(n^2) tables)");
  const int n = order;
  const size_t cells = static_cast<size_t>(n) * n;
  std::vector<Element> t(cells, 0);

  EnumerationResult result;
  result.labeled_count = 0;
  std::set<std::vector<Element>> canonical_set;
  for (;;) {
    if (raw_class_check(t, n, cls)) {
      ++*result.labeled_count;
      CayleyTable table(n, t);
      canonical_set.insert(canonical_form(table).table.entries());
    }
    // odometer over all function tables
    size_t i = cells;
    while (i > 0) {
      --i;
      if (++t[i] < n) break;
      t[i] = 0;
    }
    if (i == 0 && t[0] == 0) break;
  }
  for (const auto& entries : canonical_set) result.models.emplace_back(n, entries);
  return result;
}

CanonicalForm canonical_form(const CayleyTable& table, bool force) {
  const int n = table.order();
  if (n > 8 && !force)
    fail(ErrorKind::Limit, "canonical form of order " + std::to_string(n) +
                               " needs " + std::to_string(n) +
                               "! permutations; pass force to override");

  std::vector<Element> identities;
  for (Element e = 0; e < n; ++e) {
    bool id = true;
    for (Element x = 0; x < n; ++x)
      if (table.at(e, x) != x) {
        id = false;
        break;
      }
    if (id) identities.push_back(e);
  }

  std::vector<Element> best;
  std::vector<Element> best_perm;
  std::vector<Element> perm(static_cast<size_t>(n)), pinv(static_cast<size_t>(n));
  std::vector<Element> candidate(static_cast<size_t>(n) * n);

  auto consider = [&](const std::vector<Element>& p) {
    for (int i = 0; i < n; ++i) pinv[static_cast<size_t>(p[static_cast<size_t>(i)])] = i;
    if (best.empty()) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          candidate[static_cast<size_t>(i) * n + j] =
              p[static_cast<size_t>(table.at(pinv[static_cast<size_t>(i)],
                                             pinv[static_cast<size_t>(j)]))];
      best = candidate;
      best_perm = p;
      return;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const size_t idx = static_cast<size_t>(i) * n + j;
        const Element val = p[static_cast<size_t>(
            table.at(pinv[static_cast<size_t>(i)], pinv[static_cast<size_t>(j)]))];
        if (val > best[idx]) return;
        if (val < best[idx]) {
          // strictly better: materialize the full relabeling
          std::copy(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(idx),
                    candidate.begin());
          candidate[idx] = val;
          for (size_t rest = idx + 1; rest < candidate.size(); ++rest) {
            const int ri = static_cast<int>(rest) / n, rj = static_cast<int>(rest) % n;
            candidate[rest] = p[static_cast<size_t>(
                table.at(pinv[static_cast<size_t>(ri)], pinv[static_cast<size_t>(rj)]))];
          }
          best = candidate;
          best_perm = p;
          return;
        }
      }
  };

  if (identities.empty()) {
    std::vector<Element> values(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<size_t>(i)] = i;
    do {
      consider(values);
    } while (std::next_permutation(values.begin(), values.end()));
  } else {
    std::vector<Element> rest_values(static_cast<size_t>(n - 1));
    for (const Element e : identities) {
      for (int i = 0, v = 1; i < n - 1; ++i, ++v) rest_values[static_cast<size_t>(i)] = v;
      std::vector<int> rest_positions;
      rest_positions.reserve(static_cast<size_t>(n - 1));
      for (int p = 0; p < n; ++p)
        if (p != e) rest_positions.push_back(p);
      do {
        perm[static_cast<size_t>(e)] = 0;
        for (size_t i = 0; i < rest_positions.size(); ++i)
          perm[static_cast<size_t>(rest_positions[i])] = rest_values[i];
        consider(perm);
      } while (std::next_permutation(rest_values.begin(), rest_values.end()));
    }
  }

  return CanonicalForm{CayleyTable(n, std::move(best), table.name()), std::move(best_perm)};
}

}  // namespace agpar
