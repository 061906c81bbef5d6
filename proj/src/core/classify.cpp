#include "core/classify.hpp"

#include "core/error.hpp"

namespace agpar {

namespace {

FlagResult from_preset(const CayleyTable& t, const char* key, int threads) {
  const Preset* p = find_preset(key);
  if (!p) fail(ErrorKind::Internal, std::string("missing preset ") + key);
  const PresetVerdict v = check_preset(t, *p, threads);
  FlagResult f;
  f.holds = v.holds;
  f.counterexample = v.counterexample;
  if (!v.holds) f.note = v.failed_source;
  return f;
}

FlagResult latin_check(const CayleyTable& t) {
  const int n = t.order();
  FlagResult f;
  f.holds = true;
  std::vector<Element> first(static_cast<size_t>(n));
  for (Element a = 0; a < n && f.holds; ++a) {
    std::fill(first.begin(), first.end(), -1);
    for (Element b = 0; b < n; ++b) {
      const Element v = t.at(a, b);
      if (first[v] >= 0) {
        f.holds = false;
        f.counterexample = Assignment{{'x', a}, {'y', first[v]}, {'z', b}};
        f.note = "row " + std::to_string(a) + " repeats " + std::to_string(v) +
                 " at columns y and z";
        break;
      }
      first[v] = b;
    }
  }
  for (Element b = 0; b < n && f.holds; ++b) {
    std::fill(first.begin(), first.end(), -1);
    for (Element a = 0; a < n; ++a) {
      const Element v = t.at(a, b);
      if (first[v] >= 0) {
        f.holds = false;
        f.counterexample = Assignment{{'x', first[v]}, {'y', a}, {'z', b}};
        f.note = "column " + std::to_string(b) + " repeats " + std::to_string(v) +
                 " at rows x and y";
        break;
      }
      first[v] = a;
    }
  }
  return f;
}

}  // namespace

StructureReport classify(const CayleyTable& t, int threads) {
  const int n = t.order();
  StructureReport r;
  r.order = n;
  r.table_name = t.name();
  r.left_identity = t.left_identity();

  r.is_quasigroup = latin_check(t);

  r.has_left_identity.holds = t.left_identity().has_value();
  if (!r.has_left_identity.holds) r.has_left_identity.note = "no identity row";

  for (Element f = 0; f < n && !r.has_right_identity.holds; ++f) {
    bool ok = true;
    for (Element x = 0; x < n; ++x)
      if (t.at(x, f) != x) {
        ok = false;
        break;
      }
    r.has_right_identity.holds = ok;
  }

  if (!t.left_identity()) {
    r.has_inverses.holds = false;
    r.has_inverses.note = "no left identity";
  } else {
    const Element e = *t.left_identity();
    r.has_inverses.holds = true;
    for (Element a = 0; a < n; ++a) {
      bool found = false;
      for (Element x = 0; x < n; ++x)
        if (t.at(a, x) == e) {
          found = true;
          break;
        }
      if (!found) {
        r.has_inverses.holds = false;
        r.has_inverses.counterexample = Assignment{{'a', a}};
        r.has_inverses.note = "row a contains no identity";
        break;
      }
    }
  }

  r.is_left_invertive = from_preset(t, "left-invertive", threads);
  r.is_medial = from_preset(t, "medial", threads);
  r.is_paramedial = from_preset(t, "paramedial", threads);
  r.is_commutative = from_preset(t, "commutative", threads);
  r.is_associative = from_preset(t, "associative", threads);
  r.is_idempotent = from_preset(t, "idempotent", threads);

  r.is_ag_groupoid = r.is_left_invertive;

  auto conjunction = [](std::initializer_list<std::pair<const FlagResult*, const char*>> parts) {
    FlagResult out;
    out.holds = true;
    for (const auto& [flag, name] : parts)
      if (!flag->holds) {
        out.holds = false;
        if (!out.note.empty()) out.note += ", ";
        out.note += name;
      }
    if (!out.note.empty()) out.note = "fails: " + out.note;
    return out;
  };
  r.is_ag_group = conjunction({{&r.is_quasigroup, "is_quasigroup"},
                               {&r.has_left_identity, "has_left_identity"},
                               {&r.has_inverses, "has_inverses"},
                               {&r.is_left_invertive, "is_left_invertive"}});
  r.is_abelian_group = conjunction({{&r.is_quasigroup, "is_quasigroup"},
                                    {&r.has_left_identity, "has_left_identity"},
                                    {&r.has_inverses, "has_inverses"},
                                    {&r.is_commutative, "is_commutative"},
                                    {&r.is_associative, "is_associative"}});
  return r;
}

std::vector<SuiteEntry> pre_l1_suite(const CayleyTable& t, int threads) {
  static const char* kItems[] = {"preL1.i",   "preL1.ii",  "preL1.iii", "preL1.iv",
                                 "preL1.v",   "preL1.vi",  "preL1.vii", "preL1.viii",
                                 "preL1.ix",  "preL1.x",   "preL1.xi",  "preL1.xii",
                                 "preL1.xiii"};
  std::vector<SuiteEntry> out;
  out.reserve(13);
  for (const char* key : kItems) {
    SuiteEntry entry;
    entry.key = key;
    try {
      const Preset* p = find_preset(key);
      const PresetVerdict v = check_preset(t, *p, threads);
      if (v.holds) {
        entry.status = SuiteEntry::Status::Holds;
      } else {
        entry.status = SuiteEntry::Status::Fails;
        entry.counterexample = v.counterexample;
        entry.message = v.failed_source;
      }
    } catch (const Error& err) {
      entry.status = SuiteEntry::Status::Error;
      entry.message = err.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

namespace {

nlohmann::ordered_json flag_json(const FlagResult& f) {
  nlohmann::ordered_json j;
  j["holds"] = f.holds;
  if (f.counterexample) {
    nlohmann::ordered_json cex;
    for (const auto& [var, value] : *f.counterexample) cex[std::string(1, var)] = value;
    j["counterexample"] = std::move(cex);
  }
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const StructureReport& r) {
  nlohmann::ordered_json j;
  j["order"] = r.order;
  if (!r.table_name.empty()) j["name"] = r.table_name;
  if (r.left_identity)
    j["left_identity"] = *r.left_identity;
  else
    j["left_identity"] = nullptr;
  nlohmann::ordered_json flags;
  flags["is_quasigroup"] = flag_json(r.is_quasigroup);
  flags["has_left_identity"] = flag_json(r.has_left_identity);
  flags["has_right_identity"] = flag_json(r.has_right_identity);
  flags["has_inverses"] = flag_json(r.has_inverses);
  flags["is_left_invertive"] = flag_json(r.is_left_invertive);
  flags["is_medial"] = flag_json(r.is_medial);
  flags["is_paramedial"] = flag_json(r.is_paramedial);
  flags["is_commutative"] = flag_json(r.is_commutative);
  flags["is_associative"] = flag_json(r.is_associative);
  flags["is_idempotent"] = flag_json(r.is_idempotent);
  flags["is_ag_groupoid"] = flag_json(r.is_ag_groupoid);
  flags["is_ag_group"] = flag_json(r.is_ag_group);
  flags["is_abelian_group"] = flag_json(r.is_abelian_group);
  j["flags"] = std::move(flags);
  return j;
}

nlohmann::ordered_json to_json(const std::vector<SuiteEntry>& suite) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& entry : suite) {
    nlohmann::ordered_json j;
    j["name"] = entry.key;
    switch (entry.status) {
      case SuiteEntry::Status::Holds:
        j["status"] = "holds";
        break;
      case SuiteEntry::Status::Fails:
        j["status"] = "fails";
        break;
      case SuiteEntry::Status::Error:
        j["status"] = "error";
        break;
    }
    if (entry.counterexample) {
      nlohmann::ordered_json cex;
      for (const auto& [var, value] : *entry.counterexample) cex[std::string(1, var)] = value;
      j["counterexample"] = std::move(cex);
    }
    if (!entry.message.empty()) j["message"] = entry.message;
    items.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["items"] = std::move(items);
  return out;
}

}  // namespace agpar
