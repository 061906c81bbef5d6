#include "core/table.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace agpar {

namespace {

constexpr Element kNoSolution = -1;
constexpr Element kManySolutions = -2;
constexpr int kDivPrecomputeOrder = 64;

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

CayleyTable::CayleyTable(int order, std::vector<Element> entries, std::string name)
    : order_(order), entries_(std::move(entries)), name_(std::move(name)) {
  if (order_ < 1) fail(ErrorKind::InvalidArgument, "order must be >= 1");
  if (entries_.size() != static_cast<size_t>(order_) * order_)
    fail(ErrorKind::InvalidArgument, "entry count does not match order");
  for (Element v : entries_)
    if (v < 0 || v >= order_)
      fail(ErrorKind::InvalidArgument,
           "entry " + std::to_string(v) + " out of range [0," + std::to_string(order_) + ")");

  for (Element e = 0; e < order_; ++e) {
    bool id = true;
    for (Element x = 0; x < order_; ++x)
      if (at(e, x) != x) {
        id = false;
        break;
      }
    if (id) {
      left_identity_ = e;
      break;
    }
  }

  latin_ = true;
  std::vector<char> seen(static_cast<size_t>(order_));
  for (Element a = 0; a < order_ && latin_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Element b = 0; b < order_; ++b) {
      if (seen[at(a, b)]) {
        latin_ = false;
        break;
      }
      seen[at(a, b)] = 1;
    }
  }
  for (Element b = 0; b < order_ && latin_; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Element a = 0; a < order_; ++a) {
      if (seen[at(a, b)]) {
        latin_ = false;
        break;
      }
      seen[at(a, b)] = 1;
    }
  }

  if (order_ >= kDivPrecomputeOrder) {
    const size_t sz = static_cast<size_t>(order_) * order_;
    ldiv_.assign(sz, kNoSolution);
    rdiv_.assign(sz, kNoSolution);
    for (Element a = 0; a < order_; ++a)
      for (Element x = 0; x < order_; ++x) {
        Element& slot = ldiv_[static_cast<size_t>(a) * order_ + at(a, x)];
        slot = slot == kNoSolution ? x : kManySolutions;
      }
    for (Element a = 0; a < order_; ++a)
      for (Element y = 0; y < order_; ++y) {
        Element& slot = rdiv_[static_cast<size_t>(at(y, a)) * order_ + a];
        slot = slot == kNoSolution ? y : kManySolutions;
      }
  }
}

CayleyTable CayleyTable::parse(std::string_view text, std::string name) {
  // strip a UTF-8 BOM if present
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  struct Line {
    std::string_view body;
    int number;
  };
  std::vector<Line> lines;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    size_t first = raw.find_first_not_of(" \t");
    if (first != std::string_view::npos && raw[first] != '#')
      lines.push_back({raw, lineno});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  if (lines.empty()) fail(ErrorKind::Parse, "line 1: missing order header");

  auto parse_int = [](std::string_view tok, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      parse_fail(line, "'" + std::string(tok) + "' is not an integer");
    return value;
  };
  auto tokens = [](std::string_view body) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
      size_t j = i;
      while (j < body.size() && body[j] != ' ' && body[j] != '\t') ++j;
      if (j > i) out.push_back(body.substr(i, j - i));
      i = j;
    }
    return out;
  };

  const auto header_toks = tokens(lines[0].body);
  if (header_toks.size() != 1)
    parse_fail(lines[0].number, "order header must be a single integer");
  const int n = parse_int(header_toks[0], lines[0].number);
  if (n < 1) parse_fail(lines[0].number, "order must be a positive integer");

  if (lines.size() < static_cast<size_t>(n) + 1) {
    const int last = lines.back().number;
    parse_fail(last, "expected " + std::to_string(n) + " rows, found " +
                         std::to_string(lines.size() - 1));
  }
  if (lines.size() > static_cast<size_t>(n) + 1)
    parse_fail(lines[n + 1].number, "unexpected extra row");

  std::vector<Element> entries(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    const auto& row = lines[r + 1];
    const auto toks = tokens(row.body);
    if (toks.size() != static_cast<size_t>(n))
      parse_fail(row.number, "expected " + std::to_string(n) + " entries, found " +
                                 std::to_string(toks.size()));
    for (int c = 0; c < n; ++c) {
      const int v = parse_int(toks[c], row.number);
      if (v < 0 || v >= n)
        parse_fail(row.number,
                   "entry " + std::to_string(v) + " out of range [0," + std::to_string(n) + ")");
      entries[static_cast<size_t>(r) * n + c] = v;
    }
  }
  return CayleyTable(n, std::move(entries), std::move(name));
}

CayleyTable CayleyTable::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void CayleyTable::check_index(Element a, const char* role) const {
  if (a < 0 || a >= order_)
    fail(ErrorKind::InvalidArgument, std::string(role) + " index " + std::to_string(a) +
                                         " out of range [0," + std::to_string(order_) + ")");
}

Element CayleyTable::product(Element a, Element b) const {
  check_index(a, "left");
  check_index(b, "right");
  return at(a, b);
}

Element CayleyTable::left_divide(Element a, Element b) const {
  check_index(a, "left");
  check_index(b, "product");
  if (!ldiv_.empty()) {
    const Element x = ldiv_[static_cast<size_t>(a) * order_ + b];
    if (x == kNoSolution)
      fail(ErrorKind::Domain, "no x with " + std::to_string(a) + "*x = " + std::to_string(b) +
                                  " (row " + std::to_string(a) + " is not a permutation)");
    if (x == kManySolutions)
      fail(ErrorKind::Domain, "several x with " + std::to_string(a) + "*x = " +
                                  std::to_string(b) + " (row " + std::to_string(a) +
                                  " is not a permutation)");
    return x;
  }
  Element found = kNoSolution;
  for (Element x = 0; x < order_; ++x)
    if (at(a, x) == b) {
      if (found != kNoSolution)
        fail(ErrorKind::Domain, "several x with " + std::to_string(a) + "*x = " +
                                    std::to_string(b) + " (row " + std::to_string(a) +
                                    " is not a permutation)");
      found = x;
    }
  if (found == kNoSolution)
    fail(ErrorKind::Domain, "no x with " + std::to_string(a) + "*x = " + std::to_string(b) +
                                " (row " + std::to_string(a) + " is not a permutation)");
  return found;
}

Element CayleyTable::right_divide(Element b, Element a) const {
  check_index(b, "product");
  check_index(a, "right");
  if (!rdiv_.empty()) {
    const Element y = rdiv_[static_cast<size_t>(b) * order_ + a];
    if (y == kNoSolution)
      fail(ErrorKind::Domain, "no y with y*" + std::to_string(a) + " = " + std::to_string(b) +
                                  " (column " + std::to_string(a) + " is not a permutation)");
    if (y == kManySolutions)
      fail(ErrorKind::Domain, "several y with y*" + std::to_string(a) + " = " +
                                  std::to_string(b) + " (column " + std::to_string(a) +
                                  " is not a permutation)");
    return y;
  }
  Element found = kNoSolution;
  for (Element y = 0; y < order_; ++y)
    if (at(y, a) == b) {
      if (found != kNoSolution)
        fail(ErrorKind::Domain, "several y with y*" + std::to_string(a) + " = " +
                                    std::to_string(b) + " (column " + std::to_string(a) +
                                    " is not a permutation)");
      found = y;
    }
  if (found == kNoSolution)
    fail(ErrorKind::Domain, "no y with y*" + std::to_string(a) + " = " + std::to_string(b) +
                                " (column " + std::to_string(a) + " is not a permutation)");
  return found;
}

Element CayleyTable::inverse(Element a) const {
  check_index(a, "element");
  if (!left_identity_)
    fail(ErrorKind::Domain, "table has no left identity, inverses are undefined");
  const Element e = *left_identity_;
  for (Element x = 0; x < order_; ++x)
    if (at(a, x) == e) return x;
  fail(ErrorKind::Domain,
       "element " + std::to_string(a) + " has no inverse (row contains no identity)");
}

std::string CayleyTable::serialize() const {
  std::string out = std::to_string(order_);
  out += '\n';
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      if (b) out += ' ';
      out += std::to_string(at(a, b));
    }
    out += '\n';
  }
  return out;
}

CayleyTable table_from_rows(const std::vector<std::vector<Element>>& rows, std::string name) {
  const int n = static_cast<int>(rows.size());
  std::vector<Element> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (row.size() != static_cast<size_t>(n))
      fail(ErrorKind::InvalidArgument, "rows must form a square table");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return CayleyTable(n, std::move(entries), std::move(name));
}

CayleyTable cyclic_group_table(int order) {
  std::vector<Element> entries(static_cast<size_t>(order) * order);
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b)
      entries[static_cast<size_t>(a) * order + b] = (a + b) % order;
  return CayleyTable(order, std::move(entries), "Z" + std::to_string(order));
}

CayleyTable subtraction_table(int order) {
  std::vector<Element> entries(static_cast<size_t>(order) * order);
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b)
      entries[static_cast<size_t>(a) * order + b] = ((b - a) % order + order) % order;
  return CayleyTable(order, std::move(entries), "S" + std::to_string(order));
}

}  // namespace agpar
