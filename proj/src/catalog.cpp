#include "nalin/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "nalin/error.hpp"

namespace nalin {

namespace {

constexpr std::size_t kMaxCatalogOrder = 1000;

std::string cycle_label(const Permutation& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      out += std::to_string(j);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

bool is_even(const Permutation& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

Permutation cycle(int degree, std::initializer_list<int> points) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  const std::vector<int> pts(points);
  for (std::size_t k = 0; k < pts.size(); ++k)
    p[static_cast<std::size_t>(pts[k])] = pts[(k + 1) % pts.size()];
  return p;
}

/// Permutation groups: elements in lexicographic order of one-line notation
/// (identity first), product (p*q)(i) = p(q(i)).
CatalogGroup permutation_group(int degree, bool alternating) {
  CatalogGroup cg;
  cg.kind = alternating ? CatalogGroup::Kind::Alternating : CatalogGroup::Kind::Symmetric;
  cg.degree = degree;
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  do {
    if (!alternating || is_even(p)) cg.perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<Permutation, ElementId> index;
  for (std::size_t i = 0; i < cg.perms.size(); ++i)
    index.emplace(cg.perms[i], static_cast<ElementId>(i));
  const std::size_t n = cg.perms.size();
  std::vector<ElementId> table(n * n);
  Permutation r(static_cast<std::size_t>(degree));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = cg.perms[a][static_cast<std::size_t>(cg.perms[b][i])];
      table[a * n + b] = index.at(r);
    }
  std::vector<std::string> labels;
  for (const auto& q : cg.perms) labels.push_back(cycle_label(q));
  const std::string name = (alternating ? "A" : "S") + std::to_string(degree);
  cg.group = std::make_shared<const FiniteGroup>(name, n, std::move(table), std::move(labels));

  if (alternating) {
    for (int k = 2; k < degree; ++k) cg.generators.push_back(index.at(cycle(degree, {0, 1, k})));
  } else if (degree > 1) {
    cg.generators.push_back(index.at(cycle(degree, {0, 1})));
    Permutation full(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) full[static_cast<std::size_t>(i)] = (i + 1) % degree;
    cg.generators.push_back(index.at(full));
  }
  return cg;
}

/// Groups <a, b | a^4, b^2 = a^(2*twist), b a b^-1 = a^-1>; element a^i b^j has id i + 4j.
/// twist = 0 gives D4, twist = 1 gives Q8.
CatalogGroup metacyclic_order8(bool quaternion) {
  CatalogGroup cg;
  cg.kind = quaternion ? CatalogGroup::Kind::Quaternion : CatalogGroup::Kind::Dihedral4;
  cg.degree = 4;
  std::vector<ElementId> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int i = x % 4, j = x / 4, k = y % 4, l = y / 4;
      int a = i + (j ? -k : k);
      int b = j + l;
      if (b == 2) {
        b = 0;
        if (quaternion) a += 2;
      }
      a = ((a % 4) + 4) % 4;
      table[static_cast<std::size_t>(x * 8 + y)] = static_cast<ElementId>(a + 4 * b);
    }
  std::vector<std::string> labels{"e", "a", "a2", "a3", "b", "ab", "a2b", "a3b"};
  cg.group = std::make_shared<const FiniteGroup>(quaternion ? "Q8" : "D4", 8, std::move(table),
                                                 std::move(labels));
  cg.generators = {1, 4};
  return cg;
}

CatalogGroup cyclic(std::size_t n) {
  CatalogGroup cg;
  cg.kind = CatalogGroup::Kind::Cyclic;
  cg.degree = static_cast<int>(n);
  std::vector<ElementId> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<ElementId>((a + b) % n);
  cg.group = std::make_shared<const FiniteGroup>("Z" + std::to_string(n), n, std::move(table));
  if (n > 1) cg.generators = {1};
  return cg;
}

CatalogGroup base_group(std::string_view name) {
  if (name == "S3") return permutation_group(3, false);
  if (name == "S4") return permutation_group(4, false);
  if (name == "A4") return permutation_group(4, true);
  if (name == "A5") return permutation_group(5, true);
  if (name == "D4") return metacyclic_order8(false);
  if (name == "Q8") return metacyclic_order8(true);
  if (name.size() >= 2 && name.front() == 'Z') {
    std::size_t n = 0;
    const auto digits = name.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 1 &&
        n <= kMaxCatalogOrder)
      return cyclic(n);
  }
  throw Error(ErrorCode::UnknownGroup, "unknown group '" + std::string(name) + "'");
}

CatalogGroup product(CatalogGroup left, CatalogGroup right) {
  CatalogGroup cg;
  cg.kind = CatalogGroup::Kind::Product;
  cg.group = direct_product(left.group, right.group);
  const auto n2 = static_cast<ElementId>(right.group->order());
  for (ElementId g : left.generators) cg.generators.push_back(g * n2);
  for (ElementId h : right.generators) cg.generators.push_back(h);
  cg.factors.push_back(std::move(left));
  cg.factors.push_back(std::move(right));
  return cg;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

CatalogGroup build_catalog_group(std::string_view name) {
  // Split on U+00D7, 'x' or '*'; products associate to the left.
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < name.size();) {
    std::size_t width = 0;
    if (name.compare(i, 2, "\xC3\x97") == 0) width = 2;
    else if (name[i] == 'x' || name[i] == '*') width = 1;
    if (width) {
      parts.push_back(trim(name.substr(start, i - start)));
      i += width;
      start = i;
    } else {
      ++i;
    }
  }
  parts.push_back(trim(name.substr(start)));

  CatalogGroup acc = base_group(parts.front());
  for (std::size_t k = 1; k < parts.size(); ++k) {
    acc = product(std::move(acc), base_group(parts[k]));
    if (acc.group->order() > kMaxCatalogOrder)
      throw Error(ErrorCode::UnknownGroup, "catalog products are limited to order 1000");
  }
  return acc;
}

std::vector<std::string> catalog_base_names() {
  return {"Z{n}", "S3", "S4", "A4", "A5", "D4", "Q8"};
}

}  // namespace nalin
