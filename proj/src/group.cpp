#include "nalin/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "nalin/catalog.hpp"
#include "nalin/error.hpp"
#include "nalin/random.hpp"

namespace nalin {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NonAbelian: return "NonAbelian";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvariantFailure: return "InvariantFailure";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NoPartner: return "NoPartner";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::MeanNotZero: return "MeanNotZero";
    case ErrorCode::NotFolded: return "NotFolded";
    case ErrorCode::DimOne: return "DimOne";
    case ErrorCode::TooManyDistinctVars: return "TooManyDistinctVars";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

constexpr std::size_t kExhaustiveAssociativityLimit = 200;
constexpr std::size_t kSampledTriples = 1'000'000;
constexpr std::uint64_t kAssociativitySeed = 0x61737363ULL;

[[noreturn]] void invalid(const std::string& name, const std::string& why) {
  throw Error(ErrorCode::InvalidGroup, name + ": " + why);
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<ElementId> table,
                         std::vector<std::string> labels)
    : name_(std::move(name)), order_(order), table_(std::move(table)), labels_(std::move(labels)) {
  if (order_ == 0) invalid(name_, "order must be positive");
  if (table_.size() != order_ * order_) invalid(name_, "table is not order x order");
  for (ElementId v : table_)
    if (v >= order_) invalid(name_, "table entry out of range");

  for (ElementId a = 0; a < order_; ++a) {
    if (mul(kIdentity, a) != a || mul(a, kIdentity) != a)
      invalid(name_, "element 0 is not the identity");
  }

  // Latin square: every row and every column is a permutation.
  std::vector<char> seen(order_);
  for (ElementId a = 0; a < order_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (ElementId b = 0; b < order_; ++b) {
      if (seen[mul(a, b)]++) invalid(name_, "row " + std::to_string(a) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (ElementId b = 0; b < order_; ++b) {
      if (seen[mul(b, a)]++)
        invalid(name_, "column " + std::to_string(a) + " is not a permutation");
    }
  }

  inverse_.assign(order_, 0);
  for (ElementId a = 0; a < order_; ++a) {
    auto r = row(a);
    auto it = std::find(r.begin(), r.end(), kIdentity);
    const auto b = static_cast<ElementId>(it - r.begin());
    if (mul(b, a) != kIdentity) invalid(name_, "left and right inverses differ");
    inverse_[a] = b;
  }

  auto check = [&](ElementId a, ElementId b, ElementId c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
      invalid(name_, "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                         "," + std::to_string(c) + ")");
    }
  };
  if (order_ <= kExhaustiveAssociativityLimit) {
    for (ElementId a = 0; a < order_; ++a)
      for (ElementId b = 0; b < order_; ++b)
        for (ElementId c = 0; c < order_; ++c) check(a, b, c);
  } else {
    Rng rng(kAssociativitySeed);
    for (std::size_t t = 0; t < kSampledTriples; ++t) {
      check(static_cast<ElementId>(rng.below(order_)), static_cast<ElementId>(rng.below(order_)),
            static_cast<ElementId>(rng.below(order_)));
    }
  }

  for (ElementId a = 0; a < order_ && abelian_; ++a)
    for (ElementId b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }

  if (labels_.empty()) {
    labels_.reserve(order_);
    for (std::size_t a = 0; a < order_; ++a) labels_.push_back(std::to_string(a));
  } else if (labels_.size() != order_) {
    invalid(name_, "label count differs from order");
  }
}

ElementId FiniteGroup::power(ElementId a, long long k) const {
  if (k < 0) {
    a = inverse_[a];
    k = -k;
  }
  ElementId result = kIdentity;
  ElementId base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(ElementId a) const {
  std::size_t k = 1;
  for (ElementId x = a; x != kIdentity; x = mul(x, a)) ++k;
  return k;
}

bool Subgroup::contains(ElementId g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

ElementId AbelianDecomposition::element_of(std::span<const long long> c) const {
  std::size_t index = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    long long v = c[j] % factors[j];
    if (v < 0) v += factors[j];
    index = index * static_cast<std::size_t>(factors[j]) + static_cast<std::size_t>(v);
  }
  return element_at[index];
}

GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2) {
  const std::size_t n1 = g1->order(), n2 = g2->order(), n = n1 * n2;
  std::vector<ElementId> table(n * n);
  std::vector<std::string> labels(n);
  for (ElementId a1 = 0; a1 < n1; ++a1)
    for (ElementId a2 = 0; a2 < n2; ++a2) {
      const std::size_t a = a1 * n2 + a2;
      labels[a] = g1->label(a1) + "," + g2->label(a2);
      for (ElementId b1 = 0; b1 < n1; ++b1)
        for (ElementId b2 = 0; b2 < n2; ++b2)
          table[a * n + b1 * n2 + b2] =
              static_cast<ElementId>(g1->mul(a1, b1) * n2 + g2->mul(a2, b2));
    }
  return std::make_shared<const FiniteGroup>(g1->name() + "×" + g2->name(), n,
                                             std::move(table), std::move(labels));
}

namespace {

std::vector<ElementId> closure_members(const FiniteGroup& g, std::span<const ElementId> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<ElementId> members{kIdentity};
  in[kIdentity] = 1;
  std::deque<ElementId> queue{kIdentity};
  while (!queue.empty()) {
    const ElementId x = queue.front();
    queue.pop_front();
    for (ElementId s : gens) {
      const ElementId y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

bool is_normal(const FiniteGroup& g, std::span<const ElementId> members) {
  std::vector<char> in(g.order(), 0);
  for (ElementId m : members) in[m] = 1;
  for (ElementId x = 0; x < g.order(); ++x)
    for (ElementId m : members)
      if (!in[g.conjugate(x, m)]) return false;
  return true;
}

Subgroup subgroup_closure(const GroupPtr& g, std::span<const ElementId> gens) {
  for (ElementId s : gens)
    if (s >= g->order()) throw Error(ErrorCode::OutOfRange, "generator not in group");
  Subgroup s{g, closure_members(*g, gens), false};
  s.normal = is_normal(*g, s.members);
  return s;
}

Subgroup commutator_subgroup(const GroupPtr& g) {
  std::vector<char> seen(g->order(), 0);
  std::vector<ElementId> gens;
  for (ElementId a = 0; a < g->order(); ++a)
    for (ElementId b = 0; b < g->order(); ++b) {
      const ElementId c = g->commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  Subgroup s = subgroup_closure(g, gens);
  if (!s.normal) throw Error(ErrorCode::InvariantFailure, "commutator subgroup not normal");
  return s;
}

Subgroup center(const GroupPtr& g) {
  std::vector<ElementId> members;
  for (ElementId z = 0; z < g->order(); ++z) {
    bool central = true;
    for (ElementId x = 0; x < g->order() && central; ++x) central = g->mul(z, x) == g->mul(x, z);
    if (central) members.push_back(z);
  }
  return Subgroup{g, std::move(members), true};
}

QuotientGroup quotient(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(*g, n.members))
    throw Error(ErrorCode::NotNormal, "subgroup of size " + std::to_string(n.size()) +
                                          " is not normal in " + g->name());
  QuotientGroup q;
  q.base = g;
  q.normal = n;
  q.normal.normal = true;
  const std::size_t none = g->order();
  q.projection.assign(g->order(), static_cast<ElementId>(none));
  for (ElementId x = 0; x < g->order(); ++x) {
    if (q.projection[x] != none) continue;
    const auto id = static_cast<ElementId>(q.cosets.size());
    std::vector<ElementId> coset;
    coset.reserve(n.size());
    for (ElementId m : n.members) coset.push_back(g->mul(x, m));
    std::sort(coset.begin(), coset.end());
    for (ElementId y : coset) q.projection[y] = id;
    q.reps.push_back(coset.front());
    q.cosets.push_back(std::move(coset));
  }

  const std::size_t k = q.cosets.size();
  if (k * n.size() != g->order())
    throw Error(ErrorCode::InvariantFailure, "coset partition does not tile the group");
  std::vector<ElementId> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      table[i * k + j] = q.projection[g->mul(q.reps[i], q.reps[j])];
  for (ElementId a = 0; a < g->order(); ++a)
    for (ElementId b = 0; b < g->order(); ++b)
      if (q.projection[g->mul(a, b)] != table[q.projection[a] * k + q.projection[b]])
        throw Error(ErrorCode::InvariantFailure, "coset product depends on representatives");

  std::vector<std::string> labels;
  labels.reserve(k);
  for (ElementId r : q.reps) labels.push_back("[" + g->label(r) + "]");
  q.table = std::make_shared<const FiniteGroup>(
      g->name() + "/N" + std::to_string(n.size()), k, std::move(table), std::move(labels));
  return q;
}

namespace {

AbelianDecomposition decompose(const GroupPtr& h) {
  AbelianDecomposition d;
  const std::size_t order = h->order();
  if (order == 1) {
    d.coords = {{}};
    d.element_at = {kIdentity};
    return d;
  }

  // Element of maximal order (smallest id among ties).
  ElementId top = kIdentity;
  std::size_t exponent = 1;
  for (ElementId x = 0; x < order; ++x) {
    const std::size_t o = h->element_order(x);
    if (o > exponent) {
      exponent = o;
      top = x;
    }
  }

  const ElementId gens[] = {top};
  const Subgroup cyclic = subgroup_closure(h, gens);
  const QuotientGroup q = quotient(h, cyclic);
  const AbelianDecomposition sub = decompose(q.table);

  // Lift each quotient generator to an element of the same order.
  std::vector<ElementId> lifts;
  for (std::size_t j = 0; j < sub.factors.size(); ++j) {
    std::vector<long long> unit(sub.factors.size(), 0);
    unit[j] = 1;
    const ElementId coset = sub.element_of(unit);
    ElementId lift = kIdentity;
    bool found = false;
    for (ElementId x : q.cosets[coset]) {
      if (h->element_order(x) == static_cast<std::size_t>(sub.factors[j])) {
        lift = x;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::InvariantFailure, "no order-preserving lift of coset");
    lifts.push_back(lift);
  }
  lifts.push_back(top);

  d.factors = sub.factors;
  d.factors.push_back(static_cast<long long>(exponent));
  const std::size_t m = d.factors.size();
  d.coords.assign(order, {});
  d.element_at.assign(order, kIdentity);
  std::vector<char> hit(order, 0);
  std::vector<long long> v(m, 0);
  for (std::size_t index = 0; index < order; ++index) {
    std::size_t rest = index;
    for (std::size_t j = m; j-- > 0;) {
      v[j] = static_cast<long long>(rest % static_cast<std::size_t>(d.factors[j]));
      rest /= static_cast<std::size_t>(d.factors[j]);
    }
    ElementId x = kIdentity;
    for (std::size_t j = 0; j < m; ++j) x = h->mul(x, h->power(lifts[j], v[j]));
    if (hit[x]++) throw Error(ErrorCode::InvariantFailure, "coordinates are not a bijection");
    d.coords[x] = v;
    d.element_at[index] = x;
  }
  return d;
}

}  // namespace

AbelianDecomposition abelian_decomposition(const FiniteGroup& h) {
  if (!h.is_abelian()) throw Error(ErrorCode::NonAbelian, h.name() + " is not abelian");
  // decompose() builds quotients, which need shared ownership of the group.
  auto owned = std::make_shared<const FiniteGroup>(h);
  AbelianDecomposition d = decompose(owned);

  long long product = 1;
  for (std::size_t j = 0; j < d.factors.size(); ++j) {
    product *= d.factors[j];
    if (j > 0 && d.factors[j] % d.factors[j - 1] != 0)
      throw Error(ErrorCode::InvariantFailure, "invariant factors do not form a divisor chain");
  }
  if (product != static_cast<long long>(h.order()))
    throw Error(ErrorCode::InvariantFailure, "invariant factors do not multiply to the order");
  for (ElementId a = 0; a < h.order(); ++a)
    for (ElementId b = 0; b < h.order(); ++b) {
      const auto& ca = d.coords[a];
      const auto& cb = d.coords[b];
      const auto& cab = d.coords[h.mul(a, b)];
      for (std::size_t j = 0; j < d.factors.size(); ++j)
        if ((ca[j] + cb[j]) % d.factors[j] != cab[j])
          throw Error(ErrorCode::InvariantFailure, "coordinates are not additive");
    }
  return d;
}

std::vector<std::vector<ElementId>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<ElementId>> classes;
  for (ElementId x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<ElementId> cls;
    for (ElementId y = 0; y < g.order(); ++y) {
      const ElementId c = g.conjugate(y, x);
      if (!done[c]) {
        done[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

GroupPtr parse_group_file(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream tokens(strip_comment(raw));
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (!words.empty()) lines.emplace_back(line_no, std::move(words));
  }
  std::size_t cursor = 0;
  auto next = [&](const char* what) -> const std::pair<std::size_t, std::vector<std::string>>& {
    if (cursor >= lines.size()) parse_error(line_no, std::string("unexpected end, expected ") + what);
    return lines[cursor++];
  };

  const auto& header = next("header");
  if (header.second != std::vector<std::string>{"group", "v1"})
    parse_error(header.first, "expected 'group v1'");
  const auto& order_line = next("order");
  if (order_line.second.size() != 2 || order_line.second[0] != "order")
    parse_error(order_line.first, "expected 'order <n>'");
  std::size_t order = 0;
  try {
    order = std::stoul(order_line.second[1]);
  } catch (const std::exception&) {
    parse_error(order_line.first, "bad order");
  }
  if (order == 0) parse_error(order_line.first, "order must be positive");

  std::vector<std::string> labels;
  if (cursor < lines.size() && lines[cursor].second.front() == "labels") {
    const auto& l = lines[cursor++];
    labels.assign(l.second.begin() + 1, l.second.end());
    if (labels.size() != order) parse_error(l.first, "expected " + std::to_string(order) + " labels");
  }

  std::vector<ElementId> table;
  table.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    const auto& row = next("table row");
    if (row.second.size() != order)
      parse_error(row.first, "expected " + std::to_string(order) + " entries");
    for (const auto& tok : row.second) {
      unsigned long v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        parse_error(row.first, "bad element id '" + tok + "'");
      }
      if (v >= order) parse_error(row.first, "element id out of range");
      table.push_back(static_cast<ElementId>(v));
    }
  }
  if (cursor != lines.size()) parse_error(lines[cursor].first, "trailing content");
  return std::make_shared<const FiniteGroup>(std::move(name), order, std::move(table),
                                             std::move(labels));
}

std::string serialize_group(const FiniteGroup& g) {
  std::ostringstream out;
  out << "group v1\norder " << g.order() << "\nlabels";
  for (const auto& l : g.labels()) out << ' ' << l;
  out << '\n';
  for (ElementId a = 0; a < g.order(); ++a) {
    for (ElementId b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  return out.str();
}

GroupPtr load_group(std::string_view spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && spec.substr(first).starts_with("group"))
    return parse_group_file(spec);
  return build_catalog_group(spec).group;
}

}  // namespace nalin
