#include "nalin/lin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nalin/error.hpp"
#include "nalin/random.hpp"
#include "nalin/text.hpp"

namespace nalin {

namespace {

// Neumaier summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

void validate(const FiniteGroup& g, std::size_t num_vars, const LinConstraint& c) {
  if (c.terms.empty()) throw Error(ErrorCode::InvalidArgument, "constraint has no variables");
  if (c.consts.size() != c.terms.size() + 1)
    throw Error(ErrorCode::ShapeMismatch, "constraint needs one more constant than terms");
  if (!(c.weight >= 0) || !std::isfinite(c.weight))
    throw Error(ErrorCode::InvalidArgument, "weights must be finite and non-negative");
  if (c.rhs >= g.order()) throw Error(ErrorCode::OutOfRange, "element id out of range");
  for (ElementId k : c.consts)
    if (k >= g.order()) throw Error(ErrorCode::OutOfRange, "element id out of range");
  for (const Term& t : c.terms) {
    if (t.var >= num_vars) throw Error(ErrorCode::OutOfRange, "variable index out of range");
    if (t.exp != 1 && t.exp != -1) throw Error(ErrorCode::InvalidArgument, "exponent must be +1 or -1");
  }
}

ElementId parse_element(const std::string& tok, char prefix, std::size_t line, std::size_t order) {
  if (tok.size() < 2 || tok[0] != prefix)
    parse_error(line, std::string("expected '") + prefix + "<id>', got '" + tok + "'");
  const auto v = parse_uint(std::string_view(tok).substr(1), line);
  if (v >= order) parse_error(line, "element id out of range in '" + tok + "'");
  return static_cast<ElementId>(v);
}

}  // namespace

LinInstance make_instance(GroupPtr group, std::size_t num_vars,
                          std::vector<LinConstraint> constraints) {
  if (!group) throw Error(ErrorCode::InvalidArgument, "instance has no group");
  double total = 0;
  for (const auto& c : constraints) {
    validate(*group, num_vars, c);
    total += c.weight;
  }
  if (!constraints.empty() && !(total > 0))
    throw Error(ErrorCode::InvalidArgument, "total constraint weight must be positive");
  LinInstance inst{std::move(group), num_vars, std::move(constraints), 1.0};
  if (!inst.constraints.empty() && std::abs(total - 1) > 1e-12) {
    for (auto& c : inst.constraints) c.weight /= total;
    inst.weight_scale = total;
  }
  return inst;
}

ElementId evaluate_word(const FiniteGroup& g, const LinConstraint& c, const Assignment& a) {
  ElementId acc = c.consts[0];
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const ElementId x = a[c.terms[t].var];
    acc = g.mul(acc, c.terms[t].exp > 0 ? x : g.inv(x));
    acc = g.mul(acc, c.consts[t + 1]);
  }
  return acc;
}

bool satisfies(const FiniteGroup& g, const LinConstraint& c, const Assignment& a) {
  return evaluate_word(g, c, a) == c.rhs;
}

double evaluate(const LinInstance& inst, const Assignment& a) {
  if (a.size() != inst.num_vars)
    throw Error(ErrorCode::ShapeMismatch, "assignment length does not match the variable count");
  for (ElementId x : a)
    if (x >= inst.group->order()) throw Error(ErrorCode::OutOfRange, "element id out of range");
  // Both sums see the same terms in the same order, so a fully satisfied
  // instance evaluates to exactly 1.
  CompensatedSum sat, total;
  for (const auto& c : inst.constraints) {
    total.add(c.weight);
    sat.add(satisfies(*inst.group, c, a) ? c.weight : 0.0);
  }
  return total.value() > 0 ? sat.value() / total.value() : 0.0;
}

PlantedInstance generate_planted(const GroupPtr& g, std::size_t n, std::size_t m, std::size_t k,
                                 std::uint64_t seed) {
  if (k == 0 || k > n) throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= n");
  Rng rng(seed);
  const std::size_t order = g->order();
  PlantedInstance out;
  out.planted.resize(n);
  for (auto& x : out.planted) x = static_cast<ElementId>(rng.below(order));
  std::vector<LinConstraint> cs;
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = 0; v < n; ++v) pool[v] = v;
    LinConstraint c;
    c.weight = 1.0 / static_cast<double>(m);
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t j = t + rng.below(n - t);
      std::swap(pool[t], pool[j]);
      c.terms.push_back({pool[t], 1});
    }
    for (std::size_t t = 0; t <= k; ++t) c.consts.push_back(static_cast<ElementId>(rng.below(order)));
    c.rhs = evaluate_word(*g, c, out.planted);
    cs.push_back(std::move(c));
  }
  out.instance = make_instance(g, n, std::move(cs));
  return out;
}

AbelianSystem abelianize(const LinInstance& inst, const QuotientGroup& q,
                         const AbelianDecomposition& d) {
  if (!q.base->same_table(*inst.group))
    throw Error(ErrorCode::ShapeMismatch, "quotient is of a different group");
  AbelianSystem sys;
  sys.factors = d.factors;
  sys.num_vars = inst.num_vars;
  const std::size_t f = d.factors.size();
  for (const auto& c : inst.constraints) {
    std::vector<long long> row(inst.num_vars, 0);
    for (const Term& t : c.terms) row[t.var] += t.exp;
    std::vector<long long> rhs(d.coords[q.projection[c.rhs]]);
    for (ElementId k : c.consts) {
      const auto& kc = d.coords[q.projection[k]];
      for (std::size_t j = 0; j < f; ++j) rhs[j] -= kc[j];
    }
    for (std::size_t j = 0; j < f; ++j) rhs[j] = ((rhs[j] % d.factors[j]) + d.factors[j]) % d.factors[j];
    sys.coefficients.push_back(std::move(row));
    sys.rhs.push_back(std::move(rhs));
  }
  return sys;
}

std::string serialize_instance(const LinInstance& inst) {
  std::ostringstream out;
  out << "lin v1\n# weight-scale " << format_double(inst.weight_scale) << '\n';
  if (!inst.constraints.empty()) {
    std::size_t lo = inst.constraints.front().terms.size(), hi = lo;
    for (const auto& c : inst.constraints) {
      lo = std::min(lo, c.terms.size());
      hi = std::max(hi, c.terms.size());
    }
    out << "# arity " << lo;
    if (hi != lo) out << '-' << hi;
    out << '\n';
  }
  out << "group " << inst.group->name() << "\nvars " << inst.num_vars << '\n';
  for (const auto& c : inst.constraints) {
    out << "c " << format_double(c.weight) << " g" << c.rhs << " : g" << c.consts[0];
    for (std::size_t t = 0; t < c.terms.size(); ++t) {
      out << " x" << c.terms[t].var << (c.terms[t].exp < 0 ? "'" : "") << " g" << c.consts[t + 1];
    }
    out << '\n';
  }
  return out.str();
}

LinInstance parse_instance(std::string_view text) {
  const auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].words != std::vector<std::string>{"lin", "v1"})
    parse_error(lines.empty() ? 1 : lines[0].number, "expected 'lin v1'");
  if (lines.size() < 3 || lines[1].words.size() != 2 || lines[1].words[0] != "group")
    parse_error(lines.size() > 1 ? lines[1].number : 1, "expected 'group <name>'");
  if (lines[2].words.size() != 2 || lines[2].words[0] != "vars")
    parse_error(lines[2].number, "expected 'vars <n>'");
  GroupPtr g;
  try {
    g = load_group(lines[1].words[1]);
  } catch (const Error& e) {
    parse_error(lines[1].number, e.what());
  }
  const std::size_t n = parse_uint(lines[2].words[1], lines[2].number);
  const std::size_t order = g->order();

  double scale = 1;
  for (const auto& comment : comment_lines(text)) {
    std::istringstream in(comment);
    std::string key, value;
    if (in >> key >> value && key == "weight-scale") scale = parse_double(value, 0);
  }

  std::vector<LinConstraint> cs;
  for (std::size_t li = 3; li < lines.size(); ++li) {
    const auto& w = lines[li].words;
    const std::size_t ln = lines[li].number;
    if (w.size() < 7 || w[0] != "c" || w[3] != ":")
      parse_error(ln, "expected 'c <weight> g<rhs> : g<c0> x<i> ... g<ck>'");
    LinConstraint c;
    c.weight = parse_double(w[1], ln);
    c.rhs = parse_element(w[2], 'g', ln, order);
    if ((w.size() - 4) % 2 == 0) parse_error(ln, "constraint must start and end with a constant");
    for (std::size_t t = 4; t < w.size(); ++t) {
      if ((t - 4) % 2 == 0) {
        c.consts.push_back(parse_element(w[t], 'g', ln, order));
        continue;
      }
      std::string tok = w[t];
      int exp = 1;
      if (!tok.empty() && tok.back() == '\'') {
        exp = -1;
        tok.pop_back();
      }
      if (tok.size() < 2 || tok[0] != 'x') parse_error(ln, "expected a term 'x<i>', got '" + w[t] + "'");
      const auto v = parse_uint(std::string_view(tok).substr(1), ln);
      if (v >= n) parse_error(ln, "variable index out of range in '" + w[t] + "'");
      c.terms.push_back({static_cast<std::size_t>(v), exp});
    }
    if (!(c.weight >= 0)) parse_error(ln, "negative weight");
    cs.push_back(std::move(c));
  }
  LinInstance inst = make_instance(g, n, std::move(cs));
  inst.weight_scale *= scale;
  return inst;
}

}  // namespace nalin
