#include "nalin/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <tuple>

#include "nalin/error.hpp"
#include "nalin/random.hpp"

namespace nalin {

namespace {

constexpr double kLiftBudget = 1e7;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

/// g = gcd(a, b) = s a + t b
long long ext_gcd(long long a, long long b, long long& s, long long& t) {
  long long s0 = 1, t0 = 0, s1 = 0, t1 = 1;
  while (b != 0) {
    const long long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  s = s0;
  t = t0;
  return a;
}

/// Unit u mod m with u * p = gcd(p, m) (mod m).
long long normalizing_unit(long long p, long long m) {
  const long long g = std::gcd(p, m);
  const long long m2 = m / g;
  long long s = 1, t = 0;
  if (m2 > 1) {
    ext_gcd(mod(p / g, m2), m2, s, t);
    s = mod(s, m2);
  } else {
    s = 1;
  }
  for (long long u = s;; u += m2)
    if (std::gcd(u, m) == 1) return mod(u, m);
}

void check_lift_inputs(const LinInstance& inst, const QuotientGroup& q, const CosetAssignment& cosets) {
  if (!q.base->same_table(*inst.group))
    throw Error(ErrorCode::ShapeMismatch, "quotient is of a different group");
  if (cosets.size() != inst.num_vars)
    throw Error(ErrorCode::ShapeMismatch, "one coset per variable is required");
  for (ElementId c : cosets)
    if (c >= q.order()) throw Error(ErrorCode::OutOfRange, "coset id out of range");
}

std::vector<std::size_t> distinct_vars(const LinConstraint& c) {
  std::vector<std::size_t> vs;
  for (const Term& t : c.terms) vs.push_back(t.var);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (vs.size() > kMaxLiftVars)
    throw Error(ErrorCode::TooManyDistinctVars,
                "constraint has " + std::to_string(vs.size()) + " distinct variables");
  return vs;
}

/// Probability that `c` holds when the variables in `free` are uniform in
/// their cosets and the others keep their value in `work`.
double constraint_probability(const FiniteGroup& g, const LinConstraint& c,
                              const std::vector<std::size_t>& free, const QuotientGroup& q,
                              const CosetAssignment& cosets, Assignment& work) {
  double combos = 1;
  for (std::size_t v : free) combos *= static_cast<double>(q.cosets[cosets[v]].size());
  if (combos > kLiftBudget) throw Error(ErrorCode::BudgetExceeded, "too many lift combinations");
  std::vector<std::size_t> pos(free.size(), 0);
  for (std::size_t i = 0; i < free.size(); ++i) work[free[i]] = q.cosets[cosets[free[i]]][0];
  std::size_t hits = 0, total = 0;
  while (true) {
    ++total;
    if (satisfies(g, c, work)) ++hits;
    std::size_t i = free.size();
    while (i-- > 0) {
      const auto& members = q.cosets[cosets[free[i]]];
      if (++pos[i] < members.size()) {
        work[free[i]] = members[pos[i]];
        break;
      }
      pos[i] = 0;
      work[free[i]] = members[0];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

SolveReport brute_force(const LinInstance& inst, std::size_t cap) {
  const auto start = Clock::now();
  const std::size_t order = inst.group->order();
  double space = 1;
  for (std::size_t i = 0; i < inst.num_vars; ++i) space *= static_cast<double>(order);
  if (space > static_cast<double>(cap))
    throw Error(ErrorCode::BudgetExceeded, "|G|^n exceeds the brute-force cap");
  SolveReport r;
  r.method = "brute";
  Assignment a(inst.num_vars, kIdentity);
  r.best_assignment = a;
  r.best_value = -1;
  while (true) {
    const double v = evaluate(inst, a);
    if (v > r.best_value) {
      r.best_value = v;
      r.best_assignment = a;
      if (v >= 1 - 1e-12) break;
    }
    std::size_t i = a.size();
    while (i-- > 0) {
      if (++a[i] < order) break;
      a[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  r.satisfiable = r.best_value >= 1 - 1e-12;
  r.guarantee = r.best_value;
  r.expectation = r.best_value;
  r.elapsed_ms = ms_since(start);
  return r;
}

std::optional<std::vector<long long>> solve_mod(const std::vector<std::vector<long long>>& a,
                                                const std::vector<long long>& b,
                                                long long modulus) {
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "one right-hand side per row");
  const std::size_t n = a.empty() ? 0 : a.front().size();
  // augmented rows [A | b] reduced mod m
  std::vector<std::vector<long long>> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::ShapeMismatch, "ragged coefficient matrix");
    std::vector<long long> row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = mod(a[i][j], modulus);
    row[n] = mod(b[i], modulus);
    rows.push_back(std::move(row));
  }
  auto combine = [&](std::vector<long long>& x, long long s, const std::vector<long long>& y, long long t) {
    for (std::size_t j = 0; j <= n; ++j) x[j] = mod(s * x[j] + t * y[j], modulus);
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      if (rows[r][col] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      long long s = 0, t = 0;
      const long long pa = rows[r][col], pb = rows[i][col];
      const long long g = ext_gcd(pa, pb, s, t);
      // unimodular: [s t; pb/g -pa/g]
      std::vector<long long> top = rows[r];
      combine(top, s, rows[i], t);
      std::vector<long long> bottom = rows[r];
      combine(bottom, pb / g, rows[i], -(pa / g));
      rows[r] = std::move(top);
      rows[i] = std::move(bottom);
    }
    if (rows[r][col] == 0) continue;
    const long long u = normalizing_unit(rows[r][col], modulus);
    for (auto& v : rows[r]) v = mod(v * u, modulus);
    const long long g = rows[r][col];
    if (modulus % g != 0)
      throw Error(ErrorCode::InvariantFailure, "pivot does not divide the modulus");
    if (g != 1) {
      // keep every row-space vector that vanishes in this column reachable
      std::vector<long long> annihilator = rows[r];
      for (auto& v : annihilator) v = mod(v * (modulus / g), modulus);
      rows.push_back(std::move(annihilator));
    }
    pivots.emplace_back(r, col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) zero = zero && rows[i][j] == 0;
    if (zero && rows[i][n] != 0) return std::nullopt;
    if (!zero) throw Error(ErrorCode::InvariantFailure, "elimination left a nonzero row");
  }

  std::vector<long long> x(n, 0);
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto [row, col] = pivots[k];
    long long rest = rows[row][n];
    for (std::size_t j = col + 1; j < n; ++j) rest = mod(rest - rows[row][j] * x[j], modulus);
    const long long g = rows[row][col];
    if (rest % g != 0) return std::nullopt;
    x[col] = rest / g;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < n; ++j) s = mod(s + mod(a[i][j], modulus) * x[j], modulus);
    if (s != mod(b[i], modulus)) throw Error(ErrorCode::InvariantFailure, "solution fails substitution");
  }
  return x;
}

std::optional<std::vector<std::vector<long long>>> abelian_solve(const AbelianSystem& sys) {
  std::vector<std::vector<long long>> coords(sys.num_vars, std::vector<long long>(sys.factors.size(), 0));
  for (std::size_t j = 0; j < sys.factors.size(); ++j) {
    std::vector<long long> b;
    for (const auto& r : sys.rhs) b.push_back(r[j]);
    const auto x = solve_mod(sys.coefficients, b, sys.factors[j]);
    if (!x) return std::nullopt;
    for (std::size_t v = 0; v < sys.num_vars; ++v) coords[v][j] = (*x)[v];
  }
  if (!check_abelian_solution(sys, coords))
    throw Error(ErrorCode::InvariantFailure, "abelian solution fails substitution");
  return coords;
}

bool check_abelian_solution(const AbelianSystem& sys,
                            const std::vector<std::vector<long long>>& coords) {
  if (coords.size() != sys.num_vars) return false;
  for (std::size_t i = 0; i < sys.coefficients.size(); ++i)
    for (std::size_t j = 0; j < sys.factors.size(); ++j) {
      long long s = 0;
      for (std::size_t v = 0; v < sys.num_vars; ++v)
        s = mod(s + sys.coefficients[i][v] * coords[v][j], sys.factors[j]);
      if (s != mod(sys.rhs[i][j], sys.factors[j])) return false;
    }
  return true;
}

CosetAssignment to_cosets(const std::vector<std::vector<long long>>& coords,
                          const AbelianDecomposition& d) {
  CosetAssignment out;
  for (const auto& c : coords) out.push_back(d.element_of(c));
  return out;
}

double lift_expectation(const LinInstance& inst, const QuotientGroup& q,
                        const CosetAssignment& cosets) {
  check_lift_inputs(inst, q, cosets);
  Assignment work(inst.num_vars, kIdentity);
  double total = 0;
  for (const auto& c : inst.constraints)
    total += c.weight * constraint_probability(*inst.group, c, distinct_vars(c), q, cosets, work);
  return total;
}

Assignment random_lift(const QuotientGroup& q, const CosetAssignment& cosets, std::uint64_t seed) {
  Assignment a(cosets.size());
  for (std::size_t v = 0; v < cosets.size(); ++v) {
    if (cosets[v] >= q.order()) throw Error(ErrorCode::OutOfRange, "coset id out of range");
    const auto& members = q.cosets[cosets[v]];
    Rng rng = Rng::stream(seed, v);
    a[v] = members[rng.below(members.size())];
  }
  return a;
}

DerandomizedLift derandomized_lift(const LinInstance& inst, const QuotientGroup& q,
                                   const CosetAssignment& cosets) {
  check_lift_inputs(inst, q, cosets);
  const FiniteGroup& g = *inst.group;
  const std::size_t m = inst.constraints.size();
  std::vector<std::vector<std::size_t>> vars(m);
  std::vector<std::vector<std::size_t>> touching(inst.num_vars);
  for (std::size_t i = 0; i < m; ++i) {
    vars[i] = distinct_vars(inst.constraints[i]);
    for (std::size_t v : vars[i]) touching[v].push_back(i);
  }
  std::vector<char> fixed(inst.num_vars, 0);
  Assignment work(inst.num_vars, kIdentity);
  auto free_vars = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t v : vars[i])
      if (!fixed[v]) out.push_back(v);
    return out;
  };

  std::vector<double> prob(m);
  double current = 0;
  for (std::size_t i = 0; i < m; ++i) {
    prob[i] = constraint_probability(g, inst.constraints[i], free_vars(i), q, cosets, work);
    current += inst.constraints[i].weight * prob[i];
  }
  DerandomizedLift out;
  out.trace.push_back(current);

  for (std::size_t v = 0; v < inst.num_vars; ++v) {
    fixed[v] = 1;
    double best = -1;
    ElementId best_x = q.cosets[cosets[v]].front();
    std::vector<double> best_prob;
    for (ElementId x : q.cosets[cosets[v]]) {
      work[v] = x;
      double value = current;
      std::vector<double> local;
      for (std::size_t i : touching[v]) {
        const auto fv = free_vars(i);
        Assignment scratch = work;
        const double p = constraint_probability(g, inst.constraints[i], fv, q, cosets, scratch);
        local.push_back(p);
        value += inst.constraints[i].weight * (p - prob[i]);
      }
      if (value > best + 1e-12) {
        best = value;
        best_x = x;
        best_prob = std::move(local);
      }
    }
    work[v] = best_x;
    for (std::size_t k = 0; k < touching[v].size(); ++k) prob[touching[v][k]] = best_prob[k];
    if (best < current - 1e-12)
      throw Error(ErrorCode::InvariantFailure, "conditional expectation decreased");
    current = best;
    out.trace.push_back(current);
  }
  out.assignment = work;
  return out;
}

SolveReport folklore_approx(const LinInstance& inst, FolkloreTrace* trace) {
  const auto start = Clock::now();
  const GroupPtr& g = inst.group;
  const Subgroup comm = commutator_subgroup(g);
  const QuotientGroup q = quotient(g, comm);
  const AbelianDecomposition d = abelian_decomposition(*q.table);
  const AbelianSystem sys = abelianize(inst, q, d);
  const auto solution = abelian_solve(sys);

  SolveReport r;
  r.method = "folklore";
  FolkloreTrace local;
  local.commutator_size = comm.size();
  local.quotient_order = q.order();
  local.factors = d.factors;
  local.abelian_satisfiable = solution.has_value();
  if (solution) {
    local.cosets = to_cosets(*solution, d);
    r.expectation = lift_expectation(inst, q, local.cosets);
    DerandomizedLift lift = derandomized_lift(inst, q, local.cosets);
    local.lift_trace = lift.trace;
    r.best_assignment = std::move(lift.assignment);
    r.best_value = evaluate(inst, r.best_assignment);
    r.satisfiable = true;  // not refuted by the abelian system
    r.guarantee = 1.0 / static_cast<double>(comm.size());
  } else {
    r.satisfiable = false;
    r.best_value = -1;
    for (ElementId x = 0; x < g->order(); ++x) {
      const Assignment a(inst.num_vars, x);
      const double v = evaluate(inst, a);
      if (v > r.best_value) {
        r.best_value = v;
        r.best_assignment = a;
      }
    }
    r.expectation = r.best_value;
    r.guarantee = 0;
  }
  r.elapsed_ms = ms_since(start);
  if (trace) *trace = std::move(local);
  return r;
}

}  // namespace nalin
