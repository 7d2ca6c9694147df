#include "nalin/dictatorship.hpp"

#include <array>
#include <cmath>
#include <map>

#include "nalin/error.hpp"
#include "nalin/random.hpp"

namespace nalin {

namespace {

constexpr double kZ99 = 2.5758293035489004;

void check_table(const GroupFunctionTable& f) {
  if (!f.group) throw Error(ErrorCode::InvalidArgument, "function has no group");
  if (f.values.size() != power_size(f.group->order(), f.n, kDictExactBudget))
    throw Error(ErrorCode::ShapeMismatch, "function table has the wrong length");
}

// Digits of every tuple of G^n, most significant first.
std::vector<std::vector<ElementId>> all_tuples(const GroupPower& gp) {
  std::vector<std::vector<ElementId>> out(gp.size());
  for (std::size_t x = 0; x < gp.size(); ++x) out[x] = gp.tuple(x);
  return out;
}

// Product distribution by exact enumeration. Counts are kept per number of
// coordinates whose c agrees with the noiseless choice so that the final
// weights are applied once, in floating point, at the end.
std::vector<double> exact_distribution(const GroupFunctionTable& f, double epsilon) {
  const FiniteGroup& g = *f.group;
  const std::size_t order = g.order();
  const std::size_t n = f.n;
  const GroupPower gp(f.group, n);
  const std::size_t size = gp.size();
  const auto tuples = all_tuples(gp);
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * order;

  std::vector<double> dist(order, 0.0);
  std::vector<ElementId> target(n);
  if (epsilon == 0) {
    power_size(size, 2, kDictExactBudget);
    std::vector<std::uint64_t> counts(order, 0);
    for (std::size_t a = 0; a < size; ++a) {
      const auto& ta = tuples[a];
      for (std::size_t b = 0; b < size; ++b) {
        const auto& tb = tuples[b];
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i) c += stride[i] * g.inv(g.mul(ta[i], tb[i]));
        ++counts[g.mul(g.mul(f.values[a], f.values[b]), f.values[c])];
      }
    }
    const double total = static_cast<double>(size) * static_cast<double>(size);
    for (std::size_t h = 0; h < order; ++h) dist[h] = static_cast<double>(counts[h]) / total;
    return dist;
  }

  power_size(size, 3, kDictExactBudget);
  std::vector<std::vector<std::uint64_t>> counts(order, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t a = 0; a < size; ++a) {
    const auto& ta = tuples[a];
    for (std::size_t b = 0; b < size; ++b) {
      const auto& tb = tuples[b];
      for (std::size_t i = 0; i < n; ++i) target[i] = g.inv(g.mul(ta[i], tb[i]));
      const ElementId ab = g.mul(f.values[a], f.values[b]);
      const auto row = g.row(ab);
      for (std::size_t c = 0; c < size; ++c) {
        const auto& tc = tuples[c];
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) k += tc[i] == target[i];
        ++counts[row[f.values[c]]][k];
      }
    }
  }
  const double q = static_cast<double>(order);
  const double w_noise = epsilon / (q * q * q);
  const double w_match = (1 - epsilon) / (q * q) + w_noise;
  std::vector<double> weight(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    weight[k] = std::pow(w_match, static_cast<double>(k)) * std::pow(w_noise, static_cast<double>(n - k));
  for (std::size_t h = 0; h < order; ++h)
    for (std::size_t k = 0; k <= n; ++k) dist[h] += static_cast<double>(counts[h][k]) * weight[k];
  return dist;
}

std::vector<double> sampled_distribution(const GroupFunctionTable& f, const DictTestConfig& cfg) {
  if (cfg.samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const FiniteGroup& g = *f.group;
  const std::size_t order = g.order();
  const std::size_t n = f.n;
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * order;
  std::vector<std::uint64_t> counts(order, 0);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    Rng rng = Rng::stream(cfg.seed, s);
    std::size_t a = 0, b = 0, c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto ai = static_cast<ElementId>(rng.below(order));
      auto bi = static_cast<ElementId>(rng.below(order));
      ElementId ci = g.inv(g.mul(ai, bi));
      if (cfg.epsilon > 0 && rng.unit() < cfg.epsilon) {
        ai = static_cast<ElementId>(rng.below(order));
        bi = static_cast<ElementId>(rng.below(order));
        ci = static_cast<ElementId>(rng.below(order));
      }
      a += stride[i] * ai;
      b += stride[i] * bi;
      c += stride[i] * ci;
    }
    ++counts[g.mul(g.mul(f.values[a], f.values[b]), f.values[c])];
  }
  std::vector<double> dist(order);
  for (std::size_t h = 0; h < order; ++h)
    dist[h] = static_cast<double>(counts[h]) / static_cast<double>(cfg.samples);
  return dist;
}

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0 && epsilon <= 1)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0, 1]");
}

}  // namespace

GroupFunctionTable make_dictator(std::size_t i, std::size_t n, const GroupPtr& g) {
  if (i >= n) throw Error(ErrorCode::OutOfRange, "dictator coordinate out of range");
  const GroupPower gp(g, n);
  GroupFunctionTable f{g, n, std::vector<ElementId>(gp.size()), true};
  for (std::size_t x = 0; x < gp.size(); ++x) f.values[x] = gp.coordinate(x, i);
  return f;
}

GroupFunctionTable make_random_folded(std::size_t n, const GroupPtr& g, std::uint64_t seed) {
  const GroupPower gp(g, n);
  Rng rng(seed);
  std::vector<ElementId> reps(gp.orbit_count());
  for (auto& v : reps) v = static_cast<ElementId>(rng.below(g->order()));
  return fold_from_representatives(g, n, reps);
}

GroupFunctionTable make_tightness_witness(std::size_t n, const GroupPtr& g, std::uint64_t seed) {
  const GroupPower gp(g, n);
  const Subgroup comm = commutator_subgroup(g);
  Rng rng(seed);
  // representatives have x_1 = 1, so f(rep) is just the [G,G] part
  std::vector<ElementId> reps(gp.orbit_count());
  for (auto& v : reps) v = comm.members[rng.below(comm.size())];
  return fold_from_representatives(g, n, reps);
}

DictTestResult test_pass_probability(const GroupFunctionTable& f, const DictTestConfig& cfg) {
  check_table(f);
  check_epsilon(cfg.epsilon);
  DictTestResult r;
  if (cfg.mode == DictMode::Exact) {
    r.product_distribution = exact_distribution(f, cfg.epsilon);
    r.p = r.product_distribution[kIdentity];
  } else {
    r.product_distribution = sampled_distribution(f, cfg);
    r.p = r.product_distribution[kIdentity];
    r.ci_halfwidth = kZ99 * std::sqrt(r.p * (1 - r.p) / static_cast<double>(cfg.samples));
  }
  return r;
}

IrrepDecomposition decompose_distribution(const std::vector<double>& dist, const IrrepSet& set) {
  if (dist.size() != set.group()->order())
    throw Error(ErrorCode::ShapeMismatch, "distribution length differs from the group order");
  const double order = static_cast<double>(dist.size());
  IrrepDecomposition d;
  d.p = dist[kIdentity];
  for (std::size_t r = 0; r < set.size(); ++r) {
    Complex e = 0;
    const auto& chi = set.character(r).values;
    for (std::size_t h = 0; h < dist.size(); ++h) e += dist[h] * chi[h];
    const Complex term = static_cast<double>(set.dim(r)) / order * e;
    d.terms.push_back(term);
    d.total += term;
    if (set.dim(r) == 1) d.dim1_total += term;
  }
  return d;
}

IrrepDecomposition pass_prob_irrep_decomposition(const GroupFunctionTable& f,
                                                 const DictTestConfig& cfg, const IrrepSet& set) {
  check_table(f);
  check_epsilon(cfg.epsilon);
  if (!set.group()->same_table(*f.group))
    throw Error(ErrorCode::ShapeMismatch, "irreps belong to a different group");
  return decompose_distribution(exact_distribution(f, cfg.epsilon), set);
}

CoefficientDiagnostic strongest_coefficient(const GroupFunctionTable& f, const Irrep& rho,
                                            const IrrepSet& set) {
  if (rho.dim < 2) throw Error(ErrorCode::DimOne, "diagnostic needs an irrep of dimension >= 2");
  std::map<std::vector<std::size_t>, double> mass;
  for (std::size_t i = 0; i < rho.dim; ++i)
    for (std::size_t j = 0; j < rho.dim; ++j) {
      const FourierTable t = fourier_transform(entry_function(f, rho, i, j), set);
      for (const auto& [alpha, m] : t.coeffs) mass[alpha] += static_cast<double>(m.rows()) * m.squaredNorm();
    }
  CoefficientDiagnostic best;
  for (const auto& [alpha, m] : mass) {
    const IrrepIndex idx = make_irrep_index(set, alpha);
    if (idx.w2 == 0) continue;
    best.total_mass += m;
    if (best.alpha.empty() || m > best.mass + 1e-15) {
      best.alpha = alpha;
      best.dim = idx.dim;
      best.w2 = idx.w2;
      best.mass = m;
    }
  }
  return best;
}

}  // namespace nalin
