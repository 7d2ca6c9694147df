#include <cmath>

#include "nalin/dictatorship.hpp"
#include "support.hpp"

using namespace nalin;

namespace {

// Sum over the 2^n resampling patterns: resampled coordinates get a, b, c
// independent and uniform, the rest c_i = (a_i b_i)^-1.
double noise_pattern_oracle(const GroupFunctionTable& f, double eps) {
  const FiniteGroup& g = *f.group;
  const GroupPower gp(f.group, f.n);
  const std::size_t q = g.order(), n = f.n;
  double p = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += (mask >> i) & 1;
    const double pattern = std::pow(eps, static_cast<double>(k)) * std::pow(1 - eps, static_cast<double>(n - k));
    std::size_t free_count = 1;
    for (std::size_t i = 0; i < k; ++i) free_count *= q;
    std::size_t hits = 0, total = 0;
    for (std::size_t a = 0; a < gp.size(); ++a)
      for (std::size_t b = 0; b < gp.size(); ++b)
        for (std::size_t extra = 0; extra < free_count; ++extra) {
          std::vector<ElementId> c(n);
          std::size_t e = extra;
          for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
              c[i] = static_cast<ElementId>(e % q);
              e /= q;
            } else {
              c[i] = g.inv(g.mul(gp.coordinate(a, i), gp.coordinate(b, i)));
            }
          }
          ++total;
          hits += g.mul(g.mul(f.values[a], f.values[b]), f.values[gp.index(c)]) == kIdentity;
        }
    p += pattern * static_cast<double>(hits) / static_cast<double>(total);
  }
  return p;
}

DictTestConfig exact(double eps) {
  DictTestConfig c;
  c.epsilon = eps;
  return c;
}

DictTestConfig sampled(double eps, std::size_t samples, std::uint64_t seed) {
  DictTestConfig c;
  c.epsilon = eps;
  c.mode = DictMode::MonteCarlo;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Dictatorship, Constructions) {
  const GroupPtr s3 = load_group("S3");
  const auto id = make_dictator(0, 1, s3);
  for (ElementId x = 0; x < 6; ++x) EXPECT_EQ(id.values[x], x);
  const auto d = make_dictator(1, 2, s3);
  EXPECT_TRUE(d.folded);
  EXPECT_TRUE(is_folded(d));
  EXPECT_CODE(make_dictator(2, 2, s3), ErrorCode::OutOfRange);

  const auto r1 = make_random_folded(2, s3, 1), r2 = make_random_folded(2, s3, 2);
  EXPECT_TRUE(is_folded(r1));
  EXPECT_NE(r1.values, r2.values);
  EXPECT_EQ(r1.values, make_random_folded(2, s3, 1).values);
  EXPECT_EQ(GroupPower(s3, 3).orbit_count(), 36u);

  for (const char* name : {"S3", "Q8", "A4"}) {
    const GroupPtr g = load_group(name);
    const QuotientGroup q = quotient(g, commutator_subgroup(g));
    const auto w = make_tightness_witness(2, g, 5);
    EXPECT_TRUE(is_folded(w));
    const GroupPower gp(g, 2);
    for (std::size_t x = 0; x < gp.size(); ++x)
      EXPECT_EQ(q.projection[w.values[x]], q.projection[gp.coordinate(x, 0)]);
  }
}

TEST(Dictatorship, DictatorEntryMassIsWeightOne) {
  const GroupPtr s3 = load_group("S3");
  const IrrepSet set = irreps_of(s3);
  const auto d = make_dictator(1, 2, s3);
  const auto t = fourier_transform(entry_function(d, set[2], 0, 1), set);
  for (const auto& [alpha, m] : t.coeffs) {
    const IrrepIndex idx = make_irrep_index(set, alpha);
    if (alpha == std::vector<std::size_t>{0, 2})
      EXPECT_GT(m.norm(), 0.1);
    else
      EXPECT_LT(m.norm(), 1e-12) << idx.weight;
  }
}

TEST(Dictatorship, CompletenessAndNoise) {
  const GroupPtr s3 = load_group("S3");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto d = make_dictator(i, 2, s3);
    EXPECT_EQ(test_pass_probability(d, exact(0)).p, 1.0);
    for (double eps : {0.1, 0.3, 1.0}) {
      const double p = test_pass_probability(d, exact(eps)).p;
      EXPECT_NEAR(p, 1 - eps * 5.0 / 6, 1e-12);
      EXPECT_NEAR(p, noise_pattern_oracle(d, eps), 1e-12);
    }
  }
  GroupFunctionTable one{s3, 2, std::vector<ElementId>(36, kIdentity), false};
  EXPECT_EQ(test_pass_probability(one, exact(0)).p, 1.0);
  EXPECT_NEAR(test_pass_probability(one, exact(0.4)).p, 1.0, 1e-12);
}

TEST(Dictatorship, NoiseOracleOnRandomFunctions) {
  for (const char* name : {"S3", "Q8"}) {
    const GroupPtr g = load_group(name);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto f = make_random_folded(2, g, seed);
      for (double eps : {0.0, 0.25, 0.7})
        EXPECT_NEAR(test_pass_probability(f, exact(eps)).p, noise_pattern_oracle(f, eps), 1e-12);
    }
  }
}

TEST(Dictatorship, ExactAndSampledAgree) {
  const GroupPtr s3 = load_group("S3");
  const std::vector<GroupFunctionTable> fs{make_dictator(0, 2, s3), make_random_folded(2, s3, 3),
                                           make_tightness_witness(2, s3, 4)};
  for (const auto& f : fs)
    for (double eps : {0.0, 0.3}) {
      const auto e = test_pass_probability(f, exact(eps));
      const auto m = test_pass_probability(f, sampled(eps, 20000, 9));
      EXPECT_EQ(e.ci_halfwidth, 0);
      EXPECT_LE(std::abs(e.p - m.p), 4 * m.ci_halfwidth + 1e-12);
    }
  const auto a = test_pass_probability(fs[1], sampled(0.2, 1000, 77));
  const auto b = test_pass_probability(fs[1], sampled(0.2, 1000, 77));
  EXPECT_EQ(a.p, b.p);
}

TEST(Dictatorship, Budgets) {
  const GroupPtr a5 = load_group("A5");
  const auto f = make_dictator(0, 3, a5);  // 60^9 with noise, 60^6 without
  EXPECT_CODE(test_pass_probability(f, exact(0.1)), ErrorCode::BudgetExceeded);
  const auto g = make_dictator(0, 5, load_group("S3"));
  EXPECT_CODE(test_pass_probability(g, exact(0.1)), ErrorCode::BudgetExceeded);
  EXPECT_CODE(test_pass_probability(g, exact(1.5)), ErrorCode::InvalidArgument);
}

TEST(Dictatorship, IrrepDecomposition) {
  for (const char* name : {"S3", "Q8", "A4"}) {
    SCOPED_TRACE(name);
    const GroupPtr g = load_group(name);
    const IrrepSet set = irreps_of(g);
    const double order = static_cast<double>(g->order());
    const double comm = static_cast<double>(commutator_subgroup(g).size());

    GroupFunctionTable one{g, 1, std::vector<ElementId>(g->order(), kIdentity), false};
    const auto c = pass_prob_irrep_decomposition(one, exact(0), set);
    for (std::size_t r = 0; r < set.size(); ++r)
      EXPECT_NEAR(std::abs(c.terms[r] - std::pow(set.dim(r), 2) / order), 0, 1e-12);
    EXPECT_NEAR(std::abs(c.total - 1.0), 0, 1e-12);

    const auto d = pass_prob_irrep_decomposition(make_dictator(0, 2, g), exact(0), set);
    EXPECT_NEAR(std::abs(d.total - 1.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(d.dim1_total - 1.0 / comm), 0, 1e-12);
    EXPECT_NEAR(std::abs(d.terms[0] - 1.0 / order), 0, 1e-12);

    for (std::uint64_t seed = 0; seed < 4; ++seed)
      for (double eps : {0.0, 0.2}) {
        const auto f = make_random_folded(2, g, seed);
        const auto r = pass_prob_irrep_decomposition(f, exact(eps), set);
        EXPECT_NEAR(std::abs(r.total - test_pass_probability(f, exact(eps)).p), 0, 1e-9);
        EXPECT_NEAR(std::abs(r.terms[0] - 1.0 / order), 0, 1e-12);
        EXPECT_LE(std::abs(r.dim1_total), 1.0 / comm + 1e-9);
      }
  }
}

TEST(Dictatorship, DirectCountMatchesDecomposition) {
  // noiseless pass probability counted by a plain loop
  const GroupPtr s3 = load_group("S3");
  const IrrepSet set = irreps_of(s3);
  const GroupPower gp(s3, 2);
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const auto f = make_random_folded(2, s3, seed);
    std::size_t hits = 0;
    for (std::size_t a = 0; a < gp.size(); ++a)
      for (std::size_t b = 0; b < gp.size(); ++b) {
        const std::size_t c = gp.inv(gp.mul(a, b));
        hits += s3->mul(s3->mul(f.values[a], f.values[b]), f.values[c]) == kIdentity;
      }
    const auto r = pass_prob_irrep_decomposition(f, exact(0), set);
    EXPECT_NEAR(r.total.real(), static_cast<double>(hits) / 1296.0, 1e-9);
  }
}

TEST(Dictatorship, TightnessWitnessNearOneOverCommutator) {
  const GroupPtr s3 = load_group("S3");
  const auto w = make_tightness_witness(4, s3, 1);
  const auto e = test_pass_probability(w, exact(0));
  EXPECT_NEAR(e.p, 1.0 / 3, 0.02);
  const auto m = test_pass_probability(w, sampled(0, 100000, 2));
  EXPECT_NEAR(m.p, 1.0 / 3, 0.02);
}

TEST(Dictatorship, StrongestCoefficient) {
  const GroupPtr s3 = load_group("S3");
  const IrrepSet set = irreps_of(s3);
  const auto diag = strongest_coefficient(make_dictator(1, 2, s3), set[2], set);
  EXPECT_EQ(diag.alpha, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(diag.w2, 1u);
  // each entry of a unitary 2x2 has E|rho_ij|^2 = 1/2, all carried by alpha
  EXPECT_NEAR(diag.mass, 2.0, 1e-12);
  EXPECT_NEAR(diag.total_mass, 2.0, 1e-12);
  EXPECT_CODE(strongest_coefficient(make_dictator(0, 1, s3), set[1], set), ErrorCode::DimOne);
}
