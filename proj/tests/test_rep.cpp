#include <algorithm>
#include <cmath>
#include <numeric>

#include "nalin/catalog.hpp"
#include "nalin/random.hpp"
#include "nalin/rep.hpp"
#include "support.hpp"

using namespace nalin;

namespace {

std::vector<std::size_t> dims_of(const IrrepSet& set) {
  std::vector<std::size_t> d;
  for (const auto& r : set.irreps()) d.push_back(r.dim);
  return d;
}

std::vector<std::string> supported_groups() {
  std::vector<std::string> out{"Z1", "Z2", "Z4", "Z6", "Z2xZ2", "S3", "S4", "A4", "D4", "Q8",
                               "S3xZ2", "Z3xS3"};
  if (a5_irreps_available()) out.push_back("A5");
  return out;
}

Matrix random_matrix(Rng& rng, int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(rng.unit() * 2 - 1, rng.unit() * 2 - 1);
  return m;
}

}  // namespace

TEST(Rep, InvariantSuitePassesForCatalogGroups) {
  for (const auto& name : supported_groups()) {
    SCOPED_TRACE(name);
    const GroupPtr g = load_group(name);
    const IrrepSet set = irreps_of(g);
    const IrrepSetReport& r = set.report();
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.exhaustive);
    EXPECT_LE(r.homomorphism, 1e-9);
    EXPECT_LE(r.unitarity, 1e-9);
    EXPECT_LE(r.character_orthogonality, 1e-9);
    EXPECT_LE(r.entry_orthogonality, 1e-9);
    EXPECT_LE(r.sum_zero, 1e-9);
    EXPECT_LE(r.irreducibility, 1e-6);
    EXPECT_EQ(r.dim_square_sum, g->order());
    EXPECT_EQ(set.size(), conjugacy_classes(*g).size());
    EXPECT_TRUE(set[0].is_trivial);
    for (std::size_t i = 0; i < set.size(); ++i)
      EXPECT_NEAR(set.character(i).values[kIdentity].real(), static_cast<double>(set.dim(i)), 1e-12);
  }
}

TEST(Rep, Dimensions) {
  EXPECT_EQ(dims_of(irreps_of(load_group("S3"))), (std::vector<std::size_t>{1, 1, 2}));
  EXPECT_EQ(dims_of(irreps_of(load_group("Q8"))), (std::vector<std::size_t>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims_of(irreps_of(load_group("D4"))), (std::vector<std::size_t>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims_of(irreps_of(load_group("S4"))), (std::vector<std::size_t>{1, 1, 2, 3, 3}));
  EXPECT_EQ(dims_of(irreps_of(load_group("A4"))), (std::vector<std::size_t>{1, 1, 1, 3}));
  EXPECT_EQ(irreps_of(load_group("S3")).min_nontrivial_dim(), 1u);
  EXPECT_EQ(irreps_of(load_group("Z1")).min_nontrivial_dim(), 0u);
  if (a5_irreps_available()) {
    const IrrepSet a5 = irreps_of(load_group("A5"));
    EXPECT_EQ(dims_of(a5), (std::vector<std::size_t>{1, 3, 3, 4, 5}));
    EXPECT_EQ(a5.min_nontrivial_dim(), 3u);
  } else {
    EXPECT_CODE(irreps_of(load_group("A5")), ErrorCode::Unsupported);
  }
}

TEST(Rep, CyclicCharacters) {
  const IrrepSet z4 = irreps_of(load_group("Z4"));
  const Complex i(0, 1);
  for (std::size_t k = 0; k < 4; ++k)
    for (ElementId g = 0; g < 4; ++g)
      EXPECT_NEAR(std::abs(z4.character(k).values[g] - std::pow(i, static_cast<int>(k * g))), 0, 1e-12);
}

TEST(Rep, CharacterValues) {
  const IrrepSet s3 = irreps_of(load_group("S3"));
  for (ElementId g = 0; g < 6; ++g) {
    EXPECT_NEAR(std::abs(s3.character(0).values[g] - 1.0), 0, 1e-12);
    // transpositions have order 2 and a zero trace in the 2-dim irrep
    if (s3.group()->element_order(g) == 2) EXPECT_NEAR(std::abs(s3.character(2).values[g]), 0, 1e-12);
  }
}

TEST(Rep, UnsupportedGroups) {
  // a relabelled copy of S3 is not the catalog table
  const GroupPtr s3 = load_group("S3");
  std::vector<ElementId> perm{0, 2, 1, 3, 5, 4};
  std::vector<ElementId> table(36);
  for (ElementId a = 0; a < 6; ++a)
    for (ElementId b = 0; b < 6; ++b) table[perm[a] * 6 + perm[b]] = perm[s3->mul(a, b)];
  auto relabelled = std::make_shared<const FiniteGroup>("S3", 6, table);
  if (!relabelled->same_table(*s3)) EXPECT_CODE(irreps_of(relabelled), ErrorCode::Unsupported);
  auto anon = std::make_shared<const FiniteGroup>("mystery", 6, s3->table());
  EXPECT_CODE(irreps_of(anon), ErrorCode::Unsupported);
  // supplying generator images works for any table
  const CatalogGroup cg = build_catalog_group("S3");
  Matrix sgn(1, 1), t(2, 2), r(2, 2);
  const IrrepSet ref = irreps_of(s3);
  std::vector<std::vector<Matrix>> images(3);
  for (std::size_t k = 0; k < 3; ++k)
    for (ElementId gen : cg.generators) images[k].push_back(ref[k](gen));
  const IrrepSet rebuilt = irreps_from_generator_images(anon, cg.generators, images);
  EXPECT_TRUE(rebuilt.report().ok());
  // a non-trivial first irrep is rejected
  std::swap(images[0], images[1]);
  EXPECT_CODE(irreps_from_generator_images(anon, cg.generators, images), ErrorCode::InvariantFailure);
}

TEST(Rep, BrokenImagesFailValidation) {
  const GroupPtr s3 = load_group("S3");
  const CatalogGroup cg = build_catalog_group("S3");
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  Matrix two(1, 1);
  two(0, 0) = 2.0;  // not unitary, not a homomorphism
  std::vector<std::vector<Matrix>> images{{one, one}, {two, one}};
  EXPECT_CODE(irreps_from_generator_images(s3, cg.generators, images), ErrorCode::InvariantFailure);
}

TEST(Rep, TensorDecomposition) {
  const IrrepSet s3 = irreps_of(load_group("S3"));
  const std::vector<std::size_t> std_std{2, 2};
  const auto dec = tensor_decompose(s3, std_std);
  EXPECT_EQ(dec.parts, (std::vector<std::pair<std::size_t, long long>>{{0, 1}, {1, 1}, {2, 1}}));
  const std::vector<std::size_t> with_trivial{2, 0};
  EXPECT_EQ(tensor_decompose(s3, with_trivial).parts,
            (std::vector<std::pair<std::size_t, long long>>{{2, 1}}));

  const IrrepSet q8 = irreps_of(load_group("Q8"));
  const std::vector<std::size_t> q{4, 4};
  EXPECT_EQ(tensor_decompose(q8, q).parts,
            (std::vector<std::pair<std::size_t, long long>>{{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
  EXPECT_CODE(tensor_decompose(q8, std::vector<std::size_t>{}), ErrorCode::InvalidArgument);
}

TEST(Rep, TensorDimensionsBalanceAndBoundHoldsExhaustively) {
  for (const auto& name : supported_groups()) {
    SCOPED_TRACE(name);
    const IrrepSet set = irreps_of(load_group(name));
    const std::size_t k = set.size();
    std::vector<std::size_t> tuple;
    std::function<void(std::size_t)> rec = [&](std::size_t len) {
      if (!tuple.empty()) {
        const auto dec = tensor_decompose(set, tuple);
        std::size_t lhs = 0, rhs = 1;
        for (const auto& [id, m] : dec.parts) lhs += static_cast<std::size_t>(m) * set.dim(id);
        for (std::size_t f : tuple) rhs *= set.dim(f);
        EXPECT_EQ(lhs, rhs);
        if (rhs >= 2) {
          EXPECT_TRUE(check_multiplicity_bound(set, tuple).ok);
        } else {
          EXPECT_CODE(check_multiplicity_bound(set, tuple), ErrorCode::HypothesisViolated);
        }
      }
      if (len == 0) return;
      for (std::size_t i = 0; i < k; ++i) {
        tuple.push_back(i);
        rec(len - 1);
        tuple.pop_back();
      }
    };
    rec(k > 12 ? 2 : 3);
  }
}

TEST(Rep, MultiplicityBoundExamples) {
  const IrrepSet s3 = irreps_of(load_group("S3"));
  const auto r = check_multiplicity_bound(s3, std::vector<std::size_t>{2, 2});
  EXPECT_EQ(r.max_multiplicity, 1);
  EXPECT_NEAR(r.bound, 5.0 / 6.0 * 4, 1e-12);
  const auto single = check_multiplicity_bound(s3, std::vector<std::size_t>{2});
  EXPECT_EQ(single.max_multiplicity, 1);
  EXPECT_TRUE(single.ok);
  const IrrepSet q8 = irreps_of(load_group("Q8"));
  const auto rq = check_multiplicity_bound(q8, std::vector<std::size_t>{4, 4});
  EXPECT_EQ(rq.max_multiplicity, 1);
  EXPECT_NEAR(rq.bound, 7.0 / 8.0 * 4, 1e-12);
}

TEST(Rep, ConjugatePairing) {
  for (const auto& name : supported_groups()) {
    SCOPED_TRACE(name);
    const IrrepSet set = irreps_of(load_group(name));
    const auto pairing = dim1_pairing(set);
    EXPECT_EQ(pairing.at(0), 0u);
    for (const auto& [a, b] : pairing) {
      EXPECT_EQ(pairing.at(b), a);
      for (std::size_t x = 0; x < set.group()->order(); ++x)
        EXPECT_NEAR(std::abs(set.character(a).values[x] - std::conj(set.character(b).values[x])), 0, 1e-9);
    }
  }
  const IrrepSet s3 = irreps_of(load_group("S3"));
  EXPECT_EQ(dim1_pairing(s3).at(1), 1u);
  const IrrepSet z3 = irreps_of(load_group("Z3"));
  const auto p = dim1_pairing(z3);
  EXPECT_EQ(p.at(1), 2u);
  EXPECT_EQ(p.at(2), 1u);
}

TEST(Rep, HilbertSchmidtNorm) {
  Rng rng = Rng::stream(11, 0);
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + static_cast<int>(rng.below(5));
    const Matrix a = random_matrix(rng, d), b = random_matrix(rng, d);
    EXPECT_LE(hs_norm(a * b), hs_norm(a) * hs_norm(b) + 1e-12);
  }
  const IrrepSet s4 = irreps_of(load_group("S4"));
  for (std::size_t k = 0; k < s4.size(); ++k)
    for (ElementId g = 0; g < 24; ++g) {
      const Matrix a = random_matrix(rng, static_cast<int>(s4.dim(k)));
      EXPECT_NEAR(hs_norm(s4[k](g) * a), hs_norm(a), 1e-12);
    }
}

TEST(Rep, RestrictionThroughProjection) {
  const IrrepSet s3 = irreps_of(load_group("S3"));
  // identity projection keeps alpha
  const std::vector<std::size_t> alpha{2, 1, 2};
  const std::vector<std::size_t> id{0, 1, 2};
  const auto same = restrict_through_projection(s3, alpha, id, 3, 1, 0.5);
  ASSERT_EQ(same.multiplicities.size(), 1u);
  EXPECT_EQ(same.multiplicities.begin()->first, alpha);
  EXPECT_EQ(same.multiplicities.begin()->second, 1);

  // R = 2, L = 1: the diagonal restriction is std (x) std
  const std::vector<std::size_t> a2{2, 2};
  const std::vector<std::size_t> collapse{0, 0};
  const auto diag = restrict_through_projection(s3, a2, collapse, 1, 1, 0.5);
  const auto dec = tensor_decompose(s3, a2);
  ASSERT_EQ(diag.multiplicities.size(), dec.parts.size());
  for (const auto& [irrep, mult] : dec.parts)
    EXPECT_EQ(diag.multiplicities.at(std::vector<std::size_t>{irrep}), mult);

  // two large blocks, c = 2: every constituent of dim < 2 has n <= eps0^2 dim(alpha)
  const std::vector<std::size_t> a4{2, 2, 2, 2};
  const std::vector<std::size_t> pi{0, 0, 1, 1};
  const double eps0 = std::sqrt(1 - 1.0 / 6);
  const auto r = restrict_through_projection(s3, a4, pi, 2, 2, eps0);
  EXPECT_TRUE(r.hypothesis);
  EXPECT_TRUE(r.dichotomy_ok);
  EXPECT_TRUE(r.blockwise_bound_ok);
  EXPECT_FALSE(r.parameters_in_regime);
  long long total = 0;
  for (const auto& [beta, n] : r.multiplicities) {
    std::size_t d = 1;
    for (std::size_t b : beta) d *= s3.dim(b);
    total += n * static_cast<long long>(d);
  }
  EXPECT_EQ(total, 16);

  const std::vector<std::size_t> not_onto{0, 0};
  EXPECT_CODE(restrict_through_projection(s3, a2, not_onto, 2, 1, 0.5), ErrorCode::InvalidArgument);
}
