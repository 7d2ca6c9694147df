#include <cmath>
#include <set>

#include "nalin/random.hpp"
#include "nalin/reduction.hpp"
#include "support.hpp"

using namespace nalin;

namespace {

LabelCover identity_lc(std::size_t num_u, std::size_t num_v, std::size_t L, std::size_t edges, std::uint64_t seed) {
  Rng rng(seed);
  LabelCover lc{num_u, num_v, L, L, {}};
  std::vector<std::size_t> id(L);
  for (std::size_t i = 0; i < L; ++i) id[i] = i;
  for (std::size_t k = 0; k < edges; ++k) lc.edges.push_back({rng.below(num_u), rng.below(num_v), id});
  return lc;
}

std::size_t satisfied_count(const LinInstance& inst, const Assignment& a) {
  std::size_t n = 0;
  for (const auto& c : inst.constraints) n += satisfies(*inst.group, c, a);
  return n;
}

}  // namespace

TEST(Reduction, LabelCoverValue) {
  LcSizes s{2, 3, 2, 3, 6};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto toy = generate_toy_lc(LcKind::Planted, s, seed);
    ASSERT_TRUE(toy.planted);
    EXPECT_EQ(lc_value(toy.lc, *toy.planted), 1.0);
    for (const auto& e : toy.lc.edges) {
      std::set<std::size_t> image(e.pi.begin(), e.pi.end());
      EXPECT_EQ(image.size(), 2u);
    }
  }
  // u labelled 0, v labelled 1 under identity projections: every edge fails
  const LabelCover lc = identity_lc(1, 2, 2, 4, 3);
  const Labeling bad{{0}, {1, 1}};
  EXPECT_EQ(lc_value(lc, bad), 0.0);
  for (const auto& e : lc.edges) EXPECT_NE(e.pi[bad.v[e.v]], bad.u[e.u]);

  EXPECT_CODE(lc_value(lc, Labeling{{2}, {0, 0}}), ErrorCode::OutOfRange);
  EXPECT_CODE(lc_value(lc, Labeling{{0}, {0}}), ErrorCode::ShapeMismatch);
}

TEST(Reduction, RandomLabelingOnIdentityProjections) {
  const std::size_t L = 4;
  const LabelCover lc = identity_lc(3, 3, L, 12, 1);
  double sum = 0;
  const int draws = 20000;
  for (int t = 0; t < draws; ++t) {
    Rng rng = Rng::stream(5, static_cast<std::uint64_t>(t));
    Labeling lab;
    for (int i = 0; i < 3; ++i) lab.u.push_back(rng.below(L));
    for (int i = 0; i < 3; ++i) lab.v.push_back(rng.below(L));
    sum += lc_value(lc, lab);
  }
  EXPECT_NEAR(sum / draws, 1.0 / L, 0.01);
}

TEST(Reduction, ToyGeneration) {
  LcSizes s{2, 2, 2, 3, 5};
  const auto a = generate_toy_lc(LcKind::Random, s, 4), b = generate_toy_lc(LcKind::Random, s, 4);
  EXPECT_FALSE(a.planted);
  EXPECT_EQ(serialize_label_cover(a.lc), serialize_label_cover(b.lc));
  EXPECT_NE(serialize_label_cover(a.lc), serialize_label_cover(generate_toy_lc(LcKind::Random, s, 5).lc));
  EXPECT_CODE(generate_toy_lc(LcKind::Planted, LcSizes{1, 1, 3, 2, 1}, 0), ErrorCode::InvalidArgument);
  EXPECT_CODE(generate_toy_lc(LcKind::Planted, LcSizes{1, 1, 1, 1, 0}, 0), ErrorCode::InvalidArgument);
}

TEST(Reduction, Smoothness) {
  const LabelCover id = identity_lc(2, 1, 4, 3, 0);
  EXPECT_NEAR(smoothness_stat(id, 0, {0, 2, 3}, 0.2).stat, 1.0 / 3, 1e-15);
  EXPECT_EQ(smoothness_stat(id, 0, {1}, 0.2).stat, 1.0);
  EXPECT_TRUE(smoothness_stat(id, 0, {1}, 0.2).ok);

  LabelCover lc{2, 1, 2, 4, {}};
  lc.edges.push_back({0, 0, {0, 0, 1, 1}});
  lc.edges.push_back({1, 0, {0, 1, 0, 1}});
  // alpha = {0, 1}: images {0} and {0, 1}
  const auto r = smoothness_stat(lc, 0, {0, 1}, 0.25);
  EXPECT_NEAR(r.stat, (1.0 + 0.5) / 2, 1e-15);
  EXPECT_NEAR(r.bound, std::pow(2.0, -0.5), 1e-15);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.neighbors, 2u);
  EXPECT_CODE(smoothness_stat(lc, 0, {}, 0.25), ErrorCode::InvalidArgument);
}

TEST(Reduction, ShapeOfFullReduction) {
  const GroupPtr s3 = load_group("S3");
  LabelCover lc{1, 1, 1, 2, {{0, 0, {0, 0}}}};
  const ReducedInstance red = reduce(lc, s3, ReduceMode::Full);
  EXPECT_EQ(red.instance.constraints.size(), 216u);
  EXPECT_EQ(red.instance.num_vars, 7u);
  EXPECT_EQ(reduced_variable_count(lc, 6), 7u);
  double total = 0;
  for (const auto& c : red.instance.constraints) {
    EXPECT_EQ(c.terms.size(), 3u);
    EXPECT_EQ(c.weight, red.instance.constraints[0].weight);
    total += c.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);

  const auto big = generate_toy_lc(LcKind::Planted, LcSizes{2, 2, 3, 4, 3}, 0);
  EXPECT_CODE(reduce(big.lc, load_group("A4"), ReduceMode::Full), ErrorCode::BudgetExceeded);
}

TEST(Reduction, CompletenessOnPlantedCovers) {
  const GroupPtr s3 = load_group("S3");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(1000 + seed);
    LcSizes s;
    s.num_u = 1 + rng.below(2);
    s.num_v = 1 + rng.below(3);
    s.L = 1 + rng.below(2);
    s.R = s.L + rng.below(4 - s.L);
    s.num_edges = 1 + rng.below(3);
    const auto toy = generate_toy_lc(LcKind::Planted, s, seed);
    const ReducedInstance red = reduce(toy.lc, s3, ReduceMode::Full);
    EXPECT_EQ(red.instance.num_vars, reduced_variable_count(toy.lc, 6));
    const Assignment a = longcode_assignment(toy.lc, *toy.planted, red);
    EXPECT_EQ(satisfied_count(red.instance, a), red.instance.constraints.size());
    EXPECT_NEAR(evaluate(red.instance, a), 1.0, 1e-12);
    for (const auto& t : tables_from_assignment(red, a).v) EXPECT_TRUE(is_folded(t));
  }
}

TEST(Reduction, MismatchedEdgesPassWithOneOverG) {
  const GroupPtr s3 = load_group("S3");
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto toy = generate_toy_lc(LcKind::Planted, LcSizes{2, 2, 2, 3, 4}, seed);
    Labeling lab = *toy.planted;
    lab.v[0] = (lab.v[0] + 1) % 3;
    const double lc_val = lc_value(toy.lc, lab);
    const ReducedInstance red = reduce(toy.lc, s3, ReduceMode::Full);
    const double expected = 1 - (1 - lc_val) * (1 - 1.0 / 6);
    EXPECT_NEAR(evaluate(red.instance, longcode_assignment(toy.lc, lab, red)), expected, 1e-12);
  }
}

TEST(Reduction, FoldingMatchesDirectTest) {
  const GroupPtr s3 = load_group("S3");
  const auto toy = generate_toy_lc(LcKind::Random, LcSizes{2, 2, 2, 2, 3}, 8);
  const ReducedInstance red = reduce(toy.lc, s3, ReduceMode::Full);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    Assignment a(red.instance.num_vars);
    for (auto& x : a) x = static_cast<ElementId>(rng.below(6));
    const NodeTables t = tables_from_assignment(red, a);
    EXPECT_EQ(assignment_from_tables(red, t), a);
    EXPECT_NEAR(evaluate(red.instance, a), direct_test_value(toy.lc, t), 1e-12);
  }
}

TEST(Reduction, SampledMode) {
  const GroupPtr s3 = load_group("S3");
  const auto toy = generate_toy_lc(LcKind::Planted, LcSizes{2, 3, 2, 3, 4}, 2);
  const auto a = reduce(toy.lc, s3, ReduceMode::Sampled, 7, 500);
  const auto b = reduce(toy.lc, s3, ReduceMode::Sampled, 7, 500);
  EXPECT_EQ(serialize_instance(a.instance), serialize_instance(b.instance));
  EXPECT_EQ(a.instance.constraints.size(), 500u);
  EXPECT_EQ(satisfied_count(a.instance, longcode_assignment(toy.lc, *toy.planted, a)), 500u);
}

TEST(Reduction, DecodingLongCodes) {
  const GroupPtr s3 = load_group("S3");
  const IrrepSet set = irreps_of(s3);
  const std::size_t rho = 2;
  ASSERT_EQ(set.dim(rho), 2u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto toy = generate_toy_lc(LcKind::Planted, LcSizes{2, 3, 2, 3, 5}, seed);
    const ReducedInstance red = reduce(toy.lc, s3, ReduceMode::Full);
    const NodeTables t = tables_from_assignment(red, longcode_assignment(toy.lc, *toy.planted, red));
    const auto d = fourier_decode(toy.lc, t, set, rho, 0, 1, 1, seed, 2000);
    for (double m : d.u_mass) EXPECT_NEAR(m, 0.5, 1e-12);
    for (double m : d.v_mass) EXPECT_NEAR(m, 0.5, 1e-12);
    EXPECT_NEAR(d.bottom_rate, 0.5, 0.05);
    EXPECT_GT(d.labeled_edges, 0u);
    EXPECT_EQ(d.conditional_value, 1.0);
    EXPECT_EQ(d.best_value, 1.0);
    for (const auto& lab : d.trials) {
      for (std::size_t u = 0; u < lab.u.size(); ++u)
        if (lab.u[u] != kBottom) EXPECT_EQ(lab.u[u], toy.planted->u[u]);
      for (std::size_t v = 0; v < lab.v.size(); ++v)
        if (lab.v[v] != kBottom) EXPECT_EQ(lab.v[v], toy.planted->v[v]);
    }
  }
}

TEST(Reduction, DecodingArbitraryTables) {
  const GroupPtr s3 = load_group("S3");
  const IrrepSet set = irreps_of(s3);
  const auto toy = generate_toy_lc(LcKind::Random, LcSizes{2, 2, 2, 3, 4}, 1);
  const ReducedInstance red = reduce(toy.lc, s3, ReduceMode::Full);
  Rng rng(3);
  Assignment a(red.instance.num_vars);
  for (auto& x : a) x = static_cast<ElementId>(rng.below(6));
  const NodeTables t = tables_from_assignment(red, a);
  const auto d = fourier_decode(toy.lc, t, set, 2, 1, 0, 1, 3, 500);
  for (double m : d.u_mass) EXPECT_LE(m, 1 + 1e-9);
  for (double m : d.v_mass) EXPECT_LE(m, 1 + 1e-9);
  EXPECT_GE(d.bottom_rate, 0.0);

  NodeTables unfolded = t;
  unfolded.v[0].values[1] = (unfolded.v[0].values[1] + 1) % 6;
  EXPECT_CODE(fourier_decode(toy.lc, unfolded, set, 2, 0, 0, 0, 1, 10), ErrorCode::NotFolded);
  EXPECT_CODE(fourier_decode(toy.lc, t, set, 1, 0, 0, 0, 1, 10), ErrorCode::DimOne);
  EXPECT_CODE(fourier_decode(toy.lc, t, set, 2, 2, 0, 0, 1, 10), ErrorCode::OutOfRange);
}

TEST(Reduction, SoundnessParameters) {
  const auto s = soundness_parameters(0.1, 6, 0.25);
  EXPECT_NEAR(std::pow(s.C, -0.125) / (0.01 / (12 * std::pow(6.0, 6))), 1.0, 1e-9);
  EXPECT_NEAR(s.eta * s.c, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.eps0 * s.eps0, s.eta);
  EXPECT_TRUE(s.c_regime);
  EXPECT_LT(s.log10_lc_soundness, -1e6);
  EXPECT_CODE(soundness_parameters(0.1, 6, 0.4), ErrorCode::InvalidArgument);
  EXPECT_CODE(soundness_parameters(1.5, 6, 0.2), ErrorCode::InvalidArgument);
}

TEST(Reduction, Files) {
  const auto toy = generate_toy_lc(LcKind::Planted, LcSizes{2, 3, 2, 3, 4}, 6);
  const std::string text = serialize_label_cover(toy.lc);
  EXPECT_EQ(serialize_label_cover(parse_label_cover(text)), text);
  const std::string lab = serialize_labeling(*toy.planted);
  EXPECT_EQ(serialize_labeling(parse_labeling(lab)), lab);
  EXPECT_CODE(parse_label_cover("lc v1\nsides 1 1\nalphabets 2 2\nedge 0 0 : 0 0\n"), ErrorCode::Parse);
  try {
    parse_label_cover("lc v1\nsides 1 1\nalphabets 1 2\n# comment\nedge 0 3 : 0 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
  }
}
