#include <cmath>

#include "nalin/lin.hpp"
#include "nalin/random.hpp"
#include "support.hpp"

using namespace nalin;

namespace {

LinConstraint word(std::vector<ElementId> consts, std::vector<Term> terms, ElementId rhs, double w = 1) {
  LinConstraint c;
  c.consts = std::move(consts);
  c.terms = std::move(terms);
  c.rhs = rhs;
  c.weight = w;
  return c;
}

}  // namespace

TEST(Lin, PlantedInstancesAreSatisfied) {
  for (const char* name : {"S3", "Q8", "A5", "Z4"}) {
    SCOPED_TRACE(name);
    const auto p = generate_planted(load_group(name), 8, 40, 3, 7);
    EXPECT_NEAR(evaluate(p.instance, p.planted), 1.0, 1e-12);
    double total = 0;
    for (const auto& c : p.instance.constraints) {
      total += c.weight;
      ASSERT_EQ(c.terms.size(), 3u);
      EXPECT_NE(c.terms[0].var, c.terms[1].var);
      EXPECT_NE(c.terms[0].var, c.terms[2].var);
      EXPECT_NE(c.terms[1].var, c.terms[2].var);
      for (const auto& t : c.terms) EXPECT_EQ(t.exp, 1);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  EXPECT_CODE(generate_planted(load_group("S3"), 2, 4, 3, 1), ErrorCode::InvalidArgument);
}

TEST(Lin, SeedDeterminism) {
  const GroupPtr s3 = load_group("S3");
  const auto a = serialize_instance(generate_planted(s3, 8, 40, 3, 99).instance);
  const auto b = serialize_instance(generate_planted(s3, 8, 40, 3, 99).instance);
  const auto c = serialize_instance(generate_planted(s3, 8, 40, 3, 100).instance);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Lin, FlippedRightHandSide) {
  const GroupPtr s3 = load_group("S3");
  auto p = generate_planted(s3, 6, 10, 3, 4);
  p.instance.constraints[3].rhs = s3->mul(p.instance.constraints[3].rhs, 1);
  EXPECT_NEAR(evaluate(p.instance, p.planted), 1.0 - 0.1, 1e-12);
}

TEST(Lin, RandomAssignmentsSatisfyOneInG) {
  const GroupPtr s3 = load_group("S3");
  const auto p = generate_planted(s3, 8, 40, 3, 5);
  const int draws = 10000;
  double sum = 0, sq = 0;
  for (int s = 0; s < draws; ++s) {
    Rng rng = Rng::stream(1234, static_cast<std::uint64_t>(s));
    Assignment a(8);
    for (auto& x : a) x = static_cast<ElementId>(rng.below(6));
    const double v = evaluate(p.instance, a);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / draws;
  const double sd = std::sqrt((sq / draws - mean * mean) / draws);
  EXPECT_LE(std::abs(mean - 1.0 / 6), 3 * sd);
}

TEST(Lin, WeightsAreAffine) {
  const GroupPtr s3 = load_group("S3");
  auto p = generate_planted(s3, 5, 6, 2, 8);
  std::vector<LinConstraint> split = p.instance.constraints;
  LinConstraint copy = split[2];
  split[2].weight *= 0.25;
  copy.weight *= 0.75;
  split.push_back(copy);
  const LinInstance q = make_instance(s3, 5, split);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    Assignment a(5);
    for (auto& x : a) x = static_cast<ElementId>(rng.below(6));
    EXPECT_NEAR(evaluate(q, a), evaluate(p.instance, a), 1e-12);
  }
}

TEST(Lin, Validation) {
  const GroupPtr s3 = load_group("S3");
  EXPECT_CODE(make_instance(s3, 2, {word({0, 0}, {{2, 1}}, 0)}), ErrorCode::OutOfRange);
  EXPECT_CODE(make_instance(s3, 2, {word({0}, {{0, 1}}, 0)}), ErrorCode::ShapeMismatch);
  EXPECT_CODE(make_instance(s3, 2, {word({0, 9}, {{0, 1}}, 0)}), ErrorCode::OutOfRange);
  EXPECT_CODE(make_instance(s3, 2, {word({0, 0}, {{0, 2}}, 0)}), ErrorCode::InvalidArgument);
  const LinInstance inst = make_instance(s3, 2, {word({0, 0}, {{0, 1}}, 0)});
  EXPECT_CODE(evaluate(inst, Assignment{0}), ErrorCode::ShapeMismatch);
}

TEST(Lin, AbelianizeRows) {
  const GroupPtr s3 = load_group("S3");
  const QuotientGroup q = quotient(s3, commutator_subgroup(s3));
  const AbelianDecomposition d = abelian_decomposition(*q.table);
  // x0 x1 x0' : coefficient of x0 cancels
  const LinInstance inst = make_instance(
      s3, 3, {word({0, 0, 0, 0}, {{0, 1}, {1, 1}, {0, -1}}, 3), word({0, 0, 0, 0}, {{0, 1}, {1, 1}, {2, 1}}, 4)});
  const AbelianSystem sys = abelianize(inst, q, d);
  EXPECT_EQ(sys.coefficients[0], (std::vector<long long>{0, 1, 0}));
  EXPECT_EQ(sys.coefficients[1], (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(sys.rhs[1], d.coords[q.projection[4]]);

  // a satisfying assignment over G projects to one over H
  const auto p = generate_planted(s3, 6, 30, 3, 2);
  const AbelianSystem ps = abelianize(p.instance, q, d);
  for (std::size_t i = 0; i < ps.coefficients.size(); ++i) {
    long long s = 0;
    for (std::size_t v = 0; v < 6; ++v) s += ps.coefficients[i][v] * d.coords[q.projection[p.planted[v]]][0];
    EXPECT_EQ(((s - ps.rhs[i][0]) % 2 + 2) % 2, 0);
  }
}

TEST(Lin, ProjectionCommutesWithEvaluationExhaustively) {
  const GroupPtr q8 = load_group("Q8");
  const QuotientGroup q = quotient(q8, commutator_subgroup(q8));
  const AbelianDecomposition d = abelian_decomposition(*q.table);
  const auto p = generate_planted(q8, 3, 6, 2, 11);
  const AbelianSystem sys = abelianize(p.instance, q, d);
  Assignment a(3, 0);
  for (std::size_t idx = 0; idx < 512; ++idx) {
    a = {static_cast<ElementId>(idx / 64), static_cast<ElementId>(idx / 8 % 8), static_cast<ElementId>(idx % 8)};
    for (std::size_t i = 0; i < p.instance.constraints.size(); ++i) {
      if (!satisfies(*q8, p.instance.constraints[i], a)) continue;
      for (std::size_t j = 0; j < d.factors.size(); ++j) {
        long long s = 0;
        for (std::size_t v = 0; v < 3; ++v) s += sys.coefficients[i][v] * d.coords[q.projection[a[v]]][j];
        EXPECT_EQ(((s - sys.rhs[i][j]) % d.factors[j] + d.factors[j]) % d.factors[j], 0);
      }
    }
  }
}

TEST(Lin, FileRoundTrip) {
  const char* text =
      "lin v1\n"
      "# weight-scale 3\n"
      "# arity 1-2\n"
      "group S3\n"
      "vars 3\n"
      "c 0.5 g1 : g0 x0 g2 x1' g0\n"
      "c 0.25 g0 : g3 x2 g0\n"
      "c 0.25 g5 : g1 x1 g1 x2 g4\n";
  const LinInstance inst = parse_instance(text);
  EXPECT_EQ(inst.constraints.size(), 3u);
  EXPECT_EQ(inst.constraints[0].terms[1].exp, -1);
  EXPECT_EQ(serialize_instance(inst), text);
  EXPECT_EQ(serialize_instance(parse_instance(serialize_instance(inst))), text);

  const LinInstance scaled = parse_instance("lin v1\ngroup Z4\nvars 2\nc 2 g1 : g0 x0 g0\nc 6 g2 : g0 x1 g0\n");
  EXPECT_NEAR(scaled.constraints[0].weight, 0.25, 1e-15);
  EXPECT_NEAR(scaled.weight_scale, 8, 1e-12);
  double total = 0;
  for (const auto& c : scaled.constraints) total += c.weight;
  EXPECT_NEAR(total, 1, 1e-12);

  try {
    parse_instance("lin v1\ngroup S3\nvars 2\nc 1 g0 : g0 y0 g0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
  EXPECT_CODE(parse_instance("lin v1\ngroup S9\nvars 2\n"), ErrorCode::Parse);
  EXPECT_CODE(parse_instance("lin v1\ngroup S3\nvars 2\nc 1 g0 : g0 x2 g0\n"), ErrorCode::Parse);
}
