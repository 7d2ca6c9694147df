#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nalin/group.hpp"

namespace nalin {

struct Term {
  std::size_t var = 0;
  int exp = 1;  // +1 or -1
};

/// c_0 x^{e_1} c_1 ... x^{e_k} c_k = rhs
struct LinConstraint {
  double weight = 1;
  ElementId rhs = kIdentity;
  std::vector<ElementId> consts;
  std::vector<Term> terms;
};

/// Weighted Max-k-LIN instance; weights are normalized to sum to 1 and the
/// original total is kept in weight_scale.
struct LinInstance {
  GroupPtr group;
  std::size_t num_vars = 0;
  std::vector<LinConstraint> constraints;
  double weight_scale = 1;
};

using Assignment = std::vector<ElementId>;
using CosetAssignment = std::vector<ElementId>;

/// Validates every constraint and normalizes the weights.
LinInstance make_instance(GroupPtr group, std::size_t num_vars,
                          std::vector<LinConstraint> constraints);

ElementId evaluate_word(const FiniteGroup& g, const LinConstraint& c, const Assignment& a);
bool satisfies(const FiniteGroup& g, const LinConstraint& c, const Assignment& a);
/// Satisfied weight in [0, 1].
double evaluate(const LinInstance& inst, const Assignment& a);

struct PlantedInstance {
  LinInstance instance;
  Assignment planted;
};

/// m constraints on k distinct variables each, uniform constants, exponents
/// +1, right-hand sides chosen so a uniform planted assignment satisfies all.
PlantedInstance generate_planted(const GroupPtr& g, std::size_t n, std::size_t m, std::size_t k,
                                 std::uint64_t seed);

/// The instance over an abelian quotient H of G, in the coordinates of an
/// invariant-factor decomposition of H: coefficients[i][v] is the exponent sum
/// of v in constraint i, rhs[i][j] the residue mod factors[j].
struct AbelianSystem {
  std::vector<long long> factors;
  std::size_t num_vars = 0;
  std::vector<std::vector<long long>> coefficients;
  std::vector<std::vector<long long>> rhs;
};

AbelianSystem abelianize(const LinInstance& inst, const QuotientGroup& q,
                         const AbelianDecomposition& d);

/// LIN files:
///   lin v1
///   # weight-scale <W>
///   # arity <k> | <kmin>-<kmax>
///   group <name>
///   vars <n>
///   c <weight> g<rhs> : g<c0> x<i> g<c1> x<j>' ... g<ck>
std::string serialize_instance(const LinInstance& inst);
LinInstance parse_instance(std::string_view text);

}  // namespace nalin
