#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nalin/group.hpp"
#include "nalin/lin.hpp"

namespace nalin {

struct SolveReport {
  std::string method;
  double best_value = 0;
  Assignment best_assignment;
  bool satisfiable = false;
  double expectation = 0;  // exact expectation of the random lift, when defined
  double guarantee = 0;    // value the method promises on satisfiable inputs
  double elapsed_ms = 0;
};

/// Exhaustive search over G^n; stops early once every constraint is satisfied.
SolveReport brute_force(const LinInstance& inst, std::size_t cap);

/// Solutions of A x = b over Z_modulus by gcd-pivot elimination; empty when
/// inconsistent. Coefficients may be any integers.
std::optional<std::vector<long long>> solve_mod(const std::vector<std::vector<long long>>& a,
                                                const std::vector<long long>& b,
                                                long long modulus);

/// Per-variable coordinates of a solution of the abelian system, or nullopt.
std::optional<std::vector<std::vector<long long>>> abelian_solve(const AbelianSystem& sys);
/// Coordinates to quotient elements (coset ids).
CosetAssignment to_cosets(const std::vector<std::vector<long long>>& coords,
                          const AbelianDecomposition& d);
bool check_abelian_solution(const AbelianSystem& sys,
                            const std::vector<std::vector<long long>>& coords);

/// Constraints with more distinct variables are rejected by the lift routines.
inline constexpr std::size_t kMaxLiftVars = 6;

/// Exact expected value when each variable is uniform in its coset.
double lift_expectation(const LinInstance& inst, const QuotientGroup& q,
                        const CosetAssignment& cosets);

Assignment random_lift(const QuotientGroup& q, const CosetAssignment& cosets, std::uint64_t seed);

struct DerandomizedLift {
  Assignment assignment;
  std::vector<double> trace;  // conditional expectation before and after each variable
};

/// Method of conditional expectations over the coset lifts.
DerandomizedLift derandomized_lift(const LinInstance& inst, const QuotientGroup& q,
                                   const CosetAssignment& cosets);

struct FolkloreTrace {
  std::size_t commutator_size = 1;
  std::size_t quotient_order = 1;
  std::vector<long long> factors;
  bool abelian_satisfiable = false;
  CosetAssignment cosets;
  std::vector<double> lift_trace;
};

/// [G,G] -> G/[G,G] -> abelian system -> solve -> derandomized lift. When the
/// abelian system has no solution the instance is unsatisfiable over G and
/// the best constant assignment is returned instead.
SolveReport folklore_approx(const LinInstance& inst, FolkloreTrace* trace = nullptr);

}  // namespace nalin
