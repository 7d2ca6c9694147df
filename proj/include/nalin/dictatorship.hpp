#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nalin/fourier.hpp"
#include "nalin/rep.hpp"

namespace nalin {

/// Largest enumeration accepted by the exact mode: |G|^{3n} with noise,
/// |G|^{2n} without.
inline constexpr std::size_t kDictExactBudget = 100000000;

enum class DictMode { Exact, MonteCarlo };

struct DictTestConfig {
  double epsilon = 0;  // per-coordinate resampling probability
  DictMode mode = DictMode::Exact;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

/// f(x) = x_i
GroupFunctionTable make_dictator(std::size_t i, std::size_t n, const GroupPtr& g);
/// Uniform value per folding orbit, extended by folding.
GroupFunctionTable make_random_folded(std::size_t n, const GroupPtr& g, std::uint64_t seed);
/// f(x) = x_1 * t(orbit of x) with t uniform in [G,G]: folded, and its image in
/// G/[G,G] depends on x_1 only, so the abelianized test always passes.
GroupFunctionTable make_tightness_witness(std::size_t n, const GroupPtr& g, std::uint64_t seed);

struct DictTestResult {
  double p = 0;
  double ci_halfwidth = 0;  // 99% normal interval, 0 in exact mode
  /// Probability (exact) or frequency (sampled) of each value of f(a)f(b)f(c).
  std::vector<double> product_distribution;
};

/// Pass probability of the three-query test: a, b uniform, c_i = b_i^-1 a_i^-1,
/// each coordinate triple independently resampled with probability epsilon;
/// accept iff f(a) f(b) f(c) = 1.
DictTestResult test_pass_probability(const GroupFunctionTable& f, const DictTestConfig& cfg);

struct IrrepDecomposition {
  /// terms[r] = dim(r) / |G| * E[chi_r(f(a) f(b) f(c))]
  std::vector<Complex> terms;
  Complex total;
  double p = 0;  // direct pass probability
  Complex dim1_total;  // sum over the one-dimensional irreps
};

/// Split of P[product = 1] over irreps for a distribution of the product.
IrrepDecomposition decompose_distribution(const std::vector<double>& product_distribution,
                                          const IrrepSet& set);

/// Exact per-irrep split of the pass probability; ignores cfg.mode.
IrrepDecomposition pass_prob_irrep_decomposition(const GroupFunctionTable& f,
                                                 const DictTestConfig& cfg, const IrrepSet& set);

struct CoefficientDiagnostic {
  std::vector<std::size_t> alpha;
  std::size_t dim = 0;
  std::size_t w2 = 0;
  double mass = 0;        // sum_ij dim(alpha) ||h_ij^(alpha)||^2 at the maximizer
  double total_mass = 0;  // same sum over every alpha with w2 >= 1
};

/// The irrep tuple with at least one component of dimension >= 2 carrying the
/// most Fourier mass of the entry functions rho(f(.))_ij.
CoefficientDiagnostic strongest_coefficient(const GroupFunctionTable& f, const Irrep& rho,
                                            const IrrepSet& set);

}  // namespace nalin
