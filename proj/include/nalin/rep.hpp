#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nalin/group.hpp"

namespace nalin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities of double-precision representations.
inline constexpr double kAlgebraicTol = 1e-9;
/// Tolerance when rounding inner products to integers.
inline constexpr double kIntegralityTol = 1e-6;

/// Hilbert-Schmidt (Frobenius) norm.
inline double hs_norm(const Matrix& a) { return a.norm(); }
/// <A, B> = tr(A B*)
inline Complex hs_inner(const Matrix& a, const Matrix& b) { return (a * b.adjoint()).trace(); }

struct Irrep {
  std::size_t id = 0;
  std::size_t dim = 1;
  std::vector<Matrix> matrices;  // one per group element
  bool is_trivial = false;

  const Matrix& operator()(ElementId g) const { return matrices[g]; }
};

struct Character {
  std::vector<Complex> values;
};

Character character_of(const Irrep& r);

/// Worst residuals found while validating an IrrepSet.
struct IrrepSetReport {
  double identity = 0;
  double unitarity = 0;
  double homomorphism = 0;
  double irreducibility = 0;
  double character_orthogonality = 0;
  double entry_orthogonality = 0;
  double sum_zero = 0;
  double class_function = 0;
  std::size_t dim_square_sum = 0;
  std::size_t group_order = 0;
  std::size_t irrep_count = 0;
  std::size_t class_count = 0;
  bool exhaustive = true;  // false when orthogonality was checked on a sample

  bool ok() const;
};

/// Complete set of unitary irreducible representations of a group, with
/// irrep 0 trivial. Construction runs the full invariant suite and throws
/// InvariantFailure if any residual exceeds its tolerance.
class IrrepSet {
 public:
  IrrepSet(GroupPtr group, std::vector<Irrep> irreps);

  const GroupPtr& group() const { return group_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  std::size_t size() const { return irreps_.size(); }
  const Irrep& operator[](std::size_t i) const { return irreps_[i]; }
  const Character& character(std::size_t i) const { return characters_[i]; }
  std::size_t dim(std::size_t i) const { return irreps_[i].dim; }
  /// Smallest dimension of a nontrivial irrep; 0 for the trivial group.
  std::size_t min_nontrivial_dim() const { return min_nontrivial_dim_; }
  const IrrepSetReport& report() const { return report_; }

 private:
  GroupPtr group_;
  std::vector<Irrep> irreps_;
  std::vector<Character> characters_;
  std::size_t min_nontrivial_dim_ = 0;
  IrrepSetReport report_;
};

/// Validation without throwing; used by the constructor and by reports.
IrrepSetReport validate_irreps(const FiniteGroup& g, const std::vector<Irrep>& irreps);

/// Extends generator images to every element by breadth-first search over the
/// Cayley graph: rho(x * s) = rho(x) rho(s).
std::vector<Matrix> extend_generator_images(const FiniteGroup& g, std::span<const ElementId> gens,
                                            const std::vector<Matrix>& images);

/// images[k][j] is the image of gens[j] under the k-th representation.
IrrepSet irreps_from_generator_images(const GroupPtr& g, std::span<const ElementId> gens,
                                      const std::vector<std::vector<Matrix>>& images);

/// Irreps of an abelian group (via its invariant-factor coordinates) or of a
/// catalog group. Throws Unsupported otherwise (and for A5 when the A5 irreps
/// are compiled out).
IrrepSet irreps_of(const GroupPtr& g);

/// Whether A5's irreducible representations were compiled in.
bool a5_irreps_available() noexcept;

struct TensorDecomposition {
  std::vector<std::size_t> factors;
  std::vector<std::pair<std::size_t, long long>> parts;  // (irrep id, multiplicity >= 1)
  std::size_t total_dim = 1;
};

/// Multiplicities of each irrep in the tensor product of `factors`, from
/// character inner products.
TensorDecomposition tensor_decompose(const IrrepSet& set, std::span<const std::size_t> factors);

struct MultiplicityReport {
  long long max_multiplicity = 0;
  double bound = 0;  // (1 - 1/|G|) * prod dims
  bool ok = false;
};

/// Every multiplicity in the tensor product is at most (1 - 1/|G|) times its
/// dimension. Requires the product dimension to be at least 2.
MultiplicityReport check_multiplicity_bound(const IrrepSet& set,
                                            std::span<const std::size_t> factors);

/// Pairs each dimension-one irrep with the irrep whose character is its
/// complex conjugate.
std::map<std::size_t, std::size_t> dim1_pairing(const IrrepSet& set);

struct ProjectionRestriction {
  std::vector<std::size_t> block_dims;                         // dim B_l
  std::map<std::vector<std::size_t>, long long> multiplicities;  // beta over G^L -> n
  std::size_t alpha_dim = 1;
  std::size_t large_blocks = 0;  // #{l : dim B_l >= 2}
  bool hypothesis = false;       // large_blocks >= c
  bool dichotomy_ok = true;      // hypothesis => (dim beta >= c or n <= eps0^2 dim alpha)
  /// Per-part bound n <= (1 - 1/|G|)^{s} dim(alpha), s = number of large
  /// blocks whose component in beta has dimension one.
  bool blockwise_bound_ok = true;
  /// c >= 10 |G| ln(1/eps0): the parameter regime of the general statement.
  bool parameters_in_regime = false;
};

/// Restricts alpha in Irrep(G^R) to the diagonal copy {x o pi} of G^L and
/// decomposes it block by block, B_l = tensor of rho_j over pi^-1(l).
ProjectionRestriction restrict_through_projection(const IrrepSet& set,
                                                  std::span<const std::size_t> alpha,
                                                  std::span<const std::size_t> pi,
                                                  std::size_t num_labels, std::size_t c,
                                                  double eps0);

}  // namespace nalin
