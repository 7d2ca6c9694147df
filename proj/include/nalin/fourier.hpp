#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nalin/group.hpp"
#include "nalin/rep.hpp"

namespace nalin {

/// Largest |G|^n accepted by transforms and exhaustive folding checks.
inline constexpr std::size_t kFourierBudget = 100000;

/// Index arithmetic on G^n. Tuples are laid out mixed-radix with coordinate
/// 1 (position 0) most significant.
class GroupPower {
 public:
  GroupPower(GroupPtr g, std::size_t n);

  const GroupPtr& group() const { return group_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return size_; }

  std::vector<ElementId> tuple(std::size_t index) const;
  std::size_t index(std::span<const ElementId> tuple) const;
  ElementId coordinate(std::size_t index, std::size_t i) const;

  std::size_t mul(std::size_t x, std::size_t y) const;
  std::size_t inv(std::size_t x) const;
  /// (c . x)_i = c x_i
  std::size_t scale(ElementId c, std::size_t x) const;
  /// (c, ..., c)
  std::size_t diagonal(ElementId c) const;

  /// Folding orbits {c . x : c in G}: the representative is the tuple with
  /// first coordinate 1_G (the minimal tuple of its orbit), so x = shift . rep.
  std::size_t orbit_count() const { return size_ / group_->order(); }
  struct OrbitPosition {
    std::size_t orbit;  // = index of the representative
    ElementId shift;
  };
  OrbitPosition orbit_of(std::size_t x) const;

 private:
  GroupPtr group_;
  std::size_t n_;
  std::size_t size_;
  std::vector<std::size_t> stride_;
};

/// Checked |G|^n; throws BudgetExceeded above `budget`.
std::size_t power_size(std::size_t order, std::size_t n, std::size_t budget);

struct ScalarFunctionTable {
  GroupPtr group;
  std::size_t n = 1;
  std::vector<Complex> values;
};

struct GroupFunctionTable {
  GroupPtr group;
  std::size_t n = 1;
  std::vector<ElementId> values;
  bool folded = false;
};

/// f(c . x) = c f(x) for every c and x.
bool is_folded(const GroupFunctionTable& f);
/// Folded table from one value per orbit representative.
GroupFunctionTable fold_from_representatives(const GroupPtr& g, std::size_t n,
                                             std::span<const ElementId> rep_values);

struct IrrepIndex {
  std::vector<std::size_t> components;
  std::size_t dim = 1;
  std::size_t weight = 0;  // nontrivial components
  std::size_t w2 = 0;      // components of dimension >= 2
};

IrrepIndex make_irrep_index(const IrrepSet& set, std::vector<std::size_t> components);
/// All irrep tuples of G^n in mixed-radix order (first coordinate most significant).
std::vector<IrrepIndex> all_irrep_indices(const IrrepSet& set, std::size_t n);
/// alpha(x) = rho_1(x_1) (x) ... (x) rho_n(x_n)
Matrix tensor_image(const IrrepSet& set, const GroupPower& gp, std::span<const std::size_t> alpha,
                    std::size_t x);

struct FourierTable {
  GroupPtr group;
  std::size_t n = 1;
  std::map<std::vector<std::size_t>, Matrix> coeffs;
};

/// f^(alpha) = E_x f(x) alpha(x), every alpha.
FourierTable fourier_transform(const ScalarFunctionTable& f, const IrrepSet& set);
/// A single coefficient.
Matrix fourier_coefficient(const ScalarFunctionTable& f, const IrrepSet& set,
                           std::span<const std::size_t> alpha);
/// f(x) = sum_alpha dim(alpha) <f^(alpha), alpha(x)>.
ScalarFunctionTable inverse_transform(const FourierTable& t, const IrrepSet& set);

/// (f * g)(x) = E_y f(y) g(y^-1 x)
ScalarFunctionTable convolve(const ScalarFunctionTable& f, const ScalarFunctionTable& g);
/// <f, g> = E_x f(x) conj(g(x))
Complex inner_product(const ScalarFunctionTable& f, const ScalarFunctionTable& g);
/// sqrt(E |f|^2)
double l2_norm(const ScalarFunctionTable& f);
/// <f | g> = E_x f(x) g(x^-1), symmetric and bilinear.
Complex bilinear_form(const ScalarFunctionTable& f, const ScalarFunctionTable& g);
/// sum_alpha dim(alpha) <A(alpha), B(alpha)>
Complex fourier_inner_product(const FourierTable& a, const FourierTable& b, const IrrepSet& set);

struct BnpReport {
  double lhs = 0;  // ||f * g||
  double rhs = 0;  // ||f|| ||g|| / sqrt(D)
  std::size_t min_dim = 1;
  bool ok = false;
  bool trivial_bound = false;  // D = 1: plain Cauchy-Schwarz
};

/// ||f * g|| <= ||f|| ||g|| / sqrt(D) on G (n = 1) when f or g has mean zero.
BnpReport bnp_check(const ScalarFunctionTable& f, const ScalarFunctionTable& g,
                    const IrrepSet& set);

/// x -> rho(f(x))_{ij}, 0-based indices.
ScalarFunctionTable entry_function(const GroupFunctionTable& f, const Irrep& rho, std::size_t i,
                                   std::size_t j);

/// Largest HS norm of a dimension-one Fourier coefficient of any entry
/// function rho(f(.))_{ij}; zero for folded f.
double folded_dim1_mass(const GroupFunctionTable& f, const Irrep& rho, const IrrepSet& set);

/// Function files:
///   fn v1
///   group <name>
///   n <k>
///   <index> <value>      one line per tuple; "re,im" or an element id
std::string serialize_function(const ScalarFunctionTable& f);
std::string serialize_function(const GroupFunctionTable& f);
ScalarFunctionTable parse_scalar_function(std::string_view text);
GroupFunctionTable parse_group_function(std::string_view text);

}  // namespace nalin
