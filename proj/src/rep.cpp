#include "nalin/rep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <sstream>

#include "nalin/catalog.hpp"
#include "nalin/error.hpp"
#include "nalin/random.hpp"

namespace nalin {

namespace {

// Above this many scalar multiply-adds the orthogonality checks switch to a
// seeded sample of irrep pairs.
constexpr double kExhaustiveWork = 3e7;
constexpr std::size_t kSampledPartners = 16;

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix scalar(Complex z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return m;
}

Irrep make_irrep(std::vector<Matrix> mats) {
  Irrep r;
  r.dim = static_cast<std::size_t>(mats.front().rows());
  r.matrices = std::move(mats);
  return r;
}

Irrep trivial_irrep(std::size_t order) {
  return make_irrep(std::vector<Matrix>(order, scalar(1.0)));
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void sort_by_dim(std::vector<Irrep>& irreps) {
  std::stable_sort(irreps.begin() + 1, irreps.end(),
                   [](const Irrep& a, const Irrep& b) { return a.dim < b.dim; });
}

// ---- abelian groups ----

std::vector<Irrep> abelian_irreps(const FiniteGroup& g) {
  const AbelianDecomposition dec = abelian_decomposition(g);
  const std::size_t n = g.order();
  std::vector<Irrep> out;
  out.reserve(n);
  std::vector<long long> k(dec.factors.size(), 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    // mixed radix, factor 0 most significant
    std::size_t rest = idx;
    for (std::size_t j = dec.factors.size(); j-- > 0;) {
      k[j] = static_cast<long long>(rest % static_cast<std::size_t>(dec.factors[j]));
      rest /= static_cast<std::size_t>(dec.factors[j]);
    }
    std::vector<Matrix> mats(n);
    for (ElementId x = 0; x < n; ++x) {
      double turns = 0;
      for (std::size_t j = 0; j < k.size(); ++j)
        turns += static_cast<double>((k[j] * dec.coords[x][j]) % dec.factors[j]) /
                 static_cast<double>(dec.factors[j]);
      mats[x] = scalar(std::polar(1.0, 2 * std::numbers::pi * turns));
    }
    out.push_back(make_irrep(std::move(mats)));
  }
  return out;
}

// ---- permutation groups ----

Matrix permutation_matrix(const Permutation& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(p[static_cast<std::size_t>(i)], i) = 1.0;
  return m;
}

/// Orthonormal basis of the sum-zero subspace of C^n (Helmert columns).
Matrix sum_zero_basis(int n) {
  Matrix h = Matrix::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int j = 0; j < k; ++j) h(j, k - 1) = s;
    h(k, k - 1) = -k * s;
  }
  return h;
}

Matrix standard_image(const Permutation& p) {
  const Matrix h = sum_zero_basis(static_cast<int>(p.size()));
  return h.adjoint() * permutation_matrix(p) * h;
}

double sign_of(const Permutation& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 ? -1.0 : 1.0;
}

/// Action of a permutation of {0,1,2,3} on the three pairings
/// {01|23}, {02|13}, {03|12}.
Permutation pairing_action(const Permutation& p) {
  auto partner_of_zero = [](const Permutation& q, int k) {
    // pairing k joins 0 with k+1; image pairing joins q(0) with q(k+1)
    int a = q[0], b = q[static_cast<std::size_t>(k + 1)];
    if (a > b) std::swap(a, b);
    if (a == 0) return b - 1;
    // the complementary pair contains 0
    for (int c = 1; c < 4; ++c)
      if (c != a && c != b) return c - 1;
    return -1;
  };
  Permutation out(3);
  for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)] = partner_of_zero(p, k);
  return out;
}

/// Generator images from a formula on permutations, extended along the Cayley graph.
Irrep irrep_from_perm_map(const CatalogGroup& cg,
                          const std::function<Matrix(const Permutation&)>& f) {
  std::vector<Matrix> images;
  for (ElementId s : cg.generators) images.push_back(f(cg.perms[s]));
  return make_irrep(extend_generator_images(*cg.group, cg.generators, images));
}

std::vector<Irrep> symmetric_irreps(const CatalogGroup& cg) {
  const std::size_t n = cg.group->order();
  std::vector<Irrep> out;
  out.push_back(trivial_irrep(n));
  if (cg.degree < 2) return out;
  out.push_back(irrep_from_perm_map(cg, [](const Permutation& p) { return scalar(sign_of(p)); }));
  if (cg.degree == 2) return out;
  if (cg.degree == 4) {
    out.push_back(irrep_from_perm_map(
        cg, [](const Permutation& p) { return standard_image(pairing_action(p)); }));
  }
  out.push_back(irrep_from_perm_map(cg, standard_image));
  if (cg.degree == 4) {
    out.push_back(irrep_from_perm_map(
        cg, [](const Permutation& p) { return Matrix(sign_of(p) * standard_image(p)); }));
  }
  if (cg.degree > 4)
    throw Error(ErrorCode::Unsupported, "irreps of S" + std::to_string(cg.degree));
  return out;
}

#if NALIN_WITH_A5_IRREPS
std::vector<Irrep> a5_irreps(const CatalogGroup& cg) {
  const FiniteGroup& g = *cg.group;
  const std::size_t n = g.order();
  const double phi = (1 + std::sqrt(5.0)) / 2;

  // The 5-cycle (01234) fixes which of the two 5-cycle classes gets phi.
  const Permutation five{1, 2, 3, 4, 0};
  ElementId five_id = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (cg.perms[i] == five) five_id = static_cast<ElementId>(i);
  std::vector<char> in_five_class(n, 0);
  for (const auto& cls : conjugacy_classes(g))
    if (std::binary_search(cls.begin(), cls.end(), five_id))
      for (ElementId x : cls) in_five_class[x] = 1;

  // class index: 0 identity, 1 double transposition, 2 three-cycle, 3/4 five-cycles
  auto class_of = [&](ElementId x) {
    int fixed = 0;
    for (std::size_t i = 0; i < 5; ++i) fixed += cg.perms[x][i] == static_cast<int>(i);
    switch (fixed) {
      case 5: return 0;
      case 1: return 1;
      case 2: return 2;
      default: return in_five_class[x] ? 3 : 4;
    }
  };
  const std::vector<std::pair<int, std::array<double, 5>>> table{
      {3, {3, -1, 0, phi, 1 - phi}},
      {3, {3, -1, 0, 1 - phi, phi}},
      {5, {5, 1, -1, 0, 0}},
  };

  std::vector<Irrep> out;
  out.push_back(trivial_irrep(n));
  Irrep std4 = irrep_from_perm_map(cg, standard_image);

  // std4 (x) std4 = 1 + 3 + 3' + 4 + 5, each once: project onto the
  // isotypic components of 3, 3' and 5.
  std::vector<Matrix> square(n);
  for (std::size_t x = 0; x < n; ++x) square[x] = kron(std4.matrices[x], std4.matrices[x]);
  std::vector<Irrep> projected;
  for (const auto& [dim, chi] : table) {
    Matrix proj = Matrix::Zero(16, 16);
    for (ElementId x = 0; x < n; ++x) proj += chi[static_cast<std::size_t>(class_of(x))] * square[x];
    proj *= static_cast<double>(dim) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(proj);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
      if (eig.eigenvalues()(i) > 0.5) cols.push_back(i);
    if (static_cast<int>(cols.size()) != dim)
      throw Error(ErrorCode::InvariantFailure, "A5 isotypic projection has wrong rank");
    Matrix basis(16, dim);
    for (int c = 0; c < dim; ++c) basis.col(c) = eig.eigenvectors().col(cols[static_cast<std::size_t>(c)]);
    std::vector<Matrix> mats(n);
    for (std::size_t x = 0; x < n; ++x) mats[x] = basis.adjoint() * square[x] * basis;
    projected.push_back(make_irrep(std::move(mats)));
  }
  out.push_back(std::move(projected[0]));
  out.push_back(std::move(projected[1]));
  out.push_back(std::move(std4));
  out.push_back(std::move(projected[2]));
  return out;
}
#endif

std::vector<Irrep> alternating_irreps(const CatalogGroup& cg) {
  const std::size_t n = cg.group->order();
  if (cg.degree <= 3) return abelian_irreps(*cg.group);
  if (cg.degree == 4) {
    std::vector<Irrep> out;
    out.push_back(trivial_irrep(n));
    for (int k = 1; k <= 2; ++k) {
      out.push_back(irrep_from_perm_map(cg, [k](const Permutation& p) {
        // image in A3 is the rotation m -> m + t, t = pairing_action(p)(0)
        const int t = pairing_action(p)[0];
        return scalar(std::polar(1.0, 2 * std::numbers::pi * k * t / 3.0));
      }));
    }
    out.push_back(irrep_from_perm_map(cg, standard_image));
    return out;
  }
  if (cg.degree == 5) {
#if NALIN_WITH_A5_IRREPS
    return a5_irreps(cg);
#else
    throw Error(ErrorCode::Unsupported, "A5 irreps are not compiled in");
#endif
  }
  throw Error(ErrorCode::Unsupported, "irreps of A" + std::to_string(cg.degree));
}

// ---- order-8 groups <a, b> ----

std::vector<Irrep> order8_irreps(const CatalogGroup& cg, bool quaternion) {
  const FiniteGroup& g = *cg.group;
  const std::vector<ElementId> gens{1, 4};
  std::vector<Irrep> out;
  for (double sa : {1.0, -1.0})
    for (double sb : {1.0, -1.0})
      out.push_back(make_irrep(extend_generator_images(g, gens, {scalar(sa), scalar(sb)})));
  Matrix a(2, 2), b(2, 2);
  const Complex i(0, 1);
  if (quaternion) {
    a << i, 0, 0, -i;
    b << 0, -1, 1, 0;
  } else {
    a << 0, -1, 1, 0;
    b << 1, 0, 0, -1;
  }
  out.push_back(make_irrep(extend_generator_images(g, gens, {a, b})));
  return out;
}

std::vector<Irrep> catalog_irreps(const CatalogGroup& cg);

std::vector<Irrep> product_irreps(const CatalogGroup& cg) {
  const auto left = catalog_irreps(cg.factors[0]);
  const auto right = catalog_irreps(cg.factors[1]);
  const std::size_t n1 = cg.factors[0].group->order();
  const std::size_t n2 = cg.factors[1].group->order();
  std::vector<Irrep> out;
  for (const auto& l : left)
    for (const auto& r : right) {
      std::vector<Matrix> mats(n1 * n2);
      for (std::size_t x = 0; x < n1; ++x)
        for (std::size_t y = 0; y < n2; ++y) mats[x * n2 + y] = kron(l.matrices[x], r.matrices[y]);
      out.push_back(make_irrep(std::move(mats)));
    }
  sort_by_dim(out);
  return out;
}

std::vector<Irrep> catalog_irreps(const CatalogGroup& cg) {
  if (cg.group->is_abelian()) return abelian_irreps(*cg.group);
  switch (cg.kind) {
    case CatalogGroup::Kind::Symmetric: return symmetric_irreps(cg);
    case CatalogGroup::Kind::Alternating: return alternating_irreps(cg);
    case CatalogGroup::Kind::Dihedral4: return order8_irreps(cg, false);
    case CatalogGroup::Kind::Quaternion: return order8_irreps(cg, true);
    case CatalogGroup::Kind::Product: return product_irreps(cg);
    case CatalogGroup::Kind::Cyclic: break;
  }
  return abelian_irreps(*cg.group);
}

std::string describe(const IrrepSetReport& r) {
  std::ostringstream os;
  os << "identity=" << r.identity << " unitarity=" << r.unitarity
     << " homomorphism=" << r.homomorphism << " irreducibility=" << r.irreducibility
     << " char_orth=" << r.character_orthogonality << " entry_orth=" << r.entry_orthogonality
     << " sum_zero=" << r.sum_zero << " class_fn=" << r.class_function
     << " sum_dim2=" << r.dim_square_sum << "/" << r.group_order << " irreps=" << r.irrep_count
     << " classes=" << r.class_count;
  return os.str();
}

}  // namespace

Character character_of(const Irrep& r) {
  Character c;
  c.values.reserve(r.matrices.size());
  for (const auto& m : r.matrices) c.values.push_back(m.trace());
  return c;
}

bool IrrepSetReport::ok() const {
  return identity <= kAlgebraicTol && unitarity <= kAlgebraicTol &&
         homomorphism <= kAlgebraicTol && irreducibility <= kIntegralityTol &&
         character_orthogonality <= kAlgebraicTol && entry_orthogonality <= kAlgebraicTol &&
         sum_zero <= kAlgebraicTol && class_function <= kAlgebraicTol &&
         dim_square_sum == group_order && irrep_count == class_count;
}

IrrepSetReport validate_irreps(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
  IrrepSetReport rep;
  const std::size_t n = g.order();
  const double inv_n = 1.0 / static_cast<double>(n);
  rep.group_order = n;
  rep.irrep_count = irreps.size();
  const auto classes = conjugacy_classes(g);
  rep.class_count = classes.size();

  std::vector<Character> chars;
  for (const auto& r : irreps) {
    if (r.matrices.size() != n) throw Error(ErrorCode::ShapeMismatch, "irrep has wrong element count");
    const auto d = static_cast<Eigen::Index>(r.dim);
    for (const auto& m : r.matrices)
      if (m.rows() != d || m.cols() != d)
        throw Error(ErrorCode::ShapeMismatch, "irrep matrix has wrong dimension");
    rep.dim_square_sum += r.dim * r.dim;
    const Matrix eye = Matrix::Identity(d, d);
    rep.identity = std::max(rep.identity, max_abs(r.matrices[kIdentity] - eye));
    Matrix total = Matrix::Zero(d, d);
    for (ElementId x = 0; x < n; ++x) {
      const Matrix& m = r.matrices[x];
      rep.unitarity = std::max(rep.unitarity, max_abs(m * m.adjoint() - eye));
      total += m;
      for (ElementId y = 0; y < n; ++y)
        rep.homomorphism =
            std::max(rep.homomorphism, max_abs(m * r.matrices[y] - r.matrices[g.mul(x, y)]));
    }
    if (!r.is_trivial) rep.sum_zero = std::max(rep.sum_zero, max_abs(total * inv_n));
    chars.push_back(character_of(r));
    for (const auto& cls : classes)
      for (ElementId x : cls)
        rep.class_function =
            std::max(rep.class_function, std::abs(chars.back().values[x] - chars.back().values[cls.front()]));
  }

  auto char_inner = [&](std::size_t a, std::size_t b) {
    Complex s = 0;
    for (std::size_t x = 0; x < n; ++x) s += chars[a].values[x] * std::conj(chars[b].values[x]);
    return s * inv_n;
  };
  // (1/|G|) sum_g rho(g)_ij tau(g^-1)_kl = delta(rho,tau) delta_il delta_jk / dim
  auto entry_residual = [&](std::size_t a, std::size_t b) {
    const Irrep& r = irreps[a];
    const Irrep& t = irreps[b];
    const auto dr = static_cast<Eigen::Index>(r.dim), dt = static_cast<Eigen::Index>(t.dim);
    Matrix acc = Matrix::Zero(dr * dr, dt * dt);
    for (ElementId x = 0; x < n; ++x) {
      const Matrix& m = r.matrices[x];
      const Matrix& w = t.matrices[g.inv(x)];
      for (Eigen::Index i = 0; i < dr; ++i)
        for (Eigen::Index j = 0; j < dr; ++j)
          for (Eigen::Index k = 0; k < dt; ++k)
            for (Eigen::Index l = 0; l < dt; ++l) acc(i * dr + j, k * dt + l) += m(i, j) * w(k, l);
    }
    acc *= inv_n;
    double worst = 0;
    for (Eigen::Index i = 0; i < dr; ++i)
      for (Eigen::Index j = 0; j < dr; ++j)
        for (Eigen::Index k = 0; k < dt; ++k)
          for (Eigen::Index l = 0; l < dt; ++l) {
            const double expect = (a == b && i == l && j == k) ? 1.0 / static_cast<double>(r.dim) : 0.0;
            worst = std::max(worst, std::abs(acc(i * dr + j, k * dt + l) - expect));
          }
    return worst;
  };
  auto check_pair = [&](std::size_t a, std::size_t b) {
    const Complex ip = char_inner(a, b);
    if (a == b) {
      rep.irreducibility = std::max(rep.irreducibility, std::abs(ip - 1.0));
    } else {
      rep.character_orthogonality = std::max(rep.character_orthogonality, std::abs(ip));
    }
    rep.entry_orthogonality = std::max(rep.entry_orthogonality, entry_residual(a, b));
  };

  const double work = static_cast<double>(irreps.size()) * static_cast<double>(irreps.size()) *
                      static_cast<double>(n);
  const double entry_work = static_cast<double>(rep.dim_square_sum) *
                            static_cast<double>(rep.dim_square_sum) * static_cast<double>(n);
  if (std::max(work, entry_work) <= kExhaustiveWork) {
    for (std::size_t a = 0; a < irreps.size(); ++a)
      for (std::size_t b = 0; b < irreps.size(); ++b) check_pair(a, b);
  } else {
    rep.exhaustive = false;
    for (std::size_t a = 0; a < irreps.size(); ++a) {
      check_pair(a, a);
      Rng rng = Rng::stream(0x5eedULL, a);
      for (std::size_t k = 0; k < kSampledPartners; ++k) check_pair(a, rng.below(irreps.size()));
    }
  }
  return rep;
}

IrrepSet::IrrepSet(GroupPtr group, std::vector<Irrep> irreps)
    : group_(std::move(group)), irreps_(std::move(irreps)) {
  if (irreps_.empty()) throw Error(ErrorCode::InvariantFailure, "empty irrep set");
  const Irrep& first = irreps_.front();
  bool trivial = first.dim == 1;
  for (const auto& m : first.matrices)
    trivial = trivial && std::abs(m(0, 0) - 1.0) <= kAlgebraicTol;
  if (!trivial) throw Error(ErrorCode::InvariantFailure, "irrep 0 is not the trivial representation");
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    irreps_[i].id = i;
    irreps_[i].is_trivial = i == 0;
  }
  report_ = validate_irreps(*group_, irreps_);
  if (!report_.ok())
    throw Error(ErrorCode::InvariantFailure, "irreps of " + group_->name() + ": " + describe(report_));
  for (const auto& r : irreps_) characters_.push_back(character_of(r));
  for (std::size_t i = 1; i < irreps_.size(); ++i)
    if (min_nontrivial_dim_ == 0 || irreps_[i].dim < min_nontrivial_dim_)
      min_nontrivial_dim_ = irreps_[i].dim;
}

std::vector<Matrix> extend_generator_images(const FiniteGroup& g, std::span<const ElementId> gens,
                                            const std::vector<Matrix>& images) {
  if (gens.size() != images.size())
    throw Error(ErrorCode::ShapeMismatch, "one image per generator is required");
  const std::size_t n = g.order();
  const Eigen::Index d = images.empty() ? 1 : images.front().rows();
  for (const auto& m : images)
    if (m.rows() != d || m.cols() != d)
      throw Error(ErrorCode::ShapeMismatch, "generator images must be square of equal size");
  std::vector<Matrix> out(n);
  std::vector<char> seen(n, 0);
  out[kIdentity] = Matrix::Identity(d, d);
  seen[kIdentity] = 1;
  std::deque<ElementId> queue{kIdentity};
  std::size_t reached = 1;
  while (!queue.empty()) {
    const ElementId x = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (gens[j] >= n) throw Error(ErrorCode::OutOfRange, "generator id out of range");
      const ElementId y = g.mul(x, gens[j]);
      if (seen[y]) continue;
      seen[y] = 1;
      out[y] = out[x] * images[j];
      queue.push_back(y);
      ++reached;
    }
  }
  if (reached != n) throw Error(ErrorCode::InvalidArgument, "generators do not generate the group");
  return out;
}

IrrepSet irreps_from_generator_images(const GroupPtr& g, std::span<const ElementId> gens,
                                      const std::vector<std::vector<Matrix>>& images) {
  std::vector<Irrep> irreps;
  for (const auto& imgs : images) irreps.push_back(make_irrep(extend_generator_images(*g, gens, imgs)));
  return IrrepSet(g, std::move(irreps));
}

bool a5_irreps_available() noexcept {
#if NALIN_WITH_A5_IRREPS
  return true;
#else
  return false;
#endif
}

IrrepSet irreps_of(const GroupPtr& g) {
  if (g->is_abelian()) return IrrepSet(g, abelian_irreps(*g));
  CatalogGroup cg;
  try {
    cg = build_catalog_group(g->name());
  } catch (const Error&) {
    throw Error(ErrorCode::Unsupported,
                "no irreps known for '" + g->name() + "'; supply generator images");
  }
  if (!cg.group->same_table(*g))
    throw Error(ErrorCode::Unsupported,
                "'" + g->name() + "' does not match the catalog table; supply generator images");
  return IrrepSet(g, catalog_irreps(cg));
}

TensorDecomposition tensor_decompose(const IrrepSet& set, std::span<const std::size_t> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "tensor product needs a factor");
  const std::size_t n = set.group()->order();
  TensorDecomposition out;
  out.factors.assign(factors.begin(), factors.end());
  std::vector<Complex> chi(n, 1.0);
  for (std::size_t f : factors) {
    if (f >= set.size()) throw Error(ErrorCode::OutOfRange, "irrep id out of range");
    out.total_dim *= set.dim(f);
    const auto& c = set.character(f).values;
    for (std::size_t x = 0; x < n; ++x) chi[x] *= c[x];
  }
  std::size_t balance = 0;
  for (std::size_t m = 0; m < set.size(); ++m) {
    Complex s = 0;
    const auto& c = set.character(m).values;
    for (std::size_t x = 0; x < n; ++x) s += chi[x] * std::conj(c[x]);
    s /= static_cast<double>(n);
    const double rounded = std::round(s.real());
    if (std::abs(s - rounded) > kIntegralityTol || rounded < 0)
      throw Error(ErrorCode::NonIntegerMultiplicity,
                  "multiplicity of irrep " + std::to_string(m) + " is not an integer");
    const auto mult = static_cast<long long>(rounded);
    if (mult > 0) {
      out.parts.emplace_back(m, mult);
      balance += static_cast<std::size_t>(mult) * set.dim(m);
    }
  }
  if (balance != out.total_dim)
    throw Error(ErrorCode::InvariantFailure, "tensor decomposition dimensions do not balance");
  return out;
}

MultiplicityReport check_multiplicity_bound(const IrrepSet& set,
                                            std::span<const std::size_t> factors) {
  const TensorDecomposition dec = tensor_decompose(set, factors);
  if (dec.total_dim < 2)
    throw Error(ErrorCode::HypothesisViolated, "tensor product has dimension 1");
  MultiplicityReport rep;
  for (const auto& [id, mult] : dec.parts) rep.max_multiplicity = std::max(rep.max_multiplicity, mult);
  const double order = static_cast<double>(set.group()->order());
  rep.bound = (1.0 - 1.0 / order) * static_cast<double>(dec.total_dim);
  rep.ok = static_cast<double>(rep.max_multiplicity) <= rep.bound + 1e-12;
  return rep;
}

std::map<std::size_t, std::size_t> dim1_pairing(const IrrepSet& set) {
  const std::size_t n = set.group()->order();
  std::map<std::size_t, std::size_t> out;
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (set.dim(a) != 1) continue;
    bool found = false;
    for (std::size_t b = 0; b < set.size() && !found; ++b) {
      if (set.dim(b) != 1) continue;
      double worst = 0;
      for (std::size_t x = 0; x < n; ++x)
        worst = std::max(worst, std::abs(set.character(a).values[x] - std::conj(set.character(b).values[x])));
      if (worst <= kAlgebraicTol) {
        out[a] = b;
        found = true;
      }
    }
    if (!found)
      throw Error(ErrorCode::NoPartner, "dimension-one irrep " + std::to_string(a) + " has no conjugate");
  }
  for (const auto& [a, b] : out)
    if (out.at(b) != a) throw Error(ErrorCode::InvariantFailure, "conjugate pairing is not an involution");
  return out;
}

ProjectionRestriction restrict_through_projection(const IrrepSet& set,
                                                  std::span<const std::size_t> alpha,
                                                  std::span<const std::size_t> pi,
                                                  std::size_t num_labels, std::size_t c,
                                                  double eps0) {
  if (alpha.size() != pi.size())
    throw Error(ErrorCode::ShapeMismatch, "alpha and the projection must have the same length");
  std::vector<std::vector<std::size_t>> blocks(num_labels);
  for (std::size_t j = 0; j < pi.size(); ++j) {
    if (pi[j] >= num_labels) throw Error(ErrorCode::OutOfRange, "projection value out of range");
    blocks[pi[j]].push_back(alpha[j]);
  }
  for (const auto& b : blocks)
    if (b.empty()) throw Error(ErrorCode::InvalidArgument, "projection is not surjective");

  ProjectionRestriction out;
  std::vector<TensorDecomposition> decs;
  for (const auto& b : blocks) {
    decs.push_back(tensor_decompose(set, b));
    out.block_dims.push_back(decs.back().total_dim);
    out.alpha_dim *= decs.back().total_dim;
    if (decs.back().total_dim >= 2) ++out.large_blocks;
  }
  out.hypothesis = out.large_blocks >= c;
  const double order = static_cast<double>(set.group()->order());
  out.parameters_in_regime = eps0 > 0 && eps0 <= 0.5 &&
                             static_cast<double>(c) >= 10 * order * std::log(1 / eps0);

  double combos = 1;
  for (const auto& d : decs) combos *= static_cast<double>(d.parts.size());
  if (combos > 1e6) throw Error(ErrorCode::BudgetExceeded, "too many irreducible constituents");

  const double alpha_dim = static_cast<double>(out.alpha_dim);
  std::vector<std::size_t> pos(num_labels, 0);
  while (true) {
    std::vector<std::size_t> beta(num_labels);
    long long mult = 1;
    std::size_t beta_dim = 1;
    std::size_t collapsed = 0;  // large blocks whose constituent has dimension one
    for (std::size_t l = 0; l < num_labels; ++l) {
      const auto [id, m] = decs[l].parts[pos[l]];
      beta[l] = id;
      mult *= m;
      beta_dim *= set.dim(id);
      if (out.block_dims[l] >= 2 && set.dim(id) == 1) ++collapsed;
    }
    out.multiplicities[beta] += mult;
    const double m = static_cast<double>(mult);
    if (m > std::pow(1 - 1 / order, static_cast<double>(collapsed)) * alpha_dim + 1e-9)
      out.blockwise_bound_ok = false;
    if (out.hypothesis && beta_dim < c && m > eps0 * eps0 * alpha_dim + 1e-9)
      out.dichotomy_ok = false;

    std::size_t l = num_labels;
    while (l-- > 0) {
      if (++pos[l] < decs[l].parts.size()) break;
      pos[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace nalin
