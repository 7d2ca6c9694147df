#include "nalin/fourier.hpp"

#include <cmath>
#include <sstream>

#include "nalin/error.hpp"
#include "nalin/random.hpp"
#include "nalin/text.hpp"

namespace nalin {

namespace {

constexpr std::size_t kFileBudget = 10000000;
constexpr std::size_t kFoldingSamples = 100000;

void kron_into(Matrix& out, const Matrix& a, const Matrix& b) {
  const auto br = b.rows(), bc = b.cols();
  out.resize(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * br, j * bc, br, bc) = a(i, j) * b;
}

/// Walks x over G^n in index order, keeping alpha(x) up to date. Only the
/// Kronecker factors of coordinates that changed are recomputed.
class TensorWalker {
 public:
  TensorWalker(const IrrepSet& set, std::size_t order, std::span<const std::size_t> alpha)
      : set_(set), order_(order), alpha_(alpha.begin(), alpha.end()),
        digits_(alpha.size(), 0), prefix_(alpha.size()) {
    rebuild(0);
  }

  const Matrix& image() const { return prefix_.back(); }

  void advance() {
    std::size_t pos = digits_.size();
    while (pos-- > 0) {
      if (++digits_[pos] < order_) break;
      digits_[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) pos = 0;
    rebuild(pos);
  }

 private:
  void rebuild(std::size_t from) {
    for (std::size_t k = from; k < digits_.size(); ++k) {
      const Matrix& m = set_[alpha_[k]](static_cast<ElementId>(digits_[k]));
      if (k == 0) prefix_[0] = m;
      else kron_into(prefix_[k], prefix_[k - 1], m);
    }
  }

  const IrrepSet& set_;
  std::size_t order_;
  std::vector<std::size_t> alpha_;
  std::vector<std::size_t> digits_;
  std::vector<Matrix> prefix_;
};

void require_same_shape(const ScalarFunctionTable& f, const ScalarFunctionTable& g) {
  if (!f.group || !g.group || f.n != g.n || f.values.size() != g.values.size() ||
      !f.group->same_table(*g.group))
    throw Error(ErrorCode::ShapeMismatch, "functions live on different domains");
}

void check_table(const ScalarFunctionTable& f) {
  if (!f.group) throw Error(ErrorCode::InvalidArgument, "function has no group");
  if (f.values.size() != power_size(f.group->order(), f.n, kFileBudget))
    throw Error(ErrorCode::ShapeMismatch, "function table has the wrong length");
}

void check_set(const ScalarFunctionTable& f, const IrrepSet& set) {
  check_table(f);
  if (!set.group()->same_table(*f.group))
    throw Error(ErrorCode::ShapeMismatch, "irreps belong to a different group");
}

std::size_t tuple_dim(const IrrepSet& set, std::span<const std::size_t> alpha) {
  std::size_t d = 1;
  for (std::size_t c : alpha) {
    if (c >= set.size()) throw Error(ErrorCode::OutOfRange, "irrep id out of range");
    d *= set.dim(c);
  }
  return d;
}

struct FileHeader {
  GroupPtr group;
  std::size_t n = 1;
  std::size_t size = 1;
  std::vector<TextLine> body;
};

FileHeader parse_header(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].words != std::vector<std::string>{"fn", "v1"})
    parse_error(lines.empty() ? 1 : lines[0].number, "expected 'fn v1'");
  if (lines.size() < 3 || lines[1].words.size() != 2 || lines[1].words[0] != "group")
    parse_error(lines.size() > 1 ? lines[1].number : 1, "expected 'group <name>'");
  if (lines[2].words.size() != 2 || lines[2].words[0] != "n")
    parse_error(lines[2].number, "expected 'n <k>'");
  FileHeader h;
  h.group = load_group(lines[1].words[1]);
  h.n = parse_uint(lines[2].words[1], lines[2].number);
  if (h.n == 0) parse_error(lines[2].number, "n must be positive");
  h.size = power_size(h.group->order(), h.n, kFileBudget);
  h.body.assign(lines.begin() + 3, lines.end());
  if (h.body.size() != h.size)
    parse_error(lines.back().number, "expected " + std::to_string(h.size) + " value lines");
  return h;
}

template <class T, class ParseValue>
std::vector<T> parse_values(const FileHeader& h, ParseValue&& parse_value) {
  std::vector<T> values(h.size);
  std::vector<char> seen(h.size, 0);
  for (const auto& line : h.body) {
    if (line.words.size() != 2) parse_error(line.number, "expected '<index> <value>'");
    const auto idx = parse_uint(line.words[0], line.number);
    if (idx >= h.size) parse_error(line.number, "index out of range");
    if (seen[idx]) parse_error(line.number, "duplicate index");
    seen[idx] = 1;
    values[idx] = parse_value(line.words[1], line.number);
  }
  return values;
}

}  // namespace

std::size_t power_size(std::size_t order, std::size_t n, std::size_t budget) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (size > budget / order)
      throw Error(ErrorCode::BudgetExceeded, "|G|^n = " + std::to_string(order) + "^" +
                                                 std::to_string(n) + " exceeds budget " +
                                                 std::to_string(budget));
    size *= order;
  }
  return size;
}

GroupPower::GroupPower(GroupPtr g, std::size_t n) : group_(std::move(g)), n_(n) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  size_ = power_size(group_->order(), n_, std::size_t{1} << 40);
  stride_.assign(n_, 1);
  for (std::size_t i = n_ - 1; i-- > 0;) stride_[i] = stride_[i + 1] * group_->order();
}

std::vector<ElementId> GroupPower::tuple(std::size_t index) const {
  std::vector<ElementId> t(n_);
  for (std::size_t i = 0; i < n_; ++i) t[i] = coordinate(index, i);
  return t;
}

std::size_t GroupPower::index(std::span<const ElementId> tuple) const {
  if (tuple.size() != n_) throw Error(ErrorCode::ShapeMismatch, "tuple has the wrong length");
  std::size_t x = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (tuple[i] >= group_->order()) throw Error(ErrorCode::OutOfRange, "element id out of range");
    x += tuple[i] * stride_[i];
  }
  return x;
}

ElementId GroupPower::coordinate(std::size_t index, std::size_t i) const {
  return static_cast<ElementId>((index / stride_[i]) % group_->order());
}

std::size_t GroupPower::mul(std::size_t x, std::size_t y) const {
  std::size_t z = 0;
  for (std::size_t i = 0; i < n_; ++i) z += group_->mul(coordinate(x, i), coordinate(y, i)) * stride_[i];
  return z;
}

std::size_t GroupPower::inv(std::size_t x) const {
  std::size_t z = 0;
  for (std::size_t i = 0; i < n_; ++i) z += group_->inv(coordinate(x, i)) * stride_[i];
  return z;
}

std::size_t GroupPower::scale(ElementId c, std::size_t x) const {
  std::size_t z = 0;
  for (std::size_t i = 0; i < n_; ++i) z += group_->mul(c, coordinate(x, i)) * stride_[i];
  return z;
}

std::size_t GroupPower::diagonal(ElementId c) const {
  std::size_t z = 0;
  for (std::size_t i = 0; i < n_; ++i) z += c * stride_[i];
  return z;
}

GroupPower::OrbitPosition GroupPower::orbit_of(std::size_t x) const {
  const ElementId shift = coordinate(x, 0);
  return {scale(group_->inv(shift), x), shift};
}

bool is_folded(const GroupFunctionTable& f) {
  const GroupPower gp(f.group, f.n);
  if (f.values.size() != gp.size()) throw Error(ErrorCode::ShapeMismatch, "function table has the wrong length");
  const FiniteGroup& g = *f.group;
  if (gp.size() <= kFourierBudget) {
    for (std::size_t x = 0; x < gp.size(); ++x)
      for (ElementId c = 0; c < g.order(); ++c)
        if (f.values[gp.scale(c, x)] != g.mul(c, f.values[x])) return false;
    return true;
  }
  Rng rng = Rng::stream(0xf01dULL, gp.size());
  for (std::size_t s = 0; s < kFoldingSamples; ++s) {
    const std::size_t x = rng.below(gp.size());
    const auto c = static_cast<ElementId>(rng.below(g.order()));
    if (f.values[gp.scale(c, x)] != g.mul(c, f.values[x])) return false;
  }
  return true;
}

GroupFunctionTable fold_from_representatives(const GroupPtr& g, std::size_t n,
                                             std::span<const ElementId> rep_values) {
  const GroupPower gp(g, n);
  if (rep_values.size() != gp.orbit_count())
    throw Error(ErrorCode::ShapeMismatch, "one value per folding orbit is required");
  GroupFunctionTable f{g, n, std::vector<ElementId>(gp.size()), true};
  for (std::size_t x = 0; x < gp.size(); ++x) {
    const auto [orbit, shift] = gp.orbit_of(x);
    if (rep_values[orbit] >= g->order()) throw Error(ErrorCode::OutOfRange, "element id out of range");
    f.values[x] = g->mul(shift, rep_values[orbit]);
  }
  return f;
}

IrrepIndex make_irrep_index(const IrrepSet& set, std::vector<std::size_t> components) {
  IrrepIndex a;
  a.dim = tuple_dim(set, components);
  for (std::size_t c : components) {
    if (c != 0) ++a.weight;
    if (set.dim(c) >= 2) ++a.w2;
  }
  a.components = std::move(components);
  return a;
}

std::vector<IrrepIndex> all_irrep_indices(const IrrepSet& set, std::size_t n) {
  const std::size_t count = power_size(set.size(), n, kFileBudget);
  std::vector<IrrepIndex> out;
  out.reserve(count);
  std::vector<std::size_t> c(n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t rest = k;
    for (std::size_t i = n; i-- > 0;) {
      c[i] = rest % set.size();
      rest /= set.size();
    }
    out.push_back(make_irrep_index(set, c));
  }
  return out;
}

Matrix tensor_image(const IrrepSet& set, const GroupPower& gp, std::span<const std::size_t> alpha,
                    std::size_t x) {
  if (alpha.size() != gp.n()) throw Error(ErrorCode::ShapeMismatch, "irrep tuple has the wrong length");
  tuple_dim(set, alpha);
  Matrix acc = set[alpha[0]](gp.coordinate(x, 0));
  Matrix next;
  for (std::size_t i = 1; i < gp.n(); ++i) {
    kron_into(next, acc, set[alpha[i]](gp.coordinate(x, i)));
    acc.swap(next);
  }
  return acc;
}

Matrix fourier_coefficient(const ScalarFunctionTable& f, const IrrepSet& set,
                           std::span<const std::size_t> alpha) {
  check_set(f, set);
  if (alpha.size() != f.n) throw Error(ErrorCode::ShapeMismatch, "irrep tuple has the wrong length");
  const auto d = static_cast<Eigen::Index>(tuple_dim(set, alpha));
  Matrix acc = Matrix::Zero(d, d);
  TensorWalker walk(set, f.group->order(), alpha);
  for (std::size_t x = 0; x < f.values.size(); ++x) {
    if (f.values[x] != Complex(0)) acc.noalias() += f.values[x] * walk.image();
    if (x + 1 < f.values.size()) walk.advance();
  }
  return acc / static_cast<double>(f.values.size());
}

FourierTable fourier_transform(const ScalarFunctionTable& f, const IrrepSet& set) {
  check_set(f, set);
  power_size(f.group->order(), f.n, kFourierBudget);
  FourierTable t{f.group, f.n, {}};
  for (const auto& alpha : all_irrep_indices(set, f.n))
    t.coeffs.emplace(alpha.components, fourier_coefficient(f, set, alpha.components));
  return t;
}

ScalarFunctionTable inverse_transform(const FourierTable& t, const IrrepSet& set) {
  if (!t.group || !set.group()->same_table(*t.group))
    throw Error(ErrorCode::ShapeMismatch, "irreps belong to a different group");
  const std::size_t size = power_size(t.group->order(), t.n, kFourierBudget);
  ScalarFunctionTable f{t.group, t.n, std::vector<Complex>(size, 0.0)};
  for (const auto& [alpha, coeff] : t.coeffs) {
    if (alpha.size() != t.n) throw Error(ErrorCode::ShapeMismatch, "irrep tuple has the wrong length");
    const auto d = static_cast<double>(tuple_dim(set, alpha));
    if (coeff.rows() != static_cast<Eigen::Index>(d) || coeff.cols() != coeff.rows())
      throw Error(ErrorCode::ShapeMismatch, "coefficient has the wrong dimension");
    if (coeff.isZero(0.0)) continue;
    TensorWalker walk(set, t.group->order(), alpha);
    for (std::size_t x = 0; x < size; ++x) {
      // <A, B> = tr(A B*) = sum_ij A_ij conj(B_ij)
      f.values[x] += d * coeff.cwiseProduct(walk.image().conjugate()).sum();
      if (x + 1 < size) walk.advance();
    }
  }
  return f;
}

ScalarFunctionTable convolve(const ScalarFunctionTable& f, const ScalarFunctionTable& g) {
  require_same_shape(f, g);
  check_table(f);
  const GroupPower gp(f.group, f.n);
  const std::size_t size = gp.size();
  ScalarFunctionTable h{f.group, f.n, std::vector<Complex>(size, 0.0)};
  std::vector<std::size_t> inverse(size);
  for (std::size_t y = 0; y < size; ++y) inverse[y] = gp.inv(y);
  for (std::size_t y = 0; y < size; ++y) {
    if (f.values[y] == Complex(0)) continue;
    const std::size_t yi = inverse[y];
    for (std::size_t x = 0; x < size; ++x) h.values[x] += f.values[y] * g.values[gp.mul(yi, x)];
  }
  for (auto& v : h.values) v /= static_cast<double>(size);
  return h;
}

Complex inner_product(const ScalarFunctionTable& f, const ScalarFunctionTable& g) {
  require_same_shape(f, g);
  Complex s = 0;
  for (std::size_t x = 0; x < f.values.size(); ++x) s += f.values[x] * std::conj(g.values[x]);
  return s / static_cast<double>(f.values.size());
}

double l2_norm(const ScalarFunctionTable& f) {
  double s = 0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s / static_cast<double>(f.values.size()));
}

Complex bilinear_form(const ScalarFunctionTable& f, const ScalarFunctionTable& g) {
  require_same_shape(f, g);
  const GroupPower gp(f.group, f.n);
  Complex s = 0;
  for (std::size_t x = 0; x < f.values.size(); ++x) s += f.values[x] * g.values[gp.inv(x)];
  return s / static_cast<double>(f.values.size());
}

Complex fourier_inner_product(const FourierTable& a, const FourierTable& b, const IrrepSet& set) {
  Complex s = 0;
  for (const auto& [alpha, m] : a.coeffs) {
    const auto it = b.coeffs.find(alpha);
    if (it == b.coeffs.end()) continue;
    s += static_cast<double>(tuple_dim(set, alpha)) * hs_inner(m, it->second);
  }
  return s;
}

BnpReport bnp_check(const ScalarFunctionTable& f, const ScalarFunctionTable& g,
                    const IrrepSet& set) {
  require_same_shape(f, g);
  check_set(f, set);
  if (f.n != 1) throw Error(ErrorCode::InvalidArgument, "the convolution bound is stated on G (n = 1)");
  auto mean = [](const ScalarFunctionTable& h) {
    Complex s = 0;
    for (const auto& v : h.values) s += v;
    return std::abs(s / static_cast<double>(h.values.size()));
  };
  if (mean(f) > 1e-10 && mean(g) > 1e-10)
    throw Error(ErrorCode::MeanNotZero, "one of the two functions must have mean zero");
  BnpReport r;
  r.min_dim = std::max<std::size_t>(set.min_nontrivial_dim(), 1);
  r.trivial_bound = r.min_dim <= 1;
  r.lhs = l2_norm(convolve(f, g));
  r.rhs = l2_norm(f) * l2_norm(g) / std::sqrt(static_cast<double>(r.min_dim));
  r.ok = r.lhs <= r.rhs + 1e-9;
  return r;
}

ScalarFunctionTable entry_function(const GroupFunctionTable& f, const Irrep& rho, std::size_t i,
                                   std::size_t j) {
  if (i >= rho.dim || j >= rho.dim)
    throw Error(ErrorCode::OutOfRange, "matrix entry index out of range");
  if (rho.matrices.size() != f.group->order())
    throw Error(ErrorCode::ShapeMismatch, "irrep belongs to a different group");
  ScalarFunctionTable g{f.group, f.n, std::vector<Complex>(f.values.size())};
  const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
  for (std::size_t x = 0; x < f.values.size(); ++x) g.values[x] = rho(f.values[x])(ii, jj);
  return g;
}

double folded_dim1_mass(const GroupFunctionTable& f, const Irrep& rho, const IrrepSet& set) {
  if (rho.dim < 2) throw Error(ErrorCode::DimOne, "the entry functions need an irrep of dimension >= 2");
  if (!f.folded || !is_folded(f)) throw Error(ErrorCode::NotFolded, "function is not folded");
  power_size(f.group->order(), f.n, kFourierBudget);
  std::vector<std::size_t> linear;
  for (std::size_t k = 0; k < set.size(); ++k)
    if (set.dim(k) == 1) linear.push_back(k);
  const std::size_t count = power_size(linear.size(), f.n, kFileBudget);
  double worst = 0;
  for (std::size_t i = 0; i < rho.dim; ++i)
    for (std::size_t j = 0; j < rho.dim; ++j) {
      const ScalarFunctionTable g = entry_function(f, rho, i, j);
      std::vector<std::size_t> alpha(f.n);
      for (std::size_t k = 0; k < count; ++k) {
        std::size_t rest = k;
        for (std::size_t c = f.n; c-- > 0;) {
          alpha[c] = linear[rest % linear.size()];
          rest /= linear.size();
        }
        worst = std::max(worst, hs_norm(fourier_coefficient(g, set, alpha)));
      }
    }
  return worst;
}

std::string serialize_function(const ScalarFunctionTable& f) {
  std::ostringstream out;
  out << "fn v1\ngroup " << f.group->name() << "\nn " << f.n << '\n';
  for (std::size_t x = 0; x < f.values.size(); ++x)
    out << x << ' ' << format_double(f.values[x].real()) << ',' << format_double(f.values[x].imag())
        << '\n';
  return out.str();
}

std::string serialize_function(const GroupFunctionTable& f) {
  std::ostringstream out;
  out << "fn v1\ngroup " << f.group->name() << "\nn " << f.n << '\n';
  for (std::size_t x = 0; x < f.values.size(); ++x) out << x << ' ' << f.values[x] << '\n';
  return out.str();
}

ScalarFunctionTable parse_scalar_function(std::string_view text) {
  const FileHeader h = parse_header(text);
  auto values = parse_values<Complex>(h, [](const std::string& tok, std::size_t line) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos) return Complex(parse_double(tok, line), 0.0);
    return Complex(parse_double(std::string_view(tok).substr(0, comma), line),
                   parse_double(std::string_view(tok).substr(comma + 1), line));
  });
  return {h.group, h.n, std::move(values)};
}

GroupFunctionTable parse_group_function(std::string_view text) {
  const FileHeader h = parse_header(text);
  const std::size_t order = h.group->order();
  auto values = parse_values<ElementId>(h, [order](const std::string& tok, std::size_t line) {
    const auto v = parse_uint(tok, line);
    if (v >= order) parse_error(line, "element id out of range");
    return static_cast<ElementId>(v);
  });
  GroupFunctionTable f{h.group, h.n, std::move(values), false};
  f.folded = is_folded(f);
  return f;
}

}  // namespace nalin
