#include "nalin/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "nalin/error.hpp"
#include "nalin/random.hpp"
#include "nalin/text.hpp"

namespace nalin {

namespace {

// Surjection [R] -> [L] sending fixed_v to fixed_u; every other label is hit
// by a shuffled position, the remaining positions are uniform.
std::vector<std::size_t> random_projection(Rng& rng, std::size_t L, std::size_t R, std::size_t fixed_u,
                                           std::size_t fixed_v) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < R; ++i)
    if (i != fixed_v) positions.push_back(i);
  for (std::size_t i = positions.size(); i > 1; --i) std::swap(positions[i - 1], positions[rng.below(i)]);
  std::vector<std::size_t> pi(R, 0);
  pi[fixed_v] = fixed_u;
  std::size_t next = 0;
  for (std::size_t label = 0; label < L; ++label)
    if (label != fixed_u) pi[positions[next++]] = label;
  for (; next < positions.size(); ++next) pi[positions[next]] = rng.below(L);
  return pi;
}

std::size_t checked_size(std::size_t order, std::size_t k) { return power_size(order, k, kFourierBudget); }

struct EdgeQuery {
  std::size_t a;  // in G^R
  std::size_t b;  // in G^L
  std::size_t c;  // in G^R
};

EdgeQuery complete_query(const FiniteGroup& g, const GroupPower& gr, const GroupPower& gl, const LcEdge& e,
                         std::size_t a, std::size_t b) {
  std::vector<ElementId> c(gr.n());
  for (std::size_t i = 0; i < gr.n(); ++i)
    c[i] = g.inv(g.mul(gr.coordinate(a, i), gl.coordinate(b, e.pi[i])));
  return {a, b, gr.index(c)};
}

LinConstraint query_constraint(const ReducedInstance& red, const GroupPower& gr, const GroupPower& gl,
                               const LcEdge& e, const EdgeQuery& q, double weight) {
  const auto pa = gr.orbit_of(q.a);
  const auto pb = gl.orbit_of(q.b);
  const auto pc = gr.orbit_of(q.c);
  LinConstraint c;
  c.weight = weight;
  c.rhs = kIdentity;
  c.consts = {pa.shift, pb.shift, pc.shift, kIdentity};
  c.terms = {{red.v_var(e.v, pa.orbit), 1}, {red.u_var(e.u, pb.orbit), 1}, {red.v_var(e.v, pc.orbit), 1}};
  return c;
}

struct NodeDistribution {
  std::vector<double> prob;
  std::vector<std::vector<std::size_t>> candidates;  // coordinates with dim >= 2
  double mass = 0;
};

NodeDistribution node_distribution(const GroupFunctionTable& f, const IrrepSet& set, const Irrep& rho,
                                   std::size_t i, std::size_t j) {
  if (!is_folded(f)) throw Error(ErrorCode::NotFolded, "decoding needs folded node tables");
  const FourierTable t = fourier_transform(entry_function(f, rho, i, j), set);
  NodeDistribution d;
  for (const auto& [alpha, m] : t.coeffs) {
    const double p = static_cast<double>(m.rows()) * m.squaredNorm();
    std::vector<std::size_t> coords;
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if (set.dim(alpha[k]) >= 2) coords.push_back(k);
    d.prob.push_back(p);
    d.candidates.push_back(std::move(coords));
    d.mass += p;
  }
  return d;
}

std::size_t draw_label(const NodeDistribution& d, Rng& rng) {
  const double x = rng.unit();
  double acc = 0;
  for (std::size_t k = 0; k < d.prob.size(); ++k) {
    acc += d.prob[k];
    if (x < acc) {
      const auto& c = d.candidates[k];
      if (c.empty()) return kBottom;
      return c[rng.below(c.size())];
    }
  }
  return kBottom;
}

}  // namespace

void validate(const LabelCover& lc) {
  if (lc.L == 0 || lc.R < lc.L) throw Error(ErrorCode::InvalidArgument, "need 1 <= L <= R");
  for (const auto& e : lc.edges) {
    if (e.u >= lc.num_u || e.v >= lc.num_v) throw Error(ErrorCode::OutOfRange, "edge endpoint out of range");
    if (e.pi.size() != lc.R) throw Error(ErrorCode::ShapeMismatch, "projection must have R entries");
    std::vector<bool> hit(lc.L, false);
    for (std::size_t x : e.pi) {
      if (x >= lc.L) throw Error(ErrorCode::OutOfRange, "projection value out of range");
      hit[x] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw Error(ErrorCode::InvalidArgument, "projection is not surjective");
  }
}

void validate(const LabelCover& lc, const Labeling& lab) {
  if (lab.u.size() != lc.num_u || lab.v.size() != lc.num_v)
    throw Error(ErrorCode::ShapeMismatch, "labeling does not match the node counts");
  for (std::size_t x : lab.u)
    if (x >= lc.L) throw Error(ErrorCode::OutOfRange, "U label out of range");
  for (std::size_t x : lab.v)
    if (x >= lc.R) throw Error(ErrorCode::OutOfRange, "V label out of range");
}

double lc_value(const LabelCover& lc, const Labeling& lab) {
  validate(lc, lab);
  if (lc.edges.empty()) return 0;
  std::size_t ok = 0;
  for (const auto& e : lc.edges) ok += e.pi[lab.v[e.v]] == lab.u[e.u];
  return static_cast<double>(ok) / static_cast<double>(lc.edges.size());
}

ToyLabelCover generate_toy_lc(LcKind kind, const LcSizes& s, std::uint64_t seed) {
  if (s.L == 0 || s.R < s.L) throw Error(ErrorCode::InvalidArgument, "need 1 <= L <= R");
  if (s.num_u == 0 || s.num_v == 0 || s.num_edges == 0)
    throw Error(ErrorCode::InvalidArgument, "need at least one node on each side and one edge");
  Rng rng(seed);
  ToyLabelCover out;
  out.lc = {s.num_u, s.num_v, s.L, s.R, {}};
  if (kind == LcKind::Planted) {
    Labeling lab;
    for (std::size_t i = 0; i < s.num_u; ++i) lab.u.push_back(rng.below(s.L));
    for (std::size_t i = 0; i < s.num_v; ++i) lab.v.push_back(rng.below(s.R));
    out.planted = lab;
  }
  for (std::size_t k = 0; k < s.num_edges; ++k) {
    LcEdge e;
    e.u = rng.below(s.num_u);
    e.v = rng.below(s.num_v);
    const std::size_t fu = out.planted ? out.planted->u[e.u] : rng.below(s.L);
    const std::size_t fv = out.planted ? out.planted->v[e.v] : rng.below(s.R);
    e.pi = random_projection(rng, s.L, s.R, fu, fv);
    out.lc.edges.push_back(std::move(e));
  }
  validate(out.lc);
  return out;
}

SmoothnessReport smoothness_stat(const LabelCover& lc, std::size_t v, const std::vector<std::size_t>& alpha_set,
                                 double d0) {
  validate(lc);
  if (alpha_set.empty()) throw Error(ErrorCode::InvalidArgument, "label set must be nonempty");
  if (v >= lc.num_v) throw Error(ErrorCode::OutOfRange, "node out of range");
  const std::set<std::size_t> alpha(alpha_set.begin(), alpha_set.end());
  for (std::size_t x : alpha)
    if (x >= lc.R) throw Error(ErrorCode::OutOfRange, "label out of range");
  SmoothnessReport r;
  double sum = 0;
  for (const auto& e : lc.edges) {
    if (e.v != v) continue;
    std::set<std::size_t> image;
    for (std::size_t x : alpha) image.insert(e.pi[x]);
    sum += 1.0 / static_cast<double>(image.size());
    ++r.neighbors;
  }
  if (r.neighbors == 0) throw Error(ErrorCode::InvalidArgument, "node has no edges");
  r.stat = sum / static_cast<double>(r.neighbors);
  r.bound = std::pow(static_cast<double>(alpha.size()), -2 * d0);
  r.ok = r.stat <= r.bound + 1e-12;
  return r;
}

std::size_t reduced_variable_count(const LabelCover& lc, std::size_t order) {
  return lc.num_u * checked_size(order, lc.L - 1) + lc.num_v * checked_size(order, lc.R - 1);
}

ReducedInstance reduce(const LabelCover& lc, const GroupPtr& g, ReduceMode mode, std::uint64_t seed,
                       std::size_t samples) {
  validate(lc);
  if (lc.edges.empty()) throw Error(ErrorCode::InvalidArgument, "label cover has no edges");
  const std::size_t order = g->order();
  ReducedInstance red;
  red.L = lc.L;
  red.R = lc.R;
  std::size_t next = 0;
  const std::size_t u_vars = checked_size(order, lc.L - 1), v_vars = checked_size(order, lc.R - 1);
  for (std::size_t u = 0; u < lc.num_u; ++u, next += u_vars) red.u_offset.push_back(next);
  for (std::size_t v = 0; v < lc.num_v; ++v, next += v_vars) red.v_offset.push_back(next);

  const GroupPower gr(g, lc.R), gl(g, lc.L);
  std::vector<LinConstraint> cs;
  if (mode == ReduceMode::Full) {
    const std::size_t per_edge = power_size(order, lc.R + lc.L, kReductionBudget);
    if (per_edge > kReductionBudget / lc.edges.size())
      throw Error(ErrorCode::BudgetExceeded, "full reduction would emit more than " +
                                                 std::to_string(kReductionBudget) + " constraints");
    const double w = 1.0 / static_cast<double>(per_edge * lc.edges.size());
    cs.reserve(per_edge * lc.edges.size());
    for (const auto& e : lc.edges)
      for (std::size_t a = 0; a < gr.size(); ++a)
        for (std::size_t b = 0; b < gl.size(); ++b)
          cs.push_back(query_constraint(red, gr, gl, e, complete_query(*g, gr, gl, e, a, b), w));
  } else {
    if (samples == 0 || samples > kReductionBudget)
      throw Error(ErrorCode::BudgetExceeded, "sample count must lie in [1, " + std::to_string(kReductionBudget) + "]");
    const double w = 1.0 / static_cast<double>(samples);
    for (std::size_t s = 0; s < samples; ++s) {
      Rng rng = Rng::stream(seed, s);
      const LcEdge& e = lc.edges[rng.below(lc.edges.size())];
      const std::size_t a = rng.below(gr.size());
      const std::size_t b = rng.below(gl.size());
      cs.push_back(query_constraint(red, gr, gl, e, complete_query(*g, gr, gl, e, a, b), w));
    }
  }
  red.instance = make_instance(g, next, std::move(cs));
  return red;
}

Assignment longcode_assignment(const LabelCover& lc, const Labeling& lab, const ReducedInstance& red) {
  validate(lc, lab);
  const GroupPtr& g = red.instance.group;
  const GroupPower gr(g, red.R), gl(g, red.L);
  Assignment out(red.instance.num_vars, kIdentity);
  for (std::size_t u = 0; u < lc.num_u; ++u)
    for (std::size_t o = 0; o < gl.orbit_count(); ++o) out[red.u_var(u, o)] = gl.coordinate(o, lab.u[u]);
  for (std::size_t v = 0; v < lc.num_v; ++v)
    for (std::size_t o = 0; o < gr.orbit_count(); ++o) out[red.v_var(v, o)] = gr.coordinate(o, lab.v[v]);
  return out;
}

NodeTables tables_from_assignment(const ReducedInstance& red, const Assignment& a) {
  if (a.size() != red.instance.num_vars) throw Error(ErrorCode::ShapeMismatch, "assignment length mismatch");
  const GroupPtr& g = red.instance.group;
  const std::size_t u_vars = GroupPower(g, red.L).orbit_count(), v_vars = GroupPower(g, red.R).orbit_count();
  NodeTables t;
  for (std::size_t off : red.u_offset)
    t.u.push_back(fold_from_representatives(g, red.L, std::span<const ElementId>(a).subspan(off, u_vars)));
  for (std::size_t off : red.v_offset)
    t.v.push_back(fold_from_representatives(g, red.R, std::span<const ElementId>(a).subspan(off, v_vars)));
  return t;
}

Assignment assignment_from_tables(const ReducedInstance& red, const NodeTables& t) {
  if (t.u.size() != red.u_offset.size() || t.v.size() != red.v_offset.size())
    throw Error(ErrorCode::ShapeMismatch, "one table per node is required");
  const GroupPtr& g = red.instance.group;
  const GroupPower gr(g, red.R), gl(g, red.L);
  Assignment out(red.instance.num_vars, kIdentity);
  for (std::size_t u = 0; u < t.u.size(); ++u) {
    if (t.u[u].values.size() != gl.size()) throw Error(ErrorCode::ShapeMismatch, "U table has the wrong size");
    for (std::size_t o = 0; o < gl.orbit_count(); ++o) out[red.u_var(u, o)] = t.u[u].values[o];
  }
  for (std::size_t v = 0; v < t.v.size(); ++v) {
    if (t.v[v].values.size() != gr.size()) throw Error(ErrorCode::ShapeMismatch, "V table has the wrong size");
    for (std::size_t o = 0; o < gr.orbit_count(); ++o) out[red.v_var(v, o)] = t.v[v].values[o];
  }
  return out;
}

double direct_test_value(const LabelCover& lc, const NodeTables& t) {
  validate(lc);
  if (lc.edges.empty()) return 0;
  if (t.u.size() != lc.num_u || t.v.size() != lc.num_v)
    throw Error(ErrorCode::ShapeMismatch, "one table per node is required");
  const GroupPtr& g = t.v.empty() ? t.u.front().group : t.v.front().group;
  const GroupPower gr(g, lc.R), gl(g, lc.L);
  power_size(g->order(), lc.R + lc.L, kReductionBudget);
  double total = 0;
  for (const auto& e : lc.edges) {
    const auto& fu = t.u[e.u].values;
    const auto& fv = t.v[e.v].values;
    std::size_t hits = 0;
    for (std::size_t a = 0; a < gr.size(); ++a)
      for (std::size_t b = 0; b < gl.size(); ++b) {
        const EdgeQuery q = complete_query(*g, gr, gl, e, a, b);
        hits += g->mul(g->mul(fv[q.a], fu[q.b]), fv[q.c]) == kIdentity;
      }
    total += static_cast<double>(hits) / static_cast<double>(gr.size() * gl.size());
  }
  return total / static_cast<double>(lc.edges.size());
}

DecodeResult fourier_decode(const LabelCover& lc, const NodeTables& tables, const IrrepSet& set, std::size_t rho,
                            std::size_t p, std::size_t q, std::size_t r, std::uint64_t seed, std::size_t trials) {
  validate(lc);
  if (rho >= set.size()) throw Error(ErrorCode::OutOfRange, "irrep index out of range");
  const Irrep& irrep = set[rho];
  if (irrep.dim < 2) throw Error(ErrorCode::DimOne, "decoding needs an irrep of dimension >= 2");
  if (p >= irrep.dim || q >= irrep.dim || r >= irrep.dim)
    throw Error(ErrorCode::OutOfRange, "matrix index out of range");
  if (tables.u.size() != lc.num_u || tables.v.size() != lc.num_v)
    throw Error(ErrorCode::ShapeMismatch, "one table per node is required");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "need at least one trial");

  std::vector<NodeDistribution> du, dv;
  DecodeResult out;
  for (const auto& f : tables.u) {
    du.push_back(node_distribution(f, set, irrep, q, r));
    out.u_mass.push_back(du.back().mass);
  }
  for (const auto& f : tables.v) {
    dv.push_back(node_distribution(f, set, irrep, r, p));
    out.v_mass.push_back(dv.back().mass);
  }

  std::size_t bottoms = 0, satisfied = 0;
  bool have_best = false;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    Labeling lab;
    for (const auto& d : du) lab.u.push_back(draw_label(d, rng));
    for (const auto& d : dv) lab.v.push_back(draw_label(d, rng));
    bottoms += static_cast<std::size_t>(std::count(lab.u.begin(), lab.u.end(), kBottom) +
                                        std::count(lab.v.begin(), lab.v.end(), kBottom));
    for (const auto& e : lc.edges) {
      if (lab.u[e.u] == kBottom || lab.v[e.v] == kBottom) continue;
      ++out.labeled_edges;
      satisfied += e.pi[lab.v[e.v]] == lab.u[e.u];
    }
    Labeling filled = lab;
    for (auto& x : filled.u) x = x == kBottom ? 0 : x;
    for (auto& x : filled.v) x = x == kBottom ? 0 : x;
    const double value = lc_value(lc, filled);
    if (!have_best || value > out.best_value) {
      out.best = filled;
      out.best_value = value;
      have_best = true;
    }
    out.trials.push_back(std::move(lab));
  }
  out.bottom_rate = static_cast<double>(bottoms) / static_cast<double>(trials * (lc.num_u + lc.num_v));
  out.conditional_value =
      out.labeled_edges ? static_cast<double>(satisfied) / static_cast<double>(out.labeled_edges) : 0.0;
  return out;
}

SoundnessParameters soundness_parameters(double delta, std::size_t order, double d0) {
  if (!(delta > 0 && delta < 1)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  if (!(d0 > 0 && d0 < 1.0 / 3)) throw Error(ErrorCode::InvalidArgument, "d0 must lie in (0, 1/3)");
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "group order must be positive");
  SoundnessParameters s;
  s.delta = delta;
  s.order = order;
  s.d0 = d0;
  const double q = static_cast<double>(order);
  s.C = std::pow(12 * std::pow(q, 6) / (delta * delta), 2 / d0);
  s.eta = std::pow(s.C, -d0);
  s.c = 1 / s.eta;
  s.eps0 = std::sqrt(s.eta);
  s.c_regime = s.c >= 10 * q * std::log(1 / s.eps0);
  s.log10_lc_soundness = 2 * std::log10(delta) - 1 - 10 * s.C * std::log10(q);
  return s;
}

std::string serialize_label_cover(const LabelCover& lc) {
  std::ostringstream out;
  out << "lc v1\nsides " << lc.num_u << ' ' << lc.num_v << "\nalphabets " << lc.L << ' ' << lc.R << '\n';
  for (const auto& e : lc.edges) {
    out << "edge " << e.u << ' ' << e.v << " :";
    for (std::size_t x : e.pi) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

LabelCover parse_label_cover(std::string_view text) {
  const auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].words != std::vector<std::string>{"lc", "v1"})
    parse_error(lines.empty() ? 1 : lines[0].number, "expected 'lc v1'");
  if (lines.size() < 3 || lines[1].words.size() != 3 || lines[1].words[0] != "sides")
    parse_error(lines.size() > 1 ? lines[1].number : 1, "expected 'sides <U> <V>'");
  if (lines[2].words.size() != 3 || lines[2].words[0] != "alphabets")
    parse_error(lines[2].number, "expected 'alphabets <L> <R>'");
  LabelCover lc;
  lc.num_u = parse_uint(lines[1].words[1], lines[1].number);
  lc.num_v = parse_uint(lines[1].words[2], lines[1].number);
  lc.L = parse_uint(lines[2].words[1], lines[2].number);
  lc.R = parse_uint(lines[2].words[2], lines[2].number);
  if (lc.L == 0 || lc.R < lc.L) parse_error(lines[2].number, "need 1 <= L <= R");
  for (std::size_t li = 3; li < lines.size(); ++li) {
    const auto& w = lines[li].words;
    const std::size_t ln = lines[li].number;
    if (w.size() != 4 + lc.R || w[0] != "edge" || w[3] != ":")
      parse_error(ln, "expected 'edge <u> <v> : ' followed by " + std::to_string(lc.R) + " labels");
    LcEdge e;
    e.u = parse_uint(w[1], ln);
    e.v = parse_uint(w[2], ln);
    if (e.u >= lc.num_u || e.v >= lc.num_v) parse_error(ln, "edge endpoint out of range");
    std::vector<bool> hit(lc.L, false);
    for (std::size_t i = 4; i < w.size(); ++i) {
      const std::size_t x = parse_uint(w[i], ln);
      if (x >= lc.L) parse_error(ln, "projection value out of range");
      hit[x] = true;
      e.pi.push_back(x);
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) parse_error(ln, "projection is not surjective");
    lc.edges.push_back(std::move(e));
  }
  return lc;
}

std::string serialize_labeling(const Labeling& lab) {
  std::ostringstream out;
  out << "labeling v1\nu";
  for (std::size_t x : lab.u) out << ' ' << x;
  out << "\nv";
  for (std::size_t x : lab.v) out << ' ' << x;
  out << '\n';
  return out.str();
}

Labeling parse_labeling(std::string_view text) {
  const auto lines = tokenize_lines(text);
  if (lines.empty() || lines[0].words != std::vector<std::string>{"labeling", "v1"})
    parse_error(lines.empty() ? 1 : lines[0].number, "expected 'labeling v1'");
  if (lines.size() != 3 || lines[1].words.empty() || lines[1].words[0] != "u" || lines[2].words.empty() ||
      lines[2].words[0] != "v")
    parse_error(lines.size() > 1 ? lines[1].number : 1, "expected a 'u ...' line and a 'v ...' line");
  Labeling lab;
  for (std::size_t i = 1; i < lines[1].words.size(); ++i) lab.u.push_back(parse_uint(lines[1].words[i], lines[1].number));
  for (std::size_t i = 1; i < lines[2].words.size(); ++i) lab.v.push_back(parse_uint(lines[2].words[i], lines[2].number));
  return lab;
}

}  // namespace nalin
