#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nalin/fourier.hpp"
#include "nalin/lin.hpp"
#include "nalin/rep.hpp"

namespace nalin {

struct LcEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::vector<std::size_t> pi;  // [R] -> [L], surjective
};

/// Bipartite Label Cover: U-side labels in [L], V-side labels in [R].
struct LabelCover {
  std::size_t num_u = 0;
  std::size_t num_v = 0;
  std::size_t L = 1;
  std::size_t R = 1;
  std::vector<LcEdge> edges;
};

struct Labeling {
  std::vector<std::size_t> u;
  std::vector<std::size_t> v;
};

/// Ranges, R >= L and surjectivity of every projection.
void validate(const LabelCover& lc);
void validate(const LabelCover& lc, const Labeling& lab);

/// Fraction of edges with pi(label(v)) = label(u).
double lc_value(const LabelCover& lc, const Labeling& lab);

enum class LcKind { Planted, Random };

struct LcSizes {
  std::size_t num_u = 1;
  std::size_t num_v = 1;
  std::size_t L = 1;
  std::size_t R = 1;
  std::size_t num_edges = 1;
};

struct ToyLabelCover {
  LabelCover lc;
  std::optional<Labeling> planted;
};

/// Uniform endpoints and random surjective projections; in the planted kind
/// the labeling is drawn first and every projection is consistent with it.
ToyLabelCover generate_toy_lc(LcKind kind, const LcSizes& sizes, std::uint64_t seed);

struct SmoothnessReport {
  double stat = 0;   // E over edges at v of 1 / |pi(alpha)|
  double bound = 0;  // |alpha|^(-2 d0)
  std::size_t neighbors = 0;
  bool ok = false;
};

SmoothnessReport smoothness_stat(const LabelCover& lc, std::size_t v,
                                 const std::vector<std::size_t>& alpha_set, double d0);

/// Largest number of constraints a full reduction may emit.
inline constexpr std::size_t kReductionBudget = 1000000;

enum class ReduceMode { Full, Sampled };

/// One variable per folding orbit of every node table: node u of U owns
/// |G|^(L-1) variables starting at u_offset[u], node v of V |G|^(R-1) starting
/// at v_offset[v]. The variable of a tuple x is offset + (index of the orbit
/// representative of x); x itself is shift . representative.
struct ReducedInstance {
  LinInstance instance;
  std::size_t L = 1;
  std::size_t R = 1;
  std::vector<std::size_t> u_offset;
  std::vector<std::size_t> v_offset;

  std::size_t u_var(std::size_t u, std::size_t orbit) const { return u_offset[u] + orbit; }
  std::size_t v_var(std::size_t v, std::size_t orbit) const { return v_offset[v] + orbit; }
};

/// |U| |G|^(L-1) + |V| |G|^(R-1)
std::size_t reduced_variable_count(const LabelCover& lc, std::size_t order);

/// For an edge (u, v) with a in G^R, b in G^L and c_i = b_{pi(i)}^-1 a_i^-1:
/// f_v(a) f_u(b) f_v(c) = 1, written over the orbit variables. Full mode
/// enumerates every (edge, a, b) with uniform weight; sampled mode draws
/// `samples` of them.
ReducedInstance reduce(const LabelCover& lc, const GroupPtr& g, ReduceMode mode,
                       std::uint64_t seed = 0, std::size_t samples = 10000);

/// Dictator tables x -> x_label on every node, read off at the representatives.
Assignment longcode_assignment(const LabelCover& lc, const Labeling& lab,
                               const ReducedInstance& red);

struct NodeTables {
  std::vector<GroupFunctionTable> u;
  std::vector<GroupFunctionTable> v;
};

/// Folded tables from an assignment of the orbit variables, and back.
NodeTables tables_from_assignment(const ReducedInstance& red, const Assignment& a);
Assignment assignment_from_tables(const ReducedInstance& red, const NodeTables& t);

/// The test run directly on (not necessarily folded) node tables, averaged
/// over edges and all (a, b).
double direct_test_value(const LabelCover& lc, const NodeTables& t);

inline constexpr std::size_t kBottom = static_cast<std::size_t>(-1);

struct DecodeResult {
  /// One labeling per trial; kBottom marks a node decoded to bottom.
  std::vector<Labeling> trials;
  Labeling best;            // bottom replaced by label 0
  double best_value = 0;    // lc_value of `best`
  double bottom_rate = 0;   // fraction of node decodings that gave bottom
  double conditional_value = 0;  // satisfied / edges with both ends labeled
  std::size_t labeled_edges = 0;
  /// Probability of not decoding to bottom, per node (sum of dim * ||coef||^2).
  std::vector<double> u_mass;
  std::vector<double> v_mass;
};

/// Randomized labeling: at v pick alpha with probability dim(alpha) ||g^(alpha)||^2
/// for g = rho(f_v(.))_{r p}, then a uniform coordinate whose component has
/// dimension >= 2; at u the same with h = rho(f_u(.))_{q r}. Leftover mass, or
/// an alpha without such a component, gives bottom. Indices are 0-based.
DecodeResult fourier_decode(const LabelCover& lc, const NodeTables& tables, const IrrepSet& set,
                            std::size_t rho, std::size_t p, std::size_t q, std::size_t r,
                            std::uint64_t seed, std::size_t trials);

struct SoundnessParameters {
  double delta = 0;
  std::size_t order = 0;
  double d0 = 0;
  double C = 0;        // smallest C with C^(-d0/2) <= delta^2 / (12 |G|^6)
  double eta = 0;      // C^(-d0)
  double c = 0;        // 1 / eta
  double eps0 = 0;     // sqrt(eta)
  bool c_regime = false;  // c >= 10 |G| ln(1 / eps0)
  double log10_lc_soundness = 0;  // log10(delta^2 / (10 |G|^(10 C)))
};

SoundnessParameters soundness_parameters(double delta, std::size_t order, double d0);

/// LC files:
///   lc v1
///   sides <|U|> <|V|>
///   alphabets <L> <R>
///   edge <u> <v> : <pi(0)> ... <pi(R-1)>
std::string serialize_label_cover(const LabelCover& lc);
LabelCover parse_label_cover(std::string_view text);

/// Labeling files:
///   labeling v1
///   u <label> ...
///   v <label> ...
std::string serialize_labeling(const Labeling& lab);
Labeling parse_labeling(std::string_view text);

}  // namespace nalin
