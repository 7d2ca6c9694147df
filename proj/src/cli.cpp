#include "nalin/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "nalin/dictatorship.hpp"
#include "nalin/error.hpp"
#include "nalin/fourier.hpp"
#include "nalin/lin.hpp"
#include "nalin/random.hpp"
#include "nalin/reduction.hpp"
#include "nalin/rep.hpp"
#include "nalin/solvers.hpp"
#include "nalin/text.hpp"

namespace nalin::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GroupPtr resolve_group(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return load_group(read_file(spec));
  return load_group(spec);
}

template <class T>
std::string join(const std::vector<T>& xs, char sep = ',') {
  std::ostringstream s;
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? std::string(1, sep) : "") << xs[i];
  return s.str();
}

std::string fmt(double x) { return format_double(x); }

std::string fmt(Complex z) {
  if (std::abs(z.imag()) <= 1e-12) return format_double(z.real());
  return format_double(z.real()) + "," + format_double(z.imag());
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  std::string elapsed() const {
    if (!enabled_) return "-";
    const auto d = std::chrono::steady_clock::now() - start_;
    return format_double(std::chrono::duration<double, std::milli>(d).count());
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

Assignment parse_assignment(const std::string& text, std::size_t order) {
  Assignment a;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    const auto v = parse_uint(tok, 1);
    if (v >= order) throw Error(ErrorCode::OutOfRange, "assignment value " + tok + " out of range");
    a.push_back(static_cast<ElementId>(v));
  }
  return a;
}

struct Options {
  std::string group = "S3";
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  double epsilon = 0;
  std::size_t budget = 10000000;
  std::string mode;
  std::string out_path;
  bool timing = false;

  // per-command
  std::string action = "info";
  std::size_t n = 2;
  std::size_t m = 40;
  std::size_t k = 3;
  std::size_t index = 0;
  std::string function = "dictator";
  std::string input;
  std::string instance;
  std::string assignment;
  std::string lc;
  std::string labeling;
  std::string labeling_out;
  std::string kind = "planted";
  std::size_t num_u = 2, num_v = 3, L = 2, R = 3, edges = 4;
  std::size_t trials = 1000;
  long rho = -1;
  std::size_t p = 0, q = 0, r = 0;
  bool folded = false;
  double delta = 0.1;
  double d0 = 0.25;
  std::size_t order = 0;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.out_path + "'");
  f << text;
}

std::size_t default_rho(const IrrepSet& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (set.dim(i) >= 2) return i;
  throw Error(ErrorCode::DimOne, "group has no irrep of dimension >= 2");
}

// --- commands --------------------------------------------------------------

void cmd_group(const Options& o, std::ostream& out, std::ostream& err) {
  const GroupPtr g = resolve_group(o.group);
  if (o.action == "table") {
    emit(o, serialize_group(*g), out);
    return;
  }
  std::ostringstream t;
  const Subgroup comm = commutator_subgroup(g);
  const QuotientGroup q = quotient(g, comm);
  const AbelianDecomposition d = abelian_decomposition(*q.table);
  std::vector<std::size_t> class_sizes;
  for (const auto& c : conjugacy_classes(*g)) class_sizes.push_back(c.size());
  std::sort(class_sizes.begin(), class_sizes.end());
  t << "name\t" << g->name() << "\norder\t" << g->order() << "\nabelian\t" << (g->is_abelian() ? "true" : "false")
    << "\ncommutator_size\t" << comm.size() << "\nabelianization\t"
    << (d.factors.empty() ? std::string("1") : join(d.factors)) << "\nclass_count\t" << class_sizes.size()
    << "\nclass_sizes\t" << join(class_sizes) << "\nirrep_dims\t";
  try {
    const IrrepSet set = irreps_of(g);
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < set.size(); ++i) dims.push_back(set.dim(i));
    t << join(dims) << "\nmin_nontrivial_dim\t" << set.min_nontrivial_dim() << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    t << "unsupported\nmin_nontrivial_dim\t-\n";
  }
  err << g->name() << ": order " << g->order() << ", |[G,G]| = " << comm.size() << '\n';
  emit(o, t.str(), out);
}

void cmd_check_irreps(const Options& o, std::ostream& out, std::ostream& err) {
  const GroupPtr g = resolve_group(o.group);
  const IrrepSet set = irreps_of(g);
  const IrrepSetReport& r = set.report();
  std::ostringstream t;
  t << "group\t" << g->name() << "\nirrep_count\t" << r.irrep_count << "\nclass_count\t" << r.class_count
    << "\ndim_square_sum\t" << r.dim_square_sum << "\ngroup_order\t" << r.group_order << "\nidentity\t"
    << fmt(r.identity) << "\nunitarity\t" << fmt(r.unitarity) << "\nhomomorphism\t" << fmt(r.homomorphism)
    << "\nirreducibility\t" << fmt(r.irreducibility) << "\ncharacter_orthogonality\t"
    << fmt(r.character_orthogonality) << "\nentry_orthogonality\t" << fmt(r.entry_orthogonality)
    << "\nsum_zero\t" << fmt(r.sum_zero) << "\nclass_function\t" << fmt(r.class_function) << "\nexhaustive\t"
    << (r.exhaustive ? "true" : "false") << "\nok\t" << (r.ok() ? "true" : "false") << '\n';
  err << g->name() << ": " << set.size() << " irreps, " << (r.ok() ? "all checks pass" : "CHECKS FAIL") << '\n';
  emit(o, t.str(), out);
}

void cmd_fourier(const Options& o, std::ostream& out, std::ostream& err) {
  std::ostringstream t;
  if (o.folded) {
    const GroupPtr g = resolve_group(o.group);
    const IrrepSet set = irreps_of(g);
    const GroupFunctionTable f =
        o.input.empty() ? make_random_folded(o.n, g, o.seed) : parse_group_function(read_file(o.input));
    const std::size_t rho = o.rho < 0 ? default_rho(set) : static_cast<std::size_t>(o.rho);
    if (rho >= set.size()) throw Error(ErrorCode::OutOfRange, "irrep index out of range");
    if (o.input.empty()) t << "# seed\t" << o.seed << '\n';
    const double worst = folded_dim1_mass(f, set[rho], set);
    t << "rho\tdim\tdim1_mass\n" << rho << '\t' << set.dim(rho) << '\t' << fmt(worst) << '\n';
    err << "largest dimension-one coefficient norm " << fmt(worst) << '\n';
    emit(o, t.str(), out);
    return;
  }
  ScalarFunctionTable f;
  if (!o.input.empty()) {
    f = parse_scalar_function(read_file(o.input));
  } else {
    const GroupPtr g = resolve_group(o.group);
    f.group = g;
    f.n = o.n;
    f.values.resize(power_size(g->order(), o.n, kFourierBudget));
    Rng rng(o.seed);
    for (auto& v : f.values) v = Complex(2 * rng.unit() - 1, 2 * rng.unit() - 1);
    t << "# seed\t" << o.seed << '\n';
  }
  const IrrepSet set = irreps_of(f.group);
  const FourierTable ft = fourier_transform(f, set);
  t << "alpha\tdim\tweight\tw2\ths_norm\n";
  double mass = 0;
  for (const auto& [alpha, m] : ft.coeffs) {
    const IrrepIndex idx = make_irrep_index(set, alpha);
    mass += static_cast<double>(idx.dim) * m.squaredNorm();
    t << join(alpha) << '\t' << idx.dim << '\t' << idx.weight << '\t' << idx.w2 << '\t' << fmt(m.norm()) << '\n';
  }
  const double norm = l2_norm(f);
  err << "Parseval residual " << fmt(std::abs(mass - norm * norm)) << '\n';
  emit(o, t.str(), out);
}

void cmd_lin_gen(const Options& o, std::ostream& out, std::ostream& err) {
  const GroupPtr g = resolve_group(o.group);
  const PlantedInstance p = generate_planted(g, o.n, o.m, o.k, o.seed);
  std::string text = serialize_instance(p.instance);
  const std::string header = "# seed " + std::to_string(o.seed) + "\n# planted " + join(p.planted) + '\n';
  text.insert(text.find('\n') + 1, header);
  err << "planted instance: " << o.m << " constraints on " << o.n << " variables, seed " << o.seed << '\n';
  emit(o, text, out);
}

void cmd_lin_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const LinInstance inst = parse_instance(read_file(o.instance));
  const Assignment a = parse_assignment(o.assignment, inst.group->order());
  const double v = evaluate(inst, a);
  std::size_t sat = 0;
  for (const auto& c : inst.constraints) sat += satisfies(*inst.group, c, a);
  std::ostringstream t;
  t << "value\tsatisfied\tconstraints\n" << fmt(v) << '\t' << sat << '\t' << inst.constraints.size() << '\n';
  err << "value " << fmt(v) << '\n';
  emit(o, t.str(), out);
}

void cmd_lin_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const LinInstance inst = parse_instance(read_file(o.instance));
  const Stopwatch w(o.timing);
  const SolveReport r = brute_force(inst, o.budget);
  std::ostringstream t;
  t << "method\tvalue\tsatisfiable\telapsed_ms\tassignment\n"
    << r.method << '\t' << fmt(r.best_value) << '\t' << (r.satisfiable ? "true" : "false") << '\t' << w.elapsed()
    << '\t' << join(r.best_assignment) << '\n';
  err << "optimum " << fmt(r.best_value) << '\n';
  emit(o, t.str(), out);
}

void cmd_lin_approx(const Options& o, std::ostream& out, std::ostream& err) {
  const LinInstance inst = parse_instance(read_file(o.instance));
  const Stopwatch w(o.timing);
  FolkloreTrace trace;
  const SolveReport r = folklore_approx(inst, &trace);
  std::ostringstream t;
  t << "method\tvalue\tguarantee\texpectation\tabelian_satisfiable\tcommutator_size\telapsed_ms\tassignment\n"
    << r.method << '\t' << fmt(r.best_value) << '\t' << fmt(r.guarantee) << '\t' << fmt(r.expectation) << '\t'
    << (trace.abelian_satisfiable ? "true" : "false") << '\t' << trace.commutator_size << '\t' << w.elapsed()
    << '\t' << join(r.best_assignment) << '\n';
  err << "value " << fmt(r.best_value) << " against guarantee " << fmt(r.guarantee) << '\n';
  emit(o, t.str(), out);
}

void cmd_dict_test(const Options& o, std::ostream& out, std::ostream& err) {
  GroupFunctionTable f;
  GroupPtr g;
  if (o.function == "file") {
    if (o.input.empty()) throw Error(ErrorCode::InvalidArgument, "--function file needs --input");
    f = parse_group_function(read_file(o.input));
    g = f.group;
  } else {
    g = resolve_group(o.group);
    if (o.function == "dictator")
      f = make_dictator(o.index, o.n, g);
    else if (o.function == "random")
      f = make_random_folded(o.n, g, o.seed);
    else
      f = make_tightness_witness(o.n, g, o.seed);
  }
  DictTestConfig cfg;
  cfg.epsilon = o.epsilon;
  cfg.mode = o.mode == "mc" ? DictMode::MonteCarlo : DictMode::Exact;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  const DictTestResult r = test_pass_probability(f, cfg);

  std::ostringstream t;
  t << "# seed\t" << o.seed << '\n';
  std::vector<Complex> terms;
  try {
    terms = decompose_distribution(r.product_distribution, irreps_of(g)).terms;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
  }
  t << "function\tepsilon\tmode\tp\tci";
  for (std::size_t i = 0; i < terms.size(); ++i) t << "\tT_" << i;
  t << '\n' << o.function << '\t' << fmt(o.epsilon) << '\t' << (cfg.mode == DictMode::Exact ? "exact" : "mc") << '\t'
    << fmt(r.p) << '\t' << fmt(r.ci_halfwidth);
  for (const Complex& z : terms) t << '\t' << fmt(z);
  t << '\n';
  err << o.function << " on " << g->name() << "^" << f.n << ": pass probability " << fmt(r.p);
  if (cfg.mode == DictMode::MonteCarlo) err << " +- " << fmt(r.ci_halfwidth);
  err << '\n';
  emit(o, t.str(), out);
}

void cmd_reduce_gen(const Options& o, std::ostream& out, std::ostream& err) {
  const LcSizes s{o.num_u, o.num_v, o.L, o.R, o.edges};
  const ToyLabelCover toy = generate_toy_lc(o.kind == "random" ? LcKind::Random : LcKind::Planted, s, o.seed);
  std::string text = serialize_label_cover(toy.lc);
  text.insert(text.find('\n') + 1, "# seed " + std::to_string(o.seed) + '\n');
  if (toy.planted) {
    if (!o.labeling_out.empty()) {
      std::ofstream f(o.labeling_out, std::ios::binary);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.labeling_out + "'");
      f << serialize_labeling(*toy.planted);
    }
    err << "planted labeling u=" << join(toy.planted->u) << " v=" << join(toy.planted->v) << '\n';
  }
  emit(o, text, out);
}

void cmd_reduce_build(const Options& o, std::ostream& out, std::ostream& err) {
  const LabelCover lc = parse_label_cover(read_file(o.lc));
  const GroupPtr g = resolve_group(o.group);
  const bool sampled = o.mode == "sampled";
  const ReducedInstance red = reduce(lc, g, sampled ? ReduceMode::Sampled : ReduceMode::Full, o.seed, o.samples);
  std::string text = serialize_instance(red.instance);
  if (sampled) text.insert(text.find('\n') + 1, "# seed " + std::to_string(o.seed) + '\n');
  err << red.instance.num_vars << " variables, " << red.instance.constraints.size() << " constraints\n";
  emit(o, text, out);
}

void cmd_reduce_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const LabelCover lc = parse_label_cover(read_file(o.lc));
  const Labeling lab = parse_labeling(read_file(o.labeling));
  const GroupPtr g = resolve_group(o.group);
  const ReducedInstance red = reduce(lc, g, ReduceMode::Full);
  const double lcv = lc_value(lc, lab);
  const double value = evaluate(red.instance, longcode_assignment(lc, lab, red));
  const double predicted = 1 - (1 - lcv) * (1 - 1.0 / static_cast<double>(g->order()));
  std::ostringstream t;
  t << "lc_value\treduced_value\tpredicted\tvariables\texpected_variables\tconstraints\n"
    << fmt(lcv) << '\t' << fmt(value) << '\t' << fmt(predicted) << '\t' << red.instance.num_vars << '\t'
    << reduced_variable_count(lc, g->order()) << '\t' << red.instance.constraints.size() << '\n';
  err << "long-code value " << fmt(value) << " for label cover value " << fmt(lcv) << '\n';
  emit(o, t.str(), out);
}

void cmd_reduce_decode(const Options& o, std::ostream& out, std::ostream& err) {
  const LabelCover lc = parse_label_cover(read_file(o.lc));
  const GroupPtr g = resolve_group(o.group);
  const IrrepSet set = irreps_of(g);
  const ReducedInstance red = reduce(lc, g, ReduceMode::Full);
  Assignment a;
  if (!o.labeling.empty()) {
    a = longcode_assignment(lc, parse_labeling(read_file(o.labeling)), red);
  } else {
    Rng rng(o.seed);
    a.resize(red.instance.num_vars);
    for (auto& x : a) x = static_cast<ElementId>(rng.below(g->order()));
  }
  const std::size_t rho = o.rho < 0 ? default_rho(set) : static_cast<std::size_t>(o.rho);
  const DecodeResult d =
      fourier_decode(lc, tables_from_assignment(red, a), set, rho, o.p, o.q, o.r, o.seed, o.trials);
  std::ostringstream t;
  t << "# seed\t" << o.seed << '\n'
    << "tables\trho\ttrials\tbest_value\tconditional_value\tlabeled_edges\tbottom_rate\tbest_u\tbest_v\n"
    << (o.labeling.empty() ? "random" : "longcode") << '\t' << rho << '\t' << o.trials << '\t' << fmt(d.best_value)
    << '\t' << fmt(d.conditional_value) << '\t' << d.labeled_edges << '\t' << fmt(d.bottom_rate) << '\t'
    << join(d.best.u) << '\t' << join(d.best.v) << '\n';
  err << "decoded value " << fmt(d.best_value) << ", bottom rate " << fmt(d.bottom_rate) << '\n';
  emit(o, t.str(), out);
}

void cmd_params(const Options& o, std::ostream& out, std::ostream&) {
  const std::size_t order = o.order ? o.order : resolve_group(o.group)->order();
  const SoundnessParameters s = soundness_parameters(o.delta, order, o.d0);
  std::ostringstream t;
  t << "delta\t" << fmt(s.delta) << "\norder\t" << s.order << "\nd0\t" << fmt(s.d0) << "\nC\t" << fmt(s.C)
    << "\neta\t" << fmt(s.eta) << "\nc\t" << fmt(s.c) << "\neps0\t" << fmt(s.eps0) << "\nc_regime\t"
    << (s.c_regime ? "true" : "false") << "\nlog10_lc_soundness\t" << fmt(s.log10_lc_soundness) << '\n';
  emit(o, t.str(), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Max-3-LIN over finite groups: representations, Fourier analysis, solvers and the long-code reduction",
               "nalin"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--timing", o.timing, "Report wall-clock elapsed_ms (otherwise '-')");
  std::function<void()> action;

  auto group_opt = [&](CLI::App* c) { c->add_option("--group", o.group, "Catalog name or group file"); };
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--out", o.out_path, "Write the report to this file");
  };

  auto* group = app.add_subcommand("group", "Group facts: TSV key/value rows (info) or the Cayley table (table)");
  group->add_option("group", o.group, "Catalog name or group file")->required();
  group->add_option("action", o.action, "info | table")->check(CLI::IsMember({"info", "table"}));
  group->add_option("--out", o.out_path, "Write the report to this file");
  group->callback([&] { action = [&] { cmd_group(o, out, err); }; });

  auto* check = app.add_subcommand("check-irreps", "Residuals of the irrep invariant suite");
  group_opt(check);
  check->add_option("--out", o.out_path, "Write the report to this file");
  check->callback([&] { action = [&] { cmd_check_irreps(o, out, err); }; });

  auto* fourier = app.add_subcommand(
      "fourier", "Fourier transform of a function on G^n. TSV: alpha dim weight w2 hs_norm; with --folded: rho dim dim1_mass");
  group_opt(fourier);
  common(fourier);
  fourier->add_option("--n", o.n, "Number of coordinates (random input)");
  fourier->add_option("--input", o.input, "Function file (scalar, or group-valued with --folded)");
  fourier->add_flag("--folded", o.folded, "Dimension-one mass of the entries rho(f(x))_ij of a folded f");
  fourier->add_option("--rho", o.rho, "Irrep index for --folded (default: first of dimension >= 2)");
  fourier->callback([&] { action = [&] { cmd_fourier(o, out, err); }; });

  auto* lin = app.add_subcommand("lin", "Max-3-LIN instances");
  lin->require_subcommand(1);
  auto* gen = lin->add_subcommand("gen", "Planted instance in LIN format");
  group_opt(gen);
  common(gen);
  gen->add_option("--n", o.n, "Variables")->default_val(8);
  gen->add_option("--m", o.m, "Constraints");
  gen->add_option("--k", o.k, "Distinct variables per constraint");
  gen->callback([&] { action = [&] { cmd_lin_gen(o, out, err); }; });

  auto* eval = lin->add_subcommand("eval", "TSV: value satisfied constraints");
  eval->add_option("--instance", o.instance, "LIN file")->required();
  eval->add_option("--assignment", o.assignment, "Comma-separated element ids")->required();
  eval->add_option("--out", o.out_path, "Write the report to this file");
  eval->callback([&] { action = [&] { cmd_lin_eval(o, out, err); }; });

  auto* solve = lin->add_subcommand("solve", "Exhaustive search. TSV: method value satisfiable elapsed_ms assignment");
  solve->add_option("--instance", o.instance, "LIN file")->required();
  solve->add_option("--budget", o.budget, "Largest |G|^n to enumerate");
  solve->add_option("--out", o.out_path, "Write the report to this file");
  solve->callback([&] { action = [&] { cmd_lin_solve(o, out, err); }; });

  auto add_approx = [&](CLI::App* parent, const std::string& name) {
    auto* a = parent->add_subcommand(name,
                                     "Abelianization, linear solve and derandomized lift. TSV: method value guarantee "
                                     "expectation abelian_satisfiable commutator_size elapsed_ms assignment");
    a->add_option("--instance", o.instance, "LIN file")->required();
    a->add_option("--out", o.out_path, "Write the report to this file");
    a->callback([&] { action = [&] { cmd_lin_approx(o, out, err); }; });
  };
  add_approx(lin, "approx");
  add_approx(&app, "approx");

  auto* dict = app.add_subcommand("dict-test",
                                  "Three-query test. TSV: function epsilon mode p ci T_0..T_r (per-irrep terms)");
  group_opt(dict);
  common(dict);
  dict->add_option("--n", o.n, "Number of coordinates");
  dict->add_option("--function", o.function, "dictator | random | witness | file")
      ->check(CLI::IsMember({"dictator", "random", "witness", "file"}));
  dict->add_option("--index", o.index, "Dictator coordinate (0-based)");
  dict->add_option("--input", o.input, "Group-valued function file for --function file");
  dict->add_option("--epsilon", o.epsilon, "Noise rate in [0, 1]");
  dict->add_option("--mode", o.mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}))->default_val("exact");
  dict->add_option("--samples", o.samples, "Monte Carlo samples");
  dict->callback([&] { action = [&] { cmd_dict_test(o, out, err); }; });

  auto* reduce_cmd = app.add_subcommand("reduce", "Label Cover to Max-3-LIN");
  reduce_cmd->require_subcommand(1);
  auto* rgen = reduce_cmd->add_subcommand("gen", "Toy Label Cover in LC format");
  common(rgen);
  rgen->add_option("--kind", o.kind, "planted | random")->check(CLI::IsMember({"planted", "random"}));
  rgen->add_option("--u", o.num_u, "|U|");
  rgen->add_option("--v", o.num_v, "|V|");
  rgen->add_option("--L", o.L, "U-side alphabet");
  rgen->add_option("--R", o.R, "V-side alphabet");
  rgen->add_option("--edges", o.edges, "Edge count");
  rgen->add_option("--labeling-out", o.labeling_out, "Write the planted labeling here");
  rgen->callback([&] { action = [&] { cmd_reduce_gen(o, out, err); }; });

  auto* build = reduce_cmd->add_subcommand("build", "Reduced instance in LIN format");
  group_opt(build);
  common(build);
  build->add_option("--lc", o.lc, "LC file")->required();
  build->add_option("--mode", o.mode, "full | sampled")->check(CLI::IsMember({"full", "sampled"}))->default_val("full");
  build->add_option("--samples", o.samples, "Constraints in sampled mode")->default_val(10000);
  build->callback([&] { action = [&] { cmd_reduce_build(o, out, err); }; });

  auto* verify = reduce_cmd->add_subcommand(
      "verify", "Long-code assignment of a labeling. TSV: lc_value reduced_value predicted variables "
                "expected_variables constraints");
  group_opt(verify);
  verify->add_option("--lc", o.lc, "LC file")->required();
  verify->add_option("--labeling", o.labeling, "Labeling file")->required();
  verify->add_option("--out", o.out_path, "Write the report to this file");
  verify->callback([&] { action = [&] { cmd_reduce_verify(o, out, err); }; });

  auto* decode = reduce_cmd->add_subcommand(
      "decode", "Fourier decoding of node tables (long codes of --labeling, else random folded). TSV: tables rho "
                "trials best_value conditional_value labeled_edges bottom_rate best_u best_v");
  group_opt(decode);
  common(decode);
  decode->add_option("--lc", o.lc, "LC file")->required();
  decode->add_option("--labeling", o.labeling, "Labeling file");
  decode->add_option("--rho", o.rho, "Irrep index (default: first of dimension >= 2)");
  decode->add_option("--p", o.p, "Matrix index p (0-based)");
  decode->add_option("--q", o.q, "Matrix index q (0-based)");
  decode->add_option("--r", o.r, "Matrix index r (0-based)");
  decode->add_option("--trials", o.trials, "Decoding trials");
  decode->callback([&] { action = [&] { cmd_reduce_decode(o, out, err); }; });

  auto* params = app.add_subcommand("params", "Soundness constants for (delta, |G|, d0): TSV key/value rows");
  group_opt(params);
  params->add_option("--order", o.order, "Group order (overrides --group)");
  params->add_option("--delta", o.delta, "Target advantage delta in (0, 1)");
  params->add_option("--d0", o.d0, "Smoothness exponent in (0, 1/3)");
  params->add_option("--out", o.out_path, "Write the report to this file");
  params->callback([&] { action = [&] { cmd_params(o, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return 2;
  }

  try {
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace nalin::cli
