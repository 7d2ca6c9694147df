#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nalin/dictatorship.hpp"
#include "nalin/error.hpp"
#include "nalin/lin.hpp"
#include "nalin/reduction.hpp"
#include "nalin/rep.hpp"
#include "nalin/solvers.hpp"

namespace py = pybind11;
using namespace nalin;

namespace {

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["method"] = r.method;
  d["value"] = r.best_value;
  d["assignment"] = r.best_assignment;
  d["satisfiable"] = r.satisfiable;
  d["expectation"] = r.expectation;
  d["guarantee"] = r.guarantee;
  return d;
}

DictTestConfig make_config(double epsilon, const std::string& mode, std::size_t samples, std::uint64_t seed) {
  DictTestConfig c;
  c.epsilon = epsilon;
  if (mode == "exact")
    c.mode = DictMode::Exact;
  else if (mode == "mc")
    c.mode = DictMode::MonteCarlo;
  else
    throw Error(ErrorCode::InvalidArgument, "mode must be 'exact' or 'mc'");
  c.samples = samples;
  c.seed = seed;
  return c;
}

// Python-side owner of an immutable group.
struct GroupHandle {
  GroupPtr ptr;
};

}  // namespace

PYBIND11_MODULE(_nalin, m) {
  m.doc() = "Finite groups, their representations and Max-3-LIN tools";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<GroupHandle>(m, "Group")
      .def_property_readonly("name", [](const GroupHandle& h) { return h.ptr->name(); })
      .def_property_readonly("order", [](const GroupHandle& h) { return h.ptr->order(); })
      .def("mul", [](const GroupHandle& h, ElementId a, ElementId b) { return h.ptr->mul(a, b); })
      .def("inv", [](const GroupHandle& h, ElementId a) { return h.ptr->inv(a); })
      .def("is_abelian", [](const GroupHandle& h) { return h.ptr->is_abelian(); })
      .def("commutator_size", [](const GroupHandle& h) { return commutator_subgroup(h.ptr).size(); })
      .def("abelianization",
           [](const GroupHandle& h) {
             return abelian_decomposition(*quotient(h.ptr, commutator_subgroup(h.ptr)).table).factors;
           })
      .def("class_sizes",
           [](const GroupHandle& h) {
             std::vector<std::size_t> s;
             for (const auto& c : conjugacy_classes(*h.ptr)) s.push_back(c.size());
             return s;
           })
      .def("irrep_dims",
           [](const GroupHandle& h) {
             const IrrepSet set = irreps_of(h.ptr);
             std::vector<std::size_t> d;
             for (std::size_t i = 0; i < set.size(); ++i) d.push_back(set.dim(i));
             return d;
           })
      .def("__repr__", [](const GroupHandle& h) {
        return "<Group " + h.ptr->name() + " of order " + std::to_string(h.ptr->order()) + ">";
      });

  m.def("load_group", [](const std::string& spec) { return GroupHandle{load_group(spec)}; }, py::arg("spec"));
  m.def("a5_irreps_available", &a5_irreps_available);

  py::class_<LinInstance>(m, "LinInstance")
      .def_property_readonly("num_vars", [](const LinInstance& i) { return i.num_vars; })
      .def_property_readonly("num_constraints", [](const LinInstance& i) { return i.constraints.size(); })
      .def_property_readonly("group", [](const LinInstance& i) { return GroupHandle{i.group}; })
      .def("evaluate", &evaluate, py::arg("assignment"))
      .def("serialize", &serialize_instance);

  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); }, py::arg("text"));
  m.def(
      "generate_planted",
      [](const GroupHandle& g, std::size_t n, std::size_t m_, std::size_t k, std::uint64_t seed) {
        PlantedInstance p = generate_planted(g.ptr, n, m_, k, seed);
        return py::make_tuple(p.instance, p.planted);
      },
      py::arg("group"), py::arg("n"), py::arg("m"), py::arg("k"), py::arg("seed"));
  m.def("brute_force", [](const LinInstance& i, std::size_t cap) { return report_dict(brute_force(i, cap)); },
        py::arg("instance"), py::arg("cap") = 10000000);
  m.def("folklore_approx", [](const LinInstance& i) { return report_dict(folklore_approx(i)); }, py::arg("instance"));
  m.def("solve_mod", &solve_mod, py::arg("a"), py::arg("b"), py::arg("modulus"));

  m.def(
      "dictatorship_test",
      [](const std::string& function, const GroupHandle& h, std::size_t n, double epsilon, const std::string& mode,
         std::size_t samples, std::uint64_t seed, std::size_t index) {
        const GroupPtr& g = h.ptr;
        GroupFunctionTable f;
        if (function == "dictator")
          f = make_dictator(index, n, g);
        else if (function == "random")
          f = make_random_folded(n, g, seed);
        else if (function == "witness")
          f = make_tightness_witness(n, g, seed);
        else
          throw Error(ErrorCode::InvalidArgument, "function must be dictator, random or witness");
        const DictTestResult r = test_pass_probability(f, make_config(epsilon, mode, samples, seed));
        return py::make_tuple(r.p, r.ci_halfwidth);
      },
      py::arg("function"), py::arg("group"), py::arg("n"), py::arg("epsilon") = 0.0, py::arg("mode") = "exact",
      py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("index") = 0);

  m.def(
      "reduce_planted",
      [](const GroupHandle& h, std::size_t num_u, std::size_t num_v, std::size_t L, std::size_t R, std::size_t edges,
         std::uint64_t seed) {
        const ToyLabelCover toy = generate_toy_lc(LcKind::Planted, LcSizes{num_u, num_v, L, R, edges}, seed);
        const GroupPtr& g = h.ptr;
        const ReducedInstance red = reduce(toy.lc, g, ReduceMode::Full);
        py::dict d;
        d["label_cover"] = serialize_label_cover(toy.lc);
        d["variables"] = red.instance.num_vars;
        d["expected_variables"] = reduced_variable_count(toy.lc, g->order());
        d["constraints"] = red.instance.constraints.size();
        d["longcode_value"] = evaluate(red.instance, longcode_assignment(toy.lc, *toy.planted, red));
        return d;
      },
      py::arg("group"), py::arg("num_u"), py::arg("num_v"), py::arg("L"), py::arg("R"), py::arg("edges"),
      py::arg("seed"));
}
