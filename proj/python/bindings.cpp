#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bcr/density.hpp"
#include "bcr/errors.hpp"
#include "bcr/forest.hpp"
#include "bcr/generators.hpp"
#include "bcr/lp_solver.hpp"
#include "bcr/rounding.hpp"
#include "bcr/steiner_transform.hpp"
#include "bcr/structuring.hpp"

namespace py = pybind11;
using namespace bcr;

// Rational <-> fractions.Fraction, through decimal strings so that values of
// any size survive.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::object f;
    try {
      f = fraction(py::reinterpret_borrow<py::object>(src));
    } catch (const py::error_already_set&) {
      return false;
    }
    std::string text = py::str(f.attr("numerator")).cast<std::string>() + "/" +
                       py::str(f.attr("denominator")).cast<std::string>();
    value = Rational(text);
    value.canonicalize();
    return true;
  }

  static handle cast(const Rational& q, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::int_ num(py::reinterpret_steal<py::object>(PyLong_FromString(q.get_num().get_str().c_str(), nullptr, 10)));
    py::int_ den(py::reinterpret_steal<py::object>(PyLong_FromString(q.get_den().get_str().c_str(), nullptr, 10)));
    return fraction(num, den).release();
  }
};
}  // namespace pybind11::detail

namespace {

std::vector<std::string> labels_of(const Instance& inst, const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(inst.label(v));
  return out;
}

std::vector<std::pair<std::string, std::string>> edge_labels(const Instance& inst, const EdgeSet& edges) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : edges) out.emplace_back(inst.label(e.u), inst.label(e.v));
  return out;
}

py::dict verdict_dict(const Verdict& v, const Instance& inst) {
  py::dict d;
  d["feasible"] = v.feasible();
  d["description"] = v.describe(inst);
  if (v.feasible()) d["value"] = v.value;
  return d;
}

std::string dual_text(const DualCertificate& cert, const Instance& inst) { return dual_to_string(cert, inst); }

std::optional<Vertex> optional_vertex(const Instance& inst, const std::optional<std::string>& label) {
  if (!label) return std::nullopt;
  return inst.vertex(*label);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact tools for the bidirected cut relaxation of Steiner Forest.";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def_static("from_text", [](const std::string& text) { return parse_instance_string(text); })
      .def("to_text", [](const Instance& inst) { return instance_to_string(inst); })
      .def_property_readonly("labels", &Instance::labels)
      .def_property_readonly("num_vertices", &Instance::num_vertices)
      .def_property_readonly("edges",
                             [](const Instance& inst) {
                               std::vector<std::tuple<std::string, std::string, Rational>> out;
                               for (const auto& [e, c] : inst.edges()) out.emplace_back(inst.label(e.u), inst.label(e.v), c);
                               return out;
                             })
      .def_property_readonly("pairs",
                             [](const Instance& inst) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& p : inst.pairs()) out.emplace_back(inst.label(p.s), inst.label(p.t));
                               return out;
                             })
      .def("terminals", [](const Instance& inst) { return labels_of(inst, terminals(inst)); })
      .def("same_representation", [](const Instance& a, const Instance& b) { return same_representation(a, b); });

  py::class_<BcrSolution>(m, "Solution")
      .def(py::init<>())
      .def_static("from_text",
                  [](const std::string& text, const Instance& inst) { return parse_solution_string(text, inst); })
      .def("to_text", [](const BcrSolution& s, const Instance& inst) { return solution_to_string(s, inst); })
      .def("cost", [](const BcrSolution& s, const Instance& inst) { return cost(s, inst); })
      .def("is_half_integral", [](const BcrSolution& s) { return is_half_integral(s); })
      .def("__eq__", [](const BcrSolution& a, const BcrSolution& b) { return a == b; });

  py::class_<TreeBcrSolution>(m, "TreeSolution")
      .def("to_text", [](const TreeBcrSolution& s, const Instance& inst) { return tree_solution_to_string(s, inst); })
      .def("cost", [](const TreeBcrSolution& s, const Instance& inst) { return cost(s, inst); })
      .def("root", [](const TreeBcrSolution& s, const Instance& inst) { return inst.label(s.root); });

  py::class_<DualCertificate>(m, "DualCertificate")
      .def_static("from_text",
                  [](const std::string& text, const Instance& inst) {
                    std::istringstream in(text);
                    return parse_dual(in, inst);
                  })
      .def("to_text", &dual_text);

  m.def("gen_lower_bound", [](int q) {
    auto g = gen_lower_bound(q);
    return py::make_tuple(g.instance, g.solution);
  }, py::arg("q"));
  m.def("gen_gadget", [](const std::string& rep) {
    if (rep != "p1" && rep != "p2") throw py::value_error("rep must be 'p1' or 'p2'");
    auto g = gen_gadget(rep == "p1" ? GadgetRep::P1 : GadgetRep::P2);
    return py::make_tuple(g.instance, g.solution, g.dual);
  }, py::arg("rep"));
  m.def("gen_figure1", [] {
    auto g = gen_figure1();
    return py::make_tuple(g.instance, g.solution);
  });
  m.def("gen_random_halfintegral", [](std::uint64_t seed, int n, const Rational& density, int pairs) {
    auto g = gen_random_halfintegral(seed, n, density, pairs);
    return py::make_tuple(g.instance, g.solution);
  }, py::arg("seed"), py::arg("n"), py::arg("edge_density"), py::arg("pair_count"));

  m.def("verify_primal", [](const BcrSolution& s, const Instance& inst) { return verdict_dict(verify_primal(s, inst), inst); });
  m.def("verify_dual", [](const DualCertificate& c, const Instance& inst) { return verdict_dict(verify_dual(c, inst), inst); });
  m.def("verify_tree", [](const TreeBcrSolution& s, const Instance& inst) {
    return verdict_dict(verify_tree_bcr(s, terminals(inst), inst), inst);
  });

  m.def("round_solution", [](const BcrSolution& s, const Instance& inst) {
    RoundingResult r = round_solution(s, inst);
    return py::make_tuple(edge_labels(inst, r.forest), r.trace.total_cost);
  });
  m.def("check_forest", [](const std::vector<std::pair<std::string, std::string>>& edges, const Instance& inst) {
    EdgeSet set;
    for (const auto& [a, b] : edges) set.insert(Edge::of(inst.vertex(a), inst.vertex(b)));
    return check_forest(set, inst).feasible;
  });
  m.def("brute_force_opt", [](const Instance& inst, std::size_t cap) {
    auto [c, edges] = brute_force_opt(inst, cap);
    return py::make_tuple(c, edge_labels(inst, edges));
  }, py::arg("instance"), py::arg("edge_cap") = 20);

  m.def("densest_subgraph", [](const BcrSolution& s, const Instance& inst, bool brute) {
    DensityResult r = brute ? densest_subgraph_bruteforce(s, inst) : densest_subgraph(s, inst);
    return py::make_tuple(labels_of(inst, r.set), r.density);
  }, py::arg("solution"), py::arg("instance"), py::arg("brute_force") = false);

  m.def("well_structure", [](const BcrSolution& s, const Instance& metric) { return well_structure(s, metric).first; });
  m.def("fully_reduce", [](const BcrSolution& s, const Instance& inst) { return fully_reduce(s, inst); });
  m.def("metric_closure", [](const Instance& inst) { return metric_closure(inst).instance(); });

  m.def("to_tree_bcr", [](const BcrSolution& s, const Instance& inst, const std::optional<std::string>& root) {
    return to_tree_bcr(s, inst, optional_vertex(inst, root));
  }, py::arg("solution"), py::arg("instance"), py::arg("root") = py::none());

  m.def("solve_forest_bcr", [](const Instance& inst, std::size_t cap) {
    ForestLpResult r = solve_forest_bcr(inst, cap);
    return py::make_tuple(r.value, r.status == LpStatus::Optimal, r.solution);
  }, py::arg("instance"), py::arg("round_cap") = kDefaultRoundCap);
  m.def("solve_tree_bcr", [](const Instance& inst, const std::string& root, std::size_t cap) {
    auto terms = terminals(inst);
    TreeLpResult r = solve_tree_bcr(inst, terms, inst.vertex(root), cap);
    return py::make_tuple(r.value, r.status == LpStatus::Optimal, r.solution);
  }, py::arg("instance"), py::arg("root"), py::arg("round_cap") = kDefaultRoundCap);
}
