#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xzsq/certificate.hpp"
#include "xzsq/counting.hpp"
#include "xzsq/croot_sisask.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/pipeline.hpp"

namespace py = pybind11;
using namespace xzsq;

namespace {

RunConfig config_from(const std::string& text)
{
  RunConfig cfg = parse_config(text);
  cfg.validate();
  return cfg;
}

Subset subset_of(const Group& g, const std::vector<Elem>& elems)
{
  for (Elem x : elems)
    require(x < g->order(), Errc::InvalidArgument, "element id out of range: " + std::to_string(x));
  return Subset::from_elements(g, elems);
}

} // namespace

PYBIND11_MODULE(_xzsq, m)
{
  m.doc() = "Finite groups, multiplicative systems and certified counts of xz = y^2";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("code") = to_string(e.code());
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<GroupTable, std::shared_ptr<GroupTable>>(m, "Group")
      .def_property_readonly("order", &GroupTable::order)
      .def_property_readonly("name", &GroupTable::name)
      .def_property_readonly("descriptor", &GroupTable::descriptor)
      .def_property_readonly("abelian", &GroupTable::abelian)
      .def_property_readonly("hash", &GroupTable::hash_hex)
      .def("mul", &GroupTable::mul)
      .def("inv", &GroupTable::inv)
      .def("sq", &GroupTable::sq)
      .def("table", &GroupTable::rows)
      .def("__repr__", [](const GroupTable& g) { return "<Group " + g.name() + " of order " + std::to_string(g.order()) + ">"; });

  m.def(
      "load_group", [](const std::string& d) { return std::const_pointer_cast<GroupTable>(load_group(d)); },
      py::arg("descriptor"));
  m.def("catalog", [] {
    py::list out;
    for (const auto& e : catalog())
      out.append(py::dict(py::arg("name") = e.name, py::arg("descriptor") = e.descriptor,
                          py::arg("order") = e.order, py::arg("abelian") = e.abelian));
    return out;
  });
  m.def(
      "parse_subset",
      [](const std::shared_ptr<GroupTable>& g, const std::string& text) { return parse_subset(g, text).elements(); },
      py::arg("group"), py::arg("text"));

  m.def(
      "count_triples",
      [](const std::shared_ptr<GroupTable>& g, const std::vector<Elem>& a, const std::string& eq) {
        const TripleCount t = count_triples(subset_of(g, a), parse_equation(eq));
        return py::make_tuple(t.total, t.nontrivial);
      },
      py::arg("group"), py::arg("subset"), py::arg("eq") = "SQUARE");
  m.def(
      "is_solution_free",
      [](const std::shared_ptr<GroupTable>& g, const std::vector<Elem>& a, const std::string& eq) {
        return is_solution_free(subset_of(g, a), parse_equation(eq));
      },
      py::arg("group"), py::arg("subset"), py::arg("eq") = "SQUARE");
  m.def(
      "max_solution_free",
      [](const std::shared_ptr<GroupTable>& g, const std::string& eq, std::uint64_t budget, std::uint64_t seed) {
        const SearchReport r = max_solution_free(g, parse_equation(eq), budget, seed);
        return py::dict(py::arg("best_set") = r.best_set.elements(), py::arg("best_size") = r.best_size,
                        py::arg("exhaustive") = r.exhaustive, py::arg("nodes_explored") = r.nodes_explored);
      },
      py::arg("group"), py::arg("eq") = "SQUARE", py::arg("budget") = 200'000'000, py::arg("seed") = 1);
  m.def(
      "largest_abelian_subgroup",
      [](const std::shared_ptr<GroupTable>& g, std::size_t cap) { return largest_abelian_subgroup(g, cap).elements(); },
      py::arg("group"), py::arg("cap") = 128);
  m.def(
      "best_coset_translate",
      [](const std::shared_ptr<GroupTable>& g, const std::vector<Elem>& a, const std::vector<Elem>& h) {
        const CosetTranslate c = best_coset_translate(subset_of(g, a), subset_of(g, h));
        return py::make_tuple(c.t, c.size);
      },
      py::arg("group"), py::arg("subset"), py::arg("subgroup"));

  m.def(
      "bogolioubov_neighbourhood",
      [](const std::shared_ptr<GroupTable>& g, const std::vector<Elem>& x, std::uint64_t k, const std::string& cfg) {
        const NeighbourhoodResult r = bogolioubov_neighbourhood(subset_of(g, x), k, config_from(cfg));
        return py::dict(py::arg("S") = r.S.elements(), py::arg("density") = r.density,
                        py::arg("certified") = r.certified, py::arg("log") = r.log.dump());
      },
      py::arg("group"), py::arg("subset"), py::arg("k"), py::arg("config") = "");
  m.def(
      "build_system",
      [](const std::shared_ptr<GroupTable>& g, const std::vector<Elem>& x, std::size_t r, double eps,
         const std::string& cfg) {
        const SystemResult s = build_system(subset_of(g, x), r, eps, config_from(cfg));
        py::list levels;
        for (const Level& l : s.system.steps)
          levels.append(py::make_tuple(l.plus.elements(), l.mid.elements(), l.minus.elements()));
        return py::dict(py::arg("levels") = levels, py::arg("tail") = s.system.tail.elements(),
                        py::arg("S") = s.S.elements(), py::arg("certified") = s.certified,
                        py::arg("axioms_ok") = verify_system(s.system).ok);
      },
      py::arg("group"), py::arg("subset"), py::arg("r"), py::arg("epsilon"), py::arg("config") = "");

  m.def(
      "run_pipeline",
      [](const std::shared_ptr<GroupTable>& g, const std::vector<Elem>& a, const std::string& cfg) {
        return certificate_text(run_iteration(g, subset_of(g, a), config_from(cfg)));
      },
      py::arg("group"), py::arg("subset"), py::arg("config") = "");
  m.def(
      "check_certificate",
      [](const std::string& text, bool replay) { return check_certificate_text(text, {replay}).to_json().dump(); },
      py::arg("text"), py::arg("replay") = true);
  m.def("default_config", [] { return format_config(RunConfig{}); });
}
