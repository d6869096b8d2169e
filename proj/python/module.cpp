// Python bindings. Structured results cross the boundary as JSON-shaped
// dicts and lists; integers stay exact.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dbl/acceptance.hpp"
#include "dbl/bases.hpp"
#include "dbl/cech.hpp"
#include "dbl/error.hpp"
#include "dbl/json_io.hpp"
#include "dbl/weierstrass.hpp"

namespace py = pybind11;
using dbl::Json;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& obj) {
  return dbl::parse_json(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

dbl::SpacePtr space_arg(const py::object& obj) {
  if (py::isinstance<dbl::FiniteSpace>(obj)) return dbl::make_space(obj.cast<const dbl::FiniteSpace&>());
  if (py::isinstance<py::int_>(obj)) return dbl::make_space(dbl::FiniteSpace::discrete(obj.cast<int>()));
  return dbl::make_space(dbl::space_from_json(from_py(obj)));
}

dbl::RingDescriptor ring_arg(const py::object& obj) {
  if (py::isinstance<dbl::RingDescriptor>(obj)) return obj.cast<dbl::RingDescriptor>();
  if (py::isinstance<py::str>(obj)) return dbl::parse_ring(obj.cast<std::string>());
  return dbl::ring_from_json(from_py(obj));
}

std::vector<dbl::Mask> masks_arg(const py::object& obj, int points) {
  std::vector<dbl::Mask> out;
  for (const auto& s : from_py(obj)) out.push_back(dbl::mask_from_json(s, points));
  return out;
}

std::vector<mpz_class> ints_arg(const py::iterable& values) {
  std::vector<mpz_class> out;
  for (const auto& v : values) out.emplace_back(py::str(v).cast<std::string>());
  return out;
}

py::int_ to_int(const mpz_class& a) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(a.get_str().c_str(), nullptr, 10))); }

py::dict complex_report(const dbl::CoverFamily& fam, const dbl::RingDescriptor& ring, size_t rank) {
  const auto c = dbl::build_tate_cech(fam, ring, rank);
  const auto ex = dbl::exactness(c);
  Json hom = Json::array();
  for (const auto& h : ex.homology) hom.push_back(dbl::to_json(h));
  Json secs = Json::array();
  for (const auto& s : dbl::strict_sections(c, fam))
    secs.push_back(Json{{"degree", s.degree}, {"kind", s.kind}, {"constant", s.constant.to_string()}, {"declared", s.declared}});
  py::dict d;
  d["dims"] = c.dims;
  d["homology"] = to_py(hom);
  d["cover"] = dbl::is_cover(fam);
  d["exact"] = ex.exact();
  d["sections"] = to_py(secs);
  return d;
}

}  // namespace

PYBIND11_MODULE(_dbl, m) {
  m.doc() = "Exact finite-stage computations with locally constant functions on finite spaces";

  static py::object error_type = py::reinterpret_borrow<py::object>(
      PyErr_NewException("dbl.DblError", PyExc_ValueError, nullptr));
  m.attr("DblError") = error_type;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dbl::Error& e) {
      py::object err = error_type(e.what());
      err.attr("kind") = std::string(dbl::to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  py::class_<dbl::RingDescriptor>(m, "Ring")
      .def(py::init(&dbl::parse_ring), py::arg("text"))
      .def_property_readonly("name", &dbl::RingDescriptor::name)
      .def_property_readonly("non_archimedean", &dbl::RingDescriptor::non_archimedean)
      .def_property_readonly("ordered", &dbl::RingDescriptor::ordered)
      .def_property_readonly("spectrum_connected", &dbl::RingDescriptor::spectrum_connected)
      .def("norm", [](const dbl::RingDescriptor& r, const py::int_& a) {
        return r.norm(r.reduce(mpz_class(py::str(a).cast<std::string>()))).to_string();
      })
      .def("to_dict", [](const dbl::RingDescriptor& r) { return to_py(dbl::to_json(r)); })
      .def("__eq__", [](const dbl::RingDescriptor& a, const dbl::RingDescriptor& b) { return a == b; })
      .def("__repr__", [](const dbl::RingDescriptor& r) { return "Ring('" + r.name() + "')"; });

  py::class_<dbl::FiniteSpace, std::shared_ptr<dbl::FiniteSpace>>(m, "Space")
      .def(py::init([](const py::object& spec) { return std::make_shared<dbl::FiniteSpace>(*space_arg(spec)); }),
           py::arg("spec"), "A point count (discrete) or {'points': n, 'opens': [[...], ...]}.")
      .def_property_readonly("size", &dbl::FiniteSpace::size)
      .def_property_readonly("is_discrete", &dbl::FiniteSpace::is_discrete)
      .def_property_readonly("clopens", [](const dbl::FiniteSpace& x) {
        std::vector<std::vector<int>> out;
        for (auto u : x.clopens()) out.push_back(dbl::points_of(u));
        return out;
      })
      .def_property_readonly("quasi_components", [](const dbl::FiniteSpace& x) {
        std::vector<std::vector<int>> out;
        for (auto u : x.quasi_components()) out.push_back(dbl::points_of(u));
        return out;
      })
      .def("ultrafilters", [](const dbl::FiniteSpace& x) {
        std::vector<std::vector<std::vector<int>>> out;
        for (const auto& f : dbl::ultrafilters(x)) {
          out.emplace_back();
          for (auto u : f) out.back().push_back(dbl::points_of(u));
        }
        return out;
      })
      .def("iota", [](const dbl::FiniteSpace& x) { return dbl::banaschewski(x).iota; },
           "Point to quasi-component map into the compactification.")
      .def("to_dict", [](const dbl::FiniteSpace& x) { return to_py(dbl::to_json(x)); });

  m.def(
      "cech",
      [](const py::object& space, const py::object& family, const py::object& ring, size_t rank) {
        const auto x = space_arg(space);
        return complex_report(dbl::make_family(x, masks_arg(family, x->size())), ring_arg(ring), rank);
      },
      py::arg("space"), py::arg("family"), py::arg("ring") = "IntInf", py::arg("rank") = 1,
      "Dimensions, homology, cover flag and strict sections of the Tate-Cech complex.");

  m.def(
      "equivalence",
      [](const py::object& space, const py::object& family, const py::object& ring) {
        const auto x = space_arg(space);
        const auto rep = dbl::tate_equivalence_report(dbl::make_family(x, masks_arg(family, x->size())), ring_arg(ring));
        py::dict d;
        d["cover"] = rep.cover;
        d["exact"] = rep.exact;
        d["zero_ring"] = rep.zero_ring;
        d["witness"] = rep.witness ? to_py(dbl::to_json(*rep.witness)) : py::none();
        return d;
      },
      py::arg("space"), py::arg("family"), py::arg("ring") = "IntInf",
      "Cover iff acyclic on a discrete space; raises EquivalenceViolation otherwise.");

  m.def(
      "enumerate_equivalence",
      [](int max_points, int max_sets, const py::object& ring) {
        const auto rep = dbl::enumerate_equivalence(max_points, max_sets, ring_arg(ring));
        py::dict d;
        d["cases"] = rep.cases;
        d["covers"] = rep.covers;
        d["disagreements"] = rep.disagreements;
        d["module_disagreements"] = rep.module_disagreements;
        d["max_section_constant"] = rep.max_section_constant;
        return d;
      },
      py::arg("max_points"), py::arg("max_sets"), py::arg("ring") = "IntInf");

  m.def(
      "mahler_coeffs",
      [](const py::iterable& values, const py::object& modulus) {
        const auto vals = ints_arg(values);
        const auto a = modulus.is_none() ? dbl::mahler_coeffs(vals)
                                         : dbl::mahler_coeffs_mod(vals, mpz_class(py::str(modulus).cast<std::string>()));
        py::list out;
        for (const auto& c : a) out.append(to_int(c));
        return out;
      },
      py::arg("values"), py::arg("modulus") = py::none());
  m.def("mahler_pairing", [](long n, long i) { return to_int(dbl::mahler_pairing(n, i)); });

  m.def(
      "basis",
      [](const std::string& kind, long p, int k) {
        dbl::BasisFamily f;
        if (kind == "vdp") {
          f = dbl::vdp_basis_level(p, k);
        } else if (kind == "mahler") {
          f = dbl::mahler_level_basis(p, k);
        } else {
          dbl::fail(dbl::ErrorKind::InvalidInput, "basis kind must be vdp or mahler");
        }
        py::dict d = to_py(dbl::to_json(f));
        d["determinant"] = to_int(dbl::check_unimodular(f).determinant);
        return d;
      },
      py::arg("kind"), py::arg("p"), py::arg("k"));

  m.def(
      "sw_certificate",
      [](const py::object& space, const py::object& gens, const py::object& clopen, const py::object& ring) {
        const auto x = space_arg(space);
        const auto r = ring_arg(ring);
        std::vector<dbl::CfinFunction> fs;
        for (const auto& g : from_py(gens)) fs.push_back(dbl::function_from_json(g, x, r));
        const auto sep = dbl::separates_points(fs, *x);
        if (!sep.separates)
          dbl::fail(dbl::ErrorKind::NonSeparating, "no generator separates components " +
                                                       std::to_string(sep.witness->first) + " and " +
                                                       std::to_string(sep.witness->second));
        const auto cert = dbl::sw_construct_indicator(x, r, fs, dbl::mask_from_json(from_py(clopen), x->size()));
        py::dict d = to_py(dbl::to_json(cert));
        d["verified"] = dbl::verify_certificate(cert, x, fs);
        return d;
      },
      py::arg("space"), py::arg("gens"), py::arg("clopen"), py::arg("ring") = "IntInf",
      "An expression in the generators evaluating to a_U times the indicator of the clopen.");

  m.def(
      "run_criterion",
      [](int id, const py::object& seed) {
        dbl::AcceptanceOptions opts;
        if (!seed.is_none()) opts.seed = seed.cast<std::uint64_t>();
        dbl::CriterionResult c;
        {
          py::gil_scoped_release release;
          c = dbl::run_criterion(id, opts);
        }
        py::dict d;
        d["id"] = c.id;
        d["name"] = c.name;
        d["passed"] = c.passed;
        d["detail"] = c.detail;
        d["seconds"] = c.seconds;
        return d;
      },
      py::arg("id"), py::arg("seed") = py::none());
}
