#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fbpir/acceptance.hpp"
#include "fbpir/bounds.hpp"
#include "fbpir/constructions.hpp"
#include "fbpir/errors.hpp"
#include "fbpir/io.hpp"
#include "fbpir/serve.hpp"
#include "fbpir/solver.hpp"

namespace py = pybind11;
using namespace fbpir;

namespace {

CodeKind kind_arg(const std::string& s) { return parse_kind(s); }

py::dict plan_dict(const RecoveryPlan& p) {
  py::list out;
  for (const auto& a : p.assignments) {
    py::dict d;
    d["request"] = a.request.rep;
    d["indices"] = a.indices;
    d["coefficients"] = a.coefficients;
    d["scalar"] = a.scalar;
    out.append(d);
  }
  py::dict r;
  r["assignments"] = out;
  return r;
}

RecoveryPlan plan_from_dict(const py::dict& d) {
  RecoveryPlan p;
  for (auto item : d["assignments"]) {
    auto a = item.cast<py::dict>();
    Assignment x;
    x.request.rep = a["request"].cast<Vector>();
    x.indices = a["indices"].cast<std::vector<std::size_t>>();
    x.coefficients = a["coefficients"].cast<std::vector<Element>>();
    x.scalar = a.contains("scalar") ? a["scalar"].cast<Element>() : 1;
    p.assignments.push_back(std::move(x));
  }
  return p;
}

py::dict bound_dict(const BoundRecord& r) {
  py::dict d;
  d["kind"] = to_string(r.kind);
  d["k"] = r.k;
  d["t"] = r.t;
  d["q"] = r.q;
  d["lb"] = r.lb;
  d["ub"] = r.ub;
  py::dict lbs, ubs;
  for (const auto& s : r.lb_sources) lbs[py::str(s.name)] = s.value;
  for (const auto& s : r.ub_sources) ubs[py::str(s.name)] = s.value;
  d["lb_sources"] = lbs;
  d["ub_sources"] = ubs;
  if (r.exact) {
    d["value"] = r.exact->value;
    d["provenance"] = r.exact->provenance;
  } else {
    d["value"] = py::none();
    d["provenance"] = py::none();
  }
  return d;
}

RequestList make_list(const MatrixFq& m, const std::vector<Vector>& requests) {
  return RequestList::from_vectors(m.field_ptr(), m.k(), requests);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Functional PIR and batch codes over finite fields";

  static py::exception<Error> base(m, "Error");
  py::register_exception<SeedIntegrityError>(m, "SeedIntegrityError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<NotPrimePower>(m, "NotPrimePower", base.ptr());
  py::register_exception<ZeroColumn>(m, "ZeroColumn", base.ptr());
  py::register_exception<ZeroVector>(m, "ZeroVector", base.ptr());
  py::register_exception<SumNonzero>(m, "SumNonzero", base.ptr());

  py::class_<Field, std::shared_ptr<Field>>(m, "Field")
      .def_property_readonly("p", &Field::p)
      .def_property_readonly("m", &Field::m)
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("modulus", &Field::modulus)
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("mul", &Field::mul)
      .def("neg", &Field::neg)
      .def("inv", &Field::inv)
      .def("div", &Field::div)
      .def("elements", &Field::elements)
      .def("__repr__", [](const Field& f) { return "Field(q=" + std::to_string(f.q()) + ")"; });

  m.def("field_new", [](std::uint64_t q, std::uint64_t cap) { return std::const_pointer_cast<Field>(Field::make(q, cap)); },
        py::arg("q"), py::arg("cap") = kDefaultFieldCap);

  py::class_<MatrixFq>(m, "Matrix")
      .def(py::init([](std::uint64_t q, std::size_t k, std::vector<Vector> columns) {
             return MatrixFq(Field::make(q), k, std::move(columns));
           }),
           py::arg("q"), py::arg("k"), py::arg("columns"))
      .def_property_readonly("q", [](const MatrixFq& x) { return x.field().q(); })
      .def_property_readonly("k", &MatrixFq::k)
      .def_property_readonly("n", &MatrixFq::n)
      .def_property_readonly("columns", &MatrixFq::columns)
      .def("rank", [](const MatrixFq& x) { return rank(x); })
      .def("to_json", [](const MatrixFq& x) { return matrix_to_json(x).dump(); })
      .def_static("from_json", [](const std::string& s) { return matrix_from_json(nlohmann::json::parse(s)); })
      .def("__repr__", [](const MatrixFq& x) {
        return "Matrix(q=" + std::to_string(x.field().q()) + ", k=" + std::to_string(x.k()) +
               ", n=" + std::to_string(x.n()) + ")";
      });

  m.def(
      "in_span",
      [](std::uint64_t q, const Vector& v, const std::vector<Vector>& cols) {
        return in_span(*Field::make(q), v, cols);
      },
      py::arg("q"), py::arg("v"), py::arg("columns"));
  m.def(
      "projective_canonical", [](std::uint64_t q, const Vector& v) { return projective_canonical(*Field::make(q), v).rep; },
      py::arg("q"), py::arg("v"));
  m.def(
      "projective_points",
      [](std::size_t k, std::uint64_t q) {
        std::vector<Vector> out;
        for (const auto& p : enumerate_projective_points(k, *Field::make(q))) out.push_back(p.rep);
        return out;
      },
      py::arg("k"), py::arg("q"));

  m.def(
      "can_serve",
      [](const MatrixFq& x, const std::vector<Vector>& requests) -> py::object {
        auto p = can_serve(x, make_list(x, requests));
        if (!p) return py::none();
        return plan_dict(*p);
      },
      py::arg("matrix"), py::arg("requests"));
  m.def(
      "verify_plan",
      [](const MatrixFq& x, const std::vector<Vector>& requests, const py::dict& plan) {
        return verify_plan(x, make_list(x, requests), plan_from_dict(plan));
      },
      py::arg("matrix"), py::arg("requests"), py::arg("plan"));
  m.def(
      "is_functional_pir", [](const MatrixFq& x, std::size_t t) { return is_functional_pir(x, t).ok; },
      py::arg("matrix"), py::arg("t"));
  m.def(
      "is_functional_batch", [](const MatrixFq& x, std::size_t t) { return is_functional_batch(x, t).ok; },
      py::arg("matrix"), py::arg("t"));

  m.def(
      "min_length",
      [](const std::string& kind, std::size_t k, std::size_t t, std::uint32_t q, bool systematic, double max_seconds,
         std::uint64_t max_nodes) {
        SearchOptions o;
        o.systematic = systematic;
        o.max_seconds = max_seconds;
        o.max_nodes = max_nodes;
        SearchResult r = [&] {
          py::gil_scoped_release release;
          return min_length(kind_arg(kind), k, t, q, o);
        }();
        py::dict d;
        d["n"] = r.n_min;
        d["witness"] = r.witness;
        d["exhausted_below"] = r.exhausted_below;
        d["candidates"] = r.candidates;
        d["seconds"] = r.seconds;
        return d;
      },
      py::arg("kind"), py::arg("k"), py::arg("t"), py::arg("q"), py::arg("systematic") = false,
      py::arg("max_seconds") = 0.0, py::arg("max_nodes") = 0);

  m.def(
      "eval_bounds",
      [](const std::string& kind, std::int64_t k, std::int64_t t, std::uint32_t q) {
        return bound_dict(eval_bounds(kind_arg(kind), k, t, q));
      },
      py::arg("kind"), py::arg("k"), py::arg("t"), py::arg("q"));
  m.def(
      "known_value",
      [](const std::string& kind, std::int64_t k, std::int64_t t, std::uint32_t q) -> py::object {
        auto v = known_value(kind_arg(kind), k, t, q);
        if (!v) return py::none();
        return py::make_tuple(v->value, v->provenance);
      },
      py::arg("kind"), py::arg("k"), py::arg("t"), py::arg("q"));
  m.def(
      "asymptotic_ratio_fp",
      [](std::int64_t k, std::uint32_t q) {
        const auto r = asymptotic_ratio_fp(k, q);
        return py::make_tuple(r.num, r.den);
      },
      py::arg("k"), py::arg("q"));

  m.def(
      "construct",
      [](const std::string& name, std::size_t k, std::size_t t, std::uint32_t q, std::size_t s) {
        Construction c = [&] {
          switch (parse_construction(name)) {
            case ConstructionName::kK2Projective:
              return construct_k2(t, q);
            case ConstructionName::kBinaryT2Even:
            case ConstructionName::kBinaryT2Odd:
              return construct_binary_t2(k);
            case ConstructionName::kAllNonzeroRepeated:
              return construct_all_nonzero(k, q, s);
            case ConstructionName::kDoubleAllNonzero:
              break;
          }
          return construct_double_all_nonzero(k, q);
        }();
        py::dict d;
        d["name"] = to_string(c.name);
        d["matrix"] = c.matrix;
        d["claimed_t"] = c.claimed_t;
        d["claimed_kind"] = to_string(c.claimed_kind);
        return d;
      },
      py::arg("name"), py::arg("k") = 2, py::arg("t") = 1, py::arg("q") = 2, py::arg("s") = 1);

  m.def(
      "hall_ordering",
      [](std::size_t k, std::uint32_t q, const std::vector<Vector>& a) { return hall_ordering(k, q, a).g; },
      py::arg("k"), py::arg("q"), py::arg("a"));

  m.def(
      "run_criterion",
      [](int id, const std::string& suite) {
        CriterionResult r = [&] {
          py::gil_scoped_release release;
          return run_criterion(id, parse_suite(suite));
        }();
        py::dict d;
        d["id"] = r.id;
        d["name"] = r.name;
        d["pass"] = r.pass;
        d["seconds"] = r.seconds;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("id"), py::arg("suite") = "fast");
}
