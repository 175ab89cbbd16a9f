#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coevo/dynamics.hpp"
#include "coevo/io.hpp"
#include "coevo/welfare.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace coevo;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: return py::none();
  }
}

ModelParams from_py(const py::dict& d) {
  json j = json::object();
  for (const auto& [k, v] : d) {
    if (!py::isinstance<py::float_>(v) && !py::isinstance<py::int_>(v))
      throw ParseError(py::str(k), "value must be a number");
    j[py::str(k).cast<std::string>()] = v.cast<double>();
  }
  return load_params(j.dump());
}

ValidatedParams gate(const py::dict& d, bool force) {
  const ModelParams p = from_py(d);
  return force ? ValidatedParams::unchecked(p) : ValidatedParams::check(p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coevolution of migrant assimilation and native skill formation";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<BudgetError>(m, "BudgetError", base);
  py::register_exception<InternalAssumptionError>(m, "InternalAssumptionError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);

  m.def("example_params", [] { return to_py(to_json(example_two_params())); });

  m.def("sample_params", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return to_py(to_json(sample_admissible(rng)));
  }, py::arg("seed") = 0);

  m.def("validate", [](const py::dict& d) { return to_py(to_json(validate(from_py(d)))); },
        py::arg("params"));

  m.def("thresholds", [](const py::dict& d, bool force) {
    return to_py(to_json(thresholds(gate(d, force))));
  }, py::arg("params"), py::arg("force") = false);

  m.def("steady_states", [](const py::dict& d, bool closed, bool force) {
    const auto vp = gate(d, force);
    json out = json::array();
    for (const auto& s : closed ? steady_states_closed(vp) : steady_states_open(vp))
      out.push_back(to_json(s));
    return to_py(out);
  }, py::arg("params"), py::arg("closed") = false, py::arg("force") = false);

  m.def("rates", [](const py::dict& d, double p, double q) {
    const Rates r = rhs_open(from_py(d), {p, q});
    return py::make_tuple(r.dp, r.dq);
  }, py::arg("params"), py::arg("p"), py::arg("q"));

  m.def("jacobian", [](const py::dict& d, double p, double q) {
    return jacobian(from_py(d), {p, q});
  }, py::arg("params"), py::arg("p"), py::arg("q"));

  m.def("simulate", [](const py::dict& d, double p0, double q0, double t_max, double dt,
                       std::size_t stride, bool force) {
    const auto vp = gate(d, force);
    IntegrationOptions opts{t_max, dt, stride, true};
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = integrate(vp, {p0, q0}, opts);
    }
    return to_py(to_json(tr));
  }, py::arg("params"), py::arg("p0"), py::arg("q0"), py::arg("t_max") = 2000.0,
     py::arg("dt") = 0.01, py::arg("stride") = 1, py::arg("force") = false);

  m.def("simulate_closed", [](const py::dict& d, double q0, double t_max, double dt,
                              std::size_t stride, bool force) {
    const auto vp = gate(d, force);
    IntegrationOptions opts{t_max, dt, stride, true};
    return to_py(to_json(integrate_closed(vp, q0, opts)));
  }, py::arg("params"), py::arg("q0"), py::arg("t_max") = 2000.0, py::arg("dt") = 0.01,
     py::arg("stride") = 1, py::arg("force") = false);

  m.def("basins", [](const py::dict& d, std::size_t resolution, unsigned threads, bool force) {
    const auto vp = gate(d, force);
    BasinMap map;
    {
      py::gil_scoped_release release;
      map = basins(vp, resolution, {.record = false}, threads);
    }
    return to_py(to_json(map));
  }, py::arg("params"), py::arg("resolution") = 21, py::arg("threads") = 0,
     py::arg("force") = false);

  m.def("sweep", [](const py::dict& d, double a_from, double a_to, std::size_t steps,
                    bool force) {
    json out = json::array();
    for (const auto& r : allowance_sweep(gate(d, force), a_from, a_to, steps))
      out.push_back(to_json(r));
    return to_py(out);
  }, py::arg("params"), py::arg("a_from"), py::arg("a_to"), py::arg("steps"),
     py::arg("force") = false);

  m.def("welfare", [](const py::dict& d, bool force) {
    return to_py(to_json(policy_verdict(gate(d, force))));
  }, py::arg("params"), py::arg("force") = false);
}
