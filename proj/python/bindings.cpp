#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "layerctx/bench.hpp"
#include "layerctx/case_study.hpp"
#include "layerctx/config.hpp"
#include "layerctx/demos.hpp"
#include "layerctx/runtime.hpp"
#include "layerctx/version.hpp"

namespace py = pybind11;
using namespace layerctx;

namespace {

Value to_value(py::handle h) {
  if (h.is_none()) return Value{};
  if (py::isinstance<py::bool_>(h)) return Value(h.cast<bool>());
  if (py::isinstance<py::int_>(h)) return Value(h.cast<std::int64_t>());
  if (py::isinstance<py::float_>(h)) return Value(h.cast<double>());
  if (py::isinstance<py::str>(h)) return Value(h.cast<std::string>());
  throw py::type_error("layerctx values are None, bool, int, float or str");
}

py::object to_py(const Value& v) {
  return std::visit(
      [](const auto& x) -> py::object {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return py::none();
        else
          return py::cast(x);
      },
      v);
}

std::vector<Value> to_values(const py::sequence& seq) {
  std::vector<Value> out;
  out.reserve(py::len(seq));
  for (py::handle h : seq) out.push_back(to_value(h));
  return out;
}

py::list args_to_list(Args args) {
  py::list out;
  for (const Value& v : args) out.append(to_py(v));
  return out;
}

py::list stage_list(const std::vector<ChainStage>& stages) {
  py::list out;
  for (const ChainStage& s : stages) {
    out.append(py::make_tuple(
        s.layer ? py::object(py::cast(s.layer->name())) : py::object(py::none()), s.kind));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_layerctx, m) {
  m.doc() = "layer-oriented adaptation runtime";
  m.attr("__version__") = kVersion;

  const auto err = py::register_exception<Error>(m, "Error");
  py::register_exception<ActivationError>(m, "ActivationError", err.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", err.ptr());

  py::enum_<PartialKind>(m, "PartialKind")
      .value("AROUND", PartialKind::Around)
      .value("BEFORE", PartialKind::Before)
      .value("AFTER", PartialKind::After);

  py::class_<Layer>(m, "Layer")
      .def_property_readonly("name", &Layer::name)
      .def_property_readonly("metadata", &Layer::metadata)
      .def("__eq__",
           [](Layer a, py::object b) { return py::isinstance<Layer>(b) && a == b.cast<Layer>(); })
      .def("__hash__", [](Layer l) { return std::hash<Layer>()(l); })
      .def("__repr__", [](Layer l) { return "<Layer '" + l.name() + "'>"; });

  py::class_<Method>(m, "Method")
      .def_property_readonly("name", &Method::name)
      .def("__repr__", [](Method mth) { return "<Method '" + mth.name() + "'>"; });

  py::class_<DispatchCursor>(m, "DispatchCursor")
      .def(
          "proceed",
          [](DispatchCursor& self, const py::sequence& args) {
            const std::vector<Value> vals = to_values(args);
            return to_py(self.proceed(std::span<const Value>(vals)));
          },
          py::arg("args") = py::tuple(), "Invoke the next definition in the chain.")
      .def("has_next", &DispatchCursor::has_next)
      .def("remaining", &DispatchCursor::remaining);

  py::class_<ContextState>(m, "ContextState")
      .def("active_layers", &ContextState::active_layers)
      .def("is_active", &ContextState::is_active)
      .def(
          "with_layers",
          [](ContextState& self, const std::vector<Layer>& layers, const py::function& body) {
            return self.with_layers(std::span<const Layer>(layers),
                                    [&]() -> py::object { return body(); });
          },
          py::arg("layers"), py::arg("body"),
          "Run body with the layers activated for its dynamic extent.")
      .def(
          "without_layers",
          [](ContextState& self, const std::vector<Layer>& layers, const py::function& body) {
            return self.without_layers(std::span<const Layer>(layers),
                                       [&]() -> py::object { return body(); });
          },
          py::arg("layers"), py::arg("body"),
          "Run body with the layers suppressed for its dynamic extent.")
      .def("activate_indefinite", &ContextState::activate_indefinite)
      .def("deactivate", &ContextState::deactivate);

  py::class_<Runtime>(m, "Runtime")
      .def(py::init<>())
      .def("define_layer", &Runtime::define_layer, py::arg("name"),
           py::arg("metadata") = Metadata{}, py::keep_alive<0, 1>())
      .def(
          "register_method",
          [](Runtime& self, std::string name, const py::function& fn) {
            return self.register_method(std::move(name), BaseFn([fn](Args args) -> Value {
                                          return to_value(fn(args_to_list(args)));
                                        }));
          },
          py::arg("name"), py::arg("base"), py::keep_alive<0, 1>(),
          "Register a layered method; base takes a list of argument values.")
      .def(
          "add_around",
          [](Runtime& self, Method mth, Layer l, const py::function& fn) {
            self.add_around(mth, l, AroundFn([fn](DispatchCursor& cur, Args args) -> Value {
                              py::object cursor =
                                  py::cast(&cur, py::return_value_policy::reference);
                              return to_value(fn(cursor, args_to_list(args)));
                            }));
          },
          py::arg("method"), py::arg("layer"), py::arg("body"),
          "Around partial: body(cursor, args) may call cursor.proceed(args).")
      .def(
          "add_before",
          [](Runtime& self, Method mth, Layer l, const py::function& fn) {
            self.add_before(mth, l, HookFn([fn](Args args) { fn(args_to_list(args)); }));
          },
          py::arg("method"), py::arg("layer"), py::arg("body"))
      .def(
          "add_after",
          [](Runtime& self, Method mth, Layer l, const py::function& fn) {
            self.add_after(mth, l, HookFn([fn](Args args) { fn(args_to_list(args)); }));
          },
          py::arg("method"), py::arg("layer"), py::arg("body"))
      .def("layer", &Runtime::layer, py::keep_alive<0, 1>())
      .def("method", &Runtime::method, py::keep_alive<0, 1>())
      .def("layers", &Runtime::layers, py::keep_alive<0, 1>())
      .def("layer_count", &Runtime::layer_count)
      .def("declare_excludes", &Runtime::declare_excludes)
      .def("declare_requires", &Runtime::declare_requires)
      .def("make_context", &Runtime::make_context, py::keep_alive<0, 1>())
      .def(
          "call",
          [](const Runtime& self, ContextState& ctx, Method mth, const py::sequence& args) {
            const std::vector<Value> vals = to_values(args);
            return to_py(self.call(ctx, mth, std::span<const Value>(vals)));
          },
          py::arg("ctx"), py::arg("method"), py::arg("args") = py::tuple())
      .def(
          "compose_chain",
          [](const Runtime& self, const ContextState& ctx, Method mth) {
            const DispatchChain chain = self.compose_chain(ctx, mth);
            py::dict d;
            d["befores"] = stage_list(chain.befores);
            d["arounds"] = stage_list(chain.arounds);
            d["afters"] = stage_list(chain.afters);
            return d;
          },
          py::arg("ctx"), py::arg("method"),
          "Resolved dispatch plan as (layer name or None, kind) stages.")
      .def("partials_of", &Runtime::partials_of, py::arg("layer"));

  py::class_<PiController>(m, "PiController")
      .def(py::init([](double setpoint, double kp, double ki, double output_min,
                       double output_max, bool anti_windup) {
             return PiController({kp, ki, output_min, output_max, anti_windup}, setpoint);
           }),
           py::arg("setpoint"), py::arg("kp") = 0.8, py::arg("ki") = 0.3,
           py::arg("output_min") = 0.0, py::arg("output_max") = 1.0,
           py::arg("anti_windup") = true)
      .def("step", &PiController::step, py::arg("measured"), py::arg("dt"))
      .def("set_setpoint", &PiController::set_setpoint)
      .def_property_readonly("setpoint", &PiController::setpoint)
      .def_property_readonly("output", &PiController::output)
      .def_property_readonly("integral", &PiController::integral);

  m.def("demo_figure", []() { return demo_figure(); },
        "Trace lines of the figure-drawing demo.");
  m.def(
      "demo_resource_storage",
      [](bool use_caching_layer) {
        const StorageDemo d = demo_resource_storage(use_caching_layer);
        return py::make_tuple(d.lines, d.base_invocations);
      },
      py::arg("use_caching_layer") = true,
      "(trace lines, base invocation count) of the caching demo.");

  m.def(
      "run_study",
      [](const std::string& config_json, const std::string& runs) {
        const AppConfig cfg = parse_app_config(config_json);
        bool a = false, b = false, c = false;
        for (char ch : runs) {
          if (ch == 'a') a = true;
          else if (ch == 'b') b = true;
          else if (ch == 'c') c = true;
          else if (ch != ',')
            throw ConfigError("runs", "must be drawn from {a,b,c}");
        }
        const ComparisonResult res = run_comparison(cfg, a, b, c);
        py::dict out;
        const auto emit = [&](const std::optional<BandwidthSeries>& s) {
          if (!s) return;
          py::list rows;
          for (const WindowRow& r : s->rows)
            rows.append(py::make_tuple(r.t, r.bandwidth, r.setpoint, r.high_rate, r.low_rate));
          py::dict d;
          d["rows"] = rows;
          d["total_bytes"] = s->total_bytes;
          d["total_pages"] = s->total_pages;
          d["sessions_created"] = s->sessions_created;
          out[py::str(s->run)] = d;
        };
        emit(res.a);
        emit(res.b);
        emit(res.c);
        return out;
      },
      py::arg("config_json") = "{}", py::arg("runs") = "abc",
      "Run the bandwidth-adaptive study; rows are (t, bandwidth, setpoint, "
      "high_rate, low_rate) per measurement window.");

  m.def(
      "bench_dispatch",
      [](int layers, std::uint64_t calls, int reps) {
        const DispatchBenchResult r = bench_dispatch(layers, calls, reps);
        py::dict d;
        d["cop_ns"] = r.cop.per_call_ns();
        d["plain_ns"] = r.plain.per_call_ns();
        d["checksum"] = r.cop.checksum;
        return d;
      },
      py::arg("layers"), py::arg("calls") = 100000, py::arg("reps") = 3);
  m.def(
      "bench_page",
      [](std::uint64_t iterations, int reps) {
        const PageBenchResult r = bench_page_both(iterations, reps);
        py::dict d;
        d["cop_ns"] = r.cop.per_call_ns();
        d["conditional_ns"] = r.conditional.per_call_ns();
        d["checksum"] = r.cop.checksum;
        return d;
      },
      py::arg("iterations") = 1000, py::arg("reps") = 3);
}
