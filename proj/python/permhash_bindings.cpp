// Python bindings. Keys cross the boundary as Python ints (via decimal
// strings) or as bytes/str material run through derive_key.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permhash/analysis.hpp"
#include "permhash/errors.hpp"
#include "permhash/hash_key.hpp"
#include "permhash/node_table.hpp"
#include "permhash/permcore.hpp"
#include "permhash/ring.hpp"
#include "permhash/ucycle.hpp"

namespace py = pybind11;
using namespace permhash;

namespace {

BigUint to_big(const py::int_& value) {
  if (value < py::int_(0)) throw Error(ErrorCode::kInvalidKey, "keys must be non-negative");
  return BigUint::from_decimal(py::str(value).cast<std::string>());
}

py::int_ to_py(const BigUint& value) {
  return py::int_(py::reinterpret_steal<py::object>(
      PyLong_FromString(value.to_decimal().c_str(), nullptr, 10)));
}

using KeyInput = std::variant<py::int_, py::bytes, std::string>;

// int: used as-is, width key_bits or its own bit length.
// bytes/str: derive_key at key_bits (default 512).
HashKey make_key(const KeyInput& key, std::optional<std::size_t> key_bits) {
  if (const auto* i = std::get_if<py::int_>(&key)) {
    BigUint value = to_big(*i);
    return key_bits ? HashKey(std::move(value), *key_bits) : HashKey::from_value(std::move(value));
  }
  const std::string data = std::holds_alternative<py::bytes>(key)
                               ? std::get<py::bytes>(key).cast<std::string>()
                               : std::get<std::string>(key);
  return derive_key(data, key_bits.value_or(512));
}

EntropyCheck parse_check(const std::string& name) {
  if (name == "off") return EntropyCheck::kOff;
  if (name == "warn") return EntropyCheck::kWarn;
  if (name == "strict") return EntropyCheck::kStrict;
  throw Error(ErrorCode::kInvalidArgument, "entropy must be 'off', 'warn' or 'strict'");
}

KeyRange make_range(std::optional<std::uint64_t> samples, std::uint64_t seed) {
  if (samples) return SampledRange{*samples, seed};
  return ExactRange{};
}

py::object parse_json(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_permhash, m) {
  m.doc() = "Permutation-based consistent hashing";

  // Leaked on purpose: must outlive interpreter-shutdown destructors.
  static const auto* error_type =
      new py::object(py::exception<Error>(m, "PermhashError", PyExc_ValueError));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = (*error_type)(e.what());
      inst.attr("code") = std::string(error_code_name(e.code()));
      inst.attr("detail") = e.detail();
      PyErr_SetObject(error_type->ptr(), inst.ptr());
    }
  });

  set_entropy_warning_handler([](const std::string& message) {
    if (PyErr_WarnEx(PyExc_RuntimeWarning, message.c_str(), 2) != 0) {
      throw py::error_already_set();
    }
  });

  py::class_<NodeTable>(m, "NodeTable")
      .def(py::init([](const std::vector<NodeId>& nodes, const std::string& strategy) {
             return NodeTable::create(nodes, parse_strategy(strategy));
           }),
           py::arg("nodes") = std::vector<NodeId>{}, py::arg("strategy") = "from_start")
      .def_static(
          "from_slots",
          [](std::vector<Slot> slots, const std::string& strategy) {
            return NodeTable::from_slots(std::move(slots), parse_strategy(strategy));
          },
          py::arg("slots"), py::arg("strategy") = "from_start")
      .def_static("from_json", [](const std::string& text) { return deserialize(text); })
      .def("to_json", [](const NodeTable& t) { return serialize(t); })
      .def("add", &NodeTable::add)
      .def("remove", &NodeTable::remove)
      .def_property_readonly("slots", &NodeTable::slots)
      .def_property_readonly("strategy",
                             [](const NodeTable& t) { return std::string(strategy_name(t.strategy())); })
      .def_property_readonly("live_nodes", &NodeTable::live_nodes)
      .def_property_readonly("fingerprint", [](const NodeTable& t) { return fingerprint(t); })
      .def("__len__", &NodeTable::slot_count)
      .def("__contains__", [](const NodeTable& t, const std::string& n) { return t.contains(n); })
      .def("__eq__", [](const NodeTable& a, const NodeTable& b) { return a == b; })
      .def("__repr__", [](const NodeTable& t) { return "NodeTable(" + serialize(t) + ")"; });

  m.def(
      "permute",
      [](const NodeTable& t, const KeyInput& key, std::optional<std::size_t> key_bits,
         const std::string& entropy) { return permute(t, make_key(key, key_bits), parse_check(entropy)); },
      py::arg("table"), py::arg("key"), py::arg("key_bits") = py::none(),
      py::arg("entropy") = "warn");
  m.def(
      "first_live",
      [](const NodeTable& t, const KeyInput& key, std::optional<std::size_t> key_bits,
         const std::string& entropy) {
        return first_live(t, make_key(key, key_bits), parse_check(entropy));
      },
      py::arg("table"), py::arg("key"), py::arg("key_bits") = py::none(),
      py::arg("entropy") = "warn");
  m.def(
      "first_simple",
      [](const NodeTable& t, const KeyInput& key, std::optional<std::size_t> key_bits,
         const std::string& entropy) {
        return first_simple(t, make_key(key, key_bits), parse_check(entropy));
      },
      py::arg("table"), py::arg("key"), py::arg("key_bits") = py::none(),
      py::arg("entropy") = "warn");
  m.def(
      "derive_key",
      [](const KeyInput& data, std::size_t width_bits) {
        if (std::holds_alternative<py::int_>(data)) {
          throw Error(ErrorCode::kInvalidArgument, "derive_key takes bytes or str");
        }
        return to_py(make_key(data, width_bits).value());
      },
      py::arg("data"), py::arg("width_bits") = 512);
  m.def("capacity", &capacity, py::arg("bits"));
  m.def("min_key_bits", &min_key_bits, py::arg("nodes"), py::arg("margin") = 0);

  py::class_<RingState>(m, "Ring")
      .def(py::init([](unsigned point_bits, std::size_t replicas) {
             return RingState(RingConfig{point_bits, replicas});
           }),
           py::arg("point_bits") = 32, py::arg("replicas") = 1)
      .def_static("from_json", [](const std::string& text) { return deserialize_ring(text); })
      .def("to_json", [](const RingState& r) { return serialize_ring(r); })
      .def("add", &RingState::add)
      .def("remove", &RingState::remove)
      .def(
          "lookup",
          [](const RingState& r, const KeyInput& key, std::optional<std::size_t> key_bits) {
            // Integer keys default to the ring's point width.
            if (!key_bits && std::holds_alternative<py::int_>(key)) key_bits = r.config().point_bits;
            return r.lookup(make_key(key, key_bits));
          },
          py::arg("key"), py::arg("key_bits") = py::none())
      .def("owner_of", &RingState::owner_of, py::arg("point"))
      .def_property_readonly("nodes", &RingState::nodes)
      .def_property_readonly("points", &RingState::points)
      .def_property_readonly("point_bits", [](const RingState& r) { return r.config().point_bits; })
      .def_property_readonly("replicas", [](const RingState& r) { return r.config().replicas; })
      .def("__contains__", [](const RingState& r, const std::string& n) { return r.contains(n); });

  using Symbols = std::vector<NodeId>;
  m.def(
      "build_cycle",
      [](const Symbols& nodes, std::uint64_t budget) { return build_cycle(nodes, budget); },
      py::arg("nodes"), py::arg("budget") = kDefaultCycleBudget);
  m.def(
      "verify_cycle",
      [](const std::vector<NodeId>& symbols, std::optional<std::vector<NodeId>> nodes) {
        const auto set = nodes ? *nodes : symbol_set(symbols);
        const auto check = verify_cycle(symbols, set);
        py::dict out;
        out["valid"] = check.valid;
        if (!check.valid) {
          out["first_violation"] = check.first_violation ? py::cast(*check.first_violation) : py::none();
          out["reason"] = check.reason;
        }
        return out;
      },
      py::arg("symbols"), py::arg("nodes") = py::none());
  m.def(
      "substitute_removed",
      [](const Symbols& symbols, const Symbols& removed) {
        return substitute_removed(symbols, removed);
      },
      py::arg("symbols"), py::arg("removed"));
  m.def(
      "cycle_lookup",
      [](const std::vector<NodeId>& symbols, const py::int_& key,
         const std::vector<NodeId>& removed) { return cycle_lookup(symbols, to_big(key), removed); },
      py::arg("symbols"), py::arg("key"), py::arg("removed") = std::vector<NodeId>{});
  m.def(
      "count_symbols", [](const Symbols& symbols) { return count_symbols(symbols); },
      py::arg("symbols"));

  m.def(
      "census",
      [](const NodeTable& t, std::optional<std::uint64_t> samples, std::uint64_t seed,
         unsigned workers) {
        std::string text;
        {
          py::gil_scoped_release release;
          text = to_json(census(t, make_range(samples, seed), workers));
        }
        return parse_json(text);
      },
      py::arg("table"), py::arg("samples") = py::none(), py::arg("seed") = 0,
      py::arg("workers") = 0);
  m.def(
      "remap",
      [](const NodeTable& before, const NodeTable& after, std::optional<std::uint64_t> samples,
         std::uint64_t seed, unsigned workers) {
        std::string text;
        {
          py::gil_scoped_release release;
          text = to_json(remap_matrix(before, after, make_range(samples, seed), workers));
        }
        return parse_json(text);
      },
      py::arg("before"), py::arg("after"), py::arg("samples") = py::none(), py::arg("seed") = 0,
      py::arg("workers") = 0);
  m.def(
      "survival",
      [](std::uint64_t n, std::uint64_t m) { return parse_json(to_json(simple_mod_survival(n, m))); },
      py::arg("n"), py::arg("m") = 1);
  m.def(
      "ring_median_mean",
      [](std::size_t points, std::size_t trials, std::uint64_t seed, unsigned workers) {
        MedianMeanStats s;
        {
          py::gil_scoped_release release;
          s = ring_median_mean(points, trials, seed, workers);
        }
        py::dict out;
        out["pooled_ratio"] = s.pooled_ratio;
        out["per_trial_ratio"] = s.per_trial_ratio;
        return out;
      },
      py::arg("points"), py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("workers") = 0);
  m.def(
      "ring_spread",
      [](std::size_t nodes, std::size_t replicas, std::size_t trials, std::uint64_t seed,
         unsigned workers) {
        SpreadStats s;
        {
          py::gil_scoped_release release;
          s = ring_spread_stats(nodes, replicas, trials, seed, workers);
        }
        py::dict out;
        out["mean_min_ratio"] = s.mean_min_ratio;
        out["mean_min_stderr"] = s.mean_min_stderr;
        out["max_mean_ratio"] = s.max_mean_ratio;
        out["max_mean_stderr"] = s.max_mean_stderr;
        return out;
      },
      py::arg("nodes"), py::arg("replicas"), py::arg("trials") = 1000, py::arg("seed") = 0,
      py::arg("workers") = 0);
}
