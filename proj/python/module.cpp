// Python bindings. Bytes cross the boundary as `bytes`; numeric results come
// back as plain floats, lists and dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <string>

#include "bexp/beach.hpp"
#include "bexp/dynamics.hpp"
#include "bexp/error.hpp"
#include "bexp/map.hpp"
#include "bexp/stats.hpp"

namespace py = pybind11;
using namespace bexp;

namespace {

std::span<const std::uint8_t> as_span(const py::bytes& b) {
  const std::string_view v = b;
  return {reinterpret_cast<const std::uint8_t*>(v.data()), v.size()};
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return {reinterpret_cast<const char*>(v.data()), v.size()};
}

WordSize word_size(int bits) {
  if (bits == 1) return WordSize::Bit;
  if (bits == 8) return WordSize::Byte;
  throw DomainError("word size must be 1 or 8 bits");
}

py::dict report_dict(const EntReport& r) {
  py::dict d;
  d["word_bits"] = static_cast<unsigned>(r.word_size);
  d["n_words"] = r.n_words;
  d["entropy"] = r.entropy_per_word;
  d["chi_square"] = r.chi_square_stat;
  d["chi_square_pct"] = r.chi_square_pct;
  d["chi_square_reliable"] = r.chi_square_reliable;
  d["mean"] = r.mean;
  d["pi_estimate"] = r.pi_estimate;
  d["pi_error_pct"] = r.pi_error_pct;
  d["serial_correlation"] = r.serial_correlation ? py::cast(*r.serial_correlation) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = "0.1.0";

  // std::invalid_argument already maps to ValueError; the rest get their own types.
  static py::exception<NumericFault> numeric_fault(m, "NumericFault", PyExc_ArithmeticError);
  static py::exception<OrbitEscaped> orbit_escaped(m, "OrbitEscaped", PyExc_RuntimeError);
  static py::exception<DegenerateOrbit> degenerate(m, "DegenerateOrbit", PyExc_RuntimeError);
  static py::exception<UndefinedStatistic> undefined(m, "UndefinedStatistic", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericFault& e) {
      numeric_fault(e.what());
    } catch (const OrbitEscaped& e) {
      orbit_escaped(e.what());
    } catch (const DegenerateOrbit& e) {
      degenerate(e.what());
    } catch (const UndefinedStatistic& e) {
      undefined(e.what());
    }
  });

  m.attr("CHAOS_THRESHOLD") = chaos_threshold();

  m.def("gl", [](double b, double x) { return gl(MapParam(b), UnitInterval(x)).value(); }, py::arg("b"),
        py::arg("x"), "GL(B, x) on [0,1].");
  m.def("gl_derivative", [](double b, double x, int order) { return gl_derivative(MapParam(b), UnitInterval(x), order); },
        py::arg("b"), py::arg("x"), py::arg("order") = 1);
  m.def("numerator", [](double b, double x) { return numerator(b, UnitInterval(x)); }, py::arg("b"), py::arg("x"),
        "Unnormalized numerator map B - xB^x - (1-x)B^(1-x).");
  m.def("conjugacy", [](double x) { return conjugacy(UnitInterval(x)).value(); }, py::arg("x"));
  m.def("conjugacy_inverse", [](double y) { return conjugacy_inverse(UnitInterval(y)).value(); }, py::arg("y"));
  m.def("tent_generalized", [](double b, double x) { return tent_generalized(MapParam(b), UnitInterval(x)).value(); },
        py::arg("b"), py::arg("x"));

  m.def(
      "orbit",
      [](double b, double x0, std::size_t length, std::size_t transient, const std::string& map) {
        return orbit(parse_map_kind(map), b, x0, length, transient).values;
      },
      py::arg("b"), py::arg("x0"), py::arg("length"), py::arg("transient") = 0, py::arg("map") = "gl");
  m.def(
      "lyapunov",
      [](double b, double x0, std::size_t iterations, std::size_t transient) {
        return lyapunov(b, x0, iterations, transient).lambda;
      },
      py::arg("b"), py::arg("x0") = 0.3, py::arg("iterations") = kDefaultLyapunovIterations,
      py::arg("transient") = kDefaultTransient);
  m.def("schwarzian", &schwarzian, py::arg("b"), py::arg("x"));
  m.def(
      "bifurcation_scan",
      [](double b_start, double b_end, std::size_t b_steps, const std::string& map, std::size_t transient,
         std::size_t keep, double x0) {
        py::list out;
        for (const auto& p : bifurcation_scan(b_start, b_end, b_steps, {parse_map_kind(map), transient, keep, x0})) {
          out.append(py::make_tuple(p.b, p.attractor_samples, p.escaped));
        }
        return out;
      },
      py::arg("b_start"), py::arg("b_end"), py::arg("b_steps"), py::arg("map") = "gl",
      py::arg("transient") = kDefaultTransient, py::arg("keep") = kDefaultKeep, py::arg("x0") = 0.3,
      "List of (b, samples, escaped) tuples.");
  m.def(
      "return_map",
      [](double b, double x0, std::size_t k, std::size_t count, std::size_t transient) {
        std::vector<std::pair<double, double>> out;
        for (const auto& pr : return_map(b, x0, k, count, transient)) out.emplace_back(pr.x, pr.x_after_k);
        return out;
      },
      py::arg("b"), py::arg("x0"), py::arg("k"), py::arg("count"), py::arg("transient") = kDefaultTransient);
  m.def(
      "symbolic_transitions",
      [](double b, double x0, std::size_t length) {
        const auto t = symbolic_transitions(b, x0, length);
        return std::vector<std::vector<bool>>{{t[0][0], t[0][1]}, {t[1][0], t[1][1]}};
      },
      py::arg("b"), py::arg("x0"), py::arg("length"));

  py::class_<Beach>(m, "Beach")
      .def(py::init([](double seed, unsigned r, double blimit, double eps, unsigned bits_per_block) {
             return Beach(BeachConfig{seed, r, blimit, eps, bits_per_block});
           }),
           py::arg("seed"), py::arg("r") = 20, py::arg("blimit") = 10000.0, py::arg("eps") = 1e-10,
           py::arg("bits_per_block") = 32)
      .def("next_block", &Beach::next_block)
      .def("bits", [](Beach& g, std::size_t n) { return to_bytes(g.fill_bits(n)); }, py::arg("n_bits"),
           "One byte (0 or 1) per bit.")
      .def("bytes", [](Beach& g, std::size_t n) { return to_bytes(g.fill_bytes(n)); }, py::arg("n_bits"),
           "Packed MSB-first bytes.")
      .def("snapshot", &Beach::snapshot)
      .def_static("from_snapshot", [](const std::string& s) { return Beach::from_snapshot(s); })
      .def_property_readonly("blocks_emitted", [](const Beach& g) { return g.state().blocks_emitted; });

  m.def("entropy", [](const py::bytes& d, int w) { return shannon_entropy(as_span(d), word_size(w)); },
        py::arg("data"), py::arg("word_bits") = 8);
  m.def(
      "chi_square",
      [](const py::bytes& d, int w) {
        const auto c = chi_square(as_span(d), word_size(w));
        return py::make_tuple(c.statistic, c.percent);
      },
      py::arg("data"), py::arg("word_bits") = 8, "(statistic, exceedance percent)");
  m.def("mean", [](const py::bytes& d, int w) { return arithmetic_mean(as_span(d), word_size(w)); }, py::arg("data"),
        py::arg("word_bits") = 8);
  m.def("monte_carlo_pi", [](const py::bytes& d) { return monte_carlo_pi(as_span(d)).estimate; }, py::arg("data"));
  m.def("serial_correlation", [](const py::bytes& d, int w) { return serial_correlation(as_span(d), word_size(w)); },
        py::arg("data"), py::arg("word_bits") = 8);
  m.def(
      "battery",
      [](const py::bytes& d) {
        const auto r = run_battery(as_span(d));
        py::dict out;
        out["bits"] = report_dict(r.bits);
        out["bytes"] = report_dict(r.bytes);
        py::dict checks;
        for (const auto& c : check_desk_thresholds(r.bits)) checks[py::str(c.name)] = c.passed;
        out["checks"] = checks;
        return out;
      },
      py::arg("data"), "Both ENT reports plus the desk threshold checks on the bit report.");
}
