#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umtk/decomposition.hpp"
#include "umtk/errors.hpp"
#include "umtk/families.hpp"
#include "umtk/generators.hpp"
#include "umtk/io.hpp"
#include "umtk/report.hpp"
#include "umtk/spaces.hpp"
#include "umtk/theorems.hpp"
#include "umtk/transform.hpp"

// JSON-string surface: every function takes and returns the same JSON shapes
// the CLI reads and writes, so the python layer stays format-identical with
// the file formats. The python package wraps the strings into dicts.

namespace py = pybind11;

namespace {

using namespace umtk;

std::string dump(const report::json& j) { return j.dump(); }

PrecisionPolicy policy_of(unsigned precision, unsigned max_bits) {
  PrecisionPolicy p;
  p.target_width_log2 = precision;
  p.max_bits = max_bits;
  return p;
}

FunctionClass function_class_of(const std::string& name) {
  if (name == "increasing_amenable") return FunctionClass::increasing_amenable;
  if (name == "increasing_zero_at_zero") return FunctionClass::increasing_zero_at_zero;
  if (name == "amenable_doubling") return FunctionClass::amenable_doubling;
  if (name == "amenable_non_doubling") return FunctionClass::amenable_non_doubling;
  if (name == "non_increasing") return FunctionClass::non_increasing;
  if (name == "non_amenable") return FunctionClass::non_amenable;
  if (name == "unconstrained") return FunctionClass::unconstrained;
  throw input_error("unknown function class \"" + name + "\"");
}

GenSpec spec_of(std::uint64_t seed, std::size_t n, unsigned long max_num,
                unsigned long max_den) {
  GenSpec s;
  s.seed = seed;
  s.n = n;
  s.pool.max_numerator = max_num;
  s.pool.max_denominator = max_den;
  return s;
}

}  // namespace

PYBIND11_MODULE(_umtk, m) {
  m.doc() = "Exact decision procedures for ultrametric-preserving transforms";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<undecided_error>(m, "UndecidedError", PyExc_ArithmeticError);
  py::register_exception<internal_error>(m, "InternalError", PyExc_RuntimeError);

  m.def("classify_space", [](const std::string& matrix) {
    return dump(report::to_json(classify_space(io::parse_matrix(matrix))));
  });

  m.def("classify_function", [](const std::string& fn) {
    return dump(report::to_json(classify_function(io::parse_function_json(fn))));
  });

  m.def("evaluate", [](const std::string& fn, const std::string& t, unsigned precision,
                       unsigned max_bits) {
    TransformFunction f = io::parse_function_json(fn);
    Enclosure e = f.evaluate(Rational::parse(t), policy_of(precision, max_bits));
    return dump(report::to_json(e));
  }, py::arg("fn"), py::arg("t"), py::arg("precision") = 60, py::arg("max_bits") = 4096);

  m.def("transform", [](const std::string& matrix, const std::string& fn) {
    Dissimilarity t = apply(io::parse_function_json(fn), io::parse_matrix(matrix));
    report::json out;
    out["transformed"] = io::matrix_to_json(t);
    out["classification"] = report::to_json(classify_space(t));
    return dump(out);
  });

  m.def("dual_witness", [](const std::string& matrix) -> std::optional<std::string> {
    auto w = dual_witness(io::parse_matrix(matrix));
    if (!w) return std::nullopt;
    return dump(report::to_json(*w));
  });

  m.def("probe_fab", [](const std::string& matrix) {
    return dump(report::to_json(probe_fab(io::parse_matrix(matrix))));
  });

  m.def("probe_snowflake", [](const std::string& matrix, const std::string& alpha,
                              unsigned precision, unsigned max_bits) {
    return dump(report::to_json(probe_snowflake(io::parse_matrix(matrix),
                                                Rational::parse(alpha),
                                                policy_of(precision, max_bits))));
  }, py::arg("matrix"), py::arg("alpha"), py::arg("precision") = 60,
     py::arg("max_bits") = 4096);

  m.def("min_falsifying_exponent", [](const std::string& matrix, const std::string& tolerance,
                                      unsigned precision, unsigned max_bits)
            -> std::optional<std::string> {
    auto c = min_falsifying_exponent(io::parse_matrix(matrix), Rational::parse(tolerance),
                                     policy_of(precision, max_bits));
    if (!c) return std::nullopt;
    return dump(report::to_json(*c));
  }, py::arg("matrix"), py::arg("tolerance") = std::string("1/1073741824"),
     py::arg("precision") = 60, py::arg("max_bits") = 4096);

  m.def("decompose", [](const std::string& matrix) {
    return dump(report::to_json(decompose(io::parse_matrix(matrix))));
  });

  m.def("zero_gap_radius", [](const std::string& matrix, const std::string& fn)
            -> std::optional<std::string> {
    auto z = zero_gap_radius(io::parse_matrix(matrix), io::parse_function_json(fn));
    if (!z) return std::nullopt;
    return dump(report::to_json(*z));
  });

  m.def("find_separator", [](const std::string& family, const std::string& t1,
                             const std::string& t2, const std::string& k,
                             unsigned precision, unsigned max_bits)
            -> std::optional<std::size_t> {
    return find_separator(io::parse_family_json(family), Rational::parse(t1),
                          Rational::parse(t2), Rational::parse(k),
                          policy_of(precision, max_bits));
  }, py::arg("family"), py::arg("t1"), py::arg("t2"), py::arg("k") = std::string("2"),
     py::arg("precision") = 60, py::arg("max_bits") = 4096);

  m.def("power_separator_exponent", [](const std::string& t1, const std::string& t2,
                                       const std::string& k, unsigned precision,
                                       unsigned max_bits) {
    return power_separator_exponent(Rational::parse(t1), Rational::parse(t2),
                                    Rational::parse(k), policy_of(precision, max_bits))
        .to_string();
  }, py::arg("t1"), py::arg("t2"), py::arg("k") = std::string("2"),
     py::arg("precision") = 60, py::arg("max_bits") = 4096);

  m.def("is_k_separating_on", [](const std::string& family, const std::string& k,
                                 const std::vector<std::pair<std::string, std::string>>& pairs,
                                 unsigned precision, unsigned max_bits) {
    std::vector<std::pair<Rational, Rational>> ps;
    ps.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      ps.emplace_back(Rational::parse(a), Rational::parse(b));
    }
    return dump(report::to_json(is_k_separating_on(io::parse_family_json(family),
                                                   Rational::parse(k), ps,
                                                   policy_of(precision, max_bits))));
  }, py::arg("family"), py::arg("k"), py::arg("pairs"), py::arg("precision") = 60,
     py::arg("max_bits") = 4096);

  m.def("counterexample_space", [](const std::string& family, const std::string& t1,
                                   const std::string& t2, unsigned precision,
                                   unsigned max_bits) {
    return dump(report::to_json(counterexample_space(io::parse_family_json(family),
                                                     Rational::parse(t1), Rational::parse(t2),
                                                     policy_of(precision, max_bits))));
  }, py::arg("family"), py::arg("t1"), py::arg("t2"), py::arg("precision") = 60,
     py::arg("max_bits") = 4096);

  m.def("ultrametric_by_family", [](const std::string& family, const std::string& matrix,
                                    bool certified_2_separating, unsigned precision,
                                    unsigned max_bits) {
    return dump(report::to_json(ultrametric_by_family(io::parse_family_json(family),
                                                      io::parse_matrix(matrix),
                                                      certified_2_separating,
                                                      policy_of(precision, max_bits))));
  }, py::arg("family"), py::arg("matrix"), py::arg("certified_2_separating") = false,
     py::arg("precision") = 60, py::arg("max_bits") = 4096);

  m.def("gen_ultrametric", [](std::uint64_t seed, std::size_t n, unsigned long max_num,
                              unsigned long max_den) {
    return dump(io::matrix_to_json(gen_ultrametric(spec_of(seed, n, max_num, max_den))));
  }, py::arg("seed"), py::arg("n"), py::arg("max_num") = 12, py::arg("max_den") = 4);

  m.def("gen_metric", [](std::uint64_t seed, std::size_t n, unsigned long max_num,
                         unsigned long max_den) {
    GeneratedMetric g = gen_metric(spec_of(seed, n, max_num, max_den));
    report::json out;
    out["space"] = io::matrix_to_json(g.space);
    out["ultrametric"] = g.ultrametric;
    return dump(out);
  }, py::arg("seed"), py::arg("n"), py::arg("max_num") = 12, py::arg("max_den") = 4);

  m.def("gen_pseudoultrametric", [](std::uint64_t seed, std::size_t n,
                                    const std::string& zero_fraction, unsigned long max_num,
                                    unsigned long max_den) {
    return dump(io::matrix_to_json(gen_pseudoultrametric(
        spec_of(seed, n, max_num, max_den), Rational::parse(zero_fraction))));
  }, py::arg("seed"), py::arg("n"), py::arg("zero_fraction") = std::string("1/2"),
     py::arg("max_num") = 12, py::arg("max_den") = 4);

  m.def("gen_function", [](std::uint64_t seed, const std::string& cls, unsigned long max_num,
                           unsigned long max_den) {
    return dump(io::function_to_json(
        gen_function(spec_of(seed, 1, max_num, max_den), function_class_of(cls))));
  }, py::arg("seed"), py::arg("cls"), py::arg("max_num") = 12, py::arg("max_den") = 4);
}
