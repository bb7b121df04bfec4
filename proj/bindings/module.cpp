#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quadorder/arith.hpp"
#include "quadorder/classify.hpp"
#include "quadorder/errors.hpp"
#include "quadorder/laorder.hpp"
#include "quadorder/pell.hpp"
#include "quadorder/quadfield.hpp"
#include "quadorder/tables.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace quadorder;

namespace pybind11 {
namespace detail {

// mpz_class <-> python int, routed through decimal strings so magnitude is
// never truncated.
template <>
struct type_caster<mpz_class> {
 public:
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    object as_str = reinterpret_steal<object>(PyObject_Str(src.ptr()));
    if (!as_str) return false;
    try {
      value = mpz_class{std::string(str(as_str))};
    } catch (const std::invalid_argument&) {
      return false;
    }
    return true;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};

}  // namespace detail
}  // namespace pybind11

namespace {

PrimeFactorization factors_from_list(
    const std::vector<std::pair<std::uint64_t, unsigned>>& factors) {
  PrimeFactorization nf;
  nf.factors = factors;
  return nf;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "locally associated orders in real quadratic fields";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError",
                                        PyExc_OverflowError);
  py::register_exception<ParseError>(m, "CacheParseError", PyExc_ValueError);

  py::class_<PrimeFactorization>(m, "PrimeFactorization")
      .def(py::init(&factors_from_list), "factors"_a)
      .def_readonly("factors", &PrimeFactorization::factors)
      .def("value", &PrimeFactorization::value)
      .def("__repr__", [](const PrimeFactorization& f) {
        return "PrimeFactorization(" + f.value().get_str() + ")";
      });

  m.def("is_prime", &is_prime, "n"_a);
  m.def(
      "factorize",
      [](const mpz_class& n) { return factorize(n); },
      "n"_a);
  m.def("legendre", &legendre, "a"_a, "p"_a);
  m.def("divisors_ascending", &divisors_ascending, "f"_a);
  m.def("binom_mod", &binom_mod, "n"_a, "k"_a, "q"_a);

  py::class_<FieldDesc>(m, "FieldDesc")
      .def_readonly("d", &FieldDesc::d)
      .def_readonly("half_basis", &FieldDesc::half_basis)
      .def_readonly("trace_coeff", &FieldDesc::trace_coeff)
      .def_readonly("const_coeff", &FieldDesc::const_coeff)
      .def("__repr__", [](const FieldDesc& f) {
        return "FieldDesc(d=" + std::to_string(f.d) + ")";
      });
  m.def("make_field", &make_field, "d"_a);

  py::class_<QuadInt>(m, "QuadInt")
      .def(py::init([](const FieldDesc& f, const mpz_class& x,
                       const mpz_class& y) { return QuadInt{f, x, y}; }),
           "field"_a, "x"_a, "y"_a)
      .def_readonly("field", &QuadInt::field)
      .def_readonly("x", &QuadInt::x)
      .def_readonly("y", &QuadInt::y)
      .def("__mul__",
           [](const QuadInt& a, const QuadInt& b) { return mul(a, b); })
      .def("__pow__",
           [](const QuadInt& a, const mpz_class& k) { return pow(a, k); })
      .def("__repr__", [](const QuadInt& v) {
        return "QuadInt(d=" + std::to_string(v.field.d) + ", x=" +
               v.x.get_str() + ", y=" + v.y.get_str() + ")";
      });
  m.def("norm", &norm, "v"_a);
  m.def("half_sqrt_coords", &half_sqrt_coords, "v"_a);
  m.def("integral_sqrt_coords", &integral_sqrt_coords, "v"_a);

  py::class_<ModQuadInt>(m, "ModQuadInt")
      .def_readonly("field", &ModQuadInt::field)
      .def_readonly("modulus", &ModQuadInt::modulus)
      .def_readonly("x", &ModQuadInt::x)
      .def_readonly("y", &ModQuadInt::y)
      .def("__mul__",
           [](const ModQuadInt& a, const ModQuadInt& b) { return mul(a, b); })
      .def("__repr__", [](const ModQuadInt& v) {
        return "ModQuadInt(d=" + std::to_string(v.field.d) + ", mod=" +
               v.modulus.get_str() + ", x=" + v.x.get_str() + ", y=" +
               v.y.get_str() + ")";
      });
  m.def("reduce", &reduce, "v"_a, "modulus"_a);
  m.def("pow_mod", &pow_mod, "base"_a, "exponent"_a, "modulus"_a);
  m.def(
      "fundamental_unit",
      [](const FieldDesc& f) { return fundamental_unit(f); },
      "f"_a, py::return_value_policy::copy);

  py::class_<MinPowerResult>(m, "MinPowerResult")
      .def_readonly("n", &MinPowerResult::n)
      .def_readonly("d", &MinPowerResult::d)
      .def_readonly("l_value", &MinPowerResult::l_value)
      .def_readonly("m", &MinPowerResult::m)
      .def_readonly("locally_associated",
                    &MinPowerResult::locally_associated)
      .def("__repr__", [](const MinPowerResult& r) {
        return "MinPowerResult(n=" + r.n.get_str() + ", d=" +
               std::to_string(r.d) + ", m=" + r.m.get_str() + ", L=" +
               r.l_value.get_str() + ")";
      });

  // Pre-factored overloads come first so PrimeFactorization arguments are not
  // swallowed by an int conversion attempt.
  m.def(
      "l_function",
      [](const PrimeFactorization& nf, std::int64_t d) {
        return l_function(nf, d);
      },
      "n"_a, "d"_a);
  m.def(
      "l_function",
      [](const mpz_class& n, std::int64_t d) { return l_function(n, d); },
      "n"_a, "d"_a);
  m.def(
      "minimal_unit_power",
      [](const PrimeFactorization& nf, std::int64_t d) {
        return minimal_unit_power(nf, d);
      },
      "n"_a, "d"_a);
  m.def(
      "minimal_unit_power",
      [](const mpz_class& n, std::int64_t d) {
        return minimal_unit_power(n, d);
      },
      "n"_a, "d"_a);
  m.def(
      "is_locally_associated_direct",
      [](const PrimeFactorization& nf, std::int64_t d) {
        return is_locally_associated_direct(nf, d);
      },
      "n"_a, "d"_a);
  m.def(
      "is_locally_associated_direct",
      [](const mpz_class& n, std::int64_t d) {
        return is_locally_associated_direct(n, d);
      },
      "n"_a, "d"_a);

  py::enum_<RuleTag>(m, "RuleTag")
      .value("Case1", RuleTag::Case1)
      .value("Case2", RuleTag::Case2)
      .value("Case3", RuleTag::Case3)
      .value("Case4", RuleTag::Case4)
      .value("Case5", RuleTag::Case5)
      .value("Case6", RuleTag::Case6)
      .value("Case7", RuleTag::Case7)
      .value("Case8", RuleTag::Case8)
      .value("Case9", RuleTag::Case9)
      .value("TrivialL1", RuleTag::TrivialL1)
      .value("Towers", RuleTag::Towers)
      .value("CoprimeCombiner", RuleTag::CoprimeCombiner)
      .value("DirectBaseCase", RuleTag::DirectBaseCase)
      .value("Undetermined1", RuleTag::Undetermined1)
      .value("Undetermined2", RuleTag::Undetermined2)
      .value("Undetermined3", RuleTag::Undetermined3);
  m.def("rule_name",
        [](RuleTag t) { return std::string(rule_name(t)); });

  py::class_<TraceEntry>(m, "TraceEntry")
      .def_readonly("subindex", &TraceEntry::subindex)
      .def_readonly("rule", &TraceEntry::rule)
      .def_readonly("outcome", &TraceEntry::outcome);
  py::class_<DirectComputation>(m, "DirectComputation")
      .def_readonly("subindex", &DirectComputation::subindex)
      .def_readonly("m", &DirectComputation::m)
      .def_readonly("l_value", &DirectComputation::l_value);
  py::class_<Classification>(m, "Classification")
      .def_readonly("n", &Classification::n)
      .def_readonly("d", &Classification::d)
      .def_readonly("verdict", &Classification::verdict)
      .def_readonly("trace", &Classification::trace)
      .def_readonly("direct", &Classification::direct)
      .def("to_json", &to_json_string)
      .def("__repr__", [](const Classification& c) {
        return "Classification(n=" + c.n.get_str() + ", d=" +
               std::to_string(c.d) + ", verdict=" +
               (c.verdict ? "True" : "False") + ")";
      });

  m.def(
      "classify",
      [](const PrimeFactorization& nf, std::int64_t p) {
        return classify(nf, p);
      },
      "n"_a, "p"_a);
  m.def(
      "classify",
      [](const mpz_class& n, std::int64_t p) { return classify(n, p); },
      "n"_a, "p"_a);
  m.def(
      "classify_general",
      [](const mpz_class& n, std::int64_t d) {
        return classify_general(n, d);
      },
      "n"_a, "d"_a);
  m.def("classify_prime_power",
        [](std::uint64_t q, unsigned k, std::int64_t p) {
          auto v = classify_prime_power(q, k, p);
          return py::make_tuple(v.locally_associated, v.rule, v.oracle);
        },
        "q"_a, "k"_a, "p"_a);
  m.def("cross_validate", &cross_validate, "n"_a, "p"_a);

  py::class_<PellSolution>(m, "PellSolution")
      .def_readonly("p", &PellSolution::p)
      .def_readonly("x", &PellSolution::x)
      .def_readonly("y", &PellSolution::y)
      .def("__repr__", [](const PellSolution& s) {
        return "PellSolution(p=" + std::to_string(s.p) + ", x=" +
               s.x.get_str() + ", y=" + s.y.get_str() + ")";
      });
  m.def("pell_min_solution", &pell_min_solution, "p"_a);
  m.def("conjecture_check", &conjecture_check, "p"_a);
  m.def("theorem41_check", &theorem41_check, "p"_a);

  py::class_<ConjectureEntry>(m, "ConjectureEntry")
      .def_readonly("p", &ConjectureEntry::p)
      .def_readonly("holds", &ConjectureEntry::holds)
      .def_readonly("solution", &ConjectureEntry::solution);
  m.def(
      "conjecture_scan",
      [](std::uint64_t p_max) { return conjecture_scan(p_max); },
      "p_max"_a);

  py::class_<TableRow>(m, "TableRow")
      .def_readonly("d", &TableRow::d)
      .def_readonly("n", &TableRow::n)
      .def_readonly("locally_associated", &TableRow::locally_associated)
      .def_readonly("m", &TableRow::m)
      .def_readonly("l_value", &TableRow::l_value)
      .def_readonly("rules", &TableRow::rules);
  m.def(
      "generate_table",
      [](const std::vector<std::int64_t>& d_values, std::uint64_t n_max) {
        std::vector<TableRow> rows;
        generate_table(d_values, n_max,
                       [&rows](const TableRow& r) { rows.push_back(r); }, 1);
        return rows;
      },
      "d_values"_a, "n_max"_a);

  py::class_<UndeterminedStats>(m, "UndeterminedStats")
      .def_readonly("case_id", &UndeterminedStats::case_id)
      .def_readonly("occurrences", &UndeterminedStats::occurrences)
      .def_readonly("locally_associated",
                    &UndeterminedStats::locally_associated)
      .def_readonly("parameters", &UndeterminedStats::parameters);
  m.def("undetermined_stats", &undetermined_stats, "case_id"_a, "p_max"_a,
        "n_max"_a = 0);

  m.def("save_unit_cache", &save_unit_cache, "path"_a);
  m.def("load_unit_cache", &load_unit_cache, "path"_a);
  m.def("unit_cache_clear", &unit_cache_clear);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
