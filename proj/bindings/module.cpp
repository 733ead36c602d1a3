// Python bindings for the core operations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liouville/averages.hpp"
#include "liouville/normality.hpp"
#include "liouville/patterns.hpp"
#include "liouville/selftest.hpp"
#include "liouville/sieve.hpp"

namespace py = pybind11;
using namespace liouville;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Liouville sign-pattern statistics: sieves, pattern counts, "
              "correlation sums, and digit expansions.";

    py::class_<SieveConfig>(m, "SieveConfig")
        .def(py::init<>())
        .def_readwrite("segment_length", &SieveConfig::segment_length)
        .def_readwrite("worker_count", &SieveConfig::worker_count)
        .def_readwrite("memory_cap_bytes", &SieveConfig::memory_cap_bytes);

    py::class_<SignTable>(m, "SignTable")
        .def_property_readonly("lo", &SignTable::lo)
        .def_property_readonly("hi", &SignTable::hi)
        .def("__len__", &SignTable::size)
        .def("sign", &SignTable::sign, py::arg("n"))
        .def("is_plus", &SignTable::is_plus, py::arg("n"))
        .def("count_plus", &SignTable::count_plus, py::arg("from_n"), py::arg("to_n"))
        .def("covers", &SignTable::covers, py::arg("from_n"), py::arg("to_n"));

    py::class_<MobiusTable>(m, "MobiusTable")
        .def_property_readonly("lo", &MobiusTable::lo)
        .def_property_readonly("hi", &MobiusTable::hi)
        .def("__len__", &MobiusTable::size)
        .def("value", &MobiusTable::value, py::arg("n"))
        .def("covers", &MobiusTable::covers, py::arg("from_n"), py::arg("to_n"));

    m.def("liouville_point", &liouville_point, py::arg("n"));
    m.def("mobius_point", &mobius_point, py::arg("n"));
    m.def("sieve_liouville", &sieve_liouville, py::arg("lo"), py::arg("hi"),
          py::arg("cfg") = SieveConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("sieve_mobius", &sieve_mobius, py::arg("lo"), py::arg("hi"),
          py::arg("cfg") = SieveConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("save_sign_table", &save_sign_table, py::arg("table"), py::arg("path"));
    m.def("load_sign_table", &load_sign_table, py::arg("path"));

    py::class_<SingleCounts>(m, "SingleCounts")
        .def_readonly("n_plus", &SingleCounts::n_plus)
        .def_readonly("n_minus", &SingleCounts::n_minus);

    py::class_<PatternSpec>(m, "PatternSpec")
        .def(py::init([](std::vector<std::uint64_t> offsets, std::vector<int> signs) {
                 PatternSpec spec{std::move(offsets), std::move(signs)};
                 spec.validate();
                 return spec;
             }),
             py::arg("offsets"), py::arg("signs"))
        .def_readonly("offsets", &PatternSpec::offsets)
        .def_readonly("signs", &PatternSpec::signs);

    py::class_<PatternCounts>(m, "PatternCounts")
        .def_readonly("x", &PatternCounts::x)
        .def_readonly("t", &PatternCounts::t)
        .def_readonly("pp", &PatternCounts::pp)
        .def_readonly("pm", &PatternCounts::pm)
        .def_readonly("mp", &PatternCounts::mp)
        .def_readonly("mm", &PatternCounts::mm)
        .def("counted", &PatternCounts::counted)
        .def("autocorr", &PatternCounts::autocorr);

    m.def("count_single", &count_single, py::arg("table"), py::arg("x"));
    m.def("count_double", &count_double, py::arg("table"), py::arg("t"), py::arg("x"));
    m.def("count_k_pattern", &count_k_pattern, py::arg("table"), py::arg("spec"), py::arg("x"));
    m.def("autocorrelation", &autocorrelation, py::arg("table"), py::arg("t"), py::arg("x"));
    m.def("densities", &densities, py::arg("counts"), py::arg("places") = 6);
    m.def("pattern_counts_json", &pattern_counts_json, py::arg("counts"), py::arg("places") = 6);

    py::class_<IntSeries>(m, "IntSeries")
        .def_readonly("checkpoints", &IntSeries::checkpoints)
        .def_readonly("values", &IntSeries::values);
    py::class_<RealSeries>(m, "RealSeries")
        .def_readonly("checkpoints", &RealSeries::checkpoints)
        .def_readonly("values", &RealSeries::values);

    m.def("summatory_liouville", &summatory_liouville, py::arg("table"), py::arg("checkpoints"));
    m.def("mertens", &mertens, py::arg("table"), py::arg("checkpoints"));
    m.def("log_average_liouville", &log_average_liouville, py::arg("table"),
          py::arg("checkpoints"));
    m.def("autocorr_log_average", &autocorr_log_average, py::arg("table"), py::arg("t"),
          py::arg("checkpoints"));
    m.def("twisted_sum", &twisted_sum, py::arg("table"), py::arg("alpha"), py::arg("x"));

    py::class_<TwistedSup>(m, "TwistedSup")
        .def_readonly("alpha", &TwistedSup::alpha)
        .def_readonly("magnitude", &TwistedSup::magnitude);
    m.def("twisted_sup", &twisted_sup, py::arg("table"), py::arg("x"), py::arg("grid_size"));

    m.def(
        "reference_curve",
        [](const std::string& kind, double x, double c, double epsilon) {
            ReferenceCurve curve;
            curve.kind = curve_kind_from_name(kind);
            curve.c = c;
            curve.epsilon = epsilon;
            return curve(x);
        },
        py::arg("kind"), py::arg("x"), py::arg("c") = 1.0, py::arg("epsilon") = 0.05);

    py::enum_<DigitMode>(m, "DigitMode")
        .value("overlapping", DigitMode::overlapping)
        .value("paired", DigitMode::paired);

    py::class_<DigitStream>(m, "DigitStream")
        .def_readonly("base", &DigitStream::base)
        .def_readonly("mode", &DigitStream::mode)
        .def_readonly("start_n", &DigitStream::start_n)
        .def_readonly("digits", &DigitStream::digits);

    py::class_<PrecisionSpec>(m, "PrecisionSpec")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("decimal_digits"),
             py::arg("guard_bits") = 64)
        .def_readwrite("decimal_digits", &PrecisionSpec::decimal_digits)
        .def_readwrite("guard_bits", &PrecisionSpec::guard_bits);

    py::class_<FrequencyReport>(m, "FrequencyReport")
        .def_readonly("base", &FrequencyReport::base)
        .def_readonly("sample_size", &FrequencyReport::sample_size)
        .def_readonly("counts", &FrequencyReport::counts)
        .def_readonly("chi_square", &FrequencyReport::chi_square)
        .def_readonly("dof", &FrequencyReport::dof);

    py::class_<NormalityEntry>(m, "NormalityEntry")
        .def_readonly("base", &NormalityEntry::base)
        .def_readonly("mode", &NormalityEntry::mode)
        .def_readonly("freq", &NormalityEntry::freq)
        .def_readonly("critical_95", &NormalityEntry::critical_95)
        .def_readonly("pass_", &NormalityEntry::pass);

    py::class_<NormalityReport>(m, "NormalityReport")
        .def_readonly("x", &NormalityReport::x)
        .def_readonly("entries", &NormalityReport::entries);

    m.def("bit_stream", &bit_stream, py::arg("table"), py::arg("n_max"));
    m.def("base4_digits", &base4_digits, py::arg("table"), py::arg("mode"), py::arg("count"));
    m.def("base2k_digits", &base2k_digits, py::arg("table"), py::arg("k"), py::arg("mode"),
          py::arg("count"));
    m.def("constant_bits_required", &constant_bits_required, py::arg("spec"));
    m.def("evaluate_constant", &evaluate_constant, py::arg("table"), py::arg("spec"));
    m.def("digit_frequencies", &digit_frequencies, py::arg("stream"));
    m.def("chi_square_critical_95", &chi_square_critical_95, py::arg("dof"));
    m.def("normality_report", &normality_report, py::arg("table"), py::arg("bases"),
          py::arg("modes"), py::arg("x"));
    m.def("digits_coverage_required", &digits_coverage_required, py::arg("k"), py::arg("mode"),
          py::arg("count"));

    m.def("run_selftest", [](bool inject_fault) {
        py::list out;
        for (const auto& check : run_selftest(inject_fault))
            out.append(py::make_tuple(check.name, check.pass, check.detail));
        return out;
    }, py::arg("inject_fault") = false);

    m.attr("ZETA_HALF") = kZetaHalf;
    m.attr("__version__") = "0.1.0";
}
