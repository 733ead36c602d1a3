// Command-line front end: sieving, sign-pattern counts, correlation and
// summatory sums, digit statistics, and the built-in selftest suite.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "liouville/averages.hpp"
#include "liouville/normality.hpp"
#include "liouville/patterns.hpp"
#include "liouville/selftest.hpp"
#include "liouville/sieve.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::ordered_json;
using namespace liouville;

struct CommonOpts {
    std::string format = "text";
    unsigned workers = 0;  // 0 = auto
    std::uint64_t segment_length = std::uint64_t{1} << 22;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--workers", opts.workers,
                    "Sieve worker threads (0 = number of cores, capped at 8)");
    cmd->add_option("--segment-length", opts.segment_length, "Sieve segment length in entries")
        ->capture_default_str();
    cmd->add_option("-o,--out", opts.out_path, "Write output to this file instead of stdout");
}

SieveConfig make_config(const CommonOpts& opts) {
    SieveConfig cfg;
    cfg.segment_length = opts.segment_length;
    if (opts.workers == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        cfg.worker_count = hw == 0 ? 1 : std::min(hw, 8u);
    } else {
        cfg.worker_count = opts.workers;
    }
    return cfg;
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + opts.out_path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + opts.out_path);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad checkpoint: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("no checkpoints given");
    return out;
}

// --- sieve ---------------------------------------------------------------

struct SieveArgs {
    CommonOpts common;
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    bool mobius = false;
    std::string dump_path;
};

int run_sieve(const SieveArgs& args) {
    const SieveConfig cfg = make_config(args.common);
    if (args.mobius) {
        if (!args.dump_path.empty())
            throw std::invalid_argument("--dump applies to the Liouville table only");
        const MobiusTable table = sieve_mobius(args.lo, args.hi, cfg);
        std::uint64_t plus = 0, zero = 0, minus = 0;
        std::int64_t m = 0;
        for (std::uint64_t n = table.lo(); n <= table.hi(); ++n) {
            const int v = table.value(n);
            m += v;
            (v == 0 ? zero : (v > 0 ? plus : minus))++;
        }
        if (args.common.format == "json") {
            ordered_json doc;
            doc["function"] = "mobius";
            doc["lo"] = table.lo();
            doc["hi"] = table.hi();
            doc["plus"] = plus;
            doc["zero"] = zero;
            doc["minus"] = minus;
            doc["sum"] = m;
            emit(args.common, doc.dump(2) + "\n");
        } else {
            std::ostringstream out;
            out << "mobius table [" << table.lo() << ", " << table.hi() << "]\n"
                << "plus " << plus << "\nzero " << zero << "\nminus " << minus << "\nsum " << m
                << "\n";
            emit(args.common, out.str());
        }
        return 0;
    }

    const SignTable table = sieve_liouville(args.lo, args.hi, cfg);
    if (!args.dump_path.empty()) save_sign_table(table, args.dump_path);
    const std::uint64_t plus = table.count_plus(table.lo(), table.hi());
    const std::uint64_t minus = table.size() - plus;
    if (args.common.format == "json") {
        ordered_json doc;
        doc["function"] = "liouville";
        doc["lo"] = table.lo();
        doc["hi"] = table.hi();
        doc["plus"] = plus;
        doc["minus"] = minus;
        if (table.lo() == 1)
            doc["summatory"] = static_cast<std::int64_t>(plus) - static_cast<std::int64_t>(minus);
        if (!args.dump_path.empty()) doc["dump"] = args.dump_path;
        emit(args.common, doc.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "liouville table [" << table.lo() << ", " << table.hi() << "]\n"
            << "plus " << plus << "\nminus " << minus << "\n";
        if (table.lo() == 1)
            out << "summatory "
                << static_cast<std::int64_t>(plus) - static_cast<std::int64_t>(minus) << "\n";
        emit(args.common, out.str());
    }
    return 0;
}

// --- patterns ------------------------------------------------------------

struct PatternsArgs {
    CommonOpts common;
    std::uint64_t x = 0;
    std::int64_t t = 1;
    int places = 6;
    std::string offsets_csv;
    std::string signs_csv;
};

PatternSpec parse_pattern_spec(const std::string& offsets_csv, const std::string& signs_csv) {
    PatternSpec spec;
    for (const std::uint64_t a : parse_checkpoints(offsets_csv)) spec.offsets.push_back(a);
    std::stringstream stream(signs_csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item == "+" || item == "+1")
            spec.signs.push_back(1);
        else if (item == "-" || item == "-1")
            spec.signs.push_back(-1);
        else
            throw std::invalid_argument("bad sign (use + or -): " + item);
    }
    spec.validate();
    return spec;
}

int run_patterns(const PatternsArgs& args) {
    const SieveConfig cfg = make_config(args.common);
    if (!args.offsets_csv.empty() || !args.signs_csv.empty()) {
        if (args.offsets_csv.empty() || args.signs_csv.empty())
            throw std::invalid_argument("--offsets and --signs must be given together");
        const PatternSpec spec = parse_pattern_spec(args.offsets_csv, args.signs_csv);
        const SignTable table = sieve_liouville(1, args.x + spec.max_offset(), cfg);
        const std::uint64_t count = count_k_pattern(table, spec, args.x);
        const std::string density = decimal_ratio(count, args.x, args.places);
        if (args.common.format == "json") {
            ordered_json doc;
            doc["x"] = args.x;
            doc["offsets"] = spec.offsets;
            doc["signs"] = spec.signs;
            doc["count"] = count;
            doc["density"] = density;
            emit(args.common, doc.dump(2) + "\n");
        } else if (args.common.format == "csv") {
            emit(args.common, "count,density\n" + std::to_string(count) + "," + density + "\n");
        } else {
            emit(args.common,
                 "count " + std::to_string(count) + "\ndensity " + density + "\n");
        }
        return 0;
    }

    const std::uint64_t hi = args.x + (args.t > 0 ? static_cast<std::uint64_t>(args.t) : 0);
    const SignTable table = sieve_liouville(1, hi, cfg);
    const PatternCounts counts = count_double(table, args.t, args.x);
    if (args.common.format == "json") {
        emit(args.common, pattern_counts_json(counts, args.places));
    } else if (args.common.format == "csv") {
        emit(args.common, pattern_counts_csv(counts, args.places));
    } else {
        const auto dens = densities(counts, args.places);
        std::ostringstream out;
        out << "x " << counts.x << "\nt " << counts.t << "\n"
            << "++ " << counts.pp << " " << dens[0] << "\n"
            << "+- " << counts.pm << " " << dens[1] << "\n"
            << "-+ " << counts.mp << " " << dens[2] << "\n"
            << "-- " << counts.mm << " " << dens[3] << "\n"
            << "autocorrelation " << counts.autocorr() << "\n";
        emit(args.common, out.str());
    }
    return 0;
}

// --- autocorr ------------------------------------------------------------

struct AutocorrArgs {
    CommonOpts common;
    std::uint64_t x = 0;
    std::int64_t t = 1;
};

int run_autocorr(const AutocorrArgs& args) {
    const SieveConfig cfg = make_config(args.common);
    const std::uint64_t hi = args.x + (args.t > 0 ? static_cast<std::uint64_t>(args.t) : 0);
    const SignTable table = sieve_liouville(1, hi, cfg);
    const std::int64_t value = autocorrelation(table, args.t, args.x);
    if (args.common.format == "json") {
        ordered_json doc;
        doc["x"] = args.x;
        doc["t"] = args.t;
        doc["autocorrelation"] = value;
        emit(args.common, doc.dump(2) + "\n");
    } else {
        emit(args.common, std::to_string(value) + "\n");
    }
    return 0;
}

// --- sums ----------------------------------------------------------------

struct SumsArgs {
    CommonOpts common;
    std::string checkpoints_csv;
    bool mertens = false;
    bool log_avg = false;
    std::int64_t autocorr_log_t = 0;  // 0 = off
    std::vector<std::string> curves;
    double c = 1.0;
    double epsilon = 0.05;
    bool scan_sign_flip = false;
    std::uint64_t scan_limit = 1'000'000'000;
};

int run_sums(const SumsArgs& args) {
    const SieveConfig cfg = make_config(args.common);

    if (args.scan_sign_flip) {
        const auto flip = first_positive_summatory(args.scan_limit, cfg);
        if (args.common.format == "json") {
            ordered_json doc;
            doc["limit"] = args.scan_limit;
            doc["found"] = flip.has_value();
            if (flip) {
                doc["x"] = flip->x;
                doc["summatory"] = flip->value;
            }
            emit(args.common, doc.dump(2) + "\n");
        } else if (flip) {
            emit(args.common, "first positive summatory at x " + std::to_string(flip->x) +
                                  " (L = " + std::to_string(flip->value) + ")\n");
        } else {
            emit(args.common,
                 "no positive summatory value up to " + std::to_string(args.scan_limit) + "\n");
        }
        return 0;
    }

    const std::vector<std::uint64_t> checkpoints = parse_checkpoints(args.checkpoints_csv);
    const std::uint64_t x_max = checkpoints.back();
    const std::uint64_t shift =
        args.autocorr_log_t > 0 ? static_cast<std::uint64_t>(args.autocorr_log_t) : 0;
    const SignTable table = sieve_liouville(1, x_max + shift, cfg);

    std::vector<std::string> names;
    std::vector<std::vector<std::string>> columns;
    const auto add_int = [&](const std::string& name, const IntSeries& series) {
        names.push_back(name);
        std::vector<std::string> col;
        for (const std::int64_t v : series.values) col.push_back(std::to_string(v));
        columns.push_back(std::move(col));
    };
    const auto add_real = [&](const std::string& name, const std::vector<double>& values) {
        names.push_back(name);
        std::vector<std::string> col;
        for (const double v : values) col.push_back(format_double(v));
        columns.push_back(std::move(col));
    };

    add_int("L", summatory_liouville(table, checkpoints));
    if (args.mertens) {
        const MobiusTable mtable = sieve_mobius(1, x_max, cfg);
        add_int("M", mertens(mtable, checkpoints));
    }
    if (args.log_avg) add_real("log_avg", log_average_liouville(table, checkpoints).values);
    if (args.autocorr_log_t != 0)
        add_real("autocorr_log_t" + std::to_string(args.autocorr_log_t),
                 autocorr_log_average(table, args.autocorr_log_t, checkpoints).values);
    for (const std::string& name : args.curves) {
        ReferenceCurve curve;
        curve.kind = curve_kind_from_name(name);
        curve.c = args.c;
        curve.epsilon = args.epsilon;
        std::vector<double> values;
        for (const std::uint64_t x : checkpoints) values.push_back(curve(static_cast<double>(x)));
        add_real(name, values);
    }

    if (args.common.format == "json") {
        ordered_json doc;
        doc["checkpoints"] = checkpoints;
        for (std::size_t i = 0; i < names.size(); ++i) doc["series"][names[i]] = columns[i];
        emit(args.common, doc.dump(2) + "\n");
    } else {
        const char sep = args.common.format == "csv" ? ',' : ' ';
        std::ostringstream out;
        out << "x";
        for (const auto& name : names) out << sep << name;
        out << "\n";
        for (std::size_t row = 0; row < checkpoints.size(); ++row) {
            out << checkpoints[row];
            for (const auto& col : columns) out << sep << col[row];
            out << "\n";
        }
        emit(args.common, out.str());
    }
    return 0;
}

// --- twisted -------------------------------------------------------------

struct TwistedArgs {
    CommonOpts common;
    std::uint64_t x = 0;
    double alpha = 0.0;
    bool sup = false;
    std::uint64_t grid = 256;
};

int run_twisted(const TwistedArgs& args) {
    const SieveConfig cfg = make_config(args.common);
    const SignTable table = sieve_liouville(1, args.x, cfg);
    if (args.sup) {
        const TwistedSup best = twisted_sup(table, args.x, args.grid);
        if (args.common.format == "json") {
            ordered_json doc;
            doc["x"] = args.x;
            doc["grid"] = args.grid;
            doc["alpha_max"] = best.alpha;
            doc["magnitude"] = best.magnitude;
            emit(args.common, doc.dump(2) + "\n");
        } else {
            emit(args.common, "alpha_max " + format_double(best.alpha) + "\nmagnitude " +
                                  format_double(best.magnitude) + "\n");
        }
        return 0;
    }
    const std::complex<double> s = twisted_sum(table, args.alpha, args.x);
    if (args.common.format == "json") {
        ordered_json doc;
        doc["x"] = args.x;
        doc["alpha"] = args.alpha;
        doc["re"] = s.real();
        doc["im"] = s.imag();
        doc["magnitude"] = std::abs(s);
        emit(args.common, doc.dump(2) + "\n");
    } else {
        emit(args.common, "re " + format_double(s.real()) + "\nim " + format_double(s.imag()) +
                              "\nmagnitude " + format_double(std::abs(s)) + "\n");
    }
    return 0;
}

// --- constant ------------------------------------------------------------

struct ConstantArgs {
    CommonOpts common;
    std::uint64_t digits = 38;
    std::uint64_t guard_bits = 64;
};

int run_constant(const ConstantArgs& args) {
    const SieveConfig cfg = make_config(args.common);
    const PrecisionSpec spec{args.digits, args.guard_bits};
    const SignTable table = sieve_liouville(1, constant_bits_required(spec), cfg);
    const std::string value = evaluate_constant(table, spec);
    if (args.common.format == "json") {
        ordered_json doc;
        doc["digits"] = args.digits;
        doc["value"] = value;
        emit(args.common, doc.dump(2) + "\n");
    } else {
        emit(args.common, value + "\n");
    }
    return 0;
}

// --- normality -----------------------------------------------------------

struct NormalityArgs {
    CommonOpts common;
    std::uint64_t x = 0;
    std::string bases_csv = "2,4";
    std::string modes_csv = "overlapping,paired";
    std::string dump_path;
    std::uint64_t digit_base = 2;
    std::string digit_mode = "overlapping";
    std::uint64_t digit_count = 0;
    bool packed = false;
};

int run_normality(const NormalityArgs& args) {
    const SieveConfig cfg = make_config(args.common);

    if (!args.dump_path.empty()) {
        if (args.digit_count == 0)
            throw std::invalid_argument("--dump-digits needs --digit-count");
        unsigned k = 0;
        while ((std::uint64_t{1} << (k + 1)) <= args.digit_base) ++k;
        if ((std::uint64_t{1} << k) != args.digit_base)
            throw std::invalid_argument("--digit-base must be a power of two");
        const DigitMode mode = digit_mode_from_name(args.digit_mode);
        const SignTable table =
            sieve_liouville(1, digits_coverage_required(k, mode, args.digit_count), cfg);
        const DigitStream stream = base2k_digits(table, k, mode, args.digit_count);
        if (args.packed)
            write_digits_packed(stream, args.dump_path);
        else
            write_digits_raw(stream, args.dump_path);
        return 0;
    }

    std::vector<std::uint64_t> bases = parse_checkpoints(args.bases_csv);
    std::vector<DigitMode> modes;
    {
        std::stringstream stream(args.modes_csv);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (!item.empty()) modes.push_back(digit_mode_from_name(item));
        }
    }
    std::uint64_t need = 1;
    for (const std::uint64_t base : bases) {
        unsigned k = 0;
        while ((std::uint64_t{1} << (k + 1)) <= base) ++k;
        for (const DigitMode mode : modes)
            need = std::max(need, digits_coverage_required(k, mode, args.x));
    }
    const SignTable table = sieve_liouville(1, need, cfg);
    const NormalityReport report = normality_report(table, bases, modes, args.x);
    if (args.common.format == "json") {
        emit(args.common, normality_report_json(report));
    } else if (args.common.format == "csv") {
        std::ostringstream out;
        out << "base,mode,sample_size,chi_square,critical_95,pass\n";
        for (const auto& entry : report.entries)
            out << entry.base << ',' << digit_mode_name(entry.mode) << ','
                << entry.freq.sample_size << ',' << format_double(entry.freq.chi_square) << ','
                << format_double(entry.critical_95) << ',' << (entry.pass ? "true" : "false")
                << "\n";
        emit(args.common, out.str());
    } else {
        std::ostringstream out;
        out << "normality report, x " << report.x << "\n";
        for (const auto& entry : report.entries) {
            out << "base " << entry.base << " " << digit_mode_name(entry.mode) << ": counts";
            for (const std::uint64_t c : entry.freq.counts) out << " " << c;
            out << ", chi_square " << format_double(entry.freq.chi_square) << ", critical "
                << format_double(entry.critical_95) << ", "
                << (entry.pass ? "pass" : "fail") << "\n";
        }
        emit(args.common, out.str());
    }
    return 0;
}

// --- report --------------------------------------------------------------

struct ReportArgs {
    CommonOpts common;
    std::uint64_t x = 0;
    std::int64_t t = 1;
    int places = 6;
    bool timing = false;
};

int run_report(const ReportArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    const SieveConfig cfg = make_config(args.common);
    const std::uint64_t hi = args.x + (args.t > 0 ? static_cast<std::uint64_t>(args.t) : 0);
    const SignTable table = sieve_liouville(1, hi, cfg);
    const PatternCounts counts = count_double(table, args.t, args.x);
    const auto dens = densities(counts, args.places);
    const std::uint64_t quotient = args.x / 4;
    const std::uint64_t remainder = args.x % 4;

    if (args.common.format == "json") {
        ordered_json doc;
        doc["version"] = kVersion;
        doc["config"] = {{"x", args.x}, {"t", args.t}, {"places", args.places}};
        doc["counts"] = {
            {"++", counts.pp}, {"+-", counts.pm}, {"-+", counts.mp}, {"--", counts.mm}};
        doc["expected"] = {{"quotient", quotient}, {"remainder", remainder}};
        doc["autocorrelation"] = counts.autocorr();
        doc["densities"] = {{"++", dens[0]}, {"+-", dens[1]}, {"-+", dens[2]}, {"--", dens[3]}};
        emit(args.common, doc.dump(2) + "\n");
    } else if (args.common.format == "csv") {
        std::ostringstream out;
        out << "pattern,actual,expected_quotient,expected_remainder,density\n";
        const char* names[4] = {"++", "+-", "-+", "--"};
        const std::uint64_t raw[4] = {counts.pp, counts.pm, counts.mp, counts.mm};
        for (int i = 0; i < 4; ++i)
            out << names[i] << ',' << raw[i] << ',' << quotient << ',' << remainder << ','
                << dens[i] << "\n";
        out << "autocorrelation," << counts.autocorr() << ",,,\n";
        emit(args.common, out.str());
    } else {
        std::ostringstream out;
        out << "liouville double-sign report (version " << kVersion << ")\n"
            << "x " << args.x << "\nt " << args.t << "\n\n"
            << "pattern  actual  expected\n";
        const char* names[4] = {"++", "+-", "-+", "--"};
        const std::uint64_t raw[4] = {counts.pp, counts.pm, counts.mp, counts.mm};
        for (int i = 0; i < 4; ++i) {
            out << names[i] << "       " << raw[i] << "  " << quotient;
            if (remainder != 0) out << " r " << remainder;
            out << " (" << args.x << "/4)\n";
        }
        out << "\nautocorrelation " << counts.autocorr() << "\n"
            << "densities ++ " << dens[0] << "  +- " << dens[1] << "  -+ " << dens[2] << "  -- "
            << dens[3] << "\n";
        emit(args.common, out.str());
    }
    if (args.timing) {
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cerr << "elapsed_ms " << elapsed.count() << "\n";
    }
    return 0;
}

// --- selftest ------------------------------------------------------------

int run_selftest_cmd(bool inject_fault) {
    const auto checks = run_selftest(inject_fault);
    for (const auto& check : checks)
        std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << " — " << check.detail
                  << "\n";
    const bool ok = all_passed(checks);
    std::cout << (ok ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liouville sign-pattern statistics toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SieveArgs sieve_args;
    auto* sieve_cmd = app.add_subcommand("sieve", "Sieve a Liouville or Mobius table");
    add_common(sieve_cmd, sieve_args.common);
    sieve_cmd->add_option("--lo", sieve_args.lo, "Lower end of the range")->capture_default_str();
    sieve_cmd->add_option("--hi", sieve_args.hi, "Upper end of the range")->required();
    sieve_cmd->add_flag("--mobius", sieve_args.mobius, "Sieve Mobius values instead");
    sieve_cmd->add_option("--dump", sieve_args.dump_path, "Write the packed table to this file");

    PatternsArgs patterns_args;
    auto* patterns_cmd = app.add_subcommand("patterns", "Count double- or k-sign patterns");
    add_common(patterns_cmd, patterns_args.common);
    patterns_cmd->add_option("--x", patterns_args.x, "Count n <= x")->required();
    patterns_cmd->add_option("--t", patterns_args.t, "Shift for the double-sign case")
        ->capture_default_str();
    patterns_cmd->add_option("--places", patterns_args.places, "Density decimal places")
        ->capture_default_str();
    patterns_cmd->add_option("--offsets", patterns_args.offsets_csv,
                             "Comma-separated offsets for a k-sign pattern");
    patterns_cmd->add_option("--signs", patterns_args.signs_csv,
                             "Comma-separated signs (+ or -) for a k-sign pattern");

    AutocorrArgs autocorr_args;
    auto* autocorr_cmd = app.add_subcommand("autocorr", "Autocorrelation sum at shift t");
    add_common(autocorr_cmd, autocorr_args.common);
    autocorr_cmd->add_option("--x", autocorr_args.x, "Sum over n <= x")->required();
    autocorr_cmd->add_option("--t", autocorr_args.t, "Shift")->capture_default_str();

    SumsArgs sums_args;
    auto* sums_cmd = app.add_subcommand("sums", "Summatory and logarithmic averages");
    add_common(sums_cmd, sums_args.common);
    sums_cmd->add_option("--checkpoints", sums_args.checkpoints_csv,
                         "Comma-separated checkpoint values");
    sums_cmd->add_flag("--mertens", sums_args.mertens, "Include the Mobius summatory column");
    sums_cmd->add_flag("--log-avg", sums_args.log_avg, "Include sum of lambda(n)/n");
    sums_cmd->add_option("--autocorr-log-t", sums_args.autocorr_log_t,
                         "Include sum of lambda(n)lambda(n+t)/n at this t");
    sums_cmd
        ->add_option("--curve", sums_args.curves,
                     "Reference curve column (zeta-half-sqrt, exp-log-error, loglog-half, "
                     "lil-normalizer); repeatable")
        ->allow_extra_args(false);
    sums_cmd->add_option("--c", sums_args.c, "Constant c for exp-log-error")
        ->capture_default_str();
    sums_cmd->add_option("--epsilon", sums_args.epsilon, "Epsilon for loglog-half")
        ->capture_default_str();
    sums_cmd->add_flag("--scan-sign-flip", sums_args.scan_sign_flip,
                       "Long-running: scan for the first x with positive summatory value");
    sums_cmd->add_option("--limit", sums_args.scan_limit, "Upper limit for --scan-sign-flip")
        ->capture_default_str();

    TwistedArgs twisted_args;
    auto* twisted_cmd = app.add_subcommand("twisted", "Twisted exponential sum");
    add_common(twisted_cmd, twisted_args.common);
    twisted_cmd->add_option("--x", twisted_args.x, "Sum over n <= x")->required();
    twisted_cmd->add_option("--alpha", twisted_args.alpha, "Frequency alpha")
        ->capture_default_str();
    twisted_cmd->add_flag("--sup", twisted_args.sup, "Maximize |S(alpha)| over a uniform grid");
    twisted_cmd->add_option("--grid", twisted_args.grid, "Grid size for --sup")
        ->capture_default_str();

    ConstantArgs constant_args;
    auto* constant_cmd =
        app.add_subcommand("constant", "Decimal expansion of the lambda-driven constant");
    add_common(constant_cmd, constant_args.common);
    constant_cmd->add_option("--digits", constant_args.digits, "Decimal digits after the point")
        ->capture_default_str();
    constant_cmd->add_option("--guard-bits", constant_args.guard_bits, "Extra guard bits")
        ->capture_default_str();

    NormalityArgs normality_args;
    auto* normality_cmd =
        app.add_subcommand("normality", "Digit frequency reports and digit stream export");
    add_common(normality_cmd, normality_args.common);
    normality_cmd->add_option("--x", normality_args.x, "Digits per stream");
    normality_cmd->add_option("--bases", normality_args.bases_csv, "Comma-separated bases")
        ->capture_default_str();
    normality_cmd->add_option("--modes", normality_args.modes_csv, "Comma-separated modes")
        ->capture_default_str();
    normality_cmd->add_option("--dump-digits", normality_args.dump_path,
                              "Write a digit stream to this file instead of reporting");
    normality_cmd->add_option("--digit-base", normality_args.digit_base, "Base for --dump-digits")
        ->capture_default_str();
    normality_cmd->add_option("--digit-mode", normality_args.digit_mode, "Mode for --dump-digits")
        ->capture_default_str();
    normality_cmd->add_option("--digit-count", normality_args.digit_count,
                              "Digit count for --dump-digits");
    normality_cmd->add_flag("--packed", normality_args.packed,
                            "Pack bits (base 2) instead of one byte per digit");

    ReportArgs report_args;
    auto* report_cmd =
        app.add_subcommand("report", "Double-sign pattern report with expected counts");
    add_common(report_cmd, report_args.common);
    report_cmd->add_option("--x", report_args.x, "Count n <= x")->required();
    report_cmd->add_option("--t", report_args.t, "Shift")->capture_default_str();
    report_cmd->add_option("--places", report_args.places, "Density decimal places")
        ->capture_default_str();
    report_cmd->add_flag("--timing", report_args.timing, "Print wall-clock time to stderr");

    bool inject_fault = false;
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in oracle checks");
    selftest_cmd->add_flag("--inject-fault", inject_fault,
                           "Negative control: corrupt one sieved bit first");

    try {
        app.parse(argc, argv);
        if (sieve_cmd->parsed()) return run_sieve(sieve_args);
        if (patterns_cmd->parsed()) return run_patterns(patterns_args);
        if (autocorr_cmd->parsed()) return run_autocorr(autocorr_args);
        if (sums_cmd->parsed()) return run_sums(sums_args);
        if (twisted_cmd->parsed()) return run_twisted(twisted_args);
        if (constant_cmd->parsed()) return run_constant(constant_args);
        if (normality_cmd->parsed()) return run_normality(normality_args);
        if (report_cmd->parsed()) return run_report(report_args);
        if (selftest_cmd->parsed()) return run_selftest_cmd(inject_fault);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
