#include "liouville/averages.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace liouville {

namespace {

// Neumaier-compensated accumulator; deterministic for a fixed add order.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

void require_cover(const SignTable& table, std::uint64_t from, std::uint64_t to,
                   const char* who) {
    if (!table.covers(from, to))
        throw std::runtime_error(std::string(who) + ": table [" + std::to_string(table.lo()) +
                                 ", " + std::to_string(table.hi()) + "] does not cover [" +
                                 std::to_string(from) + ", " + std::to_string(to) + "]");
}

void validate_checkpoints(const std::vector<std::uint64_t>& checkpoints, const char* who) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1)
            throw std::invalid_argument(std::string(who) + ": checkpoints must be >= 1");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument(std::string(who) +
                                        ": checkpoints must be strictly increasing");
    }
}

constexpr std::uint64_t kRenormInterval = std::uint64_t{1} << 16;

// e^(2*pi*i*a*n) evaluated directly; the long double product keeps the
// reduced phase accurate at desk-scale n. Quadrant phases come out exact so
// lattice frequencies (alpha a multiple of 1/4) stay noise-free.
std::complex<double> phase_at(long double a, std::uint64_t n) {
    const long double prod = a * static_cast<long double>(n);
    const long double frac = prod - std::floor(prod);
    if (frac == 0.0L) return {1.0, 0.0};
    if (frac == 0.5L) return {-1.0, 0.0};
    if (frac == 0.25L) return {0.0, 1.0};
    if (frac == 0.75L) return {0.0, -1.0};
    const long double theta = 2.0L * std::numbers::pi_v<long double> * frac;
    return {static_cast<double>(std::cos(theta)), static_cast<double>(std::sin(theta))};
}

}  // namespace

IntSeries summatory_liouville(const SignTable& table, std::vector<std::uint64_t> checkpoints) {
    validate_checkpoints(checkpoints, "summatory_liouville");
    IntSeries series;
    series.checkpoints = std::move(checkpoints);
    series.values.reserve(series.checkpoints.size());
    if (series.checkpoints.empty()) return series;
    require_cover(table, 1, series.checkpoints.back(), "summatory_liouville");
    std::uint64_t prev = 0;
    std::uint64_t plus = 0;
    for (const std::uint64_t x : series.checkpoints) {
        plus += table.count_plus(prev + 1, x);
        // L(x) = n_plus - n_minus = 2 * n_plus - x
        series.values.push_back(2 * static_cast<std::int64_t>(plus) -
                                static_cast<std::int64_t>(x));
        prev = x;
    }
    return series;
}

IntSeries mertens(const MobiusTable& table, std::vector<std::uint64_t> checkpoints) {
    validate_checkpoints(checkpoints, "mertens");
    IntSeries series;
    series.checkpoints = std::move(checkpoints);
    series.values.reserve(series.checkpoints.size());
    if (series.checkpoints.empty()) return series;
    if (!table.covers(1, series.checkpoints.back()))
        throw std::runtime_error("mertens: table does not cover [1, max checkpoint]");
    std::int64_t running = 0;
    std::uint64_t next = 1;
    for (const std::uint64_t x : series.checkpoints) {
        for (; next <= x; ++next) running += table.value(next);
        series.values.push_back(running);
    }
    return series;
}

RealSeries log_average_liouville(const SignTable& table, std::vector<std::uint64_t> checkpoints) {
    validate_checkpoints(checkpoints, "log_average_liouville");
    RealSeries series;
    series.checkpoints = std::move(checkpoints);
    series.values.reserve(series.checkpoints.size());
    if (series.checkpoints.empty()) return series;
    require_cover(table, 1, series.checkpoints.back(), "log_average_liouville");
    CompensatedSum acc;
    std::uint64_t next = 1;
    for (const std::uint64_t x : series.checkpoints) {
        for (; next <= x; ++next)
            acc.add(static_cast<double>(table.sign(next)) / static_cast<double>(next));
        series.values.push_back(acc.value());
    }
    return series;
}

RealSeries autocorr_log_average(const SignTable& table, std::int64_t t,
                                std::vector<std::uint64_t> checkpoints) {
    if (t == 0) throw std::invalid_argument("autocorr_log_average: t must be nonzero");
    validate_checkpoints(checkpoints, "autocorr_log_average");
    RealSeries series;
    series.checkpoints = std::move(checkpoints);
    series.values.reserve(series.checkpoints.size());
    if (series.checkpoints.empty()) return series;
    const std::uint64_t x_max = series.checkpoints.back();
    const std::uint64_t n0 = t > 0 ? 1 : 1 + static_cast<std::uint64_t>(-t);
    const std::uint64_t hi = t > 0 ? x_max + static_cast<std::uint64_t>(t) : x_max;
    require_cover(table, 1, hi, "autocorr_log_average");
    CompensatedSum acc;
    std::uint64_t next = n0;
    for (const std::uint64_t x : series.checkpoints) {
        for (; next <= x; ++next) {
            const std::uint64_t shifted =
                t > 0 ? next + static_cast<std::uint64_t>(t) : next - static_cast<std::uint64_t>(-t);
            acc.add(static_cast<double>(table.sign(next) * table.sign(shifted)) /
                    static_cast<double>(next));
        }
        series.values.push_back(acc.value());
    }
    return series;
}

std::complex<double> twisted_sum(const SignTable& table, double alpha, std::uint64_t x) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("twisted_sum: alpha must be finite");
    if (x < 1) throw std::invalid_argument("twisted_sum: x must be >= 1");
    require_cover(table, 1, x, "twisted_sum");

    double reduced = alpha - std::floor(alpha);
    if (reduced >= 1.0) reduced = 0.0;
    const long double a = reduced;
    const std::complex<double> rotation = phase_at(a, 1);
    std::complex<double> z = rotation;
    CompensatedSum re, im;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const double sign = static_cast<double>(table.sign(n));
        re.add(sign * z.real());
        im.add(sign * z.imag());
        if ((n & (kRenormInterval - 1)) == 0)
            z = phase_at(a, n + 1);
        else
            z *= rotation;
    }
    return {re.value(), im.value()};
}

TwistedSup twisted_sup(const SignTable& table, std::uint64_t x, std::uint64_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("twisted_sup: grid_size must be >= 2");
    TwistedSup best;
    best.alpha = 0.0;
    best.magnitude = std::abs(twisted_sum(table, 0.0, x));
    for (std::uint64_t j = 1; j < grid_size; ++j) {
        const double alpha = static_cast<double>(j) / static_cast<double>(grid_size);
        const double magnitude = std::abs(twisted_sum(table, alpha, x));
        if (magnitude > best.magnitude) {
            best.alpha = alpha;
            best.magnitude = magnitude;
        }
    }
    return best;
}

CurveKind curve_kind_from_name(std::string_view name) {
    if (name == "zeta-half-sqrt") return CurveKind::zeta_half_sqrt;
    if (name == "exp-log-error") return CurveKind::exp_log_error;
    if (name == "loglog-half") return CurveKind::loglog_half;
    if (name == "lil-normalizer") return CurveKind::lil_normalizer;
    throw std::invalid_argument("unknown reference curve: " + std::string(name));
}

std::string_view curve_name(CurveKind kind) {
    switch (kind) {
        case CurveKind::zeta_half_sqrt: return "zeta-half-sqrt";
        case CurveKind::exp_log_error: return "exp-log-error";
        case CurveKind::loglog_half: return "loglog-half";
        case CurveKind::lil_normalizer: return "lil-normalizer";
    }
    throw std::invalid_argument("unknown reference curve kind");
}

double ReferenceCurve::operator()(double x) const {
    switch (kind) {
        case CurveKind::zeta_half_sqrt:
            if (x < 0.0) throw std::domain_error("zeta-half-sqrt: x must be >= 0");
            return kZetaHalf * std::sqrt(x);
        case CurveKind::exp_log_error:
            if (x < 1.0) throw std::domain_error("exp-log-error: x must be >= 1");
            return x * std::exp(-c * std::sqrt(std::log(x)));
        case CurveKind::loglog_half: {
            if (x <= std::numbers::e)
                throw std::domain_error("loglog-half: x must exceed e");
            return x / std::pow(std::log(std::log(x)), 0.5 - epsilon);
        }
        case CurveKind::lil_normalizer: {
            if (x < std::numbers::e)
                throw std::domain_error("lil-normalizer: x must be >= e");
            return std::sqrt(2.0 * x * std::log(std::log(x)));
        }
    }
    throw std::invalid_argument("unknown reference curve kind");
}

NormalizedExtrema lil_normalized_extrema(const SignTable& table, std::uint64_t x_min,
                                         std::uint64_t x_max) {
    if (x_min < 3) throw std::invalid_argument("lil_normalized_extrema: x_min must be >= 3");
    if (x_min > x_max)
        throw std::invalid_argument("lil_normalized_extrema: x_min must be <= x_max");
    require_cover(table, 1, x_max, "lil_normalized_extrema");
    std::int64_t running = 0;
    for (std::uint64_t n = 1; n < x_min; ++n) running += table.sign(n);
    NormalizedExtrema extrema;
    bool first = true;
    for (std::uint64_t x = x_min; x <= x_max; ++x) {
        running += table.sign(x);
        const double xd = static_cast<double>(x);
        const double ratio =
            static_cast<double>(running) / std::sqrt(2.0 * xd * std::log(std::log(xd)));
        if (first || ratio < extrema.min_value) {
            extrema.min_value = ratio;
            extrema.min_x = x;
        }
        if (first || ratio > extrema.max_value) {
            extrema.max_value = ratio;
            extrema.max_x = x;
        }
        first = false;
    }
    return extrema;
}

std::optional<SignFlip> first_positive_summatory(std::uint64_t limit, const SieveConfig& cfg) {
    if (limit < 2) return std::nullopt;
    // Stream block tables so memory stays flat regardless of limit.
    const std::uint64_t block = std::uint64_t{1} << 25;
    std::int64_t running = 1;  // L(1)
    for (std::uint64_t lo = 2; lo <= limit; lo += block) {
        const std::uint64_t hi = std::min(limit, lo + block - 1);
        const SignTable table = sieve_liouville(lo, hi, cfg);
        const auto& words = table.words();
        const std::uint64_t len = hi - lo + 1;
        for (std::uint64_t q = 0; q * 64 < len; ++q) {
            const std::uint64_t first = q * 64;
            const std::uint64_t width = std::min<std::uint64_t>(64, len - first);
            const std::uint64_t w = words[q];
            // The word can only reach positive territory if running is close.
            if (running + static_cast<std::int64_t>(width) > 0) {
                for (std::uint64_t i = 0; i < width; ++i) {
                    running += ((w >> i) & 1) ? 1 : -1;
                    if (running > 0) return SignFlip{lo + first + i, running};
                }
            } else {
                running += 2 * static_cast<std::int64_t>(std::popcount(w)) -
                           static_cast<std::int64_t>(width);
            }
        }
    }
    return std::nullopt;
}

}  // namespace liouville
