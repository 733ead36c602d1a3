#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "liouville/sieve.hpp"

namespace liouville {

// zeta(1/2), used by the zeta-half-sqrt reference curve.
inline constexpr double kZetaHalf = -1.4603545088095868;

struct IntSeries {
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::int64_t> values;
};

struct RealSeries {
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> values;
};

/// L(x) = sum of lambda(n) for n <= x, exact at each checkpoint.
IntSeries summatory_liouville(const SignTable& table, std::vector<std::uint64_t> checkpoints);

/// M(x) = sum of mu(n) for n <= x, exact at each checkpoint.
IntSeries mertens(const MobiusTable& table, std::vector<std::uint64_t> checkpoints);

/// sum of lambda(n)/n for n <= x; compensated summation in ascending n.
RealSeries log_average_liouville(const SignTable& table, std::vector<std::uint64_t> checkpoints);

/// sum of lambda(n)*lambda(n+t)/n over n in [max(1, 1-t), x].
RealSeries autocorr_log_average(const SignTable& table, std::int64_t t,
                                std::vector<std::uint64_t> checkpoints);

/// sum of lambda(n) * e^(2*pi*i*alpha*n) for n <= x. Phases advance by a
/// stable product recurrence re-anchored to a direct evaluation every 2^16
/// terms; alpha is reduced mod 1 first, so S(alpha) == S(alpha + 1) exactly.
std::complex<double> twisted_sum(const SignTable& table, double alpha, std::uint64_t x);

struct TwistedSup {
    double alpha = 0.0;
    double magnitude = 0.0;
};

/// Maximizes |S(alpha, x)| over the grid {j/grid_size : 0 <= j < grid_size}.
/// A grid approximation of the supremum; ties go to the smaller alpha.
TwistedSup twisted_sup(const SignTable& table, std::uint64_t x, std::uint64_t grid_size);

enum class CurveKind {
    zeta_half_sqrt,   // zeta(1/2) * sqrt(x)
    exp_log_error,    // x * exp(-c * sqrt(log x))
    loglog_half,      // x / (log log x)^(1/2 - epsilon)
    lil_normalizer,   // sqrt(2 * x * log log x)
};

CurveKind curve_kind_from_name(std::string_view name);
std::string_view curve_name(CurveKind kind);

struct ReferenceCurve {
    CurveKind kind = CurveKind::zeta_half_sqrt;
    double c = 1.0;
    double epsilon = 0.05;

    double operator()(double x) const;
};

struct NormalizedExtrema {
    double min_value = 0.0;
    std::uint64_t min_x = 0;
    double max_value = 0.0;
    std::uint64_t max_x = 0;
};

/// Running min/max of L(x) / sqrt(2 x log log x) over x in [x_min, x_max];
/// x_min must be >= 3 so the normalizer is defined.
NormalizedExtrema lil_normalized_extrema(const SignTable& table, std::uint64_t x_min,
                                         std::uint64_t x_max);

struct SignFlip {
    std::uint64_t x = 0;
    std::int64_t value = 0;
};

/// Streaming scan for the first x >= 2 with L(x) > 0, up to `limit`.
/// Long-running for large limits; the known crossing is near 9.06e8.
std::optional<SignFlip> first_positive_summatory(std::uint64_t limit, const SieveConfig& cfg = {});

}  // namespace liouville
