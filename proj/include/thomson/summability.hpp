// Copyright 2026 The Thomson Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Partial sums, Abel limits and the divergent Euler series.
 *
 * The Abel value of sum a_n is the limit of f(x) = sum a_n x^n as x -> 1-.
 * It is evaluated numerically by summing f at x_k = 1 - 2^-k and running a
 * Richardson tableau in h = 1 - x, which doubles the order of the error in h
 * at every column.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "thomson/errors.hpp"
#include "thomson/quadrature.hpp"

namespace thomson::summability {

/// Coefficient generator n -> a_n. The callable must be deterministic.
class SeriesCoefficients {
  public:
    using Generator = std::function<double(std::uint64_t)>;

    explicit SeriesCoefficients(Generator g) : generator_(std::move(g)) {}

    double operator()(std::uint64_t n) const { return generator_(n); }

    /// a_n = (-1)^n.
    static SeriesCoefficients leibniz() {
        return SeriesCoefficients(
            [](std::uint64_t n) { return (n % 2 == 0) ? 1.0 : -1.0; });
    }

    /// a_n = r^n.
    static SeriesCoefficients geometric(double ratio) {
        return SeriesCoefficients(
            [ratio](std::uint64_t n) { return std::pow(ratio, double(n)); });
    }

    static SeriesCoefficients zero() {
        return SeriesCoefficients([](std::uint64_t) { return 0.0; });
    }

    /// Copy of this series with a_0 replaced by a_0 + delta.
    [[nodiscard]] SeriesCoefficients shifted_first_term(double delta) const {
        return SeriesCoefficients([g = generator_, delta](std::uint64_t n) {
            return n == 0 ? g(0) + delta : g(n);
        });
    }

  private:
    Generator generator_;
};

struct AbelOptions {
    /// Largest k in the schedule x_k = 1 - 2^-k.
    int max_level = 30;
    /// Do not declare convergence before this many samples.
    int min_level = 3;
    /// Hard cap on inner-series terms per sample.
    std::uint64_t max_terms = std::uint64_t{1} << 28;
    /// Consecutive below-threshold terms needed to stop an inner sum.
    int quiet_run = 16;
};

struct AbelSample {
    double x;
    double value;
};

struct AbelEvaluation {
    double value = 0.0;
    std::vector<AbelSample> samples;
    bool converged = false;
    double tolerance = 0.0;
    /// Last two diagonal entries of the Richardson tableau.
    double previous_estimate = 0.0;
};

/// s(t) = sum_{n=0}^t (-1)^n.
[[nodiscard]] constexpr int leibniz_partial_sum(std::uint64_t t) noexcept {
    return (t % 2 == 0) ? 1 : 0;
}

namespace detail {

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + carry; }
};

} // namespace detail

/**
 * Sums a_n x^n for 0 < x < 1 until @p opts.quiet_run consecutive terms are
 * below @p threshold in magnitude.
 *
 * Throws NonConvergentAtSample if a term becomes non-finite or the term
 * budget runs out.
 */
[[nodiscard]] inline double power_series_at(const SeriesCoefficients &coeffs,
                                            double x, double threshold,
                                            const AbelOptions &opts = {}) {
    detail::CompensatedSum acc;
    double power = 1.0;
    int quiet = 0;
    for (std::uint64_t n = 0; n < opts.max_terms; ++n) {
        const double term = coeffs(n) * power;
        if (!std::isfinite(term)) {
            throw NonConvergentAtSample(x, "term " + std::to_string(n) +
                                               " is not finite");
        }
        acc.add(term);
        quiet = (std::abs(term) < threshold) ? quiet + 1 : 0;
        if (quiet >= opts.quiet_run) {
            return acc.value();
        }
        power *= x;
    }
    throw NonConvergentAtSample(x, "terms did not decay within " +
                                       std::to_string(opts.max_terms) +
                                       " terms");
}

/**
 * Abel limit of sum a_n with a Richardson tableau over x_k = 1 - 2^-k.
 *
 * Inner sums stop once terms fall below tolerance * 2^-10. Convergence is
 * declared when two consecutive diagonal estimates differ by less than
 * @p tolerance; otherwise the last estimate is returned with
 * converged = false.
 */
[[nodiscard]] inline AbelEvaluation abel_sum(const SeriesCoefficients &coeffs,
                                             double tolerance,
                                             const AbelOptions &opts = {}) {
    if (!(tolerance > 0.0)) {
        throw OutOfDomain("abel_sum: tolerance must be positive");
    }
    const double threshold = std::ldexp(tolerance, -10);

    AbelEvaluation out;
    out.tolerance = tolerance;

    std::vector<double> prev_row;
    std::vector<double> row;
    double prev_diag = std::numeric_limits<double>::quiet_NaN();
    for (int k = 1; k <= opts.max_level; ++k) {
        const double x = 1.0 - std::ldexp(1.0, -k);
        const double fx = power_series_at(coeffs, x, threshold, opts);
        out.samples.push_back({x, fx});

        // Halving h cancels the h^j error term with factor 2^j.
        row.assign(1, fx);
        for (std::size_t j = 1; j <= prev_row.size(); ++j) {
            const double factor = std::ldexp(1.0, static_cast<int>(j)) - 1.0;
            row.push_back(row[j - 1] + (row[j - 1] - prev_row[j - 1]) / factor);
        }
        const double diag = row.back();
        out.previous_estimate = std::isnan(prev_diag) ? diag : prev_diag;
        out.value = diag;
        if (k >= opts.min_level && std::abs(diag - prev_diag) < tolerance) {
            out.converged = true;
            break;
        }
        prev_diag = diag;
        std::swap(prev_row, row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lamp exposure after the detector's resolution cutoff.

enum class CutoffState { On, Off };

struct ExposureFractions {
    double on_fraction;
    double off_fraction;
    CutoffState state_at_cutoff;
};

/**
 * Normalized post-cutoff intervals have lengths 1/2, 1/4, 1/8, ... and the
 * state at cutoff holds during the first one, so it collects
 * 1/2 + 1/8 + 1/32 + ... = 2/3 and the other state 1/4 + 1/16 + ... = 1/3.
 */
[[nodiscard]] constexpr ExposureFractions
geometric_exposure_fractions(CutoffState state) noexcept {
    constexpr double leading = 2.0 / 3.0;
    constexpr double trailing = 1.0 / 3.0;
    if (state == CutoffState::On) {
        return {leading, trailing, state};
    }
    return {trailing, leading, state};
}

/// Mean on-fraction over the two equally likely cutoff states.
[[nodiscard]] constexpr double average_brightness() noexcept {
    return 0.5 * (geometric_exposure_fractions(CutoffState::On).on_fraction +
                  geometric_exposure_fractions(CutoffState::Off).on_fraction);
}

// ---------------------------------------------------------------------------
// Euler's equation z^2 y' + y = z.

/// sum_{n=0}^k (-1)^n n! z^{n+1}; throws Overflow when a term is not finite.
[[nodiscard]] inline double euler_series_partial(double z, std::uint64_t k) {
    if (!(z > 0.0)) {
        throw OutOfDomain("euler_series_partial: z must be positive");
    }
    detail::CompensatedSum acc;
    double term = z;
    for (std::uint64_t n = 0;; ++n) {
        if (!std::isfinite(term)) {
            throw Overflow("euler_series_partial: term " + std::to_string(n) +
                           " overflows; k is far past the smallest term");
        }
        acc.add(term);
        if (n == k) {
            break;
        }
        term *= -static_cast<double>(n + 1) * z;
    }
    return acc.value();
}

/// e^x E_1(x) = integral_0^inf e^{-u} / (u + x) du, for x > 0.
[[nodiscard]] inline double scaled_exp_integral(double x,
                                                double rel_tol = 1e-12) {
    if (!(x > 0.0)) {
        throw OutOfDomain("scaled_exp_integral: x must be positive");
    }
    quadrature::Options opts;
    opts.rel_tol = rel_tol;
    return quadrature::integrate_to_infinity(
               [x](double u) { return std::exp(-u) / (u + x); }, 0.0, opts)
        .value;
}

/// Exact solution e^{1/z} E_1(1/z) with y(0+) = 0.
[[nodiscard]] inline double euler_exact(double z) {
    if (!(z > 0.0)) {
        throw OutOfDomain("euler_exact: z must be positive");
    }
    return scaled_exp_integral(1.0 / z);
}

/// sqrt(2 pi z) e^{-1/z}.
[[nodiscard]] inline double euler_error_bound(double z) {
    if (!(z > 0.0)) {
        throw OutOfDomain("euler_error_bound: z must be positive");
    }
    return std::sqrt(2.0 * std::numbers::pi * z) * std::exp(-1.0 / z);
}

/**
 * Index of the smallest |n! z^{n+1}|. Consecutive terms have ratio (n+1) z,
 * so the scan stops at the first ratio >= 1; equal neighbours resolve to the
 * smaller index.
 */
[[nodiscard]] inline std::uint64_t superasymptotic_truncation(double z) {
    if (!(z > 0.0)) {
        throw OutOfDomain("superasymptotic_truncation: z must be positive");
    }
    constexpr double tie = 1e-12;
    std::uint64_t n = 0;
    while (static_cast<double>(n + 1) * z < 1.0 - tie) {
        ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Log series sum_{n>=1} (-1)^{n+1} z^n / n = log(1 + z).

struct LogSeriesDerivative {
    double value;
    /// Coefficients of the term-by-term derivative: (+1, -1, +1, ...).
    SeriesCoefficients coefficients;
};

/// Coefficient of z^n in the log series; zero at n = 0.
[[nodiscard]] inline double log_series_coefficient(std::uint64_t n) {
    if (n == 0) {
        return 0.0;
    }
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return sign / static_cast<double>(n);
}

/// Coefficients of the term-by-term derivative, b_m = (m + 1) c_{m+1}.
/// The product is (-1)^m exactly; forming it as (m + 1) * (1 / (m + 1))
/// would round.
[[nodiscard]] inline SeriesCoefficients log_series_derivative_coefficients() {
    return SeriesCoefficients([](std::uint64_t m) {
        return (m % 2 == 0) ? 1.0 : -1.0;
    });
}

/**
 * Sums the derivative series directly for |z| < 1. At z = 1 the series is
 * the Leibniz series; pass the coefficients to abel_sum instead.
 */
[[nodiscard]] inline LogSeriesDerivative log_series_derivative(double z) {
    if (!(std::abs(z) < 1.0)) {
        throw OutOfDomain(
            "log_series_derivative: |z| >= 1 needs Abel evaluation");
    }
    auto coeffs = log_series_derivative_coefficients();
    detail::CompensatedSum acc;
    double power = 1.0;
    const double threshold = std::numeric_limits<double>::epsilon() * 1e-3;
    for (std::uint64_t m = 0; std::abs(power) >= threshold; ++m) {
        acc.add(coeffs(m) * power);
        power *= z;
    }
    return {acc.value(), std::move(coeffs)};
}

} // namespace thomson::summability
