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
 * Globally adaptive 7/15-point Gauss-Kronrod quadrature.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "thomson/errors.hpp"

namespace thomson::quadrature {

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    std::size_t max_intervals = 2000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment &other) const { return error < other.error; }
};

template <class F> Segment gauss_kronrod(F &f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/**
 * Integrates @p f over [a, b], bisecting the segment with the largest error
 * estimate until the summed estimate drops below
 * max(abs_tol, rel_tol * |value|).
 *
 * Throws QuadratureFailure when max_intervals is reached first or the
 * integrand produces a non-finite value.
 */
template <class F>
Result integrate(F &&f, double a, double b, const Options &opts = {}) {
    std::priority_queue<detail::Segment> heap;
    heap.push(detail::gauss_kronrod(f, a, b));
    double value = heap.top().value;
    double error = heap.top().error;
    while (true) {
        if (!std::isfinite(value) || !std::isfinite(error)) {
            throw QuadratureFailure("integrand is not finite on [" +
                                    std::to_string(a) + ", " +
                                    std::to_string(b) + "]");
        }
        if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
            break;
        }
        if (heap.size() >= opts.max_intervals) {
            throw QuadratureFailure(
                "tolerance not reached within " +
                std::to_string(opts.max_intervals) +
                " intervals (error estimate " + std::to_string(error) + ")");
        }
        const detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::Segment left = detail::gauss_kronrod(f, worst.a, mid);
        const detail::Segment right = detail::gauss_kronrod(f, mid, worst.b);
        heap.push(left);
        heap.push(right);

        // Re-sum instead of updating incrementally so rounding does not
        // accumulate over many bisections.
        value = 0.0;
        error = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
    }
    return {value, error, heap.size()};
}

/// Integrates @p f over [a, inf) through the map u = a + s / (1 - s).
template <class F>
Result integrate_to_infinity(F &&f, double a, const Options &opts = {}) {
    auto mapped = [&f, a](double s) {
        const double one_minus = 1.0 - s;
        const double u = a + s / one_minus;
        const double jac = 1.0 / (one_minus * one_minus);
        const double fu = f(u);
        // Integrands decaying faster than the Jacobian grows vanish at s = 1.
        return fu == 0.0 ? 0.0 : fu * jac;
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

} // namespace thomson::quadrature
