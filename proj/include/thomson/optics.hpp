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
 * Four-port interferometer built from phase shifters and a variable beam
 * splitter, its closed-form transfer matrix, and parameter synthesis.
 *
 * Port convention: the splitter matrix is [[i sin w, cos w], [cos w, i sin w]]
 * (input and output labels exchanged relative to the usual choice, so
 * transmission routes |0> to |1'>). Every reflection carries a factor i.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thomson/errors.hpp"
#include "thomson/qubit.hpp"

namespace thomson::optics {

using qubit::Complex;
using qubit::Unitary2;

enum class ElementKind { PhaseShifterPort0, PhaseShifterPort1, BeamSplitter };

[[nodiscard]] constexpr std::string_view to_string(ElementKind k) noexcept {
    switch (k) {
    case ElementKind::PhaseShifterPort0:
        return "ps0";
    case ElementKind::PhaseShifterPort1:
        return "ps1";
    case ElementKind::BeamSplitter:
        return "bs";
    }
    return "?";
}

[[nodiscard]] inline ElementKind element_kind_from_string(std::string_view s) {
    if (s == "ps0") {
        return ElementKind::PhaseShifterPort0;
    }
    if (s == "ps1") {
        return ElementKind::PhaseShifterPort1;
    }
    if (s == "bs") {
        return ElementKind::BeamSplitter;
    }
    throw ParseError("unknown optical element kind \"" + std::string(s) +
                     "\" (expected ps0, ps1 or bs)");
}

/// diag(e^{i phase}, 1) for port 0, diag(1, e^{i phase}) for port 1.
inline Unitary2 phase_shifter_matrix(double phase, int port) {
    if (port != 0 && port != 1) {
        throw OutOfDomain("phase shifter port must be 0 or 1");
    }
    const Complex e = std::polar(1.0, phase);
    return port == 0 ? Unitary2::diagonal(e, 1.0) : Unitary2::diagonal(1.0, e);
}

/// Lossless splitter with sqrt T = cos w and sqrt R = sin w.
inline Unitary2 beamsplitter_matrix(double omega) {
    const double c = std::cos(omega);
    const Complex is(0.0, std::sin(omega));
    return Unitary2::from_entries(is, c, c, is);
}

struct OpticalElement {
    ElementKind kind;
    /// Phase for shifters, splitter angle w for the beam splitter.
    double parameter;

    OpticalElement(ElementKind k, double p) : kind(k), parameter(p) {
        if (!std::isfinite(p)) {
            throw OutOfDomain("optical element parameter must be finite");
        }
    }

    [[nodiscard]] Unitary2 matrix() const {
        switch (kind) {
        case ElementKind::PhaseShifterPort0:
            return phase_shifter_matrix(parameter, 0);
        case ElementKind::PhaseShifterPort1:
            return phase_shifter_matrix(parameter, 1);
        case ElementKind::BeamSplitter:
            return beamsplitter_matrix(parameter);
        }
        return Unitary2::identity();
    }

    /// T = cos^2 w for a splitter, 1 for a phase shifter.
    [[nodiscard]] double transmission() const {
        if (kind != ElementKind::BeamSplitter) {
            return 1.0;
        }
        const double c = std::cos(parameter);
        return c * c;
    }

    /// R = 1 - T, which equals sin^2 w.
    [[nodiscard]] double reflectivity() const { return 1.0 - transmission(); }

    /// Element undoing this one. S(w) is symmetric, so S(w)^-1 = S(-w).
    [[nodiscard]] OpticalElement inverse() const {
        return {kind, -parameter};
    }
};

/// Elements in the order light passes through them.
class OpticalNetwork {
  public:
    explicit OpticalNetwork(std::vector<OpticalElement> elements)
        : elements_(std::move(elements)) {
        if (elements_.empty()) {
            throw OutOfDomain("optical network must contain an element");
        }
    }

    /// P1 (port 0, alpha + beta), P2 (port 1, beta), S(w), P3 (port 0, phi).
    static OpticalNetwork four_port(double omega, double alpha, double beta,
                                    double phi) {
        return OpticalNetwork({{ElementKind::PhaseShifterPort0, alpha + beta},
                               {ElementKind::PhaseShifterPort1, beta},
                               {ElementKind::BeamSplitter, omega},
                               {ElementKind::PhaseShifterPort0, phi}});
    }

    [[nodiscard]] const std::vector<OpticalElement> &elements() const noexcept {
        return elements_;
    }

    /// Network that undoes this one when appended after it.
    [[nodiscard]] OpticalNetwork inverse() const {
        std::vector<OpticalElement> out;
        for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) {
            out.push_back(it->inverse());
        }
        return OpticalNetwork(std::move(out));
    }

    [[nodiscard]] OpticalNetwork then(const OpticalNetwork &next) const {
        std::vector<OpticalElement> out = elements_;
        out.insert(out.end(), next.elements_.begin(), next.elements_.end());
        return OpticalNetwork(std::move(out));
    }

  private:
    std::vector<OpticalElement> elements_;
};

/// Product of element matrices, last element leftmost.
inline Unitary2 network_unitary(const OpticalNetwork &network) {
    Unitary2 u = Unitary2::identity();
    for (const OpticalElement &e : network.elements()) {
        u = e.matrix() * u;
    }
    return u;
}

/**
 * Closed form of the four-port device:
 *   [[ i e^{i(a+b+p)} sin w, e^{i(b+p)} cos w ],
 *    [ e^{i(a+b)} cos w,     i e^{ib} sin w   ]]
 */
inline Unitary2 ubs(double omega, double alpha, double beta, double phi) {
    using qubit::wrap_angle;
    const double s = std::sin(omega);
    const double c = std::cos(omega);
    const Complex i(0.0, 1.0);
    return Unitary2::from_entries(
        i * std::polar(s, wrap_angle(alpha + beta + phi)),
        std::polar(c, wrap_angle(beta + phi)),
        std::polar(c, wrap_angle(alpha + beta)),
        i * std::polar(s, wrap_angle(beta)));
}

// ---------------------------------------------------------------------------
// Synthesis.

/// Device angles as solved; see in_u2_ranges() for the range contract.
struct DeviceAngles {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double phi = 0.0;

    [[nodiscard]] Unitary2 matrix() const { return ubs(omega, alpha, beta, phi); }

    [[nodiscard]] bool in_u2_ranges() const {
        return qubit::U2Params::in_range(omega, alpha, beta, phi);
    }

    /// Throws RangeError when the angles are outside the U2Params ranges.
    [[nodiscard]] qubit::U2Params u2_params() const {
        return {omega, alpha, beta, phi};
    }
};

struct SynthesisResult {
    DeviceAngles params;
    /// max |e^{i global_phase} ubs(params) - target| entrywise.
    double residual = 0.0;
    double global_phase = 0.0;
};

inline constexpr double kSynthesisThreshold = 1e-8;

namespace detail {

inline SynthesisResult score(const DeviceAngles &a, const Unitary2 &target) {
    const Unitary2 m = a.matrix();
    const Complex phase = qubit::relative_phase(m, target);
    return {a, qubit::max_abs_diff(m.scaled(phase), target), std::arg(phase)};
}

// Throws RangeReduction if reducing the angles moved the matrix.
inline void verify_reduction(const DeviceAngles &raw, const DeviceAngles &reduced,
                             const Unitary2 &target) {
    const double before = qubit::max_abs_diff(raw.matrix(), target);
    const double after = qubit::max_abs_diff(reduced.matrix(), target);
    if (after > before + 1e-12 || !reduced.in_u2_ranges()) {
        throw RangeReduction("angle reduction changed the realized matrix");
    }
}

} // namespace detail

/**
 * diag(e^{i lambda}, e^{i lambda}) via (pi/2, alpha, lambda - pi/2, -alpha).
 * The free alpha is fixed to 0.
 */
inline SynthesisResult synthesize_equal_phase_diag(double lambda) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    const Complex e = std::polar(1.0, lambda);
    const Unitary2 target = Unitary2::diagonal(e, e);
    const DeviceAngles raw{half_pi, 0.0, lambda - half_pi, 0.0};
    const DeviceAngles reduced{half_pi, 0.0, qubit::wrap_angle(lambda - half_pi),
                               0.0};
    detail::verify_reduction(raw, reduced, target);
    return {reduced, qubit::max_abs_diff(reduced.matrix(), target), 0.0};
}

/**
 * diag(e^{i lambda}, e^{-i lambda}) via (pi/2, 2 lambda, -pi/2 - lambda, 0).
 * With w = pi/2 only alpha + phi enters the matrix, so when 2 lambda leaves
 * [-pi/2, pi/2] the excess moves into phi.
 */
inline SynthesisResult synthesize_opposite_phase_diag(double lambda) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    const Unitary2 target =
        Unitary2::diagonal(std::polar(1.0, lambda), std::polar(1.0, -lambda));
    const DeviceAngles raw{half_pi, 2.0 * lambda, -half_pi - lambda, 0.0};
    const double sum = qubit::wrap_angle(2.0 * lambda);
    const double alpha = std::clamp(sum, -half_pi, half_pi);
    const DeviceAngles reduced{half_pi, alpha,
                               qubit::wrap_angle(-half_pi - lambda), sum - alpha};
    detail::verify_reduction(raw, reduced, target);
    return {reduced, qubit::max_abs_diff(reduced.matrix(), target), 0.0};
}

/**
 * Solves e^{i theta} ubs(w, a, b, p) = target.
 *
 * |cos w| is read from the off-diagonal moduli and |sin w| from the
 * diagonal ones. The four sign branches of (sin w, cos w) each give phases
 * b = arg(t11 / (i sin w)), a + b = arg(t10 / cos w), b + p = arg(t01 / cos w);
 * a vanishing sin or cos leaves one phase free, which is chosen to keep
 * alpha and phi in [-pi/2, pi/2]. Branches whose angles satisfy the
 * U2Params ranges are preferred; among equals the smallest residual wins.
 *
 * Not every unitary is reachable with alpha and phi both in [-pi/2, pi/2],
 * so the result may carry angles in (-pi, pi] instead.
 */
inline SynthesisResult synthesize_general(const Unitary2 &target,
                                          double threshold = kSynthesisThreshold) {
    using qubit::wrap_angle;
    constexpr double pi = std::numbers::pi;
    constexpr double half_pi = pi / 2.0;
    constexpr double negligible = 1e-12;
    const Complex i(0.0, 1.0);

    const double s_mag = 0.5 * (std::abs(target(0, 0)) + std::abs(target(1, 1)));
    const double c_mag = 0.5 * (std::abs(target(0, 1)) + std::abs(target(1, 0)));
    const double w0 = std::atan2(s_mag, c_mag);

    std::optional<SynthesisResult> best_in_range;
    std::optional<SynthesisResult> best_any;
    for (const double w : {w0, -w0, pi - w0, w0 - pi}) {
        const double s = std::sin(w);
        const double c = std::cos(w);
        DeviceAngles a;
        a.omega = wrap_angle(w);
        const bool has_s = std::abs(s) > negligible;
        const bool has_c = std::abs(c) > negligible;
        if (has_s && has_c) {
            a.beta = std::arg(target(1, 1) / (i * s));
            a.alpha = wrap_angle(std::arg(target(1, 0) / c) - a.beta);
            a.phi = wrap_angle(std::arg(target(0, 1) / c) - a.beta);
        } else if (has_s) {
            a.beta = std::arg(target(1, 1) / (i * s));
            const double sum =
                wrap_angle(std::arg(target(0, 0) / (i * s)) - a.beta);
            a.alpha = std::clamp(sum, -half_pi, half_pi);
            a.phi = sum - a.alpha;
        } else {
            const double ab = std::arg(target(1, 0) / c);
            const double bp = std::arg(target(0, 1) / c);
            const double half = 0.5 * wrap_angle(ab - bp);
            a.beta = wrap_angle(ab - half);
            a.alpha = half;
            a.phi = -half;
        }
        a.beta = wrap_angle(a.beta);
        const SynthesisResult r = detail::score(a, target);
        if (!best_any || r.residual < best_any->residual) {
            best_any = r;
        }
        if (a.in_u2_ranges() && r.residual <= threshold &&
            (!best_in_range || r.residual < best_in_range->residual)) {
            best_in_range = r;
        }
    }
    const SynthesisResult &chosen = best_in_range ? *best_in_range : *best_any;
    if (!(chosen.residual <= threshold)) {
        throw NoSolution("no branch reproduces the target (residual " +
                         std::to_string(chosen.residual) + ")");
    }
    return chosen;
}

} // namespace thomson::optics
