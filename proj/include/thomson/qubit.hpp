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
 * Single-qubit states and 2x2 unitaries: the NOT family of gates, the
 * four-angle U(2) parameterization, closed-form eigensystems, fixed-point
 * detection and Born-rule sampling.
 */

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "thomson/errors.hpp"
#include "thomson/random.hpp"

namespace thomson::qubit {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kFixedPointTolerance = 1e-9;

/// Amplitudes below this are treated as zero when fixing a global phase.
inline constexpr double kNegligibleAmplitude = 1e-10;

/// Eigenvalues closer than this are treated as one degenerate eigenvalue.
inline constexpr double kDegenerateGap = 1e-9;

class Unitary2;

/// Normalized pair of amplitudes over {|0>, |1>}.
class QubitState {
  public:
    /// Throws NotNormalized unless |a0|^2 + |a1|^2 = 1 within @p tol.
    static QubitState from_amplitudes(Complex a0, Complex a1,
                                      double tol = kNormTolerance) {
        const double n = std::norm(a0) + std::norm(a1);
        if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
            throw NotNormalized("state norm^2 = " + std::to_string(n) +
                                " is not 1");
        }
        return {a0, a1};
    }

    /// Scales (a0, a1) to unit norm. Throws DegenerateNormalization for zero.
    static QubitState normalized(Complex a0, Complex a1) {
        const double n = std::sqrt(std::norm(a0) + std::norm(a1));
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw DegenerateNormalization("cannot normalize a zero vector");
        }
        return {a0 / n, a1 / n};
    }

    static QubitState zero() { return {1.0, 0.0}; }
    static QubitState one() { return {0.0, 1.0}; }
    /// (|0> + |1>) / sqrt 2, the fixed point of NOT.
    static QubitState psi_plus() {
        return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
    }
    static QubitState psi_minus() {
        return {std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0};
    }

    [[nodiscard]] Complex amp0() const noexcept { return amp0_; }
    [[nodiscard]] Complex amp1() const noexcept { return amp1_; }
    [[nodiscard]] double prob0() const noexcept { return std::norm(amp0_); }
    [[nodiscard]] double prob1() const noexcept { return std::norm(amp1_); }
    [[nodiscard]] double norm_squared() const noexcept {
        return std::norm(amp0_) + std::norm(amp1_);
    }

    /// Same ray with the first non-negligible amplitude real and positive.
    [[nodiscard]] QubitState canonical() const {
        const Complex lead =
            std::abs(amp0_) > kNegligibleAmplitude ? amp0_ : amp1_;
        const Complex phase = std::conj(lead) / std::abs(lead);
        return {amp0_ * phase, amp1_ * phase};
    }

    [[nodiscard]] QubitState scaled(Complex phase) const {
        return {amp0_ * phase, amp1_ * phase};
    }

  private:
    QubitState(Complex a0, Complex a1) : amp0_(a0), amp1_(a1) {}
    friend class Unitary2;

    Complex amp0_;
    Complex amp1_;
};

[[nodiscard]] inline Complex inner(const QubitState &a, const QubitState &b) {
    return std::conj(a.amp0()) * b.amp0() + std::conj(a.amp1()) * b.amp1();
}

/// Largest amplitude difference after removing the relative global phase.
[[nodiscard]] inline double phase_distance(const QubitState &a,
                                           const QubitState &b) {
    const QubitState ca = a.canonical();
    const QubitState cb = b.canonical();
    return std::max(std::abs(ca.amp0() - cb.amp0()),
                    std::abs(ca.amp1() - cb.amp1()));
}

[[nodiscard]] inline bool same_ray(const QubitState &a, const QubitState &b,
                                   double tol = 1e-10) {
    return phase_distance(a, b) <= tol;
}

/// 2x2 complex matrix with U^dagger U = I. Entries are row-major.
class Unitary2 {
  public:
    using Entries = std::array<Complex, 4>;

    /// Throws NotUnitary if U^dagger U deviates from I or |det U| from 1.
    static Unitary2 from_entries(const Entries &e,
                                 double tol = kUnitaryTolerance) {
        Unitary2 u(e);
        const double dev = u.unitarity_defect();
        if (!std::isfinite(dev) || dev > tol ||
            std::abs(std::abs(u.det()) - 1.0) > tol) {
            throw NotUnitary("matrix is not unitary (max |U^dagger U - I| = " +
                             std::to_string(dev) + ")");
        }
        return u;
    }

    static Unitary2 from_entries(Complex a, Complex b, Complex c, Complex d,
                                 double tol = kUnitaryTolerance) {
        return from_entries(Entries{a, b, c, d}, tol);
    }

    static Unitary2 identity() { return Unitary2({1.0, 0.0, 0.0, 1.0}); }

    static Unitary2 diagonal(Complex d0, Complex d1) {
        return from_entries(d0, 0.0, 0.0, d1);
    }

    [[nodiscard]] Complex operator()(int row, int col) const {
        return entries_[static_cast<std::size_t>(2 * row + col)];
    }
    [[nodiscard]] const Entries &entries() const noexcept { return entries_; }

    [[nodiscard]] Complex trace() const { return entries_[0] + entries_[3]; }
    [[nodiscard]] Complex det() const {
        return entries_[0] * entries_[3] - entries_[1] * entries_[2];
    }

    [[nodiscard]] Unitary2 adjoint() const {
        return Unitary2({std::conj(entries_[0]), std::conj(entries_[2]),
                         std::conj(entries_[1]), std::conj(entries_[3])});
    }

    [[nodiscard]] Unitary2 operator*(const Unitary2 &rhs) const {
        const Entries &a = entries_;
        const Entries &b = rhs.entries_;
        return Unitary2({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                         a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
    }

    [[nodiscard]] Unitary2 scaled(Complex phase) const {
        return Unitary2({entries_[0] * phase, entries_[1] * phase,
                         entries_[2] * phase, entries_[3] * phase});
    }

    [[nodiscard]] QubitState apply(const QubitState &s) const {
        return {entries_[0] * s.amp0() + entries_[1] * s.amp1(),
                entries_[2] * s.amp0() + entries_[3] * s.amp1()};
    }

    /// max |(U^dagger U - I)_{ij}|.
    [[nodiscard]] double unitarity_defect() const {
        const Unitary2 p = adjoint() * *this;
        return std::max({std::abs(p.entries_[0] - 1.0), std::abs(p.entries_[1]),
                         std::abs(p.entries_[2]),
                         std::abs(p.entries_[3] - 1.0)});
    }

  private:
    explicit Unitary2(const Entries &e) : entries_(e) {}

    Entries entries_;
};

/// max_{ij} |a_ij - b_ij|.
[[nodiscard]] inline double max_abs_diff(const Unitary2 &a, const Unitary2 &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

/// Phase e^{i theta} minimizing |e^{i theta} a - b| entrywise (least squares).
[[nodiscard]] inline Complex relative_phase(const Unitary2 &a,
                                            const Unitary2 &b) {
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        overlap += std::conj(a.entries()[i]) * b.entries()[i];
    }
    const double m = std::abs(overlap);
    return m > 0.0 ? overlap / m : Complex(1.0);
}

/// max_abs_diff after aligning the global phase of @p a to @p b.
[[nodiscard]] inline double phase_distance(const Unitary2 &a,
                                           const Unitary2 &b) {
    return max_abs_diff(a.scaled(relative_phase(a, b)), b);
}

// ---------------------------------------------------------------------------
// Parameters.

namespace detail {
inline constexpr double kRangeSlack = 1e-12;

inline void check_range(const char *name, double v, double bound) {
    if (!std::isfinite(v) || v < -bound - kRangeSlack ||
        v > bound + kRangeSlack) {
        throw RangeError(std::string(name) + " = " + std::to_string(v) +
                         " outside [-" + std::to_string(bound) + ", " +
                         std::to_string(bound) + "]");
    }
}
} // namespace detail

/// Angle reduced to (-pi, pi].
[[nodiscard]] inline double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) {
        r += 2.0 * std::numbers::pi;
    }
    return r;
}

/// (omega, alpha, beta, phi) with omega, beta in [-pi, pi] and
/// alpha, phi in [-pi/2, pi/2].
struct U2Params {
    double omega;
    double alpha;
    double beta;
    double phi;

    U2Params(double omega_, double alpha_, double beta_, double phi_)
        : omega(omega_), alpha(alpha_), beta(beta_), phi(phi_) {
        constexpr double pi = std::numbers::pi;
        detail::check_range("omega", omega, pi);
        detail::check_range("alpha", alpha, pi / 2.0);
        detail::check_range("beta", beta, pi);
        detail::check_range("phi", phi, pi / 2.0);
    }

    /// True when the four angles already satisfy the constructor's ranges.
    [[nodiscard]] static bool in_range(double omega, double alpha, double beta,
                                       double phi) {
        constexpr double pi = std::numbers::pi;
        auto ok = [](double v, double b) {
            return std::isfinite(v) && v >= -b - detail::kRangeSlack &&
                   v <= b + detail::kRangeSlack;
        };
        return ok(omega, pi) && ok(alpha, pi / 2) && ok(beta, pi) &&
               ok(phi, pi / 2);
    }
};

/// Phases of diag(e^{i mu}, e^{i lambda}), stored in (-pi, pi].
class DiagPhases {
  public:
    DiagPhases(double mu, double lambda)
        : mu_(wrap_angle(mu)), lambda_(wrap_angle(lambda)) {}

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }

  private:
    double mu_;
    double lambda_;
};

// ---------------------------------------------------------------------------
// Gates.

inline Unitary2 not_gate() { return Unitary2::from_entries(0.0, 1.0, 1.0, 0.0); }

/// X^t: identity for even t, NOT for odd t.
inline Unitary2 switch_product(std::uint64_t t) {
    return (t % 2 == 0) ? Unitary2::identity() : not_gate();
}

inline Unitary2 sqrt_not() {
    const Complex p(0.5, 0.5);
    const Complex m(0.5, -0.5);
    return Unitary2::from_entries(p, m, m, p);
}

/**
 * e^{-i beta} [[ e^{i alpha} cos w, -e^{-i phi} sin w ],
 *              [ e^{i phi} sin w,    e^{-i alpha} cos w ]]
 */
inline Unitary2 u2(const U2Params &p) {
    const Complex global = std::polar(1.0, -p.beta);
    const double c = std::cos(p.omega);
    const double s = std::sin(p.omega);
    return Unitary2::from_entries(
        global * std::polar(c, p.alpha), -global * std::polar(s, -p.phi),
        global * std::polar(s, p.phi), global * std::polar(c, -p.alpha));
}

inline Unitary2 phase_diagonal(const DiagPhases &d) {
    return Unitary2::diagonal(std::polar(1.0, d.mu()),
                              std::polar(1.0, d.lambda()));
}

/// U2(p)^{-1} diag(e^{i mu}, e^{i lambda}) U2(p).
inline Unitary2 conjugated_diagonal(const U2Params &p, const DiagPhases &d) {
    const Unitary2 u = u2(p);
    return u.adjoint() * phase_diagonal(d) * u;
}

// ---------------------------------------------------------------------------
// Spectrum.

struct EigenPair {
    Complex value;
    QubitState vector;
};

struct EigenSystem {
    std::array<EigenPair, 2> pairs;
    /// Both eigenvalues coincide; the vectors are the computational basis.
    bool degenerate = false;
};

/**
 * Closed-form eigensystem of a 2x2 unitary.
 *
 * Eigenvalues are tr/2 +- sqrt(((a - d)/2)^2 + bc). Each eigenvector is the
 * better conditioned of (b, lambda - a) and (lambda - d, c), normalized and
 * put in canonical phase. Diagonal and degenerate matrices return |0>, |1>.
 */
inline EigenSystem eigensystem(const Unitary2 &u) {
    const Complex a = u(0, 0);
    const Complex b = u(0, 1);
    const Complex c = u(1, 0);
    const Complex d = u(1, 1);

    const Complex half_tr = 0.5 * (a + d);
    const Complex half_diff = 0.5 * (a - d);
    const Complex disc = std::sqrt(half_diff * half_diff + b * c);
    const Complex lp = half_tr + disc;
    const Complex lm = half_tr - disc;

    constexpr double off_diagonal_zero = 1e-15;
    const bool diagonal =
        std::abs(b) <= off_diagonal_zero && std::abs(c) <= off_diagonal_zero;
    if (diagonal || std::abs(lp - lm) < kDegenerateGap) {
        return {{EigenPair{a, QubitState::zero()},
                 EigenPair{d, QubitState::one()}},
                !diagonal || std::abs(a - d) < kDegenerateGap};
    }

    auto vector_for = [&](Complex lambda) {
        const Complex v1a = b;
        const Complex v1b = lambda - a;
        const Complex v2a = lambda - d;
        const Complex v2b = c;
        const double n1 = std::norm(v1a) + std::norm(v1b);
        const double n2 = std::norm(v2a) + std::norm(v2b);
        const QubitState v = n1 >= n2 ? QubitState::normalized(v1a, v1b)
                                      : QubitState::normalized(v2a, v2b);
        return v.canonical();
    };
    return {{EigenPair{lp, vector_for(lp)}, EigenPair{lm, vector_for(lm)}},
            false};
}

/// Eigenvectors whose eigenvalue lies within @p tol of +1.
inline std::vector<QubitState> fixed_points(const Unitary2 &u,
                                            double tol = kFixedPointTolerance) {
    std::vector<QubitState> out;
    for (const EigenPair &p : eigensystem(u).pairs) {
        if (std::abs(p.value - 1.0) <= tol) {
            out.push_back(p.vector);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Born-rule readout in the computational basis.

struct Measurement {
    int outcome;
    QubitState collapsed;
};

inline Measurement measure(const QubitState &state, Rng &rng) {
    if (rng.uniform() < state.prob0()) {
        return {0, QubitState::zero()};
    }
    return {1, QubitState::one()};
}

inline Measurement measure(const QubitState &state, std::uint64_t seed) {
    Rng rng(seed);
    return measure(state, rng);
}

/// Outcome counts for @p n fresh copies of @p state.
inline std::array<std::uint64_t, 2>
sample_counts(const QubitState &state, std::uint64_t n, Rng &rng) {
    std::array<std::uint64_t, 2> counts{0, 0};
    for (std::uint64_t i = 0; i < n; ++i) {
        ++counts[static_cast<std::size_t>(measure(state, rng).outcome)];
    }
    return counts;
}

} // namespace thomson::qubit
