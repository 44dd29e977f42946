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
 * The diagonal (halting) argument replayed on finite tables of declared
 * program behavior, and its quantum counterpart.
 *
 * An oracle claim h(B, X) in {0, 1} asserts whether program B halts on input
 * X. The diagonal program A halts on X exactly when h(X, X) = 0. Asking the
 * claim about A(A) itself is the self-application that no claim survives.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "thomson/errors.hpp"
#include "thomson/qubit.hpp"
#include "thomson/random.hpp"

namespace thomson::diagonal {

enum class Behavior { Halts, Diverges };

[[nodiscard]] constexpr int halting_bit(Behavior b) noexcept {
    return b == Behavior::Halts ? 1 : 0;
}

using ProgramId = std::string;

namespace detail {
inline void require_unique(const std::vector<ProgramId> &ids) {
    std::vector<ProgramId> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        throw ParseError("duplicate program identifier \"" + *dup + "\"");
    }
    if (ids.empty()) {
        throw ParseError("program universe must not be empty");
    }
}

inline std::optional<std::size_t> find(const std::vector<ProgramId> &ids,
                                       const ProgramId &id) {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - ids.begin());
}
} // namespace detail

/// Total behavior table: behavior(p, x) for every p, x in the universe.
class ProgramTable {
  public:
    /// @p behavior is row-major: behavior[p * n + x] is program p on input x.
    ProgramTable(std::vector<ProgramId> programs, std::vector<Behavior> behavior)
        : programs_(std::move(programs)), behavior_(std::move(behavior)) {
        detail::require_unique(programs_);
        if (behavior_.size() != programs_.size() * programs_.size()) {
            throw ParseError("behavior table is not total over the universe");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return programs_.size(); }
    [[nodiscard]] const std::vector<ProgramId> &programs() const noexcept {
        return programs_;
    }
    [[nodiscard]] Behavior behavior(std::size_t program,
                                    std::size_t input) const {
        return behavior_.at(program * size() + input);
    }
    [[nodiscard]] std::optional<std::size_t> index_of(const ProgramId &id) const {
        return detail::find(programs_, id);
    }

  private:
    std::vector<ProgramId> programs_;
    std::vector<Behavior> behavior_;
};

/// Total claim h(p, x) in {0, 1} over its own universe.
class OracleClaim {
  public:
    OracleClaim(std::vector<ProgramId> universe, std::vector<int> answers)
        : universe_(std::move(universe)), answers_(std::move(answers)) {
        detail::require_unique(universe_);
        if (answers_.size() != universe_.size() * universe_.size()) {
            throw ParseError("oracle claim is not total over its universe");
        }
        for (int a : answers_) {
            if (a != 0 && a != 1) {
                throw ParseError("oracle answers must be 0 or 1");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return universe_.size(); }
    [[nodiscard]] const std::vector<ProgramId> &universe() const noexcept {
        return universe_;
    }
    [[nodiscard]] int answer(std::size_t program, std::size_t input) const {
        return answers_.at(program * size() + input);
    }
    [[nodiscard]] std::optional<std::size_t> index_of(const ProgramId &id) const {
        return detail::find(universe_, id);
    }

  private:
    std::vector<ProgramId> universe_;
    std::vector<int> answers_;
};

/// The diagonal program built from a claim about a table.
struct DiagonalProgram {
    ProgramId id;
    /// row[x] is the behavior of the diagonal program on original input x.
    std::vector<Behavior> row;

    /// A(A) as induced by a claim's answer about it.
    [[nodiscard]] static Behavior self_behavior(int claimed) noexcept {
        return claimed == 0 ? Behavior::Halts : Behavior::Diverges;
    }
};

using Witness = std::pair<ProgramId, ProgramId>;

struct DiagonalReport {
    bool consistent = true;
    std::optional<Witness> witness;
};

/**
 * Adds the diagonal program: A(X) = Halts iff oracle(X, X) = 0 for each X
 * in the table's universe. The claim must cover that universe and may also
 * cover A.
 */
[[nodiscard]] inline DiagonalProgram
build_diagonal_program(const ProgramTable &table, const OracleClaim &oracle,
                       ProgramId diagonal = "A") {
    if (table.index_of(diagonal)) {
        throw ParseError("diagonal identifier \"" + diagonal +
                         "\" already names a program");
    }
    std::vector<Behavior> row;
    row.reserve(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        const auto ox = oracle.index_of(table.programs()[x]);
        if (!ox) {
            throw ParseError("oracle claim does not cover program \"" +
                             table.programs()[x] + "\"");
        }
        row.push_back(oracle.answer(*ox, *ox) == 0 ? Behavior::Halts
                                                   : Behavior::Diverges);
    }
    return {std::move(diagonal), std::move(row)};
}

/// Claim vs. declared behavior when no self-reference is present.
[[nodiscard]] inline DiagonalReport check_consistency(const ProgramTable &table,
                                                      const OracleClaim &oracle) {
    std::vector<std::size_t> map(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto j = oracle.index_of(table.programs()[i]);
        if (!j) {
            throw ParseError("oracle claim does not cover program \"" +
                             table.programs()[i] + "\"");
        }
        map[i] = *j;
    }
    for (std::size_t p = 0; p < table.size(); ++p) {
        for (std::size_t x = 0; x < table.size(); ++x) {
            if (oracle.answer(map[p], map[x]) !=
                halting_bit(table.behavior(p, x))) {
                return {false, Witness{table.programs()[p], table.programs()[x]}};
            }
        }
    }
    return {true, std::nullopt};
}

/**
 * Checks a claim over the universe extended by the diagonal program.
 *
 * The self-application (A, A) is checked first: a claim of 1 makes A(A)
 * diverge and a claim of 0 makes it halt. Remaining pairs with declared
 * behavior (original pairs, then A on original inputs) follow in row-major
 * order. Behavior of original programs on input A is undeclared and is not
 * checked.
 */
[[nodiscard]] inline DiagonalReport
check_diagonal_consistency(const ProgramTable &table,
                           const DiagonalProgram &diag,
                           const OracleClaim &oracle) {
    const auto self = oracle.index_of(diag.id);
    if (!self) {
        throw ParseError("oracle claim has no answer for (" + diag.id + ", " +
                         diag.id + ")");
    }
    const int claimed = oracle.answer(*self, *self);
    if (claimed != halting_bit(DiagonalProgram::self_behavior(claimed))) {
        return {false, Witness{diag.id, diag.id}};
    }
    const DiagonalReport base = check_consistency(table, oracle);
    if (!base.consistent) {
        return base;
    }
    for (std::size_t x = 0; x < table.size(); ++x) {
        const auto ox = *oracle.index_of(table.programs()[x]);
        if (oracle.answer(*self, ox) != halting_bit(diag.row[x])) {
            return {false, Witness{diag.id, table.programs()[x]}};
        }
    }
    return {true, std::nullopt};
}

struct SweepSummary {
    std::size_t universe_size = 0;
    std::uint64_t cases = 0;
    std::uint64_t inconsistent = 0;
    std::uint64_t witness_at_diagonal = 0;

    [[nodiscard]] bool all_contradict() const noexcept {
        return cases > 0 && inconsistent == cases &&
               witness_at_diagonal == cases;
    }
};

namespace detail {

inline std::vector<ProgramId> numbered_programs(std::size_t n) {
    std::vector<ProgramId> programs;
    for (std::size_t i = 0; i < n; ++i) {
        programs.push_back("p" + std::to_string(i + 1));
    }
    return programs;
}

inline ProgramTable table_from_bits(const std::vector<ProgramId> &programs,
                                    std::uint64_t bits) {
    const std::size_t cells = programs.size() * programs.size();
    std::vector<Behavior> behavior(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        behavior[i] = ((bits >> i) & 1U) ? Behavior::Halts : Behavior::Diverges;
    }
    return {programs, std::move(behavior)};
}

inline OracleClaim claim_from_bits(const std::vector<ProgramId> &universe,
                                   std::uint64_t bits) {
    const std::size_t cells = universe.size() * universe.size();
    std::vector<int> answers(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        answers[i] = static_cast<int>((bits >> i) & 1U);
    }
    return {universe, std::move(answers)};
}

} // namespace detail

/**
 * Every behavior table on n programs against every total claim over the
 * universe extended by A: 2^(n^2) tables times 2^((n+1)^2) claims. Tables
 * are split across @p threads workers; the counts are order independent.
 */
[[nodiscard]] inline SweepSummary exhaustive_sweep(std::size_t n,
                                                   unsigned threads = 0) {
    if (n < 1 || n > 3) {
        throw OutOfDomain("exhaustive_sweep: universe size must be 1..3");
    }
    const std::vector<ProgramId> programs = detail::numbered_programs(n);
    std::vector<ProgramId> extended = programs;
    extended.push_back("A");
    const std::size_t m = n + 1;

    const std::uint64_t table_count = std::uint64_t{1} << (n * n);
    const std::uint64_t claim_count = std::uint64_t{1} << (m * m);
    std::vector<OracleClaim> claims;
    claims.reserve(claim_count);
    for (std::uint64_t cb = 0; cb < claim_count; ++cb) {
        claims.push_back(detail::claim_from_bits(extended, cb));
    }

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, table_count));
    std::vector<SweepSummary> partial(threads);
    const Witness self_witness{"A", "A"};
    auto work = [&](unsigned w) {
        SweepSummary &s = partial[w];
        for (std::uint64_t tb = w; tb < table_count; tb += threads) {
            const ProgramTable table = detail::table_from_bits(programs, tb);
            for (const OracleClaim &claim : claims) {
                const DiagonalProgram diag = build_diagonal_program(table, claim);
                const DiagonalReport r =
                    check_diagonal_consistency(table, diag, claim);
                ++s.cases;
                if (!r.consistent) {
                    ++s.inconsistent;
                    if (r.witness == self_witness) {
                        ++s.witness_at_diagonal;
                    }
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back(work, w);
    }
    for (std::thread &t : pool) {
        t.join();
    }

    SweepSummary summary;
    summary.universe_size = n;
    for (const SweepSummary &s : partial) {
        summary.cases += s.cases;
        summary.inconsistent += s.inconsistent;
        summary.witness_at_diagonal += s.witness_at_diagonal;
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Quantum diagonalization.

/// The diagonal flip applied to a qubit-valued oracle answer.
[[nodiscard]] inline qubit::QubitState
quantum_diagonal_response(const qubit::QubitState &oracle_output) {
    return qubit::not_gate().apply(oracle_output);
}

struct ReadoutReport {
    std::uint64_t seed;
    std::uint64_t samples;
    std::array<std::uint64_t, 2> counts;
    std::array<double, 2> frequencies;
    /// Binomial standard error of frequencies[0].
    double std_error;
    /// Pearson statistic against the Born probabilities (1 dof).
    double chi_square;
};

/// Measures @p n_samples fresh copies of @p state in the computational basis.
[[nodiscard]] inline ReadoutReport classical_readout(const qubit::QubitState &state,
                                                     std::uint64_t seed,
                                                     std::uint64_t n_samples) {
    if (n_samples < 1) {
        throw OutOfDomain("classical_readout: n_samples must be >= 1");
    }
    Rng rng(seed);
    const auto counts = qubit::sample_counts(state, n_samples, rng);
    const double n = static_cast<double>(n_samples);
    const std::array<double, 2> freq{counts[0] / n, counts[1] / n};
    const std::array<double, 2> expected{state.prob0() * n, state.prob1() * n};
    double chi = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        if (expected[i] > 0.0) {
            const double d = static_cast<double>(counts[i]) - expected[i];
            chi += d * d / expected[i];
        }
    }
    return {seed, n_samples, counts, freq,
            std::sqrt(freq[0] * (1.0 - freq[0]) / n), chi};
}

} // namespace thomson::diagonal
