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
 * JSON forms of states, unitaries, lamp traces, program tables, oracle
 * claims, optical networks and synthesis results.
 *
 * Complex numbers are [re, im] pairs. A state is [[re, im], [re, im]]; a
 * unitary is its rows, [[[re, im], [re, im]], [[re, im], [re, im]]] (a flat
 * list of four pairs is also accepted on input). Parsers reject states and
 * matrices that are not normalized or unitary within tolerance.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "thomson/diagonal.hpp"
#include "thomson/errors.hpp"
#include "thomson/optics.hpp"
#include "thomson/qubit.hpp"
#include "thomson/supertask.hpp"

namespace thomson::io {

using Json = nlohmann::json;

/// @p x rounded to @p digits significant decimal digits.
[[nodiscard]] inline double round_sig(double x, int digits = 15) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

/// Number for emission; non-finite values become null.
[[nodiscard]] inline Json number(double x, int digits = 15) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round_sig(x, digits);
}

[[nodiscard]] inline Json to_json(qubit::Complex z, int digits = 15) {
    return Json::array({number(z.real(), digits), number(z.imag(), digits)});
}

[[nodiscard]] inline qubit::Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw ParseError("complex number must be [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

[[nodiscard]] inline Json to_json(const qubit::QubitState &s, int digits = 15) {
    return Json::array({to_json(s.amp0(), digits), to_json(s.amp1(), digits)});
}

[[nodiscard]] inline qubit::QubitState
state_from_json(const Json &j, double tol = qubit::kNormTolerance) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("state must be a list of two amplitudes");
    }
    return qubit::QubitState::from_amplitudes(complex_from_json(j[0]),
                                              complex_from_json(j[1]), tol);
}

[[nodiscard]] inline Json to_json(const qubit::Unitary2 &u, int digits = 15) {
    return Json::array(
        {Json::array({to_json(u(0, 0), digits), to_json(u(0, 1), digits)}),
         Json::array({to_json(u(1, 0), digits), to_json(u(1, 1), digits)})});
}

[[nodiscard]] inline qubit::Unitary2
unitary_from_json(const Json &j, double tol = qubit::kUnitaryTolerance) {
    qubit::Unitary2::Entries e{};
    if (j.is_array() && j.size() == 2 && j[0].is_array() && j[0].size() == 2 &&
        j[0][0].is_array()) {
        for (std::size_t r = 0; r < 2; ++r) {
            if (!j[r].is_array() || j[r].size() != 2) {
                throw ParseError("matrix rows must hold two entries");
            }
            for (std::size_t c = 0; c < 2; ++c) {
                e[2 * r + c] = complex_from_json(j[r][c]);
            }
        }
    } else if (j.is_array() && j.size() == 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            e[k] = complex_from_json(j[k]);
        }
    } else {
        throw ParseError("matrix must be 2 rows of 2 [re, im] entries");
    }
    return qubit::Unitary2::from_entries(e, tol);
}

[[nodiscard]] inline Json to_json(const qubit::EigenSystem &es, int digits = 15) {
    Json pairs = Json::array();
    for (const auto &p : es.pairs) {
        pairs.push_back({{"eigenvalue", to_json(p.value, digits)},
                         {"eigenvector", to_json(p.vector, digits)}});
    }
    return {{"pairs", pairs}, {"degenerate", es.degenerate}};
}

// ---------------------------------------------------------------------------
// Lamp traces: {"initial": "on", "intervals": [{"start", "end", "state"}]}.

[[nodiscard]] inline Json to_json(const supertask::LampTrace &trace,
                                  int digits = 15) {
    Json intervals = Json::array();
    for (const auto &iv : trace.intervals()) {
        intervals.push_back({{"start", number(iv.start, digits)},
                             {"end", number(iv.end, digits)},
                             {"state", supertask::to_string(iv.state)}});
    }
    return {{"initial", supertask::to_string(trace.initial_state())},
            {"intervals", intervals}};
}

/// Rebuilds a trace, checking contiguity and alternation.
[[nodiscard]] inline supertask::LampTrace trace_from_json(const Json &j) {
    try {
        const auto initial =
            supertask::lamp_state_from_string(j.at("initial").get<std::string>());
        std::vector<supertask::Interval> out;
        for (const Json &iv : j.at("intervals")) {
            out.push_back(
                {iv.at("start").get<double>(), iv.at("end").get<double>(),
                 supertask::lamp_state_from_string(iv.at("state").get<std::string>())});
        }
        for (std::size_t n = 0; n < out.size(); ++n) {
            if (out[n].state != supertask::lamp_state_at(n, initial) ||
                (n > 0 && out[n].start != out[n - 1].end) || !(out[n].start < out[n].end)) {
                throw ParseError("trace intervals must be contiguous and alternate");
            }
        }
        return {initial, std::move(out)};
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed trace: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Program tables and oracle claims.
//
//   table:  {"programs": ["p1", ...],
//            "behavior": {"p1": {"p1": "halts", "p2": "diverges"}, ...}}
//   oracle: {"diagonal": "A",            (optional, default "A")
//            "answers": {"p1": {"p1": 1, ...}, ..., "A": {"A": 0, ...}}}
//
// The oracle universe is the key set of "answers", in document order of
// the table's programs followed by the diagonal identifier if present.

[[nodiscard]] inline diagonal::Behavior behavior_from_json(const Json &j) {
    const auto s = j.get<std::string>();
    if (s == "halts") {
        return diagonal::Behavior::Halts;
    }
    if (s == "diverges") {
        return diagonal::Behavior::Diverges;
    }
    throw ParseError("behavior must be \"halts\" or \"diverges\", got \"" + s +
                     "\"");
}

[[nodiscard]] inline diagonal::ProgramTable table_from_json(const Json &j) {
    try {
        const auto programs = j.at("programs").get<std::vector<std::string>>();
        std::vector<diagonal::Behavior> behavior;
        const Json &rows = j.at("behavior");
        for (const auto &p : programs) {
            for (const auto &x : programs) {
                if (!rows.contains(p) || !rows.at(p).contains(x)) {
                    throw ParseError("behavior table has no entry for (" + p +
                                     ", " + x + ")");
                }
                behavior.push_back(behavior_from_json(rows.at(p).at(x)));
            }
        }
        return {programs, std::move(behavior)};
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed program table: ") + e.what());
    }
}

[[nodiscard]] inline Json to_json(const diagonal::ProgramTable &t) {
    Json rows = Json::object();
    for (std::size_t p = 0; p < t.size(); ++p) {
        for (std::size_t x = 0; x < t.size(); ++x) {
            rows[t.programs()[p]][t.programs()[x]] =
                t.behavior(p, x) == diagonal::Behavior::Halts ? "halts"
                                                              : "diverges";
        }
    }
    return {{"programs", t.programs()}, {"behavior", rows}};
}

struct OracleDocument {
    diagonal::OracleClaim claim;
    diagonal::ProgramId diagonal;
};

/// Universe order: @p programs first, then any remaining keys sorted.
[[nodiscard]] inline OracleDocument
oracle_from_json(const Json &j, const std::vector<diagonal::ProgramId> &programs) {
    try {
        const std::string diag = j.value("diagonal", std::string("A"));
        const Json &rows = j.at("answers");
        std::vector<std::string> universe = programs;
        for (const auto &[key, _] : rows.items()) {
            if (std::find(universe.begin(), universe.end(), key) ==
                universe.end()) {
                universe.push_back(key);
            }
        }
        std::vector<int> answers;
        for (const auto &p : universe) {
            for (const auto &x : universe) {
                if (!rows.contains(p) || !rows.at(p).contains(x)) {
                    throw ParseError("oracle claim has no answer for (" + p +
                                     ", " + x + ")");
                }
                answers.push_back(rows.at(p).at(x).get<int>());
            }
        }
        return {diagonal::OracleClaim(std::move(universe), std::move(answers)),
                diag};
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed oracle claim: ") + e.what());
    }
}

[[nodiscard]] inline Json to_json(const diagonal::DiagonalReport &r) {
    Json out = {{"consistent", r.consistent}};
    if (r.witness) {
        out["witness"] = Json::array({r.witness->first, r.witness->second});
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Optics: [{"kind": "ps0"|"ps1"|"bs", "param": radians}, ...].

[[nodiscard]] inline optics::OpticalNetwork network_from_json(const Json &j) {
    if (!j.is_array()) {
        throw ParseError("optical network must be a list of elements");
    }
    try {
        std::vector<optics::OpticalElement> elements;
        for (const Json &e : j) {
            elements.emplace_back(
                optics::element_kind_from_string(e.at("kind").get<std::string>()),
                e.at("param").get<double>());
        }
        return optics::OpticalNetwork(std::move(elements));
    } catch (const Json::exception &e) {
        throw ParseError(std::string("malformed optical network: ") + e.what());
    }
}

[[nodiscard]] inline Json to_json(const optics::OpticalNetwork &n,
                                  int digits = 15) {
    Json out = Json::array();
    for (const auto &e : n.elements()) {
        out.push_back({{"kind", optics::to_string(e.kind)},
                       {"param", number(e.parameter, digits)}});
    }
    return out;
}

[[nodiscard]] inline Json to_json(const optics::SynthesisResult &r,
                                  int digits = 15) {
    return {{"params",
             {{"omega", number(r.params.omega, digits)},
              {"alpha", number(r.params.alpha, digits)},
              {"beta", number(r.params.beta, digits)},
              {"phi", number(r.params.phi, digits)}}},
            {"within_u2_ranges", r.params.in_u2_ranges()},
            {"residual", number(r.residual, digits)},
            {"global_phase", number(r.global_phase, digits)}};
}

} // namespace thomson::io
