// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockade.hpp"
#include "rotor.hpp"

// gqc circuit format and the logical-space reference simulator. The
// reference path is deliberately plain gate-matrix arithmetic over standard
// logical conventions (|0>, |1> with bit k-1 of the amplitude index holding
// qubit k); it is the oracle the pulse-level pipeline is checked against.

namespace zzpulse {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int l, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct Gate {
    enum class Kind { H, RX, RY, RZ, R, CZ, CNOT, CCX, SWAP };
    Kind kind = Kind::H;
    double theta = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};
    std::array<int, 3> q{-1, -1, -1};  // 1-based qubit operands
    int line = 0;

    int arity() const {
        switch (kind) {
            case Kind::CCX: return 3;
            case Kind::CZ:
            case Kind::CNOT:
            case Kind::SWAP: return 2;
            default: return 1;
        }
    }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
};

namespace detail {

inline double parse_double(const std::string& tok, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "malformed number '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(v)) {
        throw ParseError(line, "malformed number '" + tok + "'");
    }
    return v;
}

inline int parse_qubit(const std::string& tok, int line, int n) {
    if (tok.size() < 2 || tok[0] != 'q') throw ParseError(line, "expected qubit operand, got '" + tok + "'");
    int idx = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) {
            throw ParseError(line, "expected qubit operand, got '" + tok + "'");
        }
        idx = idx * 10 + (tok[i] - '0');
        if (idx > 1'000'000) throw ParseError(line, "qubit index overflow");
    }
    if (idx < 1 || idx > n) {
        throw ParseError(line, "qubit index q" + std::to_string(idx) + " out of range [1, " +
                                   std::to_string(n) + "]");
    }
    return idx;
}

}  // namespace detail

inline Circuit parse_circuit(const std::string& text) {
    Circuit circ;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (!header_seen) {
            if (tok[0] != "qubits" || tok.size() != 2) {
                throw ParseError(line_no, "expected header 'qubits <n>'");
            }
            const double nv = detail::parse_double(tok[1], line_no);
            if (nv < 1 || nv != static_cast<int>(nv)) {
                throw ParseError(line_no, "qubit count must be a positive integer");
            }
            circ.num_qubits = static_cast<int>(nv);
            header_seen = true;
            continue;
        }

        Gate g;
        g.line = line_no;
        const std::string& m = tok[0];
        std::size_t pos = 1;
        if (m == "H") {
            g.kind = Gate::Kind::H;
        } else if (m == "RX" || m == "RY" || m == "RZ") {
            g.kind = m == "RX" ? Gate::Kind::RX : (m == "RY" ? Gate::Kind::RY : Gate::Kind::RZ);
            if (tok.size() < 2) throw ParseError(line_no, m + " requires an angle");
            g.theta = detail::parse_double(tok[pos++], line_no);
            g.axis = m == "RX" ? Vec3{1, 0, 0} : (m == "RY" ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
        } else if (m == "R") {
            g.kind = Gate::Kind::R;
            if (tok.size() < 6) throw ParseError(line_no, "R requires <theta> <nx> <ny> <nz> q<i>");
            g.theta = detail::parse_double(tok[pos++], line_no);
            Vec3 ax;
            for (int k = 0; k < 3; ++k) ax[static_cast<std::size_t>(k)] = detail::parse_double(tok[pos++], line_no);
            if (norm(ax) < 1e-12) throw ParseError(line_no, "R axis must be nonzero");
            g.axis = normalized(ax);
        } else if (m == "CZ") {
            g.kind = Gate::Kind::CZ;
        } else if (m == "CNOT") {
            g.kind = Gate::Kind::CNOT;
        } else if (m == "CCX") {
            g.kind = Gate::Kind::CCX;
        } else if (m == "SWAP") {
            g.kind = Gate::Kind::SWAP;
        } else {
            throw ParseError(line_no, "unknown mnemonic '" + m + "'");
        }

        const int arity = g.arity();
        if (tok.size() != pos + static_cast<std::size_t>(arity)) {
            throw ParseError(line_no, m + " expects " + std::to_string(arity) + " qubit operand(s)");
        }
        for (int k = 0; k < arity; ++k) {
            g.q[static_cast<std::size_t>(k)] =
                detail::parse_qubit(tok[pos++], line_no, circ.num_qubits);
        }
        for (int i = 0; i < arity; ++i) {
            for (int j = i + 1; j < arity; ++j) {
                if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)]) {
                    throw ParseError(line_no, "operands must be distinct");
                }
            }
        }
        circ.gates.push_back(g);
    }
    if (!header_seen) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits <n>' header");
    return circ;
}

// ---------------------------------------------------------------------------
// Reference simulation (logical space)
// ---------------------------------------------------------------------------

namespace detail {

inline void ref_apply_1q(std::vector<complexd>& amp, int qubit, const Mat2& m) {
    const std::size_t bit = std::size_t{1} << (qubit - 1);
    for (std::size_t idx = 0; idx < amp.size(); ++idx) {
        if (idx & bit) continue;
        const complexd a0 = amp[idx];
        const complexd a1 = amp[idx | bit];
        amp[idx] = m.a[0] * a0 + m.a[1] * a1;
        amp[idx | bit] = m.a[2] * a0 + m.a[3] * a1;
    }
}

/// exp(-i theta/2 n.sigma) on the logical (|0>,|1>) ordering.
inline Mat2 ref_rotation(double theta, const Vec3& n) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    return Mat2{{complexd{c, -s * n[2]}, complexd{-s * n[1], -s * n[0]},
                 complexd{s * n[1], -s * n[0]}, complexd{c, s * n[2]}}};
}

}  // namespace detail

inline StateVector reference_simulate(const Circuit& circ) {
    if (circ.num_qubits > 12) {
        throw std::invalid_argument("reference_simulate: capacity exceeded (n <= 12)");
    }
    StateVector s;
    s.num_sites = circ.num_qubits;
    s.amp.assign(std::size_t{1} << circ.num_qubits, complexd{});
    s.amp[0] = 1.0;  // |0...0>

    const double inv_s2 = 1.0 / std::sqrt(2.0);
    const Mat2 h{{complexd{inv_s2}, complexd{inv_s2}, complexd{inv_s2}, complexd{-inv_s2}}};

    for (const Gate& g : circ.gates) {
        const auto bit = [&](int k) { return std::size_t{1} << (g.q[static_cast<std::size_t>(k)] - 1); };
        switch (g.kind) {
            case Gate::Kind::H:
                detail::ref_apply_1q(s.amp, g.q[0], h);
                break;
            case Gate::Kind::RX:
            case Gate::Kind::RY:
            case Gate::Kind::RZ:
            case Gate::Kind::R:
                detail::ref_apply_1q(s.amp, g.q[0], detail::ref_rotation(g.theta, g.axis));
                break;
            case Gate::Kind::CZ:
                for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
                    if ((idx & bit(0)) && (idx & bit(1))) s.amp[idx] = -s.amp[idx];
                }
                break;
            case Gate::Kind::CNOT:
                for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
                    if ((idx & bit(0)) && !(idx & bit(1))) {
                        std::swap(s.amp[idx], s.amp[idx | bit(1)]);
                    }
                }
                break;
            case Gate::Kind::CCX:
                for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
                    if ((idx & bit(0)) && (idx & bit(1)) && !(idx & bit(2))) {
                        std::swap(s.amp[idx], s.amp[idx | bit(2)]);
                    }
                }
                break;
            case Gate::Kind::SWAP:
                for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
                    if ((idx & bit(0)) && !(idx & bit(1))) {
                        std::swap(s.amp[idx], s.amp[(idx & ~bit(0)) | bit(1)]);
                    }
                }
                break;
        }
    }
    return s;
}

}  // namespace zzpulse
