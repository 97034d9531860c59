// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "blockade.hpp"
#include "device.hpp"

// Exact rotating-frame dynamics. Per drive segment the Hamiltonian is
// constant:
//   H = sum_{i in driven species} (Omega_i / 2) (e^{i phi} |g_i><e_i| + h.c.)
//     + sum_{<i,j>} 2 zeta |e_i e_j><e_i e_j|
// with Omega_i = multiplier(i) * Omega. Propagation is by dense Hermitian
// eigendecomposition (cyclic Jacobi), chosen for bit-stable results; the
// blockade model is recovered in the eta_BR = |zeta/Omega| >> 1 limit.

namespace zzpulse {

struct DriveSegment {
    Species species = Species::B;
    double duration = 0.0;  // units of 1/Omega_ref
    double omega = 0.0;     // base (multiplier-1) Rabi frequency
    double phi = 0.0;
};

namespace detail {

/// Dense complex Hermitian eigensolver, cyclic Jacobi. Diagonalizes in
/// place; returns eigenvalues, fills `vecs` column-major with V such that
/// H = V diag(w) V^dag.
inline std::vector<double> hermitian_eigen(std::vector<complexd>& h, std::size_t m,
                                           std::vector<complexd>& vecs) {
    vecs.assign(m * m, complexd{});
    for (std::size_t i = 0; i < m; ++i) vecs[i * m + i] = 1.0;
    auto at = [&](std::size_t r, std::size_t c) -> complexd& { return h[r * m + c]; };

    double scale = 0.0;
    for (std::size_t i = 0; i < m * m; ++i) scale = std::max(scale, std::abs(h[i]));
    if (scale == 0.0) scale = 1.0;

    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += std::norm(at(p, q));
        if (std::sqrt(off) < 1e-14 * scale * static_cast<double>(m)) {
            std::vector<double> w(m);
            for (std::size_t i = 0; i < m; ++i) w[i] = at(i, i).real();
            return w;
        }
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const complexd hpq = at(p, q);
                const double t = std::abs(hpq);
                if (t < 1e-300) continue;
                const complexd u = hpq / t;  // phase of the pivot
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * t, app - aqq);
                const double c = std::cos(theta), s = std::sin(theta);
                const complexd jp = -s * u;       // J[p][q]
                const complexd jq = s * std::conj(u);  // J[q][p]
                // H <- J^dag H J ; only rows/cols p and q change.
                for (std::size_t k = 0; k < m; ++k) {
                    const complexd hkp = at(k, p);
                    const complexd hkq = at(k, q);
                    at(k, p) = c * hkp + jq * hkq;
                    at(k, q) = jp * hkp + c * hkq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const complexd hpk = at(p, k);
                    const complexd hqk = at(q, k);
                    at(p, k) = c * hpk + std::conj(jq) * hqk;
                    at(q, k) = std::conj(jp) * hpk + c * hqk;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const complexd vkp = vecs[k * m + p];
                    const complexd vkq = vecs[k * m + q];
                    vecs[k * m + p] = c * vkp + jq * vkq;
                    vecs[k * m + q] = jp * vkp + c * vkq;
                }
            }
        }
    }
    throw std::runtime_error("hermitian_eigen: Jacobi did not converge");
}

}  // namespace detail

/// Dense Hamiltonian of one segment over the device's full Hilbert space.
/// Row-major, dimension 2^sites. Hermitian by construction.
inline std::vector<complexd> segment_hamiltonian(const Device& d, const DriveSegment& seg) {
    const int ns = d.site_count();
    const std::size_t dim = std::size_t{1} << ns;
    std::vector<complexd> h(dim * dim, complexd{});

    // always-on ZZ part: +2 zeta per edge on |e_i e_j> components (bits 0)
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double diag = 0.0;
        for (const auto& [i, j] : d.edges) {
            const bool ei = ((idx >> i) & 1u) == 0;
            const bool ej = ((idx >> j) & 1u) == 0;
            if (ei && ej) diag += 2.0 * d.zeta;
        }
        h[idx * dim + idx] = diag;
    }

    // drive part on the active species: (Omega_i/2) e^{i phi} |g><e| + h.c.
    const complexd ge = 0.5 * std::polar(1.0, seg.phi);  // <g|H|e> coefficient (x Omega_i)
    for (const auto& site : d.sites) {
        if (site.species != seg.species) continue;
        const double omega_i = multiplier(site.subgroup) * seg.omega;
        if (omega_i == 0.0) continue;
        const uint64_t bit = uint64_t{1} << site.id;
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if ((idx & bit) != 0) continue;  // idx has site excited, idx|bit ground
            const std::size_t ig = idx | bit;
            h[ig * dim + idx] += omega_i * ge;             // |g><e|
            h[idx * dim + ig] += omega_i * std::conj(ge);  // |e><g|
        }
    }
    return h;
}

/// Propagate through piecewise-constant segments by exact exponentiation.
/// One species per segment; local error per segment is at the eigensolver
/// floor, so any tol below 1e-13 is rejected as unachievable.
inline StateVector evolve_exact(StateVector s, const Device& d,
                                std::span<const DriveSegment> segments, double tol) {
    const int ns = d.site_count();
    if (ns > 12) throw std::invalid_argument("evolve_exact: dense path capped at 12 sites");
    if (s.dim() != (std::size_t{1} << ns)) {
        throw std::invalid_argument("evolve_exact: state dimension does not match device");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("evolve_exact: tol must be positive");
    if (tol < 1e-13) {
        throw std::runtime_error("evolve_exact: tolerance unachievable within step budget");
    }
    const std::size_t dim = s.dim();
    for (const auto& seg : segments) {
        if (seg.duration < 0.0) throw std::invalid_argument("evolve_exact: negative duration");
        if (seg.duration == 0.0) continue;
        auto h = segment_hamiltonian(d, seg);
        std::vector<complexd> v;
        const auto w = detail::hermitian_eigen(h, dim, v);
        // s <- V exp(-i w T) V^dag s
        std::vector<complexd> y(dim, complexd{});
        for (std::size_t k = 0; k < dim; ++k) {
            complexd acc{};
            for (std::size_t i = 0; i < dim; ++i) acc += std::conj(v[i * dim + k]) * s.amp[i];
            y[k] = std::polar(1.0, -w[k] * seg.duration) * acc;
        }
        for (std::size_t i = 0; i < dim; ++i) {
            complexd acc{};
            for (std::size_t k = 0; k < dim; ++k) acc += v[i * dim + k] * y[k];
            s.amp[i] = acc;
        }
    }
    return s;
}

/// Equal-pulse-area mapping from an ideal schedule step: theta = Omega T,
/// negative base angles realized by phi -> phi + pi.
inline DriveSegment segment_from_step(const ScheduleStep& step, double omega) {
    DriveSegment seg;
    seg.species = step.species;
    seg.omega = omega;
    const double theta = step.pulse.theta;
    seg.duration = std::abs(theta) / omega;
    seg.phi = theta < 0.0 ? step.pulse.phi + kPi : step.pulse.phi;
    return seg;
}

/// For each eta: set Omega = zeta/eta, integrate the schedule exactly and
/// report 1 - fidelity against the ideal blockade result. Rows follow the
/// input eta order; duplicate etas give identical rows.
inline std::vector<std::pair<double, double>> blockade_error_sweep(
    const Device& d, const std::vector<ScheduleStep>& steps, const std::vector<double>& etas,
    double tol, const std::string& init_bits) {
    if (d.site_count() > 12) {
        throw std::invalid_argument("blockade_error_sweep: device capped at 12 sites");
    }
    const StateVector init = init_state(d, init_bits);
    const StateVector ideal = apply_schedule(init, d, steps);

    std::vector<std::pair<double, double>> rows;
    rows.reserve(etas.size());
    for (const double eta : etas) {
        if (!(eta > 0.0)) throw std::invalid_argument("blockade_error_sweep: eta must be > 0");
        const double omega = d.zeta / eta;
        std::vector<DriveSegment> segs;
        segs.reserve(steps.size());
        for (const auto& st : steps) segs.push_back(segment_from_step(st, omega));
        const StateVector exact = evolve_exact(init, d, segs, tol);
        rows.emplace_back(eta, 1.0 - fidelity(exact, ideal));
    }
    return rows;
}

inline std::vector<std::pair<double, double>> blockade_error_sweep(
    const Device& d, const std::vector<ScheduleStep>& steps, const std::vector<double>& etas,
    double tol) {
    return blockade_error_sweep(d, steps, etas, tol, std::string(static_cast<std::size_t>(d.n), '0'));
}

}  // namespace zzpulse
