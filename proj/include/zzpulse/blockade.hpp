// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "device.hpp"
#include "synth.hpp"

// Ideal-model statevector engine. A global pulse on species chi applies, to
// every site i of that species, the control-unitary
//   W_i(theta_i, n) = R_i(theta_i, n) (x) P_<i>  +  1_i (x) Q_<i>
// where P projects onto all-neighbors-ground and theta_i carries the site's
// subgroup multiplier. Amplitude layout: index bit k belongs to site k, with
// the per-site basis ordered (|e>, |g>): bit 0 = excited, bit 1 = ground.

namespace zzpulse {

struct StateVector {
    int num_sites = 0;
    std::vector<complexd> amp;

    static StateVector zero(int sites) {
        if (sites < 1 || sites > 24) {
            throw std::invalid_argument("StateVector: site count out of range");
        }
        StateVector s;
        s.num_sites = sites;
        s.amp.assign(std::size_t{1} << sites, complexd{});
        return s;
    }

    /// Product basis state: bit k of `index` selects site k's basis element
    /// (0 = |e>, 1 = |g>).
    static StateVector basis(int sites, uint64_t index) {
        StateVector s = zero(sites);
        s.amp[index] = 1.0;
        return s;
    }

    std::size_t dim() const { return amp.size(); }

    double norm() const {
        double n2 = 0.0;
        for (const auto& a : amp) n2 += std::norm(a);
        return std::sqrt(n2);
    }
};

/// |<a|b>|^2, insensitive to global phase.
inline double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    complexd ov{};
    for (std::size_t i = 0; i < a.dim(); ++i) ov += std::conj(a.amp[i]) * b.amp[i];
    return std::norm(ov);
}

/// <a|b>, for phase-aware checks.
inline complexd overlap(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("overlap: dimension mismatch");
    complexd ov{};
    for (std::size_t i = 0; i < a.dim(); ++i) ov += std::conj(a.amp[i]) * b.amp[i];
    return ov;
}

/// One global bang-bang segment aimed at a species.
struct ScheduleStep {
    Species species = Species::B;
    GlobalPulse pulse;
};

/// Rotate `site` by `r` on the amplitude components where every bit of
/// `blockade_mask` is ground; identity elsewhere. This is the W operator of
/// one site; exposed so tests can permute per-site application order.
inline void apply_site_rotation(StateVector& s, int site, const Mat2& r, uint64_t blockade_mask) {
    const uint64_t bit = uint64_t{1} << site;
    const std::int64_t dim = static_cast<std::int64_t>(s.dim());
    const complexd m00 = r.a[0], m01 = r.a[1], m10 = r.a[2], m11 = r.a[3];
    complexd* amp = s.amp.data();
#pragma omp parallel for schedule(static) if (dim >= (1 << 14))
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        const auto u = static_cast<uint64_t>(idx);
        if ((u & bit) != 0) continue;  // handle each (e,g) pair once, from the e side
        if ((u & blockade_mask) != blockade_mask) continue;  // a neighbor is excited
        const uint64_t ig = u | bit;
        const complexd ae = amp[u];
        const complexd ag = amp[ig];
        amp[u] = m00 * ae + m01 * ag;
        amp[ig] = m10 * ae + m11 * ag;
    }
}

/// Apply one global pulse: every site of the step's species rotates by its
/// multiplier-scaled angle under its own blockade projector. Same-species
/// sites commute (P1: they are never adjacent and shared-neighbor controls
/// are diagonal); ascending id order is used.
inline void apply_step(StateVector& s, const Device& d, const ScheduleStep& step) {
    if (s.dim() != (std::size_t{1} << d.site_count())) {
        throw std::invalid_argument("apply_step: state dimension does not match device");
    }
    const auto masks = d.neighbor_masks();
    const Vec3 axis = TransverseAxis(step.pulse.phi).axis();
    for (const auto& site : d.sites) {
        if (site.species != step.species) continue;
        const double theta = multiplier(site.subgroup) * step.pulse.theta;
        if (theta == 0.0) continue;
        apply_site_rotation(s, site.id, matrix(Rotation(theta, axis)),
                            masks[static_cast<std::size_t>(site.id)]);
    }
}

inline void apply_schedule(StateVector& s, const Device& d, std::span<const ScheduleStep> steps) {
    for (const auto& st : steps) apply_step(s, d, st);
}

inline StateVector apply_schedule(StateVector s, const Device& d,
                                  const std::vector<ScheduleStep>& steps) {
    apply_schedule(s, d, std::span<const ScheduleStep>(steps));
    return s;
}

/// Encoded initial product state. Logical |0> -> |g>, |1> -> |e> at the
/// anchor sites. Conveyor: mediators and hub ground. Ladder: Neel background
/// (A columns ground, B columns excited) left of the information-carrying
/// column, ferromagnetic all-ground to its right, connectors ground.
inline StateVector init_state(const Device& d, const std::string& logical) {
    if (static_cast<int>(logical.size()) != d.n) {
        throw std::invalid_argument("init_state: bitstring length must equal logical qubits");
    }
    const int ns = d.site_count();
    uint64_t index = (ns == 64) ? ~uint64_t{0} : (uint64_t{1} << ns) - 1;  // all ground

    if (d.architecture == "ladder") {
        const LadderLayout lay(d);
        const int icc = lay.initial_icc_col();
        for (int r = 0; r < d.n; ++r) {
            for (int c = 0; c < icc; ++c) {
                if (c % 2 == 1) index &= ~(uint64_t{1} << lay.site(r, c));  // Neel B: excited
            }
        }
    }
    for (int k = 0; k < d.n; ++k) {
        const char b = logical[static_cast<std::size_t>(k)];
        if (b != '0' && b != '1') throw std::invalid_argument("init_state: bits must be 0/1");
        if (b == '1') index &= ~(uint64_t{1} << d.logical_map[static_cast<std::size_t>(k)]);
    }
    return StateVector::basis(ns, index);
}

}  // namespace zzpulse
