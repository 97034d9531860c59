// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rotor.hpp"

// Bang-bang pulse synthesis for subgroups with geometric Rabi multipliers
// 2^(j-1): a single global pulse of base angle theta rotates subgroup j by
// 2^(j-1) theta about the same transverse axis. synth_targets compiles an
// arbitrary per-subgroup target list into a finite pulse sequence whose
// per-subgroup product reproduces every target exactly (the construction is
// phase-free: each step below cancels without residual sign).

namespace zzpulse {

/// One global bang-bang segment: base angle (the multiplier-1 angle) and
/// transverse drive phase. Angles may be negative here; serialization
/// normalizes to theta >= 0 via phi -> phi + pi.
struct GlobalPulse {
    double theta = 0.0;
    double phi = 0.0;
};

/// Ordered per-subgroup targets; index j-1 is the subgroup with multiplier
/// 2^(j-1). Practical bound N <= 8: sequence length grows like 4^(N-1).
using TargetList = std::vector<Rotation>;

inline constexpr int kMaxSubgroups = 8;
/// synth_targets emits at most kSynthLengthConstant * 4^(N-1) pulses.
inline constexpr int kSynthLengthConstant = 8;

/// The rotations subgroups 1..n experience under one global pulse.
inline std::vector<Rotation> pulse_to_rotations(const GlobalPulse& p, int n_subgroups) {
    if (n_subgroups < 1) throw std::invalid_argument("pulse_to_rotations: need n >= 1");
    std::vector<Rotation> out;
    out.reserve(static_cast<std::size_t>(n_subgroups));
    const Vec3 axis = TransverseAxis(p.phi).axis();
    double mult = 1.0;
    for (int j = 0; j < n_subgroups; ++j, mult *= 2.0) {
        out.emplace_back(mult * p.theta, axis);
    }
    return out;
}

/// The 4-pulse block M(theta, a): identity on subgroup 1 (exactly), and
/// R(2^(j-2) theta, a) on every subgroup j >= 2 -- i.e. subgroups 2..N
/// behave like subgroups 1..N-1 of a single pulse (theta, a). The two pi
/// pulses about the orthogonal transverse axis b cancel pairwise on
/// subgroup 1 and contribute matching signs on the rest.
inline std::vector<GlobalPulse> suppress_first(double theta, TransverseAxis a, int n_subgroups) {
    if (n_subgroups < 2) throw std::invalid_argument("suppress_first: need n >= 2");
    const double phi_b = a.phi + 0.5 * kPi;
    return {{0.25 * theta, a.phi}, {kPi, phi_b}, {0.25 * theta, a.phi}, {kPi, phi_b + kPi}};
}

/// Five pulses realizing R(theta, a) on subgroup 1 and identity on
/// subgroups 2..N: the suppress_first(-2 theta) block pre-winds the upper
/// subgroups so the final plain pulse unwinds them.
inline std::vector<GlobalPulse> rotate_first(double theta, TransverseAxis a, int n_subgroups) {
    if (n_subgroups < 2) throw std::invalid_argument("rotate_first: need n >= 2");
    auto out = suppress_first(-2.0 * theta, a, n_subgroups);
    out.push_back({theta, a.phi});
    return out;
}

/// Max over subgroups of the distance (normalized Frobenius, minimized over
/// a global phase) between the per-subgroup pulse product and its target.
inline double verify_sequence(const std::vector<GlobalPulse>& pulses, const TargetList& targets) {
    double worst = 0.0;
    const int n = static_cast<int>(targets.size());
    for (int j = 0; j < n; ++j) {
        Rotation acc(0.0, Vec3{0.0, 0.0, 1.0});
        const double mult = static_cast<double>(1 << j);
        for (const GlobalPulse& p : pulses) {
            acc = compose(Rotation(mult * p.theta, TransverseAxis(p.phi).axis()), acc);
        }
        worst = std::max(worst, phase_distance(matrix(acc), matrix(targets[j])));
    }
    return worst;
}

/// Full synthesis: pulses whose subgroup-j product equals targets[j]
/// for every j. Recursive construction: N = 1 is the transverse Euler
/// decomposition; for N > 1 the (N-1)-subgroup solution for targets 2..N is
/// lifted through suppress_first and the first target is appended as
/// rotate_first factors (the two parts act on disjoint subgroups).
inline std::vector<GlobalPulse> synth_targets(const TargetList& targets) {
    const int n = static_cast<int>(targets.size());
    if (n < 1 || n > kMaxSubgroups) {
        throw std::invalid_argument("synth_targets: subgroup count must be in [1, 8]");
    }
    std::vector<GlobalPulse> out;
    if (n == 1) {
        for (const auto& [ang, ax] : euler_transverse(targets[0])) {
            out.push_back({ang, ax.phi});
        }
    } else {
        const TargetList rest(targets.begin() + 1, targets.end());
        for (const GlobalPulse& p : synth_targets(rest)) {
            const auto lifted = suppress_first(p.theta, TransverseAxis(p.phi), n);
            out.insert(out.end(), lifted.begin(), lifted.end());
        }
        for (const auto& [ang, ax] : euler_transverse(targets[0])) {
            const auto head = rotate_first(ang, ax, n);
            out.insert(out.end(), head.begin(), head.end());
        }
    }
    const std::size_t bound =
        static_cast<std::size_t>(kSynthLengthConstant) * (std::size_t{1} << (2 * (n - 1)));
    if (out.size() > bound) throw std::logic_error("synth_targets: length bound violated");
    return out;
}

}  // namespace zzpulse
