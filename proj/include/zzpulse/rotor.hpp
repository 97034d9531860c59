// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

// Exact SU(2) axis-angle algebra. Conventions used throughout the project:
//   - local basis ordering (|e>, |g>) with |e> = (1,0)^T, |g> = (0,1)^T;
//   - R(theta, n) = exp(-i theta/2 n.sigma), so R(2pi, n) = -I;
//   - a drive with phase phi rotates about the transverse axis
//     (cos phi, sin phi, 0).
// Angles are 4pi-periodic and stored unreduced; the sign of R(2pi) is
// physically meaningful (it is the blockade phase mechanism), so nothing
// here reduces theta modulo 2pi.

namespace zzpulse {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Dense 2x2 complex matrix, row-major. Small enough to pass by value.
struct Mat2 {
    std::array<complexd, 4> a{};

    static Mat2 identity() { return Mat2{{complexd{1.0}, {}, {}, complexd{1.0}}}; }

    Mat2 operator*(const Mat2& o) const {
        return Mat2{{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
                     a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]}};
    }
    Mat2 adjoint() const {
        return Mat2{{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
    }
    complexd trace() const { return a[0] + a[3]; }
    complexd det() const { return a[0] * a[3] - a[1] * a[2]; }
};

inline Mat2 operator*(complexd s, const Mat2& m) {
    return Mat2{{s * m.a[0], s * m.a[1], s * m.a[2], s * m.a[3]}};
}

/// Plain Frobenius distance ||u - t||_F.
inline double frobenius_distance(const Mat2& u, const Mat2& t) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::norm(u.a[i] - t.a[i]);
    return std::sqrt(s);
}

/// Distance between unitaries minimized over a global phase, in the
/// normalized Frobenius convention ||.||_F / sqrt(dim). The minimizing
/// phase is arg tr(t^dag u); the norm is then taken entry-wise, which stays
/// well-conditioned near zero (no 2 - |tr| cancellation).
inline double phase_distance(const Mat2& u, const Mat2& t) {
    const complexd tr = (t.adjoint() * u).trace();
    const complexd phase = std::abs(tr) > 1e-300 ? tr / std::abs(tr) : complexd{1.0};
    return frobenius_distance(u, phase * t) / std::sqrt(2.0);
}

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n < 1e-12) throw std::invalid_argument("rotor: axis must be a nonzero vector");
    return {v[0] / n, v[1] / n, v[2] / n};
}

/// Axis-angle element of SU(2). theta is real-valued (period 4pi), axis is
/// kept unit-length. Equality of rotations is defined by matrix distance,
/// never by field comparison: R(-theta, n) and R(theta, -n) are the same
/// element with different coordinates.
struct Rotation {
    double theta = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};

    Rotation() = default;
    Rotation(double th, const Vec3& n) : theta(th), axis(normalized(n)) {}
};

/// Transverse (xy-plane) axis given by the drive phase; the z component is
/// exactly zero by construction.
struct TransverseAxis {
    double phi = 0.0;

    TransverseAxis() = default;
    explicit TransverseAxis(double p) : phi(p) {}
    Vec3 axis() const { return {std::cos(phi), std::sin(phi), 0.0}; }
    Rotation rotation(double theta) const { return Rotation(theta, axis()); }
};

inline Mat2 matrix(const Rotation& r) {
    const double c = std::cos(0.5 * r.theta);
    const double s = std::sin(0.5 * r.theta);
    const double nx = r.axis[0], ny = r.axis[1], nz = r.axis[2];
    return Mat2{{complexd{c, -s * nz}, complexd{-s * ny, -s * nx},
                 complexd{s * ny, -s * nx}, complexd{c, s * nz}}};
}

namespace detail {

// Unit quaternion (w, v) <-> R: U = w I - i (v.sigma).
struct Quat {
    double w;
    Vec3 v;
};

inline Quat to_quat(const Rotation& r) {
    const double c = std::cos(0.5 * r.theta);
    const double s = std::sin(0.5 * r.theta);
    return {c, {s * r.axis[0], s * r.axis[1], s * r.axis[2]}};
}

inline Rotation from_quat(Quat q) {
    // Renormalize so repeated composition does not drift.
    const double n = std::sqrt(q.w * q.w + dot(q.v, q.v));
    q.w /= n;
    q.v = {q.v[0] / n, q.v[1] / n, q.v[2] / n};
    const double vn = norm(q.v);
    Rotation out;
    out.theta = 2.0 * std::atan2(vn, q.w);  // in [0, 2pi]
    out.axis = vn > 1e-15 ? Vec3{q.v[0] / vn, q.v[1] / vn, q.v[2] / vn} : Vec3{0.0, 0.0, 1.0};
    return out;
}

}  // namespace detail

/// Composition with apply-r1-first convention: matrix(compose(r2, r1)) =
/// matrix(r2) * matrix(r1). Returned theta is canonicalized to [0, 2pi].
inline Rotation compose(const Rotation& r2, const Rotation& r1) {
    const auto q1 = detail::to_quat(r1);
    const auto q2 = detail::to_quat(r2);
    detail::Quat q;
    q.w = q2.w * q1.w - dot(q2.v, q1.v);
    const Vec3 cr = cross(q2.v, q1.v);
    q.v = {q2.w * q1.v[0] + q1.w * q2.v[0] + cr[0], q2.w * q1.v[1] + q1.w * q2.v[1] + cr[1],
           q2.w * q1.v[2] + q1.w * q2.v[2] + cr[2]};
    return detail::from_quat(q);
}

inline Rotation inverse(const Rotation& r) { return Rotation(-r.theta, r.axis); }

/// SO(3) image of m under the rotation by phi about n (Rodrigues), i.e. the
/// axis appearing in R(phi,n) R(theta,m) R(-phi,n) = R(theta, conjugate_axis).
inline Vec3 conjugate_axis(double phi, const Vec3& n, const Vec3& m) {
    const double c = std::cos(phi), s = std::sin(phi);
    const Vec3 nxm = cross(n, m);
    const double nm = dot(n, m);
    return {m[0] * c + nxm[0] * s + n[0] * nm * (1.0 - c),
            m[1] * c + nxm[1] * s + n[1] * nm * (1.0 - c),
            m[2] * c + nxm[2] * s + n[2] * nm * (1.0 - c)};
}

/// Decomposition of r into at most three transverse-axis factors,
/// apply-first-element-first:  matrix(r) = M(last) * ... * M(first).
/// The x-y-x Euler form is exact in SU(2) (no residual phase); factors with
/// negligible angle are dropped.
inline std::vector<std::pair<double, TransverseAxis>> euler_transverse(const Rotation& r) {
    std::vector<std::pair<double, TransverseAxis>> out;
    const double s_half = std::sin(0.5 * r.theta);
    if (r.theta == 0.0 || (std::abs(s_half) < 1e-15 && std::cos(0.5 * r.theta) > 0.0)) {
        return out;  // matrix is I to machine precision
    }
    if (std::abs(r.axis[2]) < 1e-15) {
        out.emplace_back(r.theta, TransverseAxis(std::atan2(r.axis[1], r.axis[0])));
        return out;
    }
    // Conjugate by V = R(pi/2, y), which maps z -> x, so that an x-y-x
    // decomposition of U becomes a z-y-z decomposition of W = V^dag U V.
    const Rotation v(0.5 * kPi, Vec3{0.0, 1.0, 0.0});
    const Mat2 mv = matrix(v);
    const Mat2 w = mv.adjoint() * matrix(r) * mv;

    const complexd wa = w.a[0];  // cos(b/2) e^{-i(al+ga)/2}
    const complexd wc = w.a[2];  // sin(b/2) e^{+i(al-ga)/2}
    const double beta = 2.0 * std::atan2(std::abs(wc), std::abs(wa));
    double alpha = 0.0, gamma = 0.0;
    if (std::abs(wc) < 1e-15) {
        alpha = -2.0 * std::arg(wa);
    } else if (std::abs(wa) < 1e-15) {
        alpha = 2.0 * std::arg(wc);
    } else {
        const double sum = -2.0 * std::arg(wa);
        const double dif = 2.0 * std::arg(wc);
        alpha = 0.5 * (sum + dif);
        gamma = 0.5 * (sum - dif);
    }
    // U = Rx(alpha) Ry(beta) Rx(gamma): gamma applies first.
    const TransverseAxis ax_x(0.0), ax_y(0.5 * kPi);
    if (std::abs(gamma) > 1e-13) out.emplace_back(gamma, ax_x);
    if (std::abs(beta) > 1e-13) out.emplace_back(beta, ax_y);
    if (std::abs(alpha) > 1e-13) out.emplace_back(alpha, ax_x);
    return out;
}

}  // namespace zzpulse
