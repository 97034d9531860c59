// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they check. Rotation matrices are produced here by a scaled-and-squared
// Taylor exponential of -i theta/2 n.sigma, not by the closed-form
// half-angle formula the library uses.

#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using cd = std::complex<double>;

struct M2 {
    cd a{}, b{}, c{}, d{};  // [[a, b], [c, d]]

    static M2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    M2 operator*(const M2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    M2 operator+(const M2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    M2 operator-(const M2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    M2 scaled(cd s) const { return {s * a, s * b, s * c, s * d}; }
    M2 dagger() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    cd trace() const { return a + d; }
    double fnorm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

inline double dist(const M2& x, const M2& y) { return (x - y).fnorm(); }

inline double dist_up_to_phase(const M2& x, const M2& y) {
    const double ov = std::abs((y.dagger() * x).trace());
    return std::sqrt(std::max(0.0, 4.0 - 2.0 * ov));
}

inline M2 pauli(double nx, double ny, double nz) {
    return {cd{nz, 0.0}, cd{nx, -ny}, cd{nx, ny}, cd{-nz, 0.0}};
}

inline M2 expm(M2 x) {
    int squarings = 0;
    while (x.fnorm() > 0.25) {
        x = x.scaled(0.5);
        ++squarings;
    }
    M2 sum = M2::identity();
    M2 term = M2::identity();
    for (int k = 1; k <= 24; ++k) {
        term = (term * x).scaled(1.0 / k);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

/// exp(-i theta/2 n.sigma) by series; n is normalized here.
inline M2 rot(double theta, std::array<double, 3> n) {
    const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    return expm(pauli(n[0] / nn, n[1] / nn, n[2] / nn).scaled(cd{0.0, -0.5 * theta}));
}

inline std::array<double, 3> random_unit_vec(std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    while (true) {
        std::array<double, 3> v{g(rng), g(rng), g(rng)};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n > 1e-3) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

// --- dense control-unitary oracle -----------------------------------------
// Full 2^m x 2^m matrix of W = R (x) P + 1 (x) Q, built explicitly and
// applied by matrix-vector product; independent of the pair-loop engine.

struct DenseOp {
    std::size_t dim = 0;
    std::vector<cd> a;  // row-major

    static DenseOp identity(std::size_t dim) {
        DenseOp op;
        op.dim = dim;
        op.a.assign(dim * dim, cd{});
        for (std::size_t i = 0; i < dim; ++i) op.a[i * dim + i] = 1.0;
        return op;
    }

    DenseOp operator*(const DenseOp& o) const {
        DenseOp r;
        r.dim = dim;
        r.a.assign(dim * dim, cd{});
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                const cd aik = a[i * dim + k];
                if (aik == cd{}) continue;
                for (std::size_t j = 0; j < dim; ++j) r.a[i * dim + j] += aik * o.a[k * dim + j];
            }
        }
        return r;
    }

    std::vector<cd> apply(const std::vector<cd>& v) const {
        std::vector<cd> out(dim, cd{});
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) out[i] += a[i * dim + j] * v[j];
        }
        return out;
    }
};

/// Control-unitary on `site` of an m-site register, active only where every
/// bit of `mask` is set (all neighbors ground). Local basis (|e>,|g>): bit
/// clear = excited.
inline DenseOp w_operator(int num_sites, int site, const M2& r, unsigned long long mask) {
    const std::size_t dim = std::size_t{1} << num_sites;
    DenseOp op = DenseOp::identity(dim);
    const unsigned long long bit = 1ull << site;
    for (std::size_t col = 0; col < dim; ++col) {
        if ((col & mask) != mask) continue;  // blocked: stays identity
        if ((col & bit) != 0) continue;      // handle each pair once
        const std::size_t e = col, g = col | bit;
        op.a[e * dim + e] = r.a;
        op.a[e * dim + g] = r.b;
        op.a[g * dim + e] = r.c;
        op.a[g * dim + g] = r.d;
    }
    return op;
}

}  // namespace oracle
