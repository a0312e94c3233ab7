// chsh_search.hpp
// Brute-force maximization of the CHSH expression over measurement
// directions. Used only to cross-check the closed-form criterion.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/qstate.hpp"

namespace qswitch::testing {

struct ChshSearchResult {
    double value = 0.0;
    std::array<double, 8> angles{};  // (polar, azimuth) for A1, A2, B1, B2
};

namespace detail {

using Vec3 = std::array<double, 3>;

inline Vec3 direction(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
            std::cos(polar)};
}

// <(a.sigma) (x) (b.sigma)> = a^T C b, C_kl = Tr(rho sigma_k (x) sigma_l).
struct Correlator {
    std::array<std::array<double, 3>, 3> c{};

    explicit Correlator(const DensityMatrix& rho) {
        const std::array<ComplexMatrix, 3> s{pauli::X(), pauli::Y(), pauli::Z()};
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t l = 0; l < 3; ++l) {
                const ComplexMatrix op = kron(s[k], s[l]);
                Complex t{};
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j) t += rho.matrix()(i, j) * op(j, i);
                c[k][l] = t.real();
            }
    }

    double operator()(const Vec3& a, const Vec3& b) const {
        double e = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t l = 0; l < 3; ++l) e += a[k] * c[k][l] * b[l];
        return e;
    }

    double chsh(const std::array<double, 8>& x) const {
        const Vec3 a1 = direction(x[0], x[1]);
        const Vec3 a2 = direction(x[2], x[3]);
        const Vec3 b1 = direction(x[4], x[5]);
        const Vec3 b2 = direction(x[6], x[7]);
        return (*this)(a1, b1) + (*this)(a1, b2) + (*this)(a2, b1) - (*this)(a2, b2);
    }
};

}  // namespace detail

/// Coarse search on an x-z plane angle grid (`grid` points per circle), then
/// pattern-search refinement over all four directions on the full sphere.
inline ChshSearchResult brute_force_chsh_max(const DensityMatrix& rho, std::size_t grid = 721) {
    const detail::Correlator corr(rho);
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<detail::Vec3> dirs(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = two_pi * static_cast<double>(i) / static_cast<double>(grid);
        dirs[i] = {std::sin(t), 0.0, std::cos(t)};
    }
    std::vector<double> table(grid * grid);
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) table[i * grid + j] = corr(dirs[i], dirs[j]);

    // For fixed A1, A2 the best B1 (B2) maximizes E(A1,.) + E(A2,.) (resp. minus).
    double best = -1e300;
    std::size_t bi1 = 0, bi2 = 0, bj1 = 0, bj2 = 0;
    const std::size_t stride = grid > 361 ? 2 : 1;
    for (std::size_t i1 = 0; i1 < grid; i1 += stride) {
        const double* r1 = &table[i1 * grid];
        for (std::size_t i2 = 0; i2 < grid; i2 += stride) {
            const double* r2 = &table[i2 * grid];
            double s_best = -1e300, d_best = -1e300;
            std::size_t js = 0, jd = 0;
            for (std::size_t j = 0; j < grid; ++j) {
                const double s = r1[j] + r2[j];
                const double d = r1[j] - r2[j];
                if (s > s_best) { s_best = s; js = j; }
                if (d > d_best) { d_best = d; jd = j; }
            }
            if (s_best + d_best > best) {
                best = s_best + d_best;
                bi1 = i1; bi2 = i2; bj1 = js; bj2 = jd;
            }
        }
    }

    // Polar angle t in [0, 2 pi) on the x-z circle maps to (t, 0).
    auto polar = [&](std::size_t i) {
        return two_pi * static_cast<double>(i) / static_cast<double>(grid);
    };
    std::array<double, 8> x{polar(bi1), 0.0, polar(bi2), 0.0, polar(bj1), 0.0, polar(bj2), 0.0};
    double fx = corr.chsh(x);
    for (double h = 0.05; h > 1e-10; h *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t k = 0; k < x.size(); ++k) {
                for (double sgn : {1.0, -1.0}) {
                    auto y = x;
                    y[k] += sgn * h;
                    const double fy = corr.chsh(y);
                    if (fy > fx + 1e-15) {
                        x = y;
                        fx = fy;
                        improved = true;
                    }
                }
            }
        }
    }
    return {fx, x};
}

}  // namespace qswitch::testing
