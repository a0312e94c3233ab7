// random.hpp
// Seeded generators for random states, unitaries and channels used by the
// property checks.

#pragma once

#include <cstdint>
#include <random>

#include "qswitch/linalg.hpp"
#include "qswitch/qstate.hpp"
#include "qswitch/quantum_switch.hpp"

namespace qswitch::random {

using Engine = std::mt19937_64;

inline ComplexMatrix gaussian_matrix(Engine& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
    return m;
}

/// Haar-like unitary from modified Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix unitary(Engine& rng, std::size_t d) {
    ComplexMatrix g = gaussian_matrix(rng, d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (std::size_t i = 0; i < d; ++i) dot += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < d; ++i) g(i, j) -= dot * g(i, k);
        }
        double n2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) n2 += std::norm(g(i, j));
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t i = 0; i < d; ++i) g(i, j) *= inv;
    }
    return g;
}

inline PureState pure_state(Engine& rng, Dims dims) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Complex> amps(total_dim(dims));
    for (auto& a : amps) a = Complex(n(rng), n(rng));
    return PureState::normalized(std::move(amps), std::move(dims));
}

/// G G^dagger / Tr for Gaussian G; full rank with probability one.
inline DensityMatrix density(Engine& rng, Dims dims) {
    const std::size_t d = total_dim(dims);
    const ComplexMatrix g = gaussian_matrix(rng, d, d);
    return DensityMatrix::normalized(g * dagger(g), std::move(dims));
}

/// Channel obtained from a random isometry: K_i = (<i| (x) I) W (|0> (x) I).
inline KrausChannel channel(Engine& rng, std::size_t d, std::size_t num_ops = 2) {
    const ComplexMatrix w = unitary(rng, d * num_ops);
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < num_ops; ++i) {
        ComplexMatrix k(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) k(r, c) = w(i * d + r, c);
        ops.push_back(std::move(k));
    }
    return KrausChannel(std::move(ops));
}

inline double uniform(Engine& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace qswitch::random
