// linalg.hpp
// Dense complex matrices for small quantum systems (up to a few qubits).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qswitch {

using Complex = std::complex<double>;

/// Absolute tolerance shared by invariant checks across the library.
inline constexpr double kTolerance = 1e-9;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Row-major dense complex matrix. Entries are always finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("ComplexMatrix: dimensions must be positive");
        }
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("ComplexMatrix: dimensions must be positive");
        }
        if (data_.size() != rows * cols) {
            throw DimensionError("ComplexMatrix: expected " + std::to_string(rows * cols) +
                                 " entries, got " + std::to_string(data_.size()));
        }
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::domain_error("ComplexMatrix: non-finite entry");
            }
        }
    }

    /// Nested row literal, e.g. {{1, 0}, {0, -1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows_init) {
        rows_ = rows_init.size();
        cols_ = rows_ == 0 ? 0 : rows_init.begin()->size();
        if (rows_ == 0 || cols_ == 0) {
            throw DimensionError("ComplexMatrix: empty literal");
        }
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows_init) {
            if (row.size() != cols_) {
                throw DimensionError("ComplexMatrix: ragged literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    /// Diagonal matrix from real values.
    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v) {
        ComplexMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_shape(const ComplexMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string(what) + ": shape mismatch " + shape() + " vs " +
                                 o.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mat_mul: cannot multiply " + a.shape() + " by " + b.shape());
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return mat_mul(a, b);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return c;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix d(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d(j, i) = std::conj(a(i, j));
    return d;
}

inline Complex trace(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("trace: matrix is not square (" + a.shape() + ")");
    }
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch " + a.shape() + " vs " + b.shape());
    }
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
    return m;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol = kTolerance) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

/// max |a - a†| over entries; 0 for exactly Hermitian input.
inline double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("hermiticity_defect: matrix is not square (" + a.shape() + ")");
    }
    return max_abs_diff(a, dagger(a));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kTolerance) {
    return u.is_square() && approx_equal(dagger(u) * u, ComplexMatrix::identity(u.rows()), tol);
}

namespace detail {

// Cyclic Jacobi on a dense real symmetric matrix stored row-major; returns
// the diagonal after convergence.
inline std::vector<double> jacobi_symmetric(std::vector<double> a, std::size_t n,
                                            double off_tol) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += at(i, j) * at(i, j);
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > off_tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
    return diag;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// The n x n Hermitian H = A + iB is embedded as the real symmetric
/// [[A, -B], [B, A]], whose spectrum is that of H with every eigenvalue doubled.
/// Cyclic Jacobi rotations run until the off-diagonal Frobenius norm is below 1e-12.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    const double defect = hermiticity_defect(h);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "hermitian_eigenvalues: input is not Hermitian (max |a - a^dagger| = " << defect
            << ")";
        throw std::invalid_argument(msg.str());
    }
    const std::size_t n = h.rows();
    const std::size_t m = 2 * n;
    std::vector<double> real(m * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // symmetrize to remove sub-tolerance skew
            const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            real[i * m + j] = z.real();
            real[(i + n) * m + (j + n)] = z.real();
            real[i * m + (j + n)] = -z.imag();
            real[(i + n) * m + j] = z.imag();
        }
    }
    auto doubled = detail::jacobi_symmetric(std::move(real), m, 1e-12);
    std::sort(doubled.begin(), doubled.end(), std::greater<>());
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return eig;
}

namespace pauli {

inline ComplexMatrix I() { return ComplexMatrix::identity(2); }
inline ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix Y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace pauli

}  // namespace qswitch
