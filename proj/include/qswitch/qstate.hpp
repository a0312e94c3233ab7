// qstate.hpp
// Pure and mixed states over labeled subsystems, the attack gate library,
// subsystem embedding, partial trace and projective measurement statistics.
//
// Basis ordering is big-endian in the written subsystem order: for three
// qubits (A, B, E) the ket |abe> has index a*4 + b*2 + e.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/linalg.hpp"

namespace qswitch {

using Dims = std::vector<std::size_t>;

inline std::size_t total_dim(const Dims& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

class PureState {
public:
    PureState(std::vector<Complex> amplitudes, Dims dims)
        : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
        if (dims_.empty() || amps_.size() != total_dim(dims_)) {
            throw DimensionError("PureState: amplitude count " + std::to_string(amps_.size()) +
                                 " does not match subsystem dimensions");
        }
        for (const auto& a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw std::domain_error("PureState: non-finite amplitude");
            }
        }
        if (std::abs(norm_squared() - 1.0) > kTolerance) {
            std::ostringstream msg;
            msg << "PureState: squared norm " << norm_squared() << " differs from 1";
            throw std::invalid_argument(msg.str());
        }
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static PureState normalized(std::vector<Complex> amplitudes, Dims dims) {
        double n2 = 0.0;
        for (const auto& a : amplitudes) n2 += std::norm(a);
        if (n2 <= 1e-24) throw std::invalid_argument("PureState: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amplitudes) a *= inv;
        return PureState(std::move(amplitudes), std::move(dims));
    }

    /// Computational basis ket |index> over the given subsystems.
    static PureState basis(std::size_t index, Dims dims) {
        std::vector<Complex> amps(total_dim(dims));
        if (index >= amps.size()) throw std::out_of_range("PureState::basis: index out of range");
        amps[index] = 1.0;
        return PureState(std::move(amps), std::move(dims));
    }

    std::span<const Complex> amplitudes() const { return amps_; }
    const Dims& dims() const { return dims_; }
    std::size_t dim() const { return amps_.size(); }

    double norm_squared() const {
        double n2 = 0.0;
        for (const auto& a : amps_) n2 += std::norm(a);
        return n2;
    }

    Complex inner(const PureState& other) const {
        if (other.dim() != dim()) throw DimensionError("PureState::inner: dimension mismatch");
        Complex s{};
        for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

private:
    std::vector<Complex> amps_;
    Dims dims_;
};

inline PureState tensor(const PureState& a, const PureState& b) {
    std::vector<Complex> amps;
    amps.reserve(a.dim() * b.dim());
    for (const auto& x : a.amplitudes())
        for (const auto& y : b.amplitudes()) amps.push_back(x * y);
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState(std::move(amps), std::move(dims));
}

/// Applies an operator to a state vector without renormalizing; returns raw amplitudes.
inline std::vector<Complex> apply(const ComplexMatrix& op, std::span<const Complex> v) {
    if (op.cols() != v.size()) {
        throw DimensionError("apply: operator " + op.shape() + " on vector of length " +
                             std::to_string(v.size()));
    }
    std::vector<Complex> out(op.rows());
    for (std::size_t i = 0; i < op.rows(); ++i)
        for (std::size_t j = 0; j < op.cols(); ++j) out[i] += op(i, j) * v[j];
    return out;
}

/// Hermitian, unit-trace, positive semidefinite matrix with subsystem dimensions.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix mat, Dims dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
        if (!mat_.is_square() || dims_.empty() || total_dim(dims_) != mat_.rows()) {
            throw DimensionError("DensityMatrix: matrix " + mat_.shape() +
                                 " does not match subsystem dimensions");
        }
        const double herm = hermiticity_defect(mat_);
        if (herm > kTolerance) {
            std::ostringstream msg;
            msg << "DensityMatrix: not Hermitian (defect " << herm << ")";
            throw std::invalid_argument(msg.str());
        }
        const Complex tr = trace(mat_);
        if (std::abs(tr - 1.0) > kTolerance) {
            std::ostringstream msg;
            msg << "DensityMatrix: trace " << tr.real() << (tr.imag() < 0 ? "" : "+")
                << tr.imag() << "i differs from 1";
            throw std::invalid_argument(msg.str());
        }
        const double min_eig = hermitian_eigenvalues(mat_).back();
        if (min_eig < -1e-8) {
            std::ostringstream msg;
            msg << "DensityMatrix: negative eigenvalue " << min_eig;
            throw std::invalid_argument(msg.str());
        }
    }

    /// Divides by the trace before validating; for unnormalized post-selected operators.
    static DensityMatrix normalized(ComplexMatrix mat, Dims dims) {
        const double tr = trace(mat).real();
        if (tr <= 1e-12) throw std::invalid_argument("DensityMatrix: vanishing trace");
        mat *= 1.0 / tr;
        return DensityMatrix(std::move(mat), std::move(dims));
    }

    static DensityMatrix maximally_mixed(Dims dims) {
        const std::size_t d = total_dim(dims);
        return DensityMatrix(ComplexMatrix::identity(d) * (1.0 / static_cast<double>(d)),
                             std::move(dims));
    }

    const ComplexMatrix& matrix() const { return mat_; }
    const Dims& dims() const { return dims_; }
    std::size_t dim() const { return mat_.rows(); }
    std::size_t num_subsystems() const { return dims_.size(); }

    double purity() const { return trace(mat_ * mat_).real(); }

private:
    ComplexMatrix mat_;
    Dims dims_;
};

inline DensityMatrix pure_to_density(const PureState& psi) {
    if (std::abs(psi.norm_squared() - 1.0) > 1e-6) {
        throw std::invalid_argument("pure_to_density: state is not normalized");
    }
    return DensityMatrix(ComplexMatrix::outer(psi.amplitudes()), psi.dims());
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims));
}

/// Fidelity <psi|rho|psi> of a density matrix with a pure reference.
inline double fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim()) throw DimensionError("fidelity: dimension mismatch");
    const auto v = apply(rho.matrix(), psi.amplitudes());
    Complex s{};
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(psi.amplitudes()[i]) * v[i];
    return s.real();
}

// ---------------------------------------------------------------------------
// Gate library

enum class GateKind { X, Y, Z, H, XZ, SWAP, CNOT, U_SG, V_DRAFT };

inline std::string_view gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::XZ: return "XZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CNOT: return "CNOT";
        case GateKind::U_SG: return "U_SG";
        case GateKind::V_DRAFT: return "V_DRAFT";
    }
    return "?";
}

inline std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (auto k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::XZ,
                   GateKind::SWAP, GateKind::CNOT, GateKind::U_SG, GateKind::V_DRAFT}) {
        if (gate_name(k) == name) return k;
    }
    return std::nullopt;
}

class UnitaryGate {
public:
    UnitaryGate(std::string name, std::vector<double> params, ComplexMatrix mat)
        : name_(std::move(name)), params_(std::move(params)), mat_(std::move(mat)) {
        if (!is_unitary(mat_)) {
            throw std::invalid_argument("UnitaryGate '" + name_ + "' is not unitary");
        }
    }

    const std::string& name() const { return name_; }
    const std::vector<double>& params() const { return params_; }
    const ComplexMatrix& matrix() const { return mat_; }
    std::size_t dim() const { return mat_.rows(); }

private:
    std::string name_;
    std::vector<double> params_;
    ComplexMatrix mat_;
};

/// Scarani-Gisin coupling on (Bob, Eve), ordered basis {|00>,|01>,|10>,|11>}:
/// |00> -> |00>, |10> -> cos|10> + sin|01>, completed to a planar rotation
/// |01> -> cos|01> - sin|10>, |11> -> |11>.
inline ComplexMatrix scarani_gisin_matrix(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    ComplexMatrix u = ComplexMatrix::identity(4);
    u(1, 1) = c;
    u(2, 1) = -s;
    u(1, 2) = s;
    u(2, 2) = c;
    return u;
}

/// Real symmetric partner on (Bob, Eve): V|00> = cos|00> + sin|11>,
/// V|10> = sin|01> - cos|10>.
inline ComplexMatrix draft_partner_matrix(double phi1) {
    const double c = std::cos(phi1);
    const double s = std::sin(phi1);
    return {{c, 0.0, 0.0, s}, {0.0, c, s, 0.0}, {0.0, s, -c, 0.0}, {s, 0.0, 0.0, -c}};
}

inline UnitaryGate make_gate(GateKind kind, std::span<const double> params = {}) {
    const bool angled = kind == GateKind::U_SG || kind == GateKind::V_DRAFT;
    const std::size_t expected = angled ? 1 : 0;
    if (params.size() != expected) {
        throw std::invalid_argument("make_gate: " + std::string(gate_name(kind)) + " takes " +
                                    std::to_string(expected) + " parameter(s), got " +
                                    std::to_string(params.size()));
    }
    std::vector<double> p(params.begin(), params.end());
    const std::string name(gate_name(kind));
    const double r = 1.0 / std::numbers::sqrt2;
    switch (kind) {
        case GateKind::X: return {name, p, pauli::X()};
        case GateKind::Y: return {name, p, pauli::Y()};
        case GateKind::Z: return {name, p, pauli::Z()};
        case GateKind::H: return {name, p, ComplexMatrix{{r, r}, {r, -r}}};
        case GateKind::XZ: return {name, p, kron(pauli::X(), pauli::Z())};
        case GateKind::SWAP:
            return {name, p,
                    ComplexMatrix{{1.0, 0.0, 0.0, 0.0},
                                  {0.0, 0.0, 1.0, 0.0},
                                  {0.0, 1.0, 0.0, 0.0},
                                  {0.0, 0.0, 0.0, 1.0}}};
        case GateKind::CNOT:
            return {name, p,
                    ComplexMatrix{{1.0, 0.0, 0.0, 0.0},
                                  {0.0, 1.0, 0.0, 0.0},
                                  {0.0, 0.0, 0.0, 1.0},
                                  {0.0, 0.0, 1.0, 0.0}}};
        case GateKind::U_SG: return {name, p, scarani_gisin_matrix(p[0])};
        case GateKind::V_DRAFT: return {name, p, draft_partner_matrix(p[0])};
    }
    throw std::invalid_argument("make_gate: unknown gate");
}

inline UnitaryGate make_gate(std::string_view name, std::span<const double> params = {}) {
    const auto kind = parse_gate_kind(name);
    if (!kind) throw std::invalid_argument("make_gate: unknown gate '" + std::string(name) + "'");
    return make_gate(*kind, params);
}

inline UnitaryGate make_gate(GateKind kind, double param) {
    const std::array<double, 1> p{param};
    return make_gate(kind, p);
}

// ---------------------------------------------------------------------------
// Embedding and partial trace

namespace detail {

// Mixed-radix digits of a flat index, most significant subsystem first.
inline std::vector<std::size_t> digits(std::size_t index, const Dims& dims) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        d[k] = index % dims[k];
        index /= dims[k];
    }
    return d;
}

inline std::size_t flat_index(std::span<const std::size_t> digits, const Dims& dims) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

}  // namespace detail

/// Lifts an operator acting on `targets` (in the listed order) to the full space.
inline ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> targets,
                           const Dims& total_dims) {
    std::vector<bool> is_target(total_dims.size(), false);
    Dims target_dims;
    for (std::size_t t : targets) {
        if (t >= total_dims.size()) {
            throw std::out_of_range("embed: subsystem index " + std::to_string(t) +
                                    " out of range");
        }
        if (is_target[t]) throw std::invalid_argument("embed: repeated target index");
        is_target[t] = true;
        target_dims.push_back(total_dims[t]);
    }
    if (!op.is_square() || op.rows() != total_dim(target_dims)) {
        throw DimensionError("embed: operator " + op.shape() +
                             " does not match target dimension " +
                             std::to_string(total_dim(target_dims)));
    }

    const std::size_t d = total_dim(total_dims);
    ComplexMatrix full(d, d);
    std::vector<std::size_t> sub_r(targets.size()), sub_c(targets.size());
    for (std::size_t r = 0; r < d; ++r) {
        const auto dr = detail::digits(r, total_dims);
        for (std::size_t c = 0; c < d; ++c) {
            const auto dc = detail::digits(c, total_dims);
            bool spectators_match = true;
            for (std::size_t k = 0; k < total_dims.size(); ++k) {
                if (!is_target[k] && dr[k] != dc[k]) {
                    spectators_match = false;
                    break;
                }
            }
            if (!spectators_match) continue;
            for (std::size_t t = 0; t < targets.size(); ++t) {
                sub_r[t] = dr[targets[t]];
                sub_c[t] = dc[targets[t]];
            }
            full(r, c) = op(detail::flat_index(sub_r, target_dims),
                            detail::flat_index(sub_c, target_dims));
        }
    }
    return full;
}

inline ComplexMatrix embed(const UnitaryGate& gate, std::span<const std::size_t> targets,
                           const Dims& total_dims) {
    return embed(gate.matrix(), targets, total_dims);
}

inline ComplexMatrix embed(const ComplexMatrix& op, std::initializer_list<std::size_t> targets,
                           const Dims& total_dims) {
    return embed(op, std::span<const std::size_t>(targets.begin(), targets.size()), total_dims);
}

/// Reduces to the subsystems in `keep`, which are returned in their original order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    const Dims& dims = rho.dims();
    if (keep.back() >= dims.size()) {
        throw std::out_of_range("partial_trace: subsystem index " + std::to_string(keep.back()) +
                                " out of range");
    }
    if (keep.size() == dims.size()) return rho;

    std::vector<bool> kept(dims.size(), false);
    Dims keep_dims;
    for (std::size_t k : keep) {
        kept[k] = true;
        keep_dims.push_back(dims[k]);
    }
    const std::size_t d = rho.dim();
    const std::size_t dk = total_dim(keep_dims);
    ComplexMatrix out(dk, dk);
    std::vector<std::size_t> sub_r(keep.size()), sub_c(keep.size());
    for (std::size_t r = 0; r < d; ++r) {
        const auto dr = detail::digits(r, dims);
        for (std::size_t c = 0; c < d; ++c) {
            const auto dc = detail::digits(c, dims);
            bool traced_match = true;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (!kept[k] && dr[k] != dc[k]) {
                    traced_match = false;
                    break;
                }
            }
            if (!traced_match) continue;
            for (std::size_t t = 0; t < keep.size(); ++t) {
                sub_r[t] = dr[keep[t]];
                sub_c[t] = dc[keep[t]];
            }
            out(detail::flat_index(sub_r, keep_dims), detail::flat_index(sub_c, keep_dims)) +=
                rho.matrix()(r, c);
        }
    }
    return DensityMatrix(std::move(out), std::move(keep_dims));
}

// ---------------------------------------------------------------------------
// Measurement

enum class Outcome { Plus, Minus };

/// Projective qubit measurement along |m+> = cos(theta/2)|0> + sin(theta/2)|1>.
struct MeasurementSetting {
    double theta = 0.0;

    explicit MeasurementSetting(double angle) : theta(angle) {
        if (!(angle >= 0.0 && angle <= std::numbers::pi)) {
            throw std::invalid_argument("MeasurementSetting: theta must lie in [0, pi]");
        }
    }
};

inline ComplexMatrix projector(MeasurementSetting setting, Outcome outcome) {
    const double c = std::cos(setting.theta / 2.0);
    const double s = std::sin(setting.theta / 2.0);
    const std::array<Complex, 2> v = outcome == Outcome::Plus ? std::array<Complex, 2>{c, s}
                                                              : std::array<Complex, 2>{s, -c};
    return ComplexMatrix::outer(v);
}

/// Exact outcome probabilities over the measured subsystems.
///
/// Outcomes are indexed big-endian over the measured subsystems in order, with
/// bit 0 = '+' and bit 1 = '-'.
struct OutcomeDistribution {
    std::size_t measured = 0;
    std::vector<double> probs;

    double operator()(std::span<const Outcome> outcomes) const {
        if (outcomes.size() != measured) {
            throw std::invalid_argument("OutcomeDistribution: wrong outcome tuple length");
        }
        std::size_t idx = 0;
        for (auto o : outcomes) idx = 2 * idx + (o == Outcome::Minus ? 1 : 0);
        return probs[idx];
    }
    double operator()(std::initializer_list<Outcome> outcomes) const {
        return (*this)(std::span<const Outcome>(outcomes.begin(), outcomes.size()));
    }
};

inline OutcomeDistribution measure_probs(
    const DensityMatrix& rho, const std::vector<std::optional<MeasurementSetting>>& settings) {
    if (settings.size() != rho.num_subsystems()) {
        throw DimensionError("measure_probs: " + std::to_string(settings.size()) +
                             " settings for " + std::to_string(rho.num_subsystems()) +
                             " subsystems");
    }
    std::vector<std::size_t> measured;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        if (!settings[k]) continue;
        if (rho.dims()[k] != 2) {
            throw DimensionError("measure_probs: subsystem " + std::to_string(k) +
                                 " is not a qubit");
        }
        measured.push_back(k);
    }

    OutcomeDistribution dist;
    dist.measured = measured.size();
    dist.probs.resize(std::size_t{1} << measured.size());
    for (std::size_t idx = 0; idx < dist.probs.size(); ++idx) {
        ComplexMatrix op = ComplexMatrix::identity(1);
        std::size_t m = 0;
        for (std::size_t k = 0; k < settings.size(); ++k) {
            if (!settings[k]) {
                op = kron(op, ComplexMatrix::identity(rho.dims()[k]));
                continue;
            }
            const std::size_t bit = (idx >> (measured.size() - 1 - m)) & 1U;
            op = kron(op, projector(*settings[k], bit ? Outcome::Minus : Outcome::Plus));
            ++m;
        }
        double p = trace(rho.matrix() * op).real();
        if (p < -1e-12) {
            std::ostringstream msg;
            msg << "measure_probs: negative probability " << p;
            throw std::domain_error(msg.str());
        }
        dist.probs[idx] = std::max(p, 0.0);
    }
    return dist;
}

/// Bloch vector (Tr rho X, Tr rho Y, Tr rho Z) of a single qubit.
inline std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
    if (rho.dims() != Dims{2}) {
        throw DimensionError("bloch_vector: expected a single qubit, got dimension " +
                             std::to_string(rho.dim()));
    }
    return {trace(rho.matrix() * pauli::X()).real(), trace(rho.matrix() * pauli::Y()).real(),
            trace(rho.matrix() * pauli::Z()).real()};
}

/// (I + r.sigma)/2 for |r| <= 1.
inline DensityMatrix density_from_bloch(const std::array<double, 3>& r) {
    ComplexMatrix m = pauli::I() + pauli::X() * r[0] + pauli::Y() * r[1] + pauli::Z() * r[2];
    return DensityMatrix(m * 0.5, Dims{2});
}

}  // namespace qswitch
