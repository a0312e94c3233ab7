// quantum_switch.hpp
// Two operations placed in a superposition of application orders, with the
// order (control) qubit carried as the last subsystem.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/qstate.hpp"

namespace qswitch {

/// Completely positive trace-preserving map in operator-sum form.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<ComplexMatrix> operators) : ops_(std::move(operators)) {
        if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
        const std::size_t d = ops_.front().rows();
        ComplexMatrix sum(d, d);
        for (const auto& k : ops_) {
            if (!k.is_square() || k.rows() != d) {
                throw DimensionError("KrausChannel: operator " + k.shape() +
                                     " does not match dimension " + std::to_string(d));
            }
            sum += dagger(k) * k;
        }
        const double defect = max_abs_diff(sum, ComplexMatrix::identity(d));
        if (defect > kTolerance) {
            std::ostringstream msg;
            msg << "KrausChannel: sum K^dagger K deviates from identity by " << defect;
            throw std::invalid_argument(msg.str());
        }
    }

    // Implicit: a unitary is a single-operator channel.
    KrausChannel(const UnitaryGate& gate) : ops_{gate.matrix()} {}  // NOLINT

    const std::vector<ComplexMatrix>& operators() const { return ops_; }
    std::size_t dim() const { return ops_.front().rows(); }

    ComplexMatrix apply(const ComplexMatrix& rho) const {
        ComplexMatrix out(rho.rows(), rho.cols());
        for (const auto& k : ops_) out += k * rho * dagger(k);
        return out;
    }

private:
    std::vector<ComplexMatrix> ops_;
};

/// Order qubit a0|0> + a1|1>; |0> applies `first` after `second` (E_i F_j), |1> the reverse.
struct ControlQubit {
    Complex amp0 = 1.0 / std::numbers::sqrt2;
    Complex amp1 = 1.0 / std::numbers::sqrt2;

    ControlQubit() = default;
    ControlQubit(Complex a0, Complex a1) : amp0(a0), amp1(a1) {
        if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > kTolerance) {
            throw std::invalid_argument("ControlQubit: amplitudes are not normalized");
        }
    }

    static ControlQubit plus() { return {}; }

    ComplexMatrix density() const {
        const std::array<Complex, 2> v{amp0, amp1};
        return ComplexMatrix::outer(v);
    }
};

struct SwitchSpec {
    KrausChannel first;
    KrausChannel second;
    ControlQubit control{};

    SwitchSpec(KrausChannel e, KrausChannel f, ControlQubit c = {})
        : first(std::move(e)), second(std::move(f)), control(c) {
        if (first.dim() != second.dim()) {
            throw DimensionError("SwitchSpec: channels act on dimensions " +
                                 std::to_string(first.dim()) + " and " +
                                 std::to_string(second.dim()));
        }
    }

    std::size_t system_dim() const { return first.dim(); }
};

enum class Branch { Plus, Minus };

/// M_ij = E_i F_j (x) |0><0| + F_j E_i (x) |1><1|, control as the last factor.
inline std::vector<ComplexMatrix> switch_kraus_ops(const SwitchSpec& spec) {
    const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
    std::vector<ComplexMatrix> ms;
    ms.reserve(spec.first.operators().size() * spec.second.operators().size());
    for (const auto& e : spec.first.operators())
        for (const auto& f : spec.second.operators()) ms.push_back(kron(e * f, p0) + kron(f * e, p1));
    return ms;
}

/// S(rho (x) omega) = sum_ij M_ij (rho (x) omega) M_ij^dagger on system (x) control.
inline DensityMatrix apply_switch_full(const SwitchSpec& spec, const DensityMatrix& rho) {
    if (rho.dim() != spec.system_dim()) {
        throw DimensionError("apply_switch_full: state dimension " + std::to_string(rho.dim()) +
                             " does not match channel dimension " +
                             std::to_string(spec.system_dim()));
    }
    const ComplexMatrix input = kron(rho.matrix(), spec.control.density());
    ComplexMatrix out(input.rows(), input.cols());
    for (const auto& m : switch_kraus_ops(spec)) out += m * input * dagger(m);
    Dims dims = rho.dims();
    dims.push_back(2);
    return DensityMatrix(std::move(out), std::move(dims));
}

/// (UV + VU)/2 for the '+' branch, (UV - VU)/2 for '-'.
inline ComplexMatrix lambda_branch(const ComplexMatrix& u, const ComplexMatrix& v, Branch branch) {
    if (!u.is_square() || u.rows() != v.rows() || u.cols() != v.cols()) {
        throw DimensionError("lambda_branch: operands " + u.shape() + " and " + v.shape());
    }
    const ComplexMatrix uv = u * v;
    const ComplexMatrix vu = v * u;
    return (branch == Branch::Plus ? uv + vu : uv - vu) * 0.5;
}

inline ComplexMatrix lambda_branch(const UnitaryGate& u, const UnitaryGate& v, Branch branch) {
    return lambda_branch(u.matrix(), v.matrix(), branch);
}

class BranchUnreachable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct PostSelected {
    DensityMatrix state;
    double probability;
};

/// Switch with control |+>, control measured in {|+>, |->} and the given
/// outcome kept: Lambda rho Lambda^dagger / Tr(Lambda rho Lambda^dagger).
inline PostSelected apply_switch_postselected(const ComplexMatrix& u, const ComplexMatrix& v,
                                              const DensityMatrix& rho, Branch branch) {
    const ComplexMatrix lam = lambda_branch(u, v, branch);
    if (lam.rows() != rho.dim()) {
        throw DimensionError("apply_switch_postselected: operator " + lam.shape() +
                             " on state of dimension " + std::to_string(rho.dim()));
    }
    ComplexMatrix out = lam * rho.matrix() * dagger(lam);
    const double p = trace(out).real();
    if (p <= 1e-12) {
        throw BranchUnreachable(std::string("apply_switch_postselected: branch ") +
                                (branch == Branch::Plus ? "'+'" : "'-'") +
                                " unreachable for this input");
    }
    out *= 1.0 / p;
    return {DensityMatrix(std::move(out), rho.dims()), p};
}

inline PostSelected apply_switch_postselected(const UnitaryGate& u, const UnitaryGate& v,
                                              const DensityMatrix& rho, Branch branch) {
    return apply_switch_postselected(u.matrix(), v.matrix(), rho, branch);
}

/// Control traced out: Lambda+ rho Lambda+^dagger + Lambda- rho Lambda-^dagger.
inline DensityMatrix traced_switch(const ComplexMatrix& u, const ComplexMatrix& v,
                                   const DensityMatrix& rho) {
    const ComplexMatrix lp = lambda_branch(u, v, Branch::Plus);
    const ComplexMatrix lm = lambda_branch(u, v, Branch::Minus);
    if (lp.rows() != rho.dim()) {
        throw DimensionError("traced_switch: operator " + lp.shape() + " on state of dimension " +
                             std::to_string(rho.dim()));
    }
    return DensityMatrix(lp * rho.matrix() * dagger(lp) + lm * rho.matrix() * dagger(lm),
                         rho.dims());
}

inline DensityMatrix traced_switch(const UnitaryGate& u, const UnitaryGate& v,
                                   const DensityMatrix& rho) {
    return traced_switch(u.matrix(), v.matrix(), rho);
}

}  // namespace qswitch
