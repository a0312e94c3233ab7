// metrics.hpp
// Security figures for a tripartite attack state: Eve's information gain,
// pairwise mutual information, QBER, the one-way key condition, the maximal
// CHSH value and symmetric-attack fidelity/shrinking factors.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "qswitch/qstate.hpp"
#include "qswitch/quantum_switch.hpp"
#include "qswitch/scenarios.hpp"

namespace qswitch {

/// The two basis choices of the protocol: computational (theta = 0) and diagonal (pi/2).
inline constexpr std::array<double, 2> kProtocolAngles{0.0, std::numbers::pi / 2};

/// Shannon entropy in bits, 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> dist) {
    double sum = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("shannon_entropy: negative or non-finite probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTolerance) {
        throw std::invalid_argument("shannon_entropy: probabilities do not sum to 1");
    }
    double h = 0.0;
    for (double p : dist)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

inline double shannon_entropy(std::initializer_list<double> dist) {
    return shannon_entropy(std::span<const double>(dist.begin(), dist.size()));
}

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.dims() != Dims{2, 2}) {
        throw DimensionError(std::string(who) + ": expected a two-qubit state, got dimension " +
                             std::to_string(rho.dim()));
    }
}

// Joint 2x2 outcome table with both parties measuring at the same angle.
inline std::array<std::array<double, 2>, 2> matched_table(const DensityMatrix& rho, double theta) {
    const MeasurementSetting s(theta);
    const auto dist = measure_probs(rho, {s, s});
    return {{{dist.probs[0], dist.probs[1]}, {dist.probs[2], dist.probs[3]}}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Information gain

/// Intermediates of the information-gain computation. Index 0 is the setting
/// theta = 0, index 1 is theta = pi/2; inner index 0 is outcome '+'.
struct GainTrace {
    std::array<std::array<double, 2>, 2> p_outcome_given_setting{};  // P(lambda | x_i)
    std::array<double, 2> q{};                                       // q_lambda
    std::array<std::array<double, 2>, 2> posterior{};                // Q_{i lambda}
    std::array<double, 2> g_lambda{};                                // |Q_x - Q_y|
    double average_gain = 0.0;                                       // sum_lambda q G
    double gain = 0.0;
};

/// Eve's measurement on the (A, E) marginal at 0 and pi/2, A untouched.
///
/// gain = (1/4) sum_lambda |P(lambda|0) - P(lambda|pi/2)|, which equals half of
/// the Bayesian average sum_lambda q_lambda G_lambda.
inline GainTrace information_gain_trace(const DensityMatrix& rho_ae) {
    detail::require_two_qubits(rho_ae, "information_gain");
    GainTrace t;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto dist = measure_probs(rho_ae, {std::nullopt, MeasurementSetting(kProtocolAngles[i])});
        t.p_outcome_given_setting[i] = {dist.probs[0], dist.probs[1]};
    }
    for (std::size_t l = 0; l < 2; ++l) {
        t.q[l] = 0.5 * (t.p_outcome_given_setting[0][l] + t.p_outcome_given_setting[1][l]);
        for (std::size_t i = 0; i < 2; ++i) {
            t.posterior[i][l] = t.q[l] > 0.0 ? t.p_outcome_given_setting[i][l] / (2.0 * t.q[l]) : 0.0;
        }
        t.g_lambda[l] = std::abs(t.posterior[0][l] - t.posterior[1][l]);
        t.average_gain += t.q[l] * t.g_lambda[l];
    }
    double l1 = 0.0;
    for (std::size_t l = 0; l < 2; ++l)
        l1 += std::abs(t.p_outcome_given_setting[0][l] - t.p_outcome_given_setting[1][l]);
    t.gain = 0.25 * l1;
    return t;
}

inline double information_gain(const DensityMatrix& rho_ae) {
    return information_gain_trace(rho_ae).gain;
}

// ---------------------------------------------------------------------------
// Mutual information

/// H(P) + H(Q) - H(P, Q) for both parties measuring at angle `theta`.
inline double mutual_information_at(const DensityMatrix& rho_pq, double theta) {
    detail::require_two_qubits(rho_pq, "mutual_information");
    const auto t = detail::matched_table(rho_pq, theta);
    const std::array<double, 2> p{t[0][0] + t[0][1], t[1][0] + t[1][1]};
    const std::array<double, 2> q{t[0][0] + t[1][0], t[0][1] + t[1][1]};
    const std::array<double, 4> joint{t[0][0], t[0][1], t[1][0], t[1][1]};
    const double i = shannon_entropy(p) + shannon_entropy(q) - shannon_entropy(joint);
    return std::max(i, 0.0);
}

/// Unweighted average of the matched-basis mutual information over both protocol bases.
inline double mutual_information(const DensityMatrix& rho_pq) {
    double sum = 0.0;
    for (double theta : kProtocolAngles) sum += mutual_information_at(rho_pq, theta);
    return sum / static_cast<double>(kProtocolAngles.size());
}

/// Larger of the two per-basis values.
inline double mutual_information_max(const DensityMatrix& rho_pq) {
    double best = 0.0;
    for (double theta : kProtocolAngles) best = std::max(best, mutual_information_at(rho_pq, theta));
    return best;
}

/// One-way key distillation condition I(A:B) > min(I(A:E), I(B:E)).
inline bool security_condition(double i_ab, double i_ae, double i_be) {
    return i_ab > std::min(i_ae, i_be);
}

// ---------------------------------------------------------------------------
// Error rate

/// Probability that the two outcomes differ with both parties at angle theta.
inline double basis_disagreement(const DensityMatrix& rho_ab, double theta) {
    detail::require_two_qubits(rho_ab, "basis_disagreement");
    const auto t = detail::matched_table(rho_ab, theta);
    return t[0][1] + t[1][0];
}

/// Sifted-key error rate, measured in the computational key basis.
inline double qber(const DensityMatrix& rho_ab) { return basis_disagreement(rho_ab, 0.0); }

// ---------------------------------------------------------------------------
// Bell violation

struct BellReport {
    std::array<std::array<double, 3>, 3> t_matrix{};
    double m_value = 0.0;
    double chsh_max = 0.0;

    bool violates_local_realism() const { return chsh_max > 2.0 + kTolerance; }
};

/// Maximal CHSH value 2 sqrt(M), M the sum of the two largest eigenvalues of T^T T,
/// T_ij = Tr(rho sigma_i (x) sigma_j).
inline BellReport horodecki_bell_max(const DensityMatrix& rho_pq) {
    detail::require_two_qubits(rho_pq, "horodecki_bell_max");
    const std::array<ComplexMatrix, 3> sigma{pauli::X(), pauli::Y(), pauli::Z()};
    BellReport r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r.t_matrix[i][j] = trace(rho_pq.matrix() * kron(sigma[i], sigma[j])).real();

    ComplexMatrix tt(3, 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += r.t_matrix[k][a] * r.t_matrix[k][b];
            tt(a, b) = s;
        }
    const auto eig = hermitian_eigenvalues(tt);
    r.m_value = std::max(eig[0] + eig[1], 0.0);
    r.chsh_max = 2.0 * std::sqrt(r.m_value);
    return r;
}

// ---------------------------------------------------------------------------
// Symmetric attack: fidelity, disturbance, shrinking factor

struct FidelityReport {
    double fidelity = 0.0;
    double disturbance = 0.0;
    std::array<std::optional<double>, 3> shrink{};  // r_out,i / r_in,i where r_in,i != 0
    std::array<double, 3> bloch_out{};
};

namespace detail {

inline std::array<double, 3> unit_direction(const std::array<double, 3>& r) {
    const double n = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (n <= 1e-12) throw std::invalid_argument("fidelity_disturbance_shrink: zero input vector");
    return {r[0] / n, r[1] / n, r[2] / n};
}

inline FidelityReport compare_bloch(const std::array<double, 3>& in, const DensityMatrix& out) {
    FidelityReport rep;
    rep.bloch_out = bloch_vector(out);
    rep.fidelity = trace(density_from_bloch(in).matrix() * out.matrix()).real();
    rep.disturbance = 1.0 - rep.fidelity;
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(in[i]) > 1e-12) rep.shrink[i] = rep.bloch_out[i] / in[i];
    }
    return rep;
}

}  // namespace detail

/// Sends the pure qubit with Bloch direction `input_bloch` through Bob's channel.
inline FidelityReport fidelity_disturbance_shrink(const KrausChannel& bob_channel,
                                                  const std::array<double, 3>& input_bloch) {
    if (bob_channel.dim() != 2) {
        throw DimensionError("fidelity_disturbance_shrink: Bob's channel must act on a qubit");
    }
    const auto r = detail::unit_direction(input_bloch);
    const DensityMatrix in = density_from_bloch(r);
    const DensityMatrix out(bob_channel.apply(in.matrix()), Dims{2});
    return detail::compare_bloch(r, out);
}

/// Entanglement-based form: Alice's projection prepares Bob's qubit along r
/// (|Phi+> steers <m*| on A to |m> on B); the report compares that with the
/// state Bob actually holds in the attacked (A, B, E) state.
inline FidelityReport fidelity_disturbance_shrink(const DensityMatrix& rho_abe,
                                                  const std::array<double, 3>& input_bloch) {
    if (rho_abe.dims() != abe_dims()) {
        throw DimensionError("fidelity_disturbance_shrink: expected an (A, B, E) state");
    }
    const auto r = detail::unit_direction(input_bloch);
    const ComplexMatrix alice_proj = density_from_bloch({r[0], -r[1], r[2]}).matrix();
    const ComplexMatrix op = embed(alice_proj, {kAlice}, abe_dims());
    const DensityMatrix conditioned =
        DensityMatrix::normalized(op * rho_abe.matrix() * op, abe_dims());
    return detail::compare_bloch(r, partial_trace(conditioned, {kBob}));
}

inline FidelityReport fidelity_disturbance_shrink(const AttackScenario& scenario,
                                                  const std::array<double, 3>& input_bloch) {
    return fidelity_disturbance_shrink(scenario_state(scenario), input_bloch);
}

// ---------------------------------------------------------------------------
// Aggregated sweep row

struct MetricsRow {
    double phi = 0.0;
    double i_ab = 0.0;
    double i_ae = 0.0;
    double i_be = 0.0;
    double gain = 0.0;
    double bell_ab = 0.0;
    double bell_ae = 0.0;
    double bell_be = 0.0;
    double qber = 0.0;
    bool secure = false;

    double min_eve() const { return std::min(i_ae, i_be); }
};

inline MetricsRow evaluate_row(const AttackScenario& scenario) {
    const DensityMatrix rho = scenario_state(scenario);
    const DensityMatrix ab = reduced_pair(rho, Pair::AB);
    const DensityMatrix ae = reduced_pair(rho, Pair::AE);
    const DensityMatrix be = reduced_pair(rho, Pair::BE);
    MetricsRow row;
    row.phi = scenario.phi;
    row.i_ab = mutual_information(ab);
    row.i_ae = mutual_information(ae);
    row.i_be = mutual_information(be);
    row.gain = information_gain(ae);
    row.bell_ab = horodecki_bell_max(ab).chsh_max;
    row.bell_ae = horodecki_bell_max(ae).chsh_max;
    row.bell_be = horodecki_bell_max(be).chsh_max;
    row.qber = qber(ab);
    row.secure = security_condition(row.i_ab, row.i_ae, row.i_be);
    return row;
}

}  // namespace qswitch
