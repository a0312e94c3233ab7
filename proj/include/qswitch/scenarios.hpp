// scenarios.hpp
// Tripartite (Alice, Bob, Eve) states produced by each eavesdropping strategy.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "qswitch/qstate.hpp"
#include "qswitch/quantum_switch.hpp"

namespace qswitch {

inline constexpr std::size_t kAlice = 0;
inline constexpr std::size_t kBob = 1;
inline constexpr std::size_t kEve = 2;

inline const Dims& abe_dims() {
    static const Dims dims{2, 2, 2};
    return dims;
}

enum class ScenarioKind { SG, Switch, SymmetricCnot, DraftSwitch };

inline std::string_view scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::SG: return "sg";
        case ScenarioKind::Switch: return "switch";
        case ScenarioKind::SymmetricCnot: return "symmetric-cnot";
        case ScenarioKind::DraftSwitch: return "draft-switch";
    }
    return "?";
}

inline bool partner_needs_angle(GateKind g) {
    return g == GateKind::U_SG || g == GateKind::V_DRAFT;
}

/// One attack configuration at strength phi in [0, pi/2].
struct AttackScenario {
    ScenarioKind kind = ScenarioKind::SG;
    double phi = 0.0;
    std::optional<GateKind> partner;
    std::optional<double> phi1;

    void validate() const {
        constexpr double kSlack = 1e-12;
        if (!(phi >= -kSlack && phi <= std::numbers::pi / 2 + kSlack)) {
            throw std::invalid_argument("AttackScenario: phi must lie in [0, pi/2]");
        }
        const bool has_partner = partner.has_value();
        switch (kind) {
            case ScenarioKind::SG:
            case ScenarioKind::SymmetricCnot:
                if (has_partner) {
                    throw std::invalid_argument("AttackScenario: scenario '" +
                                                std::string(scenario_name(kind)) +
                                                "' takes no partner gate");
                }
                return;
            case ScenarioKind::Switch:
                if (!has_partner) {
                    throw std::invalid_argument("AttackScenario: switch requires a partner gate");
                }
                if (*partner != GateKind::XZ && *partner != GateKind::SWAP &&
                    *partner != GateKind::CNOT && !partner_needs_angle(*partner)) {
                    throw std::invalid_argument("AttackScenario: invalid switch partner " +
                                                std::string(gate_name(*partner)));
                }
                break;
            case ScenarioKind::DraftSwitch:
                if (!has_partner || !partner_needs_angle(*partner)) {
                    throw std::invalid_argument(
                        "AttackScenario: draft-switch requires partner U_SG or V_DRAFT");
                }
                break;
        }
        if (partner_needs_angle(*partner) && !phi1) {
            throw std::invalid_argument("AttackScenario: partner " +
                                        std::string(gate_name(*partner)) + " requires phi1");
        }
    }
};

/// |Phi+>_AB (x) |0>_E.
inline PureState initial_resource() {
    const double r = 1.0 / std::numbers::sqrt2;
    return PureState({r, 0.0, 0.0, 0.0, 0.0, 0.0, r, 0.0}, abe_dims());
}

/// Normalized (I_A (x) op) |Phi+>|0> for an operator on (B, E).
inline PureState attacked_pure(const ComplexMatrix& op_be) {
    const ComplexMatrix full = embed(op_be, {kBob, kEve}, abe_dims());
    auto amps = apply(full, initial_resource().amplitudes());
    double n2 = 0.0;
    for (const auto& a : amps) n2 += std::norm(a);
    if (n2 <= 1e-12) throw std::domain_error("attack annihilates state");
    return PureState::normalized(std::move(amps), abe_dims());
}

inline PureState sg_pure(double phi) { return attacked_pure(scarani_gisin_matrix(phi)); }

inline DensityMatrix sg_state(double phi) {
    AttackScenario{ScenarioKind::SG, phi, {}, {}}.validate();
    return pure_to_density(sg_pure(phi));
}

inline UnitaryGate partner_gate(GateKind partner, std::optional<double> phi1) {
    if (partner_needs_angle(partner)) {
        if (!phi1) {
            throw std::invalid_argument("partner " + std::string(gate_name(partner)) +
                                        " requires phi1");
        }
        return make_gate(partner, *phi1);
    }
    return make_gate(partner);
}

/// Post-selected switch operator (U_SG(phi) P + P U_SG(phi)) / 2 on (B, E).
inline ComplexMatrix switch_attack_operator(double phi, GateKind partner,
                                            std::optional<double> phi1 = std::nullopt) {
    return lambda_branch(scarani_gisin_matrix(phi), partner_gate(partner, phi1).matrix(),
                         Branch::Plus);
}

inline PureState switch_attack_pure(double phi, GateKind partner,
                                    std::optional<double> phi1 = std::nullopt) {
    return attacked_pure(switch_attack_operator(phi, partner, phi1));
}

inline DensityMatrix switch_attack_state(double phi, GateKind partner,
                                         std::optional<double> phi1 = std::nullopt) {
    AttackScenario{ScenarioKind::Switch, phi, partner, phi1}.validate();
    return pure_to_density(switch_attack_pure(phi, partner, phi1));
}

/// cos(phi)|000> + sin(phi)/2 (|101> + |011> + |100> + |010>).
inline PureState symmetric_cnot_pure(double phi) {
    const double c = std::cos(phi);
    const double h = std::sin(phi) / 2.0;
    return PureState({c, 0.0, h, h, h, h, 0.0, 0.0}, abe_dims());
}

inline DensityMatrix symmetric_cnot_state(double phi) {
    AttackScenario{ScenarioKind::SymmetricCnot, phi, {}, {}}.validate();
    return pure_to_density(symmetric_cnot_pure(phi));
}

inline PureState scenario_pure(const AttackScenario& s) {
    s.validate();
    switch (s.kind) {
        case ScenarioKind::SG: return sg_pure(s.phi);
        case ScenarioKind::Switch:
        case ScenarioKind::DraftSwitch: return switch_attack_pure(s.phi, *s.partner, s.phi1);
        case ScenarioKind::SymmetricCnot: return symmetric_cnot_pure(s.phi);
    }
    throw std::invalid_argument("scenario_pure: unknown scenario");
}

inline DensityMatrix scenario_state(const AttackScenario& s) {
    return pure_to_density(scenario_pure(s));
}

enum class Pair { AB, AE, BE };

inline std::string_view pair_name(Pair p) {
    switch (p) {
        case Pair::AB: return "AB";
        case Pair::AE: return "AE";
        case Pair::BE: return "BE";
    }
    return "?";
}

inline std::optional<Pair> parse_pair(std::string_view label) {
    if (label == "AB") return Pair::AB;
    if (label == "AE") return Pair::AE;
    if (label == "BE") return Pair::BE;
    return std::nullopt;
}

inline DensityMatrix reduced_pair(const DensityMatrix& rho_abe, Pair pair) {
    if (rho_abe.dims() != abe_dims()) {
        throw DimensionError("reduced_pair: expected a three-qubit (A, B, E) state");
    }
    switch (pair) {
        case Pair::AB: return partial_trace(rho_abe, {kAlice, kBob});
        case Pair::AE: return partial_trace(rho_abe, {kAlice, kEve});
        case Pair::BE: return partial_trace(rho_abe, {kBob, kEve});
    }
    throw std::invalid_argument("reduced_pair: invalid pair");
}

inline DensityMatrix reduced_pair(const DensityMatrix& rho_abe, std::string_view label) {
    const auto p = parse_pair(label);
    if (!p) throw std::invalid_argument("reduced_pair: invalid pair label '" + std::string(label) + "'");
    return reduced_pair(rho_abe, *p);
}

}  // namespace qswitch
