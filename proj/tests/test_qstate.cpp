#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qswitch/qstate.hpp"
#include "qswitch/random.hpp"
#include "qswitch/scenarios.hpp"

using namespace qswitch;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

PureState phi_plus() { return PureState({r2, 0, 0, r2}, {2, 2}); }

}  // namespace

TEST(PureState, ValidationAndNormalization) {
    EXPECT_THROW(PureState({1.0, 1.0}, {2}), std::invalid_argument);
    EXPECT_THROW(PureState({1.0, 0.0, 0.0}, {2}), DimensionError);
    const auto p = PureState::normalized({3.0, 4.0}, {2});
    EXPECT_NEAR(p.amplitudes()[0].real(), 0.6, 1e-15);
    EXPECT_THROW(PureState::normalized({0.0, 0.0}, {2}), std::invalid_argument);
    EXPECT_EQ(PureState::basis(5, {2, 2, 2}).amplitudes()[5], Complex(1.0));
    EXPECT_NEAR(std::abs(phi_plus().inner(phi_plus())), 1.0, 1e-15);
}

TEST(PureToDensity, Examples) {
    const auto zero = pure_to_density(PureState::basis(0, {2}));
    const std::array<double, 2> d{1, 0};
    EXPECT_TRUE(approx_equal(zero.matrix(), ComplexMatrix::diagonal(d)));

    const auto bell = pure_to_density(phi_plus());
    EXPECT_NEAR(bell.matrix()(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(bell.matrix()(0, 3).real(), 0.5, 1e-15);
    EXPECT_NEAR(bell.matrix()(3, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(bell.matrix()(3, 3).real(), 0.5, 1e-15);

    random::Engine rng(1);
    for (int n = 0; n < 10; ++n) {
        const auto rho = pure_to_density(random::pure_state(rng, {2, 2, 2}));
        EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-12);
        EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    }
}

TEST(DensityMatrix, RejectsInvalid) {
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2), {2}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}, {2}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}, {2}), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4) * 0.25, {2, 3}), DimensionError);
    EXPECT_NEAR(DensityMatrix::maximally_mixed({2, 2}).purity(), 0.25, 1e-15);
}

TEST(MakeGate, Examples) {
    EXPECT_TRUE(approx_equal(make_gate(GateKind::U_SG, 0.0).matrix(), ComplexMatrix::identity(4)));

    const auto u = make_gate(GateKind::U_SG, std::numbers::pi / 2).matrix();
    const auto out = apply(u, PureState::basis(0b10, {2, 2}).amplitudes());
    EXPECT_NEAR(std::abs(out[0b01] - 1.0), 0.0, 1e-12);

    const double phi1 = 0.4;
    const auto v = make_gate("V_DRAFT", std::array<double, 1>{phi1}).matrix();
    const auto w = apply(v, PureState::basis(0, {2, 2}).amplitudes());
    EXPECT_NEAR(w[0].real(), std::cos(phi1), 1e-12);
    EXPECT_NEAR(w[3].real(), std::sin(phi1), 1e-12);
    EXPECT_NEAR(std::abs(w[1]) + std::abs(w[2]), 0.0, 1e-15);
}

TEST(MakeGate, ScaraniGisinAction) {
    const double phi = 0.8, c = std::cos(phi), s = std::sin(phi);
    const auto u = scarani_gisin_matrix(phi);
    auto act = [&](std::size_t k) { return apply(u, PureState::basis(k, {2, 2}).amplitudes()); };
    EXPECT_NEAR(act(0b00)[0b00].real(), 1.0, 1e-15);
    EXPECT_NEAR(act(0b11)[0b11].real(), 1.0, 1e-15);
    EXPECT_NEAR(act(0b10)[0b10].real(), c, 1e-15);
    EXPECT_NEAR(act(0b10)[0b01].real(), s, 1e-15);
    EXPECT_NEAR(act(0b01)[0b01].real(), c, 1e-15);
    EXPECT_NEAR(act(0b01)[0b10].real(), -s, 1e-15);
}

TEST(MakeGate, Errors) {
    EXPECT_THROW(make_gate("FOO"), std::invalid_argument);
    EXPECT_THROW(make_gate(GateKind::U_SG), std::invalid_argument);
    EXPECT_THROW(make_gate(GateKind::X, 0.3), std::invalid_argument);
    EXPECT_THROW(UnitaryGate("bad", {}, ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), std::invalid_argument);
    for (auto k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::XZ, GateKind::SWAP,
                   GateKind::CNOT}) {
        EXPECT_EQ(parse_gate_kind(gate_name(k)), k);
    }
}

TEST(Embed, Examples) {
    EXPECT_TRUE(approx_equal(embed(pauli::X(), {0}, {2, 2}), kron(pauli::X(), pauli::I())));
    EXPECT_TRUE(approx_equal(embed(pauli::X(), {1}, {2, 2}), kron(pauli::I(), pauli::X())));

    const double phi = 0.6;
    const auto op = embed(make_gate(GateKind::U_SG, phi), std::array<std::size_t, 2>{1, 2}, {2, 2, 2});
    const auto out = apply(op, PureState::basis(0b110, {2, 2, 2}).amplitudes());
    EXPECT_NEAR(out[0b110].real(), std::cos(phi), 1e-15);
    EXPECT_NEAR(out[0b101].real(), std::sin(phi), 1e-15);

    EXPECT_TRUE(approx_equal(embed(ComplexMatrix::identity(2), {1}, {2, 2, 2}), ComplexMatrix::identity(8)));
}

TEST(Embed, ReversedTargetsPermute) {
    // CNOT with control on qubit 2 and target on qubit 0.
    const auto cnot = make_gate(GateKind::CNOT).matrix();
    const auto op = embed(cnot, {2, 0}, {2, 2, 2});
    const auto out = apply(op, PureState::basis(0b001, {2, 2, 2}).amplitudes());
    EXPECT_NEAR(out[0b101].real(), 1.0, 1e-15);
}

TEST(Embed, Errors) {
    EXPECT_THROW(embed(pauli::X(), {3}, {2, 2}), std::out_of_range);
    EXPECT_THROW(embed(pauli::X(), {0, 1}, {2, 2}), DimensionError);
    EXPECT_THROW(embed(ComplexMatrix::identity(4), {0, 0}, {2, 2}), std::invalid_argument);
}

TEST(PartialTrace, Examples) {
    const auto bell = pure_to_density(phi_plus());
    EXPECT_TRUE(approx_equal(partial_trace(bell, {0}).matrix(), ComplexMatrix::identity(2) * 0.5));
    EXPECT_TRUE(approx_equal(partial_trace(bell, {0, 1}).matrix(), bell.matrix()));
    EXPECT_THROW(partial_trace(bell, {}), std::invalid_argument);
    EXPECT_THROW(partial_trace(bell, {2}), std::out_of_range);

    for (double phi : {0.0, 0.4, 1.1, std::numbers::pi / 2}) {
        const auto amps = oracle::swap_switch(phi);
        const auto rho = pure_to_density(PureState(std::vector<Complex>(amps.begin(), amps.end()), {2, 2, 2}));
        const double c = std::cos(phi);
        const auto want = PureState::normalized({1.0, 0.0, 0.0, c}, {2, 2});
        const auto ae = partial_trace(rho, {0, 2});
        EXPECT_TRUE(approx_equal(ae.matrix(), pure_to_density(want).matrix()));
    }
}

TEST(PartialTrace, ProductStatesFactor) {
    random::Engine rng(9);
    for (int n = 0; n < 10; ++n) {
        const auto a = random::density(rng, {2});
        const auto b = random::density(rng, {2});
        const auto c = random::density(rng, {2});
        const auto abc = tensor(tensor(a, b), c);
        EXPECT_TRUE(approx_equal(partial_trace(abc, {0, 2}).matrix(), kron(a.matrix(), c.matrix())));
        EXPECT_TRUE(approx_equal(partial_trace(abc, {1}).matrix(), b.matrix()));
    }
}

TEST(Projector, Examples) {
    const auto p0 = projector(MeasurementSetting(0.0), Outcome::Plus);
    EXPECT_TRUE(approx_equal(p0, ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
    const auto px = projector(MeasurementSetting(std::numbers::pi / 2), Outcome::Plus);
    EXPECT_TRUE(approx_equal(px, ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}));
    const MeasurementSetting s(1.1);
    EXPECT_TRUE(approx_equal(projector(s, Outcome::Plus) + projector(s, Outcome::Minus),
                             ComplexMatrix::identity(2)));
    EXPECT_THROW(MeasurementSetting(-0.1), std::invalid_argument);
    EXPECT_THROW(MeasurementSetting(4.0), std::invalid_argument);
}

TEST(MeasureProbs, Examples) {
    const auto mixed = DensityMatrix::maximally_mixed({2});
    for (double th : {0.0, 0.7, 2.0}) {
        const auto d = measure_probs(mixed, {MeasurementSetting(th)});
        EXPECT_NEAR(d({Outcome::Plus}), 0.5, 1e-15);
        EXPECT_NEAR(d({Outcome::Minus}), 0.5, 1e-15);
    }

    const auto bell = pure_to_density(phi_plus());
    const auto zz = measure_probs(bell, {MeasurementSetting(0), MeasurementSetting(0)});
    EXPECT_NEAR(zz({Outcome::Plus, Outcome::Plus}), 0.5, 1e-15);
    EXPECT_NEAR(zz({Outcome::Minus, Outcome::Minus}), 0.5, 1e-15);
    EXPECT_NEAR(zz({Outcome::Plus, Outcome::Minus}), 0.0, 1e-15);

    for (double phi : {0.2, 0.9}) {
        const auto ae = reduced_pair(sg_state(phi), Pair::AE);
        const auto e = measure_probs(ae, {std::nullopt, MeasurementSetting(0)});
        const double c = std::cos(phi), s = std::sin(phi);
        EXPECT_NEAR(e({Outcome::Plus}), (1 + c * c) / 2, 1e-12);
        EXPECT_NEAR(e({Outcome::Minus}), s * s / 2, 1e-12);
        EXPECT_NEAR(e({Outcome::Plus}), oracle::marginal(oracle::sg(phi), 2, 0, true), 1e-12);
    }
}

TEST(MeasureProbs, Errors) {
    const auto bell = pure_to_density(phi_plus());
    EXPECT_THROW(measure_probs(bell, {MeasurementSetting(0)}), DimensionError);
    const auto qutrit = DensityMatrix::maximally_mixed({3});
    EXPECT_THROW(measure_probs(qutrit, {MeasurementSetting(0)}), DimensionError);
    const auto d = measure_probs(bell, {MeasurementSetting(0), std::nullopt});
    EXPECT_THROW(d({Outcome::Plus, Outcome::Plus}), std::invalid_argument);
}

TEST(MeasureProbs, MarginalsAgreeWithOracleOnRandomAngles) {
    random::Engine rng(21);
    for (int n = 0; n < 20; ++n) {
        const double phi = random::uniform(rng, 0, std::numbers::pi / 2);
        const double th = random::uniform(rng, 0, std::numbers::pi);
        const auto rho = symmetric_cnot_state(phi);
        for (std::size_t q = 0; q < 3; ++q) {
            std::vector<std::optional<MeasurementSetting>> settings(3);
            settings[q] = MeasurementSetting(th);
            const auto d = measure_probs(rho, settings);
            EXPECT_NEAR(d({Outcome::Plus}), oracle::marginal(oracle::chi(phi), static_cast<int>(q), th, true),
                        1e-12);
        }
    }
}

TEST(Bloch, Examples) {
    const auto z = bloch_vector(pure_to_density(PureState::basis(0, {2})));
    EXPECT_NEAR(z[2], 1.0, 1e-15);
    EXPECT_NEAR(z[0], 0.0, 1e-15);
    const auto m = bloch_vector(DensityMatrix::maximally_mixed({2}));
    for (double v : m) EXPECT_NEAR(v, 0.0, 1e-15);
    const auto x = bloch_vector(density_from_bloch({0.3, 0, 0}));
    EXPECT_NEAR(x[0], 0.3, 1e-15);
    EXPECT_NEAR(x[1], 0.0, 1e-15);
    EXPECT_THROW(bloch_vector(DensityMatrix::maximally_mixed({2, 2})), DimensionError);
}

TEST(Fidelity, PureStates) {
    const auto bell = pure_to_density(phi_plus());
    EXPECT_NEAR(fidelity(bell, phi_plus()), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(bell, PureState::basis(1, {2, 2})), 0.0, 1e-15);
    EXPECT_THROW(fidelity(bell, PureState::basis(0, {2})), DimensionError);
}
