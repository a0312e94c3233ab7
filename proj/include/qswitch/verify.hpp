// verify.hpp
// Self-check suites: closed forms on phi grids, oracle comparisons and the
// algebraic identities of the switch. Deterministic for a fixed seed.

#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qswitch/metrics.hpp"
#include "qswitch/quantum_switch.hpp"
#include "qswitch/random.hpp"
#include "qswitch/scenarios.hpp"
#include "qswitch/sweep.hpp"
#include "qswitch/testing/chsh_search.hpp"

namespace qswitch::verify {

struct Options {
    std::uint64_t seed = 0;
    /// Bob-Eve attack unitary used by the closed-form suites; replaceable for mutation checks.
    std::function<ComplexMatrix(double)> attack_unitary = scarani_gisin_matrix;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

namespace detail {

class Check {
public:
    explicit Check(std::string name) : result_{std::move(name), true, {}} {}

    void expect(bool cond, const std::string& what) {
        if (!cond && result_.passed) {
            result_.passed = false;
            result_.detail = what;
        }
    }

    void near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream msg;
            msg.precision(12);
            msg << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
            expect(false, msg.str());
        }
    }

    SuiteResult finish() && { return std::move(result_); }

private:
    SuiteResult result_;
};

template <class F>
SuiteResult run_guarded(const std::string& name, F&& body) {
    Check c(name);
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    return std::move(c).finish();
}

inline std::vector<double> grid101() { return phi_grid(0.0, std::numbers::pi / 2, 101); }

inline std::string at_phi(const char* what, double phi) {
    std::ostringstream s;
    s << what << " at phi=" << phi;
    return s.str();
}

}  // namespace detail

inline SuiteResult linalg_identities(const Options& opt) {
    return detail::run_guarded("linalg identities", [&](detail::Check& c) {
        random::Engine rng(opt.seed);
        for (int n = 0; n < 50; ++n) {
            const auto a = random::gaussian_matrix(rng, 4, 4);
            const auto b = random::gaussian_matrix(rng, 4, 4);
            const auto m = random::gaussian_matrix(rng, 4, 4);
            c.expect(max_abs_diff((a * b) * m, a * (b * m)) < 1e-11, "mat_mul associativity");
            const auto p = random::gaussian_matrix(rng, 2, 2);
            const auto q = random::gaussian_matrix(rng, 2, 2);
            c.expect(max_abs_diff(kron(a, p) * kron(b, q), kron(a * b, p * q)) < 1e-11,
                     "kron mixed product");
            const auto h = a + dagger(a);
            const auto eig = hermitian_eigenvalues(h);
            double sum = 0.0;
            for (double e : eig) sum += e;
            c.expect(std::abs(sum - trace(h).real()) < kTolerance, "eigenvalue sum equals trace");
            const auto u = random::unitary(rng, 4);
            const auto rotated = hermitian_eigenvalues(u * h * dagger(u));
            for (std::size_t i = 0; i < eig.size(); ++i)
                c.expect(std::abs(rotated[i] - eig[i]) < kTolerance, "unitary invariance of spectrum");
        }
    });
}

inline SuiteResult gate_unitarity(const Options& opt) {
    return detail::run_guarded("gate library unitarity", [&](detail::Check& c) {
        for (double phi : detail::grid101()) {
            c.expect(is_unitary(opt.attack_unitary(phi)), detail::at_phi("attack unitary", phi));
            c.expect(is_unitary(draft_partner_matrix(phi)), detail::at_phi("draft partner", phi));
        }
        for (auto k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::XZ,
                       GateKind::SWAP, GateKind::CNOT}) {
            c.expect(is_unitary(make_gate(k).matrix()), std::string(gate_name(k)));
        }
    });
}

inline SuiteResult gain_sg(const Options& opt) {
    return detail::run_guarded("information gain, plain attack (G = cos^2/4)", [&](detail::Check& c) {
        for (double phi : detail::grid101()) {
            const ComplexMatrix u = opt.attack_unitary(phi);
            c.expect(is_unitary(u), detail::at_phi("attack unitary not unitary", phi));
            const auto rho = pure_to_density(attacked_pure(u));
            const double cphi = std::cos(phi);
            c.near(information_gain(reduced_pair(rho, Pair::AE)), 0.25 * cphi * cphi, 1e-9,
                   detail::at_phi("G_SG", phi));
        }
    });
}

inline SuiteResult gain_xz_ratio(const Options& opt) {
    return detail::run_guarded("information gain ratio, XZ switch (sec phi)", [&](detail::Check& c) {
        const ComplexMatrix xz = make_gate(GateKind::XZ).matrix();
        for (double phi : detail::grid101()) {
            if (phi < 0.01 || phi > std::numbers::pi / 2 - 0.01) continue;
            const ComplexMatrix u = opt.attack_unitary(phi);
            const double g_sg = information_gain(reduced_pair(pure_to_density(attacked_pure(u)), Pair::AE));
            const double g_sw = information_gain(reduced_pair(
                pure_to_density(attacked_pure(lambda_branch(u, xz, Branch::Plus))), Pair::AE));
            c.near(g_sw, 0.25 * std::cos(phi), 1e-9, detail::at_phi("G_SW(XZ)", phi));
            c.near(g_sw / g_sg, 1.0 / std::cos(phi), 1e-7, detail::at_phi("ratio", phi));
        }
    });
}

inline SuiteResult gain_swap(const Options& opt) {
    return detail::run_guarded("information gain, SWAP switch", [&](detail::Check& c) {
        const ComplexMatrix swap = make_gate(GateKind::SWAP).matrix();
        for (double phi : detail::grid101()) {
            const auto rho = pure_to_density(
                attacked_pure(lambda_branch(opt.attack_unitary(phi), swap, Branch::Plus)));
            c.near(information_gain(reduced_pair(rho, Pair::AE)),
                   std::abs(1.0 / (std::cos(2 * phi) + 3.0) - 0.25), 1e-9,
                   detail::at_phi("G'_SW", phi));
        }
    });
}

inline SuiteResult joint_state(const Options& opt) {
    return detail::run_guarded("SWAP switch joint state", [&](detail::Check& c) {
        const ComplexMatrix swap = make_gate(GateKind::SWAP).matrix();
        for (double phi : phi_grid(0.0, std::numbers::pi / 2, 11)) {
            const auto rho = pure_to_density(
                attacked_pure(lambda_branch(opt.attack_unitary(phi), swap, Branch::Plus)));
            const double cphi = std::cos(phi);
            const auto expected = PureState::normalized({1.0, 0, 0, 0, 0, cphi, 0, 0}, abe_dims());
            c.expect(fidelity(rho, expected) >= 1.0 - 1e-9, detail::at_phi("fidelity", phi));
        }
        // Same state through the density-matrix post-selection path.
        for (double phi : {0.2, 0.9, 1.4}) {
            const auto via_density = apply_switch_postselected(
                embed(opt.attack_unitary(phi), {kBob, kEve}, abe_dims()),
                embed(swap, {kBob, kEve}, abe_dims()), pure_to_density(initial_resource()),
                Branch::Plus);
            const auto via_vector = pure_to_density(
                attacked_pure(lambda_branch(opt.attack_unitary(phi), swap, Branch::Plus)));
            c.expect(approx_equal(via_density.state.matrix(), via_vector.matrix()),
                     detail::at_phi("post-selection paths disagree", phi));
        }
    });
}

inline SuiteResult qber_sg(const Options& opt) {
    return detail::run_guarded("QBER of plain attack (sin^2/2)", [&](detail::Check& c) {
        for (double phi : detail::grid101()) {
            const auto rho = pure_to_density(attacked_pure(opt.attack_unitary(phi)));
            const double s = std::sin(phi);
            c.near(qber(reduced_pair(rho, Pair::AB)), 0.5 * s * s, 1e-9, detail::at_phi("QBER", phi));
        }
    });
}

inline SuiteResult switch_algebra(const Options& opt) {
    return detail::run_guarded("switch algebra", [&](detail::Check& c) {
        random::Engine rng(opt.seed + 1);
        for (int n = 0; n < 100; ++n) {
            const SwitchSpec spec(random::channel(rng, 2), random::channel(rng, 2));
            ComplexMatrix sum(4, 4);
            for (const auto& m : switch_kraus_ops(spec)) sum += dagger(m) * m;
            c.expect(max_abs_diff(sum, ComplexMatrix::identity(4)) <= kTolerance, "Kraus completeness");
        }
        for (int n = 0; n < 200; ++n) {
            const auto u = random::unitary(rng, 4);
            const auto v = random::unitary(rng, 4);
            const auto rho = random::density(rng, {2, 2});
            const SwitchSpec spec(KrausChannel({u}), KrausChannel({v}));
            const auto full = apply_switch_full(spec, rho);
            const auto traced = partial_trace(full, {0, 1});
            c.expect(max_abs_diff(traced.matrix(), traced_switch(u, v, rho).matrix()) <= kTolerance,
                     "branch decomposition");
            const auto lp = lambda_branch(u, v, Branch::Plus);
            const auto lm = lambda_branch(u, v, Branch::Minus);
            c.expect(max_abs_diff(dagger(lp) * lp + dagger(lm) * lm, ComplexMatrix::identity(4)) <=
                         kTolerance,
                     "Lambda+ and Lambda- completeness");
            const double pp = apply_switch_postselected(u, v, rho, Branch::Plus).probability;
            const double pm = apply_switch_postselected(u, v, rho, Branch::Minus).probability;
            c.expect(std::abs(pp + pm - 1.0) <= kTolerance, "branch probabilities sum to 1");
        }
    });
}

inline SuiteResult bell_checks(const Options& opt) {
    return detail::run_guarded("Bell maxima vs brute-force search", [&](detail::Check& c) {
        const ComplexMatrix swap = make_gate(GateKind::SWAP).matrix();
        auto state = [&](double phi) {
            return pure_to_density(
                attacked_pure(lambda_branch(opt.attack_unitary(phi), swap, Branch::Plus)));
        };
        c.near(horodecki_bell_max(reduced_pair(state(0.0), Pair::AE)).chsh_max,
               2.0 * std::numbers::sqrt2, 1e-6, "CHSH(AE) at phi=0");
        c.near(horodecki_bell_max(reduced_pair(state(std::numbers::pi / 2), Pair::AE)).chsh_max,
               2.0, 1e-6, "CHSH(AE) at phi=pi/2");
        for (double phi : {0.3, 0.8, 1.2}) {
            const auto ae = reduced_pair(state(phi), Pair::AE);
            c.near(horodecki_bell_max(ae).chsh_max, testing::brute_force_chsh_max(ae, 181).value,
                   1e-4, detail::at_phi("Horodecki vs search", phi));
        }
        for (double phi : detail::grid101()) {
            const auto rho = state(phi);
            c.expect(horodecki_bell_max(reduced_pair(rho, Pair::AB)).chsh_max <= 2.0 + 1e-9,
                     detail::at_phi("CHSH(AB) <= 2", phi));
            c.expect(horodecki_bell_max(reduced_pair(rho, Pair::BE)).chsh_max <= 2.0 + 1e-9,
                     detail::at_phi("CHSH(BE) <= 2", phi));
        }
    });
}

inline SuiteResult scenario_validity(const Options&) {
    return detail::run_guarded("scenario states are valid density matrices", [&](detail::Check& c) {
        const std::vector<AttackScenario> kinds{
            {ScenarioKind::SG, 0, {}, {}},
            {ScenarioKind::Switch, 0, GateKind::XZ, {}},
            {ScenarioKind::Switch, 0, GateKind::SWAP, {}},
            {ScenarioKind::Switch, 0, GateKind::CNOT, {}},
            {ScenarioKind::SymmetricCnot, 0, {}, {}},
            {ScenarioKind::DraftSwitch, 0, GateKind::U_SG, 0.9},
            {ScenarioKind::DraftSwitch, 0, GateKind::V_DRAFT, 0.9},
        };
        for (auto s : kinds) {
            for (double phi : phi_grid(0.0, std::numbers::pi / 2, 21)) {
                s.phi = phi;
                const auto rho = scenario_state(s);  // throws on invariant violation
                c.near(rho.purity(), 1.0, 1e-9, detail::at_phi("purity", phi));
                const auto row = evaluate_row(s);
                c.expect(row.i_ab >= 0 && row.i_ae >= 0 && row.i_be >= 0, "mutual information >= 0");
                c.expect(row.bell_ab <= 2 * std::numbers::sqrt2 + 1e-9, "CHSH bounded by 2 sqrt 2");
            }
        }
    });
}

inline std::vector<SuiteResult> run_all(const Options& opt = {}) {
    return {linalg_identities(opt), gate_unitarity(opt), gain_sg(opt),       gain_xz_ratio(opt),
            gain_swap(opt),         joint_state(opt),    qber_sg(opt),       switch_algebra(opt),
            bell_checks(opt),       scenario_validity(opt)};
}

}  // namespace qswitch::verify
