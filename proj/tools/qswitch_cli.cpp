// qswitch command-line front end: sweep, state, verify, plot.

#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qswitch/metrics.hpp"
#include "qswitch/plot.hpp"
#include "qswitch/scenarios.hpp"
#include "qswitch/sweep.hpp"
#include "qswitch/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

const std::map<std::string, qswitch::ScenarioKind> kScenarioNames{
    {"sg", qswitch::ScenarioKind::SG},
    {"switch", qswitch::ScenarioKind::Switch},
    {"symmetric-cnot", qswitch::ScenarioKind::SymmetricCnot},
    {"draft-switch", qswitch::ScenarioKind::DraftSwitch},
};

const std::map<std::string, qswitch::GateKind> kPartnerNames{
    {"xz", qswitch::GateKind::XZ},     {"swap", qswitch::GateKind::SWAP},
    {"cnot", qswitch::GateKind::CNOT}, {"usg", qswitch::GateKind::U_SG},
    {"vdraft", qswitch::GateKind::V_DRAFT},
};

struct ScenarioFlags {
    std::string scenario = "sg";
    std::string partner;
    std::optional<double> phi1;
    bool degrees = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "Attack scenario")
            ->check(CLI::IsMember({"sg", "switch", "symmetric-cnot", "draft-switch"}));
        cmd->add_option("--partner", partner, "Switch partner gate")
            ->check(CLI::IsMember({"xz", "swap", "cnot", "usg", "vdraft"}));
        cmd->add_option("--phi1", phi1, "Partner angle for usg/vdraft partners");
        cmd->add_flag("--degrees", degrees, "Interpret angles in degrees");
    }

    double angle(double v) const { return degrees ? v * std::numbers::pi / 180.0 : v; }

    qswitch::AttackScenario scenario_at(double phi) const {
        qswitch::AttackScenario s;
        s.kind = kScenarioNames.at(scenario);
        s.phi = phi;
        if (!partner.empty()) s.partner = kPartnerNames.at(partner);
        if (phi1) s.phi1 = angle(*phi1);
        s.validate();
        return s;
    }
};

std::string ket_label(std::size_t index, std::size_t qubits) {
    std::string s = "|";
    for (std::size_t k = qubits; k-- > 0;) s += ((index >> k) & 1U) ? '1' : '0';
    return s + ">";
}

std::string complex_cell(qswitch::Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%10.6f%+10.6fi", z.real() == 0.0 ? 0.0 : z.real(),
                  z.imag() == 0.0 ? 0.0 : z.imag());
    return buf;
}

void print_matrix(std::ostream& out, const qswitch::ComplexMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << "  " << complex_cell(m(i, j));
        out << '\n';
    }
}

int cmd_state(const qswitch::AttackScenario& s) {
    using namespace qswitch;
    const PureState psi = scenario_pure(s);
    // Fix the global phase so the largest amplitude is real and positive.
    std::size_t lead = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
        if (std::abs(psi.amplitudes()[i]) > std::abs(psi.amplitudes()[lead]) + 1e-12) lead = i;
    const Complex phase = std::conj(psi.amplitudes()[lead]) / std::abs(psi.amplitudes()[lead]);

    std::cout << "scenario " << scenario_name(s.kind);
    if (s.partner) std::cout << " partner " << gate_name(*s.partner);
    if (s.phi1) std::cout << " phi1 " << format_number(*s.phi1);
    std::cout << " phi " << format_number(s.phi) << "\n";
    std::cout << "amplitudes (A,B,E):\n";
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const Complex a = psi.amplitudes()[i] * phase;
        if (std::abs(a) < 5e-7) continue;
        std::cout << "  " << ket_label(i, 3) << "  " << complex_cell(a) << '\n';
    }
    const DensityMatrix rho = pure_to_density(psi);
    for (Pair p : {Pair::AB, Pair::AE, Pair::BE}) {
        std::cout << "rho_" << pair_name(p) << ":\n";
        print_matrix(std::cout, reduced_pair(rho, p).matrix());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-switch eavesdropping simulator"};
    app.require_subcommand(1);

    // sweep
    ScenarioFlags sweep_flags;
    double phi_start = 0.0;
    double phi_end = std::numbers::pi / 2;
    std::size_t steps = 101;
    std::vector<std::string> metric_names;
    std::string out_path;
    std::uint64_t seed = 0;
    auto* sweep = app.add_subcommand("sweep", "Sweep the attack strength and write CSV");
    sweep_flags.add_to(sweep);
    sweep->add_option("--phi-start", phi_start, "First phi");
    auto* end_opt = sweep->add_option("--phi-end", phi_end, "Last phi (default pi/2)");
    sweep->add_option("--steps", steps, "Number of grid points")->check(CLI::Range(2, 1000000));
    sweep->add_option("--metrics", metric_names, "Subset of mi,gain,bell,qber,secure")
        ->delimiter(',')
        ->check(CLI::IsMember({"mi", "gain", "bell", "qber", "secure"}));
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--seed", seed, "Seed for randomized checks (unused by sweeps)");

    // state
    ScenarioFlags state_flags;
    double state_phi = 0.0;
    auto* state = app.add_subcommand("state", "Print the tripartite state and its marginals");
    state_flags.add_to(state);
    state->add_option("--phi", state_phi, "Attack strength")->required();

    // verify
    std::uint64_t verify_seed = 0;
    auto* verify = app.add_subcommand("verify", "Run the built-in invariant suites");
    verify->add_option("--seed", verify_seed, "Seed for random property checks");

    // plot
    std::string csv_path;
    std::vector<std::string> columns;
    std::string svg_path;
    auto* plot = app.add_subcommand("plot", "Render sweep columns to an SVG line chart");
    plot->add_option("csv", csv_path, "Sweep CSV")->required();
    plot->add_option("--columns", columns, "Columns to plot")->delimiter(',')->required();
    plot->add_option("--out", svg_path, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep) {
            qswitch::SweepConfig cfg;
            cfg.scenario = kScenarioNames.at(sweep_flags.scenario);
            if (!sweep_flags.partner.empty()) cfg.partner = kPartnerNames.at(sweep_flags.partner);
            if (sweep_flags.phi1) cfg.phi1 = sweep_flags.angle(*sweep_flags.phi1);
            cfg.phi_start = sweep_flags.angle(phi_start);
            cfg.phi_end = end_opt->count() > 0 ? sweep_flags.angle(phi_end) : std::numbers::pi / 2;
            cfg.steps = steps;
            if (!metric_names.empty()) {
                cfg.metrics.clear();
                for (const auto& m : metric_names) cfg.metrics.insert(*qswitch::parse_metric(m));
                if (cfg.metrics.count(qswitch::Metric::Secure)) cfg.metrics.insert(qswitch::Metric::MI);
            }
            cfg.output_path = out_path;
            const auto rows = qswitch::run_sweep(cfg);
            qswitch::write_file(out_path, qswitch::to_csv(rows, cfg.metrics));
            std::size_t secure_rows = 0;
            for (const auto& r : rows) secure_rows += r.secure ? 1 : 0;
            std::cout << "sweep " << qswitch::scenario_name(cfg.scenario) << ": " << rows.size()
                      << " rows, " << secure_rows << " secure -> " << out_path << "\n";
            return kExitOk;
        }
        if (*state) {
            return cmd_state(state_flags.scenario_at(state_flags.angle(state_phi)));
        }
        if (*verify) {
            qswitch::verify::Options opt;
            opt.seed = verify_seed;
            bool ok = true;
            for (const auto& r : qswitch::verify::run_all(opt)) {
                std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.passed) std::cout << " -- " << r.detail;
                std::cout << '\n';
                ok = ok && r.passed;
            }
            return ok ? kExitOk : kExitVerifyFailed;
        }
        if (*plot) {
            const auto table = qswitch::read_csv(csv_path);
            qswitch::write_file(svg_path, qswitch::render_svg(table, columns));
            std::cout << "plot: " << columns.size() << " series -> " << svg_path << "\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
