// Acceptance suite: the headline results, one reported line per criterion.
//
// Run directly (./test_acceptance -s) or through ctest. Criterion 4 carries
// two sub-checks on the dissipative |D_3^(2)> fidelities that are not
// reachable with the metric-compliant 50.75 us chirp; they are asserted at
// their stated tolerances anyway and print FAIL with the measured values.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <random>

#include "dicke/experiments.hpp"

using namespace dicke;

namespace {

constexpr double kPi = 3.141592653589793;

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool ok, const std::string& what) {
        all_ok_ = all_ok_ && ok;
        lines_.push_back(std::string(ok ? "    [pass] " : "    [FAIL] ") + what);
        CHECK_MESSAGE(ok, "criterion ", id_, ": ", what);
    }

    void note(const std::string& what) { lines_.push_back("    [note] " + what); }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    ~Criterion() {
        std::printf("[ACCEPTANCE] C%d %s (%.2fs) %s\n", id_, all_ok_ ? "PASS" : "FAIL",
                    seconds(), title_.c_str());
        for (const auto& line : lines_) std::printf("%s\n", line.c_str());
        std::fflush(stdout);
    }

private:
    int id_;
    std::string title_;
    bool all_ok_ = true;
    std::vector<std::string> lines_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

// shared between criterion 4 and the conservation suite
double g_heating_trace_drift = -1.0;
double g_heating_leakage = -1.0;

}  // namespace

TEST_CASE("criterion 1: single-excitation gate time and full-space agreement") {
    Criterion c(1, "D3(1) gate: fidelity >= 0.999 at t = pi/(sqrt(3) lambda)");
    ScenarioConfig cfg;
    const ScenarioResult result = run_d31(cfg);
    const double t_expected = kPi / (std::sqrt(3.0) * cfg.params.lambda_base);

    c.expect(std::abs(result.diagnostics.at("gate_time") - t_expected) < 1e-15,
             "gate time equals pi/(sqrt(3) lambda) = " + fmt(t_expected) + " s");
    c.expect(std::abs(t_expected - 1.889e-6) < 1e-9, "gate time is about 1.889 us");
    c.expect(result.final_fidelity >= 0.999,
             "ladder fidelity at the gate time = " + fmt(result.final_fidelity));
    c.expect(result.diagnostics.at("ladder_full_gap") <= 1e-8,
             "full-space run agrees within 1e-8 (gap = " +
                 fmt(result.diagnostics.at("ladder_full_gap")) + ")");
    c.expect(c.seconds() < 1.0, "runtime below 1 s");
}

TEST_CASE("criterion 2: resonant two-quantum ceiling") {
    Criterion c(2, "resonant D3(2) peak population 0.95 +- 0.01");
    ScenarioConfig cfg;
    const ScenarioResult result = run_d32_resonant(cfg);
    c.expect(std::abs(result.peak_fidelity - 0.95) <= 0.01 + 1e-6,
             "peak population = " + fmt(result.peak_fidelity));
    c.expect(result.peak_time > 0.0 && result.peak_time <= 30e-6,
             "peak inside the 30 us scan window at t = " + fmt(result.peak_time) + " s");
    c.expect(c.seconds() < 1.0, "runtime below 1 s");
}

TEST_CASE("criterion 3: adiabatic passage") {
    Criterion c(3, "tuned chirp: final D3(2) population > 0.99 with metric < 0.1");
    ScenarioConfig cfg;
    const ScenarioResult result = run_d32_adiabatic(cfg);
    c.expect(result.final_fidelity > 0.99,
             "final population = " + fmt(result.final_fidelity));
    c.expect(result.diagnostics.at("adiabaticity_metric") < 0.1,
             "adiabaticity metric = " + fmt(result.diagnostics.at("adiabaticity_metric")));
    bool curves = true;
    for (const char* name : {"pop_d0", "pop_d1", "pop_d2"}) {
        curves = curves && result.trajectory.observables.count(name) == 1;
    }
    c.expect(curves, "population curves of the three chain states are emitted");
    const auto& p0 = result.trajectory.series("pop_d0");
    const auto& p1 = result.trajectory.series("pop_d1");
    const auto& p2 = result.trajectory.series("pop_d2");
    bool closed = true;
    for (size_t i = 0; i < p0.size(); ++i) {
        closed = closed && std::abs(p0[i] + p1[i] + p2[i] - 1.0) < 1e-8;
    }
    c.expect(closed, "chain populations account for the whole state");
    c.expect(c.seconds() < 10.0, "runtime below 10 s");
}

TEST_CASE("criterion 4: heating sweep") {
    Criterion c(4, "open-system fidelities vs quality factor");
    ScenarioConfig cfg;
    cfg.integrator.relative_tolerance = 1e-6;
    const double n_bar = thermal_occupation(cfg.params.temperature, cfg.params.nu);
    c.expect(std::abs(n_bar - 0.582) < 5e-3, "thermal occupation n = " + fmt(n_bar));

    const std::vector<double> grid{1e4, 31622.776601683792, 1e5,
                                   std::numeric_limits<double>::infinity()};
    const SweepResult sweep = sweep_heating(cfg, grid);
    const auto& q1e4 = sweep.rows[0];
    const auto& q1e5 = sweep.rows[2];
    const auto& closed_row = sweep.rows[3];

    c.expect(std::abs(q1e5.at("fidelity_d31") - 0.998) <= 0.01,
             "Q = 1e5: D3(1) fidelity = " + fmt(q1e5.at("fidelity_d31")) + " vs 0.998 +- 0.01");
    c.expect(std::abs(q1e5.at("fidelity_d32") - 0.996) <= 0.01,
             "Q = 1e5: D3(2) fidelity = " + fmt(q1e5.at("fidelity_d32")) + " vs 0.996 +- 0.01");
    c.expect(std::abs(q1e4.at("fidelity_d31") - 0.985) <= 0.02,
             "Q = 1e4: D3(1) fidelity = " + fmt(q1e4.at("fidelity_d31")) + " vs 0.985 +- 0.02");
    c.expect(std::abs(q1e4.at("fidelity_d32") - 0.957) <= 0.02,
             "Q = 1e4: D3(2) fidelity = " + fmt(q1e4.at("fidelity_d32")) + " vs 0.957 +- 0.02");
    c.note("the two D3(2) anchors presume a passage of roughly 10-15 us; the 50.75 us chirp "
           "required by the metric-below-0.1 convention accumulates about five times the "
           "heating exposure, and no thermal occupation in [0, 1] closes the gap");

    bool monotone = true;
    for (size_t i = 1; i < sweep.rows.size(); ++i) {  // ascending Q = descending gamma
        monotone = monotone &&
                   sweep.rows[i].at("fidelity_d31") >= sweep.rows[i - 1].at("fidelity_d31") - 1e-9 &&
                   sweep.rows[i].at("fidelity_d32") >= sweep.rows[i - 1].at("fidelity_d32") - 1e-9;
    }
    c.expect(monotone, "both fidelity curves are monotone non-increasing in gamma");

    const double closed_d31 = run_d31(cfg).final_fidelity;
    const double closed_d32 = run_d32_adiabatic(cfg).final_fidelity;
    c.expect(std::abs(closed_row.at("fidelity_d31") - closed_d31) <= 1e-6,
             "gamma = 0 recovers the closed D3(1) value within 1e-6");
    c.expect(std::abs(closed_row.at("fidelity_d32") - closed_d32) <= 1e-6,
             "gamma = 0 recovers the closed D3(2) value within 1e-6");

    g_heating_trace_drift = 0.0;
    g_heating_leakage = 0.0;
    for (const auto& row : sweep.rows) {
        g_heating_trace_drift = std::max({g_heating_trace_drift, row.at("trace_drift_d31"),
                                          row.at("trace_drift_d32")});
        g_heating_leakage =
            std::max({g_heating_leakage, row.at("leakage_d31"), row.at("leakage_d32")});
    }
    c.expect(c.seconds() < 120.0, "runtime below 2 min");
}

TEST_CASE("criterion 5: coupling-error sweep") {
    Criterion c(5, "fidelities vs per-spin coupling droop");
    ScenarioConfig cfg;
    const std::vector<double> grid{0.0, 0.01, 0.02, 0.03, 0.04, 0.05};
    const SweepResult sweep = sweep_coupling_error(cfg, grid);

    const double ideal_d31 = run_d31(cfg).final_fidelity;
    const double ideal_d32 = run_d32_adiabatic(cfg).final_fidelity;
    c.expect(std::abs(sweep.rows[0].at("fidelity_d31") - ideal_d31) <= 1e-6,
             "droop 0 reproduces the ideal D3(1) value within 1e-6");
    c.expect(std::abs(sweep.rows[0].at("fidelity_d32") - ideal_d32) <= 1e-6,
             "droop 0 reproduces the ideal D3(2) value within 1e-6");
    c.expect(sweep.rows[1].at("fidelity_d31") >= 0.99,
             "D3(1) fidelity at droop 0.01 = " + fmt(sweep.rows[1].at("fidelity_d31")));

    bool monotone = true;
    for (size_t i = 1; i < sweep.rows.size(); ++i) {
        monotone = monotone &&
                   sweep.rows[i].at("fidelity_d31") <= sweep.rows[i - 1].at("fidelity_d31") + 1e-9 &&
                   sweep.rows[i].at("fidelity_d32") <= sweep.rows[i - 1].at("fidelity_d32") + 1e-9;
    }
    c.expect(monotone, "both curves degrade monotonically over [0, 0.05]");
    c.expect(c.seconds() < 60.0, "runtime below 1 min");
}

TEST_CASE("criterion 6: chain couplings against brute force") {
    Criterion c(6, "effective chain couplings match full-space matrix elements");
    double worst_abs = 0.0;
    for (int n = 1; n <= 4; ++n) {
        for (int m = 0; m <= n; ++m) {
            const LadderModel ladder = effective_ladder(n, m, 1.0);
            const HilbertSpace space = build_space(n, m);
            const Operator h = hamiltonian_rwa(space, std::vector<double>(n, 1.0), 0.0);
            const auto chain = symmetric_subspace_basis(n, m, m);
            for (int k = 0; k + 1 < ladder.levels(); ++k) {
                const Complex elem =
                    chain[k + 1].amplitudes().dot(h.matrix() * chain[k].amplitudes());
                worst_abs = std::max(worst_abs, std::abs(elem - Complex(ladder.couplings[k])));
            }
        }
    }
    c.expect(worst_abs < 1e-10,
             "all couplings for n <= 4 match within 1e-10 (worst " + fmt(worst_abs) + ")");

    const double lambda = 0.96e6;
    const LadderModel one = effective_ladder(3, 1, lambda);
    const LadderModel two = effective_ladder(3, 2, lambda);
    c.expect(std::abs(one.couplings[0] - std::sqrt(3.0) / 2.0 * lambda) < 1e-9,
             "one-quantum coupling equals sqrt(3) lambda / 2");
    c.expect(std::abs(two.couplings[0] - lambda * std::sqrt(1.5)) < 1e-9 &&
                 std::abs(two.couplings[1] - lambda) < 1e-9,
             "two-quantum couplings equal lambda sqrt(3/2) and lambda");
}

TEST_CASE("criterion 7: decoupled-state suite") {
    Criterion c(7, "catalogue states are decoupled from the symmetric chain");
    const double lambda = 1.0;

    // annihilated by the coupling toward the chain
    double worst_elem = 0.0;
    for (int m : {1, 2}) {
        const auto darks = dark_state_catalogue_n3(m);
        const HilbertSpace space = darks[0].space();
        const Operator h = hamiltonian_rwa(space, std::vector<double>(3, lambda), 0.0);
        const auto chain = symmetric_subspace_basis(3, m, m);
        for (const auto& dark : darks) {
            for (const auto& chain_state : chain) {
                worst_elem = std::max(
                    worst_elem,
                    std::abs(chain_state.amplitudes().dot(h.matrix() * dark.amplitudes())));
            }
        }
    }
    c.expect(worst_elem < 1e-10,
             "chain coupling elements below 1e-10 (worst " + fmt(worst_elem) + ")");

    // the m = 1 coupling block annihilates the dark pair exactly
    Eigen::MatrixXcd block(1, 3);
    block << 0.5 * lambda, 0.5 * lambda, 0.5 * lambda;
    const MSDecomposition ms = ms_decompose(block);
    double dark_residual = 0.0;
    for (const auto& dark : ms.dark_states) {
        dark_residual = std::max(dark_residual, (block * dark).norm());
    }
    c.expect(ms.dark_states.size() == 2 && dark_residual < 1e-10,
             "SVD dark pair annihilated by the block (residual " + fmt(dark_residual) + ")");

    // stationarity under resonant evolution for t = pi/lambda
    const double t_final = kPi / lambda;
    PropagatorConfig prop;
    prop.max_step = 1e-3;
    double worst_self = 0.0, worst_chain = 0.0, worst_pair = 0.0;
    for (int m : {1, 2}) {
        const auto darks = dark_state_catalogue_n3(m);
        const HilbertSpace space = darks[0].space();
        const AffineHamiltonian h = rwa_affine(space, std::vector<double>(3, lambda),
                                               PulseSchedule::square(0.0, t_final), 0.0);
        const auto chain = symmetric_subspace_basis(3, m, m);
        for (size_t d = 0; d < darks.size(); ++d) {
            ObservableSet obs;
            obs.projections.emplace_back("self", darks[d].amplitudes());
            for (size_t k = 0; k < chain.size(); ++k) {
                obs.projections.emplace_back("chain" + std::to_string(k),
                                             chain[k].amplitudes());
            }
            // the sigma-minus-dark states (m=1 pair and the eta states) are
            // exact zero-energy eigenstates; the xi states exchange population
            // only inside their decoupled doublet
            const bool sigma_minus_dark = m == 1 || d == 1 || d == 3;
            Eigen::VectorXcd partner;
            if (!sigma_minus_dark) {
                const Operator lower = collective_lower(space);
                const Operator raise_boson = boson_creation(space);
                partner = raise_boson.matrix() * (lower.matrix() * darks[d].amplitudes());
                partner.normalize();
                obs.projections.emplace_back("partner", partner);
            }
            const Trajectory traj =
                evolve_schrodinger(HamiltonianView::of(h), darks[d], 0.0, t_final, prop, obs);
            const auto& self = traj.series("self");
            if (sigma_minus_dark) {
                for (double p : self) worst_self = std::max(worst_self, std::abs(p - 1.0));
            } else {
                const auto& partner_pop = traj.series("partner");
                for (size_t i = 0; i < self.size(); ++i) {
                    worst_pair =
                        std::max(worst_pair, std::abs(self[i] + partner_pop[i] - 1.0));
                }
            }
            for (size_t k = 0; k < chain.size(); ++k) {
                for (double p : traj.series("chain" + std::to_string(k))) {
                    worst_chain = std::max(worst_chain, p);
                }
            }
        }
    }
    c.expect(worst_self < 1e-8,
             "sigma-minus-dark states stationary over t = pi/lambda (worst change " +
                 fmt(worst_self) + ")");
    c.expect(worst_chain < 1e-8,
             "no population enters the symmetric chain (worst " + fmt(worst_chain) + ")");
    c.expect(worst_pair < 1e-8,
             "xi states stay inside their decoupled doublet (worst leak " + fmt(worst_pair) +
                 ")");
}

TEST_CASE("criterion 8: open-system property suite") {
    Criterion c(8, "master equation limits");
    {
        const HilbertSpace space = HilbertSpace::symmetric(3, 7);  // dim 32
        const std::vector<double> couplings(3, 1.0);
        const PulseSchedule pulse = PulseSchedule::square(0.0, kPi / std::sqrt(3.0));
        const AffineHamiltonian h = rwa_affine(space, couplings, pulse, 0.0);
        const PureState psi0 = basis_state(space, 0, 1);
        PropagatorConfig prop;
        prop.max_step = 1e-2;
        prop.relative_tolerance = 1e-10;
        const Trajectory pure =
            evolve_schrodinger(HamiltonianView::of(h), psi0, 0.0, pulse.duration, prop, {});
        const Trajectory mixed =
            evolve_lindblad(HamiltonianView::of(h), DensityMatrix::from_pure(psi0), 0.0, 0.0,
                            0.0, pulse.duration, prop, {});
        const double dist =
            (mixed.final_density() - pure.final_pure() * pure.final_pure().adjoint()).norm();
        c.expect(dist < 1e-8,
                 "gamma = 0 matches the pure-state engine on dim 32 (distance " + fmt(dist) +
                     ")");
    }
    {
        const HilbertSpace space = HilbertSpace::symmetric(1, 4);
        const DensityMatrix rho0 = DensityMatrix::from_pure(basis_state(space, 0, 1));
        PropagatorConfig prop;
        prop.max_step = 1e-3;
        ObservableSet obs;
        obs.expectations.emplace_back("occupation", boson_number(space).matrix());
        const Trajectory traj = evolve_lindblad(
            HamiltonianView::constant(Eigen::MatrixXcd::Zero(space.dim(), space.dim())), rho0,
            1.0, 0.0, 0.0, 3.0, prop, obs);
        double worst = 0.0;
        for (size_t i = 0; i < traj.times.size(); ++i) {
            worst = std::max(worst, std::abs(traj.series("occupation")[i] -
                                             std::exp(-traj.times[i])));
        }
        c.expect(worst < 1e-6, "pure decay follows exp(-gamma t) (worst " + fmt(worst) + ")");
    }
    {
        const HilbertSpace space = HilbertSpace::symmetric(1, 16);
        const DensityMatrix rho0 = DensityMatrix::from_pure(basis_state(space, 0, 2));
        const double n_bar = 0.582;
        PropagatorConfig prop;
        prop.max_step = 5e-3;
        ObservableSet obs;
        obs.expectations.emplace_back("occupation", boson_number(space).matrix());
        const Trajectory traj = evolve_lindblad(
            HamiltonianView::constant(Eigen::MatrixXcd::Zero(space.dim(), space.dim())), rho0,
            1.0, n_bar, 0.0, 25.0, prop, obs);
        const double err = std::abs(traj.series("occupation").back() - n_bar);
        c.expect(err < 1e-4, "free contact thermalizes to n_bar (error " + fmt(err) + ")");
    }
}

TEST_CASE("criterion 9: conservation suite") {
    Criterion c(9, "excitation, norm, trace and leakage guards");
    {
        std::mt19937 rng(97);
        std::uniform_real_distribution<double> coupling(0.0, 2e6);
        const HilbertSpace space = build_space(3, 3);
        const Operator nex = total_excitation(space);
        double worst = 0.0;
        for (int trial = 0; trial < 12; ++trial) {
            const std::vector<double> couplings{coupling(rng), coupling(rng), coupling(rng)};
            const Operator h = hamiltonian_rwa(space, couplings, 0.37e6);
            worst = std::max(worst, (h.matrix() * nex.matrix() - nex.matrix() * h.matrix())
                                        .cwiseAbs()
                                        .maxCoeff());
        }
        c.expect(worst <= 1e-12 * 2e6,
                 "[H, N_ex] vanishes for random couplings (worst " + fmt(worst) + ")");
    }
    {
        ScenarioConfig cfg;
        const ScenarioResult d31 = run_d31(cfg);
        const ScenarioResult d32 = run_d32_adiabatic(cfg);
        c.expect(d31.trajectory.norm_drift_max < 1e-8 &&
                     d32.trajectory.norm_drift_max < 1e-8,
                 "unitary norm drift below 1e-8 on the accepted trajectories");
        c.expect(d31.diagnostics.at("nex_drift") < 1e-8,
                 "excitation expectation constant along the full-space gate");
        c.expect(d31.diagnostics.at("leakage_max") < 1e-6 && d32.trajectory.leakage_max < 1e-6,
                 "Fock leakage below 1e-6");
    }
    if (g_heating_trace_drift >= 0.0) {
        c.expect(g_heating_trace_drift < 1e-8,
                 "master-equation trace drift below 1e-8 across the heating sweep (worst " +
                     fmt(g_heating_trace_drift) + ")");
        c.expect(g_heating_leakage < 1e-6,
                 "heating-sweep leakage below 1e-6 (worst " + fmt(g_heating_leakage) + ")");
    }
}

TEST_CASE("criterion 10: rotating-wave validation") {
    Criterion c(10, "counter-rotating dynamics vs the excitation-conserving form");
    {
        ScenarioConfig cfg;
        const ScenarioResult result = run_validate_rwa(cfg);
        c.expect(result.diagnostics.at("terminal_gap") < 0.02,
                 "terminal fidelity gap at the default coupling = " +
                     fmt(result.diagnostics.at("terminal_gap")));
        c.expect(result.diagnostics.at("frame_overlap") >= 0.98,
                 "frame-aligned overlap of the two final states = " +
                     fmt(result.diagnostics.at("frame_overlap")));
    }
    {
        ScenarioConfig weak;
        weak.params.lambda_base = 0.005 * weak.params.nu;
        weak.integrator.relative_tolerance = 1e-7;
        weak.fock_headroom = 3;  // counter-rotating excursions are tiny here
        const ScenarioResult result = run_validate_rwa(weak);
        c.expect(result.diagnostics.at("terminal_gap") < 1e-3,
                 "gap at lambda/nu = 0.005 is " + fmt(result.diagnostics.at("terminal_gap")));
    }
    {
        ScenarioConfig off;
        off.params.lambda_base = 0.0;
        off.pulse = PulseSchedule::square(0.0, 1.889e-6);
        const ScenarioResult result = run_validate_rwa(off);
        c.expect(result.diagnostics.at("terminal_gap") <= 1e-12,
                 "gap vanishes with the coupling switched off");
    }
}
