#include "dicke/propagate.hpp"

#include <cmath>

namespace dicke {

namespace {

constexpr int kMaxRefinements = 16;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kLeakageLimit = 1e-6;

double initial_step(const PropagatorConfig& cfg, double bound, double span) {
    double dt = cfg.max_step;
    if (bound > 0.0) dt = std::min(dt, kTwoPi / (200.0 * bound));
    return std::min(dt, span);
}

int auto_stride(const PropagatorConfig& cfg, long long steps, bool density) {
    if (cfg.sample_stride > 0) return cfg.sample_stride;
    const long long target = density ? 512 : 1024;
    return static_cast<int>(std::max<long long>(1, steps / target));
}

struct LeakageProbe {
    // flat indices of the top Fock level, empty if leakage is not tracked
    std::vector<int> top_indices;

    static LeakageProbe for_space(const HilbertSpace& space) {
        LeakageProbe probe;
        probe.top_indices.reserve(space.spin_dim());
        for (int s = 0; s < space.spin_dim(); ++s) {
            probe.top_indices.push_back(space.flat_index(s, space.fock_cutoff()));
        }
        return probe;
    }

    double operator()(const Eigen::VectorXcd& psi) const {
        double p = 0.0;
        for (int idx : top_indices) p += std::norm(psi(idx));
        return p;
    }
    double operator()(const Eigen::MatrixXcd& rho) const {
        double p = 0.0;
        for (int idx : top_indices) p += rho(idx, idx).real();
        return p;
    }
};

void record_observables(Trajectory& traj, const ObservableSet& obs, const Eigen::VectorXcd& psi) {
    for (const auto& [name, phi] : obs.projections) {
        traj.observables[name].push_back(std::norm(phi.dot(psi)));
    }
    for (const auto& [name, op] : obs.expectations) {
        traj.observables[name].push_back(psi.dot(op * psi).real());
    }
}

void record_observables(Trajectory& traj, const ObservableSet& obs, const Eigen::MatrixXcd& rho) {
    for (const auto& [name, phi] : obs.projections) {
        traj.observables[name].push_back(phi.dot(rho * phi).real());
    }
    for (const auto& [name, op] : obs.expectations) {
        traj.observables[name].push_back((op * rho).trace().real());
    }
}

struct ThermalBosonDissipator {
    double down = 0.0;  // gamma * (n_bar + 1)
    double up = 0.0;    // gamma * n_bar
    int spin_dim = 0;
    int fock_dim = 0;
    std::vector<double> sqrt_table;

    ThermalBosonDissipator(double gamma, double n_bar, const HilbertSpace& space)
        : down(gamma * (n_bar + 1.0)),
          up(gamma * n_bar),
          spin_dim(space.spin_dim()),
          fock_dim(space.fock_dim()) {
        sqrt_table.resize(fock_dim + 1);
        for (int q = 0; q <= fock_dim; ++q) sqrt_table[q] = std::sqrt(double(q));
    }

    // aa† with the truncated mode: (q+1) below the cutoff, 0 at the top row,
    // which keeps the generator exactly trace-free.
    double m_diag(int q) const { return q + 1 < fock_dim ? double(q + 1) : 0.0; }

    void accumulate(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
        const int f = fock_dim;
        for (int s2 = 0; s2 < spin_dim; ++s2) {
            for (int q2 = 0; q2 < f; ++q2) {
                const int c = s2 * f + q2;
                for (int s = 0; s < spin_dim; ++s) {
                    for (int q = 0; q < f; ++q) {
                        const int r = s * f + q;
                        Complex acc(0.0, 0.0);
                        if (q + 1 < f && q2 + 1 < f) {
                            acc += down * sqrt_table[q + 1] * sqrt_table[q2 + 1] * rho(r + 1, c + 1);
                        }
                        if (q >= 1 && q2 >= 1) {
                            acc += up * sqrt_table[q] * sqrt_table[q2] * rho(r - 1, c - 1);
                        }
                        acc -= (0.5 * down * double(q + q2) + 0.5 * up * (m_diag(q) + m_diag(q2))) *
                               rho(r, c);
                        out(r, c) += acc;
                    }
                }
            }
        }
    }
};

template <typename StateT>
struct LevelOutcome {
    bool guard_ok = true;
    double fail_time = 0.0;
    StateT final_state;
    Trajectory traj;
};

// One fixed-step pass. RhsFn fills dy/dt; NormErr returns |norm-1| or |trace-1|.
template <typename StateT, typename RhsFn, typename NormErr, typename SampleFn>
LevelOutcome<StateT> run_level(const StateT& y0, double t0, double span, long long steps,
                               double norm_guard, int stride, RhsFn&& rhs, NormErr&& norm_err,
                               SampleFn&& sample) {
    LevelOutcome<StateT> out;
    const double dt = span / double(steps);
    out.traj.dt = dt;
    out.traj.steps = steps;

    StateT y = y0;
    StateT k1 = y0, k2 = y0, k3 = y0, k4 = y0, work = y0;

    auto take_sample = [&](double t, const StateT& state) {
        out.traj.times.push_back(t);
        const double ne = norm_err(state);
        out.traj.norm_drift_max = std::max(out.traj.norm_drift_max, ne);
        out.traj.observables["norm_error"].push_back(ne);
        sample(out.traj, state);
    };

    take_sample(t0, y);
    for (long long i = 0; i < steps; ++i) {
        const double t = t0 + double(i) * dt;
        rhs(t, y, k1);
        work = y + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, work, k2);
        work = y + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, work, k3);
        work = y + dt * k3;
        rhs(t + dt, work, k4);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double t_next = t0 + double(i + 1) * dt;
        const double ne = norm_err(y);
        if (ne > norm_guard) {
            out.guard_ok = false;
            out.fail_time = t_next;
            return out;
        }
        if ((i + 1) % stride == 0 || i + 1 == steps) take_sample(t_next, y);
    }
    out.final_state = std::move(y);
    return out;
}

template <typename StateT, typename RhsFn, typename NormErr, typename SampleFn>
Trajectory refine_until_converged(const StateT& y0, double t0, double t1, double bound,
                                  const PropagatorConfig& cfg, bool density, RhsFn&& rhs,
                                  NormErr&& norm_err, SampleFn&& sample) {
    validate(cfg);
    const double span = t1 - t0;
    if (!std::isfinite(span) || span < 0.0) {
        throw ConfigError("t_span", "time span must be finite with t1 >= t0");
    }
    if (span == 0.0) {
        Trajectory traj;
        traj.times.push_back(t0);
        traj.norm_drift_max = norm_err(y0);
        traj.observables["norm_error"].push_back(traj.norm_drift_max);
        sample(traj, y0);
        return traj;
    }

    long long steps = std::max<long long>(1, std::llround(std::ceil(span / initial_step(cfg, bound, span))));
    StateT previous_final;
    bool have_previous = false;
    double last_fail_time = t1;

    for (int level = 0; level <= kMaxRefinements; ++level, steps *= 2) {
        auto outcome = run_level(y0, t0, span, steps, cfg.norm_guard,
                                 auto_stride(cfg, steps, density), rhs, norm_err, sample);
        if (!outcome.guard_ok) {
            last_fail_time = outcome.fail_time;
            have_previous = false;
            continue;
        }
        if (have_previous) {
            const double diff = (outcome.final_state - previous_final).norm();
            if (diff <= cfg.relative_tolerance) {
                outcome.traj.refinements = level;
                return std::move(outcome.traj);
            }
        }
        previous_final = std::move(outcome.final_state);
        have_previous = true;
    }
    if (!have_previous) {
        throw IntegrationError("norm guard exceeded at every refinement level", last_fail_time);
    }
    throw IntegrationError("step refinement did not converge within " +
                               std::to_string(kMaxRefinements) + " halvings",
                           t1);
}

void enforce_leakage(const Trajectory& traj, double t1) {
    if (traj.leakage_max > kLeakageLimit) {
        throw IntegrationError(
            "Fock cutoff too small: top-level population " + std::to_string(traj.leakage_max),
            t1);
    }
}

}  // namespace

void validate(const PropagatorConfig& cfg) {
    if (!(cfg.max_step > 0.0)) throw ConfigError("max_step", "max_step must be positive");
    if (!(cfg.relative_tolerance > 0.0) || cfg.relative_tolerance > 1e-3) {
        throw ConfigError("relative_tolerance", "relative_tolerance must lie in (0, 1e-3]");
    }
    if (!(cfg.norm_guard > 0.0)) throw ConfigError("norm_guard", "norm_guard must be positive");
    if (cfg.sample_stride < 0) throw ConfigError("sample_stride", "sample_stride must be >= 0");
}

const std::vector<double>& Trajectory::series(const std::string& name) const {
    auto it = observables.find(name);
    if (it == observables.end()) {
        throw ConfigError("observable", "no observable series named '" + name + "'");
    }
    return it->second;
}

HamiltonianView HamiltonianView::of(const AffineHamiltonian& h) {
    HamiltonianView view;
    view.apply = [&h](double t, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        h.apply(t, in, out);
    };
    view.commutator = [&h](double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
        h.commutator(t, rho, out);
    };
    view.spectral_bound = h.spectral_bound();
    return view;
}

HamiltonianView HamiltonianView::of(const InteractionPictureHamiltonian& h) {
    HamiltonianView view;
    view.apply = [&h](double t, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        h.apply(t, in, out);
    };
    view.spectral_bound = h.spectral_bound();
    return view;
}

HamiltonianView HamiltonianView::constant(const Eigen::MatrixXcd& h) {
    HamiltonianView view;
    view.apply = [&h](double, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        out.noalias() = h * in;
    };
    view.commutator = [&h](double, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
        out.noalias() = h * rho;
        out.noalias() -= rho * h;
    };
    view.spectral_bound = h.cwiseAbs().rowwise().sum().maxCoeff();
    return view;
}

Trajectory evolve_closed_generic(const HamiltonianView& h, const Eigen::VectorXcd& psi0,
                                 double t0, double t1, const PropagatorConfig& cfg,
                                 const ObservableSet& observables) {
    const Complex minus_i(0.0, -1.0);
    auto rhs = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        h.apply(t, y, dy);
        dy *= minus_i;
    };
    auto norm_err = [](const Eigen::VectorXcd& y) { return std::abs(y.norm() - 1.0); };
    auto sample = [&](Trajectory& traj, const Eigen::VectorXcd& y) {
        record_observables(traj, observables, y);
        traj.pure_states.push_back(y);
    };
    return refine_until_converged(psi0, t0, t1, h.spectral_bound, cfg, false, rhs, norm_err,
                                  sample);
}

Trajectory evolve_schrodinger(const HamiltonianView& h, const PureState& psi0, double t0,
                              double t1, const PropagatorConfig& cfg,
                              const ObservableSet& observables) {
    const LeakageProbe probe = LeakageProbe::for_space(psi0.space());
    const Complex minus_i(0.0, -1.0);
    auto rhs = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        h.apply(t, y, dy);
        dy *= minus_i;
    };
    auto norm_err = [](const Eigen::VectorXcd& y) { return std::abs(y.norm() - 1.0); };
    auto sample = [&](Trajectory& traj, const Eigen::VectorXcd& y) {
        const double leak = probe(y);
        traj.leakage_max = std::max(traj.leakage_max, leak);
        traj.observables["leakage"].push_back(leak);
        record_observables(traj, observables, y);
        traj.pure_states.push_back(y);
    };
    Trajectory traj = refine_until_converged(psi0.amplitudes(), t0, t1, h.spectral_bound, cfg,
                                             false, rhs, norm_err, sample);
    enforce_leakage(traj, t1);
    return traj;
}

Trajectory evolve_lindblad(const HamiltonianView& h, const DensityMatrix& rho0, double gamma,
                           double n_bar, double t0, double t1, const PropagatorConfig& cfg,
                           const ObservableSet& observables) {
    if (gamma < 0.0) throw ConfigError("gamma", "gamma must be non-negative");
    if (n_bar < 0.0) throw ConfigError("n_bar", "n_bar must be non-negative");
    if (!h.commutator) {
        throw ConfigError("hamiltonian", "this Hamiltonian source supports pure states only");
    }
    const HilbertSpace& space = rho0.space();
    const LeakageProbe probe = LeakageProbe::for_space(space);
    const ThermalBosonDissipator dissipator(gamma, n_bar, space);
    const Complex minus_i(0.0, -1.0);

    Eigen::MatrixXcd scratch(space.dim(), space.dim());
    auto rhs = [&](double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& drho) {
        h.commutator(t, rho, scratch);
        drho = minus_i * scratch;
        if (gamma > 0.0) dissipator.accumulate(rho, drho);
    };
    auto norm_err = [](const Eigen::MatrixXcd& rho) {
        const Complex tr = rho.trace();
        return std::abs(tr.real() - 1.0) + std::abs(tr.imag());
    };
    auto sample = [&](Trajectory& traj, const Eigen::MatrixXcd& rho) {
        const double leak = probe(rho);
        traj.leakage_max = std::max(traj.leakage_max, leak);
        traj.observables["leakage"].push_back(leak);
        record_observables(traj, observables, rho);
        traj.density_states.push_back(rho);
    };
    Trajectory traj = refine_until_converged(rho0.elements(), t0, t1, h.spectral_bound, cfg, true,
                                             rhs, norm_err, sample);
    enforce_leakage(traj, t1);
    return traj;
}

double reduced_spin_fidelity(const HilbertSpace& space, const Eigen::VectorXcd& psi,
                             const PureState& spin_target) {
    double total = 0.0;
    for (int q = 0; q < space.fock_dim(); ++q) {
        Complex overlap(0.0, 0.0);
        for (int s = 0; s < space.spin_dim(); ++s) {
            overlap += std::conj(spin_target.amplitudes()(s)) * psi(space.flat_index(s, q));
        }
        total += std::norm(overlap);
    }
    return total;
}

double reduced_spin_fidelity(const HilbertSpace& space, const Eigen::MatrixXcd& rho,
                             const PureState& spin_target) {
    Complex total(0.0, 0.0);
    for (int q = 0; q < space.fock_dim(); ++q) {
        for (int s = 0; s < space.spin_dim(); ++s) {
            for (int s2 = 0; s2 < space.spin_dim(); ++s2) {
                total += std::conj(spin_target.amplitudes()(s)) *
                         rho(space.flat_index(s, q), space.flat_index(s2, q)) *
                         spin_target.amplitudes()(s2);
            }
        }
    }
    return total.real();
}

}  // namespace dicke
