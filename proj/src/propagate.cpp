// propagate.cpp: state preparation and exact propagation

#include "qedchain/dynamics.hpp"

#include "qedchain/transition_ops.hpp"

#include <cmath>

namespace qedchain {

Vector local_mode_state(const ModeState& m, int cutoff) {
    Vector v = Vector::Zero(cutoff + 1);
    if (m.kind == ModeState::Kind::fock) {
        if (m.fock < 0 || m.fock > cutoff)
            throw std::invalid_argument("Fock state " + std::to_string(m.fock) + " exceeds cutoff " +
                                        std::to_string(cutoff));
        v[m.fock] = 1.0;
        return v;
    }
    // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built recursively.
    cplx c = std::exp(-0.5 * std::norm(m.alpha));
    for (int n = 0; n <= cutoff; ++n) {
        v[n] = c;
        c *= m.alpha / std::sqrt(static_cast<double>(n + 1));
    }
    v.normalize();
    return v;
}

StateVector product_state(const SpaceIndex& space, const InitialState& init, double t0) {
    std::vector<Vector> factors;
    for (int l = 0; l < space.n_sites(); ++l) {
        const SiteState s = static_cast<std::size_t>(l) < init.sites.size() ? init.sites[l] : SiteState::lower();
        Vector v(2);
        v[0] = std::cos(0.5 * s.theta);
        v[1] = std::exp(kI * s.phi) * std::sin(0.5 * s.theta);
        factors.push_back(v);
    }
    for (int k = 0; k < space.n_field_modes(); ++k) {
        const ModeState m = static_cast<std::size_t>(k) < init.field.size() ? init.field[k] : ModeState::vacuum();
        factors.push_back(local_mode_state(m, space.spec().field_modes[k].cutoff));
    }
    for (int q = 0; q < space.n_phonon_modes(); ++q) {
        const ModeState m = static_cast<std::size_t>(q) < init.phonons.size() ? init.phonons[q] : ModeState::vacuum();
        factors.push_back(local_mode_state(m, space.spec().phonon_modes[q].cutoff));
    }
    Vector psi = Vector::Ones(1);
    for (const auto& f : factors) {
        Vector next(psi.size() * f.size());
        for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(i * f.size(), f.size()) = psi[i] * f;
        psi.swap(next);
    }
    return {psi, t0};
}

namespace {

struct ObservableSet {
    std::vector<TransitionSet> sites;
    std::vector<Operator> a, a_n, a_top;
    std::vector<Operator> b, b_n, b_top;

    ObservableSet(const SpaceIndex& space) {
        for (int l = 0; l < space.n_sites(); ++l) sites.push_back(build_transition_set(space, l));
        for (int k = 0; k < space.n_field_modes(); ++k) {
            const std::size_t s = space.field_mode(k);
            a.push_back(embed_local(space, s, annihilation_local(space.spec().field_modes[k].cutoff)));
            a_n.push_back(adjoint(a.back()) * a.back());
            a_top.push_back(top_level_projector(space, s));
        }
        for (int q = 0; q < space.n_phonon_modes(); ++q) {
            const std::size_t s = space.phonon_mode(q);
            b.push_back(embed_local(space, s, annihilation_local(space.spec().phonon_modes[q].cutoff)));
            b_n.push_back(adjoint(b.back()) * b.back());
            b_top.push_back(top_level_projector(space, s));
        }
    }

    Sample measure(double t, const Vector& psi, const TimeDependentHamiltonian& h, Vector& scratch) const {
        Sample s;
        s.time = t;
        const double nrm2 = psi.squaredNorm();
        for (const auto& ts : sites) {
            const cplx m = expectation(ts.minus, psi) / nrm2;
            s.sites.push_back({m, std::conj(m), expectation(ts.z, psi).real() / nrm2});
        }
        for (std::size_t k = 0; k < a.size(); ++k)
            s.field.push_back({expectation(a[k], psi) / nrm2, expectation(a_n[k], psi).real() / nrm2,
                               expectation(a_top[k], psi).real() / nrm2});
        for (std::size_t q = 0; q < b.size(); ++q)
            s.phonons.push_back({expectation(b[q], psi) / nrm2, expectation(b_n[q], psi).real() / nrm2,
                                 expectation(b_top[q], psi).real() / nrm2});
        s.norm = std::sqrt(nrm2);
        h.apply(t, psi, scratch);
        s.energy = psi.dot(scratch).real() / nrm2;
        return s;
    }
};

}  // namespace

Trajectory propagate(const SpaceIndex& space, const SystemParams& params, const StateVector& state,
                     const PropagationSettings& settings) {
    if (static_cast<std::size_t>(state.amplitudes.size()) != space.dimension())
        throw std::invalid_argument("propagate: state dimension does not match the space");
    if (!(settings.t_end > state.time)) throw std::invalid_argument("propagate: t_end must exceed the start time");
    const double n0 = state.amplitudes.norm();
    if (std::abs(n0 - 1.0) > 1e-10) throw std::invalid_argument("propagate: initial state is not normalized");
    if (const auto errs = params.validate(&space); !errs.empty())
        throw std::invalid_argument("propagate: invalid parameters: " + errs.front());

    const TimeDependentHamiltonian h(space, params);
    const ObservableSet obs(space);
    const std::vector<double> grid = uniform_grid(state.time, settings.t_end, settings.output_dt);

    Trajectory traj;
    traj.meta.source = "exact";
    Vector y = state.amplitudes;
    Vector scratch(y.size());

    auto rhs = [&](double t, const Vector& psi, Vector& dpsi) {
        h.apply(t, psi, dpsi);
        dpsi *= -kI;
    };
    auto observe = [&](double t, const Vector& psi) {
        Sample s = obs.measure(t, psi, h, scratch);
        traj.meta.max_norm_drift = std::max(traj.meta.max_norm_drift, std::abs(s.norm - 1.0));
        for (const auto* modes : {&s.field, &s.phonons})
            for (const auto& m : *modes) traj.meta.max_top_population = std::max(traj.meta.max_top_population, m.top_population);
        traj.samples.push_back(std::move(s));
        if (settings.keep_states) traj.states.push_back(psi);
    };

    const IntegrationStats stats = integrate_dopri5(rhs, y, grid, settings.integrator, observe);
    traj.meta.accepted_steps = stats.accepted;
    traj.meta.rejected_steps = stats.rejected;
    traj.meta.truncation_flagged = traj.meta.max_top_population > kTruncationFlagThreshold;
    if (traj.meta.max_norm_drift > settings.norm_warning)
        traj.meta.warnings.push_back("norm drift " + std::to_string(traj.meta.max_norm_drift) + " exceeds " +
                                     std::to_string(settings.norm_warning));
    if (traj.meta.truncation_flagged)
        traj.meta.warnings.push_back("top Fock level population " + std::to_string(traj.meta.max_top_population) +
                                     " exceeds truncation threshold");
    return traj;
}

}  // namespace qedchain
