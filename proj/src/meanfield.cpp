// meanfield.cpp: closure equations and their integration

#include "qedchain/meanfield.hpp"

#include "qedchain/transition_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace qedchain {

double MeanFieldState::bloch_invariant(std::size_t site) const {
    return s_z.at(site) * s_z[site] + 4.0 * std::real(s_plus[site] * s_minus[site]);
}

MeanFieldState mean_field_state(const InitialState& init, int n_sites, int n_field, int n_phonon, double t0) {
    MeanFieldState mf;
    mf.time = t0;
    for (int l = 0; l < n_sites; ++l) {
        const SiteState s = static_cast<std::size_t>(l) < init.sites.size() ? init.sites[l] : SiteState::lower();
        const cplx m = 0.5 * std::sin(s.theta) * std::exp(kI * s.phi);
        mf.s_minus.push_back(m);
        mf.s_plus.push_back(std::conj(m));
        mf.s_z.push_back(-std::cos(s.theta));
    }
    auto amplitude = [](const std::vector<ModeState>& modes, int i) {
        if (static_cast<std::size_t>(i) >= modes.size()) return cplx(0.0);
        return modes[i].kind == ModeState::Kind::coherent ? modes[i].alpha : cplx(0.0);
    };
    for (int k = 0; k < n_field; ++k) {
        mf.a.push_back(amplitude(init.field, k));
        mf.a_conj.push_back(std::conj(mf.a.back()));
    }
    for (int q = 0; q < n_phonon; ++q) {
        mf.b.push_back(amplitude(init.phonons, q));
        mf.b_conj.push_back(std::conj(mf.b.back()));
    }
    return mf;
}

namespace {

cplx field_drive(const MeanFieldState& mf, const SystemParams& params, int site, double t) {
    cplx b = drive_field(params, site, t);
    for (std::size_t k = 0; k < mf.a.size(); ++k) {
        const cplx q = coupling_q(params, site, static_cast<int>(k), t);
        b += q * mf.a[k] + mf.a_conj[k] * std::conj(q);
    }
    return b;
}

cplx phonon_displacement(const MeanFieldState& mf, const SystemParams& params) {
    cplx x = 0.0;
    for (std::size_t q = 0; q < mf.b.size(); ++q) x += params.phonon_modes[q].lambda * (mf.b[q] + mf.b_conj[q]);
    return x;
}

void require_shape(const MeanFieldState& mf, const SystemParams& params) {
    if (static_cast<int>(mf.n_sites()) != params.n_sites() || mf.s_minus.size() != mf.n_sites() ||
        mf.s_plus.size() != mf.n_sites() || mf.a.size() != params.field_modes.size() ||
        mf.a_conj.size() != mf.a.size() || mf.b.size() != params.phonon_modes.size() || mf.b_conj.size() != mf.b.size())
        throw std::invalid_argument("mean-field state does not match the system parameters");
}

}  // namespace

MeanFieldState close_rhs(const MeanFieldState& mf, const SystemParams& params, double t) {
    require_shape(mf, params);
    const std::size_t n = mf.n_sites();
    const double j = params.exchange_J;
    const cplx i = kI;
    const cplx x = phonon_displacement(mf, params);

    MeanFieldState d = mf;
    for (std::size_t l = 0; l < n; ++l) {
        cplx nm = 0.0, np = 0.0, nz = 0.0;
        for (int m : neighbours(params, static_cast<int>(l))) {
            nm += mf.s_minus[m];
            np += mf.s_plus[m];
            nz += mf.s_z[m];
        }
        const cplx sm = mf.s_minus[l], sp = mf.s_plus[l], sz = mf.s_z[l];
        const cplx b = field_drive(mf, params, static_cast<int>(l), t);
        const double w = params.omega(static_cast<int>(l));
        // {A, B} -> 2 symmetric_product(<A>, <B>)
        d.s_z[l] = std::real(2.0 * i * (sm - sp) * b +
                             2.0 * i * j * (2.0 * symmetric_product(sm, np) - 2.0 * symmetric_product(sp, nm)));
        d.s_plus[l] = i * w * sp - i * sz * b + i * j * (2.0 * symmetric_product(sp, nz) - 2.0 * symmetric_product(sz, np)) +
                      2.0 * i * x * sp;
        d.s_minus[l] = -i * w * sm + i * sz * b +
                       i * j * (2.0 * symmetric_product(sz, nm) - 2.0 * symmetric_product(sm, nz)) - 2.0 * i * x * sm;
    }
    for (std::size_t k = 0; k < mf.a.size(); ++k) {
        const double w = params.field_modes[k].omega;
        cplx src = 0.0, src_c = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            const cplx q = coupling_q(params, static_cast<int>(l), static_cast<int>(k), t);
            src += (mf.s_plus[l] + mf.s_minus[l]) * std::conj(q);
            src_c += (mf.s_plus[l] + mf.s_minus[l]) * q;
        }
        d.a[k] = -i * w * mf.a[k] - i * src;
        d.a_conj[k] = i * w * mf.a_conj[k] + i * src_c;
    }
    double zsum = 0.0;
    for (double z : mf.s_z) zsum += z;
    for (std::size_t q = 0; q < mf.b.size(); ++q) {
        const auto& ph = params.phonon_modes[q];
        d.b[q] = -i * ph.nu * mf.b[q] - i * ph.lambda * zsum;
        d.b_conj[q] = i * ph.nu * mf.b_conj[q] + i * ph.lambda * zsum;
    }
    return d;
}

double mean_field_energy(const MeanFieldState& mf, const SystemParams& params, double t) {
    require_shape(mf, params);
    cplx e = 0.0;
    double zsum = 0.0;
    for (std::size_t l = 0; l < mf.n_sites(); ++l) {
        const auto& lv = params.site_energies[l];
        e += 0.5 * (lv.upper - lv.lower) * mf.s_z[l] + 0.5 * (lv.upper + lv.lower);
        e += (mf.s_plus[l] + mf.s_minus[l]) * field_drive(mf, params, static_cast<int>(l), t);
        zsum += mf.s_z[l];
    }
    for (auto [v, w] : bonds(params))
        e += 2.0 * params.exchange_J *
             (mf.s_plus[v] * mf.s_minus[w] + mf.s_minus[v] * mf.s_plus[w] + 0.5 * mf.s_z[v] * mf.s_z[w]);
    for (std::size_t k = 0; k < mf.a.size(); ++k) e += params.field_modes[k].omega * (mf.a_conj[k] * mf.a[k] + 0.5);
    for (std::size_t q = 0; q < mf.b.size(); ++q) {
        const auto& ph = params.phonon_modes[q];
        e += ph.nu * (mf.b_conj[q] * mf.b[q] + 0.5) + ph.lambda * (mf.b[q] + mf.b_conj[q]) * zsum;
    }
    return e.real();
}

Vector pack(const MeanFieldState& mf) {
    const std::size_t n = mf.n_sites();
    Vector y(static_cast<Eigen::Index>(3 * n + 2 * mf.a.size() + 2 * mf.b.size()));
    Eigen::Index p = 0;
    for (std::size_t l = 0; l < n; ++l) {
        y[p++] = mf.s_minus[l];
        y[p++] = mf.s_plus[l];
        y[p++] = mf.s_z[l];
    }
    for (std::size_t k = 0; k < mf.a.size(); ++k) {
        y[p++] = mf.a[k];
        y[p++] = mf.a_conj[k];
    }
    for (std::size_t q = 0; q < mf.b.size(); ++q) {
        y[p++] = mf.b[q];
        y[p++] = mf.b_conj[q];
    }
    return y;
}

MeanFieldState unpack(const Vector& y, std::size_t n_sites, std::size_t n_field, std::size_t n_phonon, double t) {
    if (static_cast<std::size_t>(y.size()) != 3 * n_sites + 2 * n_field + 2 * n_phonon)
        throw std::invalid_argument("unpack: vector length does not match the layout");
    MeanFieldState mf;
    mf.time = t;
    Eigen::Index p = 0;
    for (std::size_t l = 0; l < n_sites; ++l) {
        mf.s_minus.push_back(y[p++]);
        mf.s_plus.push_back(y[p++]);
        mf.s_z.push_back(y[p++].real());
    }
    for (std::size_t k = 0; k < n_field; ++k) {
        mf.a.push_back(y[p++]);
        mf.a_conj.push_back(y[p++]);
    }
    for (std::size_t q = 0; q < n_phonon; ++q) {
        mf.b.push_back(y[p++]);
        mf.b_conj.push_back(y[p++]);
    }
    return mf;
}

Sample mean_field_sample(const MeanFieldState& mf, const SystemParams& params) {
    Sample s;
    s.time = mf.time;
    for (std::size_t l = 0; l < mf.n_sites(); ++l) s.sites.push_back({mf.s_minus[l], mf.s_plus[l], mf.s_z[l]});
    for (std::size_t k = 0; k < mf.a.size(); ++k) s.field.push_back({mf.a[k], std::real(mf.a_conj[k] * mf.a[k]), 0.0});
    for (std::size_t q = 0; q < mf.b.size(); ++q) s.phonons.push_back({mf.b[q], std::real(mf.b_conj[q] * mf.b[q]), 0.0});
    s.norm = 1.0;
    s.energy = mean_field_energy(mf, params, mf.time);
    return s;
}

Trajectory mf_propagate(const MeanFieldState& mf, const SystemParams& params, const MeanFieldSettings& settings) {
    require_shape(mf, params);
    if (!(settings.t_end > mf.time)) throw std::invalid_argument("mf_propagate: t_end must exceed the start time");
    const std::size_t ns = mf.n_sites(), nf = mf.a.size(), np = mf.b.size();
    const std::vector<double> grid = uniform_grid(mf.time, settings.t_end, settings.output_dt);

    Trajectory traj;
    traj.meta.source = "meanfield";
    Vector y = pack(mf);
    auto rhs = [&](double t, const Vector& in, Vector& out) {
        // The sz slots carry real values; their imaginary parts are dropped on unpack.
        out = pack(close_rhs(unpack(in, ns, nf, np, t), params, t));
    };
    auto observe = [&](double t, const Vector& state) { traj.samples.push_back(mean_field_sample(unpack(state, ns, nf, np, t), params)); };
    const IntegrationStats stats = integrate_dopri5(rhs, y, grid, settings.integrator, observe);
    traj.meta.accepted_steps = stats.accepted;
    traj.meta.rejected_steps = stats.rejected;
    return traj;
}

double max_bloch_drift(const Trajectory& traj) {
    if (traj.empty()) return 0.0;
    const auto invariant = [](const SiteSample& s) { return s.z * s.z + 4.0 * std::real(s.plus * s.minus); };
    double drift = 0.0;
    const auto& first = traj.samples.front().sites;
    for (const auto& sample : traj.samples)
        for (std::size_t l = 0; l < first.size(); ++l)
            drift = std::max(drift, std::abs(invariant(sample.sites[l]) - invariant(first[l])));
    return drift;
}

}  // namespace qedchain
