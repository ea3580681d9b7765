// hamiltonian.cpp: Hamiltonian builders

#include "qedchain/hamiltonian.hpp"

#include "qedchain/transition_ops.hpp"

#include <cmath>
#include <sstream>

namespace qedchain {

namespace {

Operator site_op(const SpaceIndex& space, int site, const DenseMatrix& m) {
    return embed_local(space, space.site(site), m);
}

Operator field_a(const SpaceIndex& space, int k) {
    return embed_local(space, space.field_mode(k), annihilation_local(space.spec().field_modes[k].cutoff),
                       "a_" + std::to_string(k));
}

Operator phonon_b(const SpaceIndex& space, int q) {
    return embed_local(space, space.phonon_mode(q), annihilation_local(space.spec().phonon_modes[q].cutoff),
                       "b_" + std::to_string(q));
}

Operator sigma_x(const SpaceIndex& space, int site) {
    return site_op(space, site, DenseMatrix(local::sigma_minus() + local::sigma_plus()));
}

double overlap(const FieldMode& mode, int site) {
    if (mode.polarization_overlap.empty()) return 1.0;
    return static_cast<std::size_t>(site) < mode.polarization_overlap.size() ? mode.polarization_overlap[site] : 0.0;
}

// Time-independent part of q: -p (e·e_P) E exp(i k r).
cplx coupling_q0(const SystemParams& params, int site, const FieldMode& mode) {
    const double p = static_cast<std::size_t>(site) < params.dipole_p.size() ? params.dipole_p[site] : 0.0;
    return -p * overlap(mode, site) * mode.amplitude * std::exp(kI * (mode.wavevector * params.position(site)));
}

void require_sites(const SpaceIndex& space, const SystemParams& params) {
    if (params.n_sites() != space.n_sites()) {
        std::ostringstream os;
        os << "SystemParams has " << params.n_sites() << " sites but the space has " << space.n_sites();
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double SystemParams::omega(int site) const {
    const auto& e = site_energies.at(static_cast<std::size_t>(site));
    return e.upper - e.lower;
}

double SystemParams::position(int site) const {
    if (!site_positions.empty()) return site_positions.at(static_cast<std::size_t>(site));
    return site * lattice_spacing;
}

std::vector<std::string> SystemParams::validate(const SpaceIndex* space) const {
    std::vector<std::string> err;
    const int n = n_sites();
    if (n < 1) err.push_back("system: at least one site is required");
    for (int j = 0; j < n; ++j)
        if (!(site_energies[j].upper > site_energies[j].lower))
            err.push_back("system.sites[" + std::to_string(j) + "]: E_beta must exceed E_alpha");
    if (!dipole_p.empty() && static_cast<int>(dipole_p.size()) != n)
        err.push_back("system: dipole list has " + std::to_string(dipole_p.size()) + " entries for " +
                      std::to_string(n) + " sites");
    if (!site_positions.empty() && static_cast<int>(site_positions.size()) != n)
        err.push_back("system: position list has " + std::to_string(site_positions.size()) + " entries for " +
                      std::to_string(n) + " sites");
    auto check_mode = [&](const FieldMode& m, const std::string& where) {
        if (!(m.omega > 0.0)) err.push_back(where + ": omega must be positive");
        if (!std::isfinite(m.amplitude)) err.push_back(where + ": amplitude must be finite");
        if (static_cast<int>(m.polarization_overlap.size()) > n)
            err.push_back(where + ": polarization overlap lists more entries than sites");
    };
    for (std::size_t k = 0; k < field_modes.size(); ++k) check_mode(field_modes[k], "system.field_modes[" + std::to_string(k) + "]");
    for (std::size_t d = 0; d < drives.size(); ++d) check_mode(drives[d].mode, "system.drives[" + std::to_string(d) + "]");
    for (std::size_t q = 0; q < phonon_modes.size(); ++q) {
        if (!(phonon_modes[q].nu > 0.0)) err.push_back("system.phonon_modes[" + std::to_string(q) + "]: nu must be positive");
        if (!std::isfinite(phonon_modes[q].lambda))
            err.push_back("system.phonon_modes[" + std::to_string(q) + "]: lambda must be finite");
    }
    if (!std::isfinite(exchange_J)) err.push_back("system: exchange_J must be finite");
    if (space != nullptr) {
        if (space->n_sites() != n)
            err.push_back("system has " + std::to_string(n) + " sites but space declares " + std::to_string(space->n_sites()));
        if (space->n_field_modes() != static_cast<int>(field_modes.size()))
            err.push_back("system has " + std::to_string(field_modes.size()) + " field modes but space declares " +
                          std::to_string(space->n_field_modes()));
        if (space->n_phonon_modes() != static_cast<int>(phonon_modes.size()))
            err.push_back("system has " + std::to_string(phonon_modes.size()) + " phonon modes but space declares " +
                          std::to_string(space->n_phonon_modes()));
    }
    return err;
}

SystemParams uniform_chain(int n_sites, double omega, double exchange_J) {
    SystemParams p;
    p.site_energies.assign(static_cast<std::size_t>(n_sites), LevelPair{0.0, omega});
    p.dipole_p.assign(static_cast<std::size_t>(n_sites), 1.0);
    p.exchange_J = exchange_J;
    return p;
}

std::vector<std::pair<int, int>> bonds(const SystemParams& params) {
    std::vector<std::pair<int, int>> out;
    const int n = params.n_sites();
    for (int v = 0; v + 1 < n; ++v) out.emplace_back(v, v + 1);
    if (params.boundary == Boundary::periodic && n >= 3) out.emplace_back(n - 1, 0);
    return out;
}

std::vector<int> neighbours(const SystemParams& params, int site) {
    std::vector<int> out;
    for (auto [a, b] : bonds(params)) {
        if (a == site) out.push_back(b);
        if (b == site) out.push_back(a);
    }
    return out;
}

cplx coupling_q(const SystemParams& params, int site, const FieldMode& mode, double t) {
    const double tt = params.coupling_mode == CouplingMode::literal_time_dependent ? t : 0.0;
    return coupling_q0(params, site, mode) * std::exp(-kI * (mode.omega * tt));
}

cplx coupling_q(const SystemParams& params, int site, int mode, double t) {
    return coupling_q(params, site, params.field_modes.at(static_cast<std::size_t>(mode)), t);
}

cplx drive_amplitude(const ClassicalDrive& d, double t) {
    return d.coherent_amplitude * std::exp(-kI * (d.mode.omega * t));
}

double drive_field(const SystemParams& params, int site, double t) {
    double b = 0.0;
    for (const auto& d : params.drives) b += 2.0 * std::real(coupling_q(params, site, d.mode, t) * drive_amplitude(d, t));
    return b;
}

Operator build_H0(const SpaceIndex& space, const SystemParams& params) {
    require_sites(space, params);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dimension()));
    for (std::size_t i = 0; i < space.dimension(); ++i)
        for (int v = 0; v < params.n_sites(); ++v) {
            const auto& e = params.site_energies[static_cast<std::size_t>(v)];
            diag[static_cast<Eigen::Index>(i)] += space.occupation_of(i, space.site(v)) == 0 ? e.lower : e.upper;
        }
    return Operator::diagonal(diag, "H0");
}

Operator build_HC(const SpaceIndex& space, const SystemParams& params) {
    Operator h = build_H0(space, params);
    if (params.exchange_J != 0.0) {
        const DenseMatrix sp = local::sigma_plus(), sm = local::sigma_minus(), sz = local::sigma_z();
        Operator bond_sum = Operator::zero(space.dimension());
        for (auto [v, w] : bonds(params)) {
            bond_sum += site_op(space, v, sp) * site_op(space, w, sm);
            bond_sum += site_op(space, v, sm) * site_op(space, w, sp);
            bond_sum += 0.5 * (site_op(space, v, sz) * site_op(space, w, sz));
        }
        const Operator term = params.exchange_J * bond_sum;
        h += term + adjoint(term);
    }
    return h.retag("HC");
}

Operator field_coupling_operator(const SpaceIndex& space, const SystemParams& params, int site, double t) {
    Operator b = Operator::zero(space.dimension());
    for (int k = 0; k < space.n_field_modes(); ++k) {
        const cplx q = coupling_q(params, site, k, t);
        if (q == cplx(0.0)) continue;
        const Operator a = field_a(space, k);
        b += q * a + std::conj(q) * adjoint(a);
    }
    const double drive = drive_field(params, site, t);
    if (drive != 0.0) b += drive * Operator::identity(space.dimension());
    return b.retag("B_" + std::to_string(site));
}

Operator build_HCF(const SpaceIndex& space, const SystemParams& params, double t) {
    require_sites(space, params);
    Operator h = Operator::zero(space.dimension());
    for (int j = 0; j < params.n_sites(); ++j) {
        const Operator sx = sigma_x(space, j);
        for (int k = 0; k < space.n_field_modes(); ++k) {
            const cplx q = coupling_q(params, j, k, t);
            if (q == cplx(0.0)) continue;
            const Operator a = field_a(space, k);
            h += q * (sx * a) + std::conj(q) * (sx * adjoint(a));
        }
    }
    return h.retag("HCF");
}

Operator build_HDrive(const SpaceIndex& space, const SystemParams& params, double t) {
    require_sites(space, params);
    Operator h = Operator::zero(space.dimension());
    for (int j = 0; j < params.n_sites(); ++j) {
        const double b = drive_field(params, j, t);
        if (b != 0.0) h += b * sigma_x(space, j);
    }
    return h.retag("HDrive");
}

Operator build_HF(const SpaceIndex& space, const SystemParams& params) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dimension()));
    for (int k = 0; k < space.n_field_modes(); ++k) {
        const double w = params.field_modes.at(static_cast<std::size_t>(k)).omega;
        const std::size_t s = space.field_mode(k);
        for (std::size_t i = 0; i < space.dimension(); ++i)
            diag[static_cast<Eigen::Index>(i)] += w * (space.occupation_of(i, s) + 0.5);
    }
    return Operator::diagonal(diag, "HF");
}

Operator build_HP(const SpaceIndex& space, const SystemParams& params) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dimension()));
    for (int q = 0; q < space.n_phonon_modes(); ++q) {
        const double nu = params.phonon_modes.at(static_cast<std::size_t>(q)).nu;
        const std::size_t s = space.phonon_mode(q);
        for (std::size_t i = 0; i < space.dimension(); ++i)
            diag[static_cast<Eigen::Index>(i)] += nu * (space.occupation_of(i, s) + 0.5);
    }
    return Operator::diagonal(diag, "HP");
}

Operator phonon_displacement_sum(const SpaceIndex& space, const SystemParams& params) {
    Operator x = Operator::zero(space.dimension());
    for (int q = 0; q < space.n_phonon_modes(); ++q) {
        const double lambda = params.phonon_modes.at(static_cast<std::size_t>(q)).lambda;
        if (lambda == 0.0) continue;
        const Operator b = phonon_b(space, q);
        x += lambda * (b + adjoint(b));
    }
    return x.retag("X_ph");
}

Operator build_HCP(const SpaceIndex& space, const SystemParams& params) {
    require_sites(space, params);
    const Operator x = phonon_displacement_sum(space, params);
    Operator zsum = Operator::zero(space.dimension());
    for (int j = 0; j < params.n_sites(); ++j) zsum += site_op(space, j, local::sigma_z());
    return (x * zsum).retag("HCP");
}

Operator build_total(const SpaceIndex& space, const SystemParams& params, double t) {
    Operator h = build_HC(space, params);
    h += build_HF(space, params);
    h += build_HCF(space, params, t);
    h += build_HP(space, params);
    h += build_HCP(space, params);
    h += build_HDrive(space, params, t);
    return h.retag("H");
}

// ---------------------------------------------------------------------------

TimeDependentHamiltonian::TimeDependentHamiltonian(const SpaceIndex& space, const SystemParams& params) {
    static_ = build_HC(space, params) + build_HF(space, params) + build_HP(space, params) + build_HCP(space, params);
    const bool literal = params.coupling_mode == CouplingMode::literal_time_dependent;

    for (int k = 0; k < space.n_field_modes(); ++k) {
        const FieldMode& mode = params.field_modes[static_cast<std::size_t>(k)];
        const Operator a = field_a(space, k);
        Operator k_op = Operator::zero(space.dimension());
        for (int j = 0; j < params.n_sites(); ++j) {
            const cplx q0 = coupling_q0(params, j, mode);
            if (q0 != cplx(0.0)) k_op += q0 * (sigma_x(space, j) * a);
        }
        if (literal)
            terms_.push_back({k_op, adjoint(k_op), 1.0, mode.omega});
        else
            static_ += k_op + adjoint(k_op);
    }

    // Drive: sum_j sigma_x_j [q_j(t) alpha(t) + c.c.], q_j(t) alpha(t) = q0_j alpha e^{-i rate t}.
    for (const auto& d : params.drives) {
        Operator k_op = Operator::zero(space.dimension());
        for (int j = 0; j < params.n_sites(); ++j) {
            const cplx q0 = coupling_q0(params, j, d.mode);
            if (q0 != cplx(0.0)) k_op += q0 * sigma_x(space, j);
        }
        const double rate = literal ? 2.0 * d.mode.omega : d.mode.omega;
        terms_.push_back({k_op, adjoint(k_op), d.coherent_amplitude, rate});
    }
}

Operator TimeDependentHamiltonian::at(double t) const {
    Operator h = static_;
    for (const auto& term : terms_) {
        const cplx c = term.c0 * std::exp(-kI * (term.rate * t));
        h += c * term.k + std::conj(c) * term.k_dag;
    }
    return h.retag("H");
}

void TimeDependentHamiltonian::apply(double t, const Vector& in, Vector& out) const {
    out.noalias() = static_.matrix() * in;
    for (const auto& term : terms_) {
        const cplx c = term.c0 * std::exp(-kI * (term.rate * t));
        out.noalias() += c * (term.k.matrix() * in);
        out.noalias() += std::conj(c) * (term.k_dag.matrix() * in);
    }
}

}  // namespace qedchain
