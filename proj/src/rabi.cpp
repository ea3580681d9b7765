// rabi.cpp

#include "qedchain/rabi.hpp"

#include <cmath>

namespace qedchain {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string s = "Rabi oracle refused: ";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i];
    return s;
}

// The drive phase advances at w in static coupling mode and at 2w when the coupling carries its own e^{-iwt}.
double effective_rate(const SystemParams& params, const ClassicalDrive& d) {
    return params.coupling_mode == CouplingMode::literal_time_dependent ? 2.0 * d.mode.omega : d.mode.omega;
}

}  // namespace

RabiRefused::RabiRefused(const std::vector<std::string>& reasons) : std::invalid_argument(join(reasons)), reasons_(reasons) {}

std::vector<std::string> rabi_validity(const SystemParams& params) {
    std::vector<std::string> why;
    if (params.n_sites() != 1) why.push_back("requires exactly one site, got " + std::to_string(params.n_sites()));
    if (params.drives.size() != 1) why.push_back("requires exactly one classical drive, got " + std::to_string(params.drives.size()));
    if (!params.field_modes.empty()) why.push_back("quantized field modes are present");
    if (!params.phonon_modes.empty()) why.push_back("phonon modes are present");
    if (!why.empty()) return why;

    const double w0 = params.omega(0);
    const ClassicalDrive& d = params.drives.front();
    const double q = std::abs(coupling_q(params, 0, d.mode, 0.0) * d.coherent_amplitude);
    if (q > kRabiMaxCouplingRatio * w0)
        why.push_back("|q alpha| = " + std::to_string(q) + " exceeds " + std::to_string(kRabiMaxCouplingRatio) +
                      " of the transition frequency");
    const double detune = w0 - effective_rate(params, d);
    if (std::abs(detune) > kRabiMaxDetuningRatio * w0)
        why.push_back("detuning " + std::to_string(detune) + " exceeds " + std::to_string(kRabiMaxDetuningRatio) +
                      " of the transition frequency");
    return why;
}

RabiOracle::RabiOracle(const SystemParams& params, const SiteState& initial, double t0) : params_(params), t0_(t0) {
    if (auto why = rabi_validity(params); !why.empty()) throw RabiRefused(why);
    const ClassicalDrive& d = params.drives.front();
    omega0_ = params.omega(0);
    drive_rate_ = effective_rate(params, d);
    // Q e^{-i rate t} is the positive-frequency part of the drive; referenced to t = 0.
    q_ = coupling_q(params, 0, d.mode, 0.0) * d.coherent_amplitude;
    rabi_ = 2.0 * std::abs(q_);
    detuning_ = omega0_ - drive_rate_;
    general_ = std::hypot(rabi_, detuning_);

    const cplx c_alpha = std::cos(0.5 * initial.theta);
    const cplx c_beta = std::exp(kI * initial.phi) * std::sin(0.5 * initial.theta);
    // Lab amplitudes at t0 mapped into the rotating frame.
    d_beta0_ = std::exp(kI * (0.5 * drive_rate_ * t0)) * c_beta;
    d_alpha0_ = std::exp(-kI * (0.5 * drive_rate_ * t0)) * c_alpha;
}

RabiPoint RabiOracle::at(double t) const {
    const double tau = t - t0_;
    cplx db = d_beta0_, da = d_alpha0_;
    if (general_ > 0.0) {
        const double c = std::cos(0.5 * general_ * tau);
        const double s = std::sin(0.5 * general_ * tau) / (0.5 * general_);
        db = c * d_beta0_ - kI * s * (0.5 * detuning_ * d_beta0_ + q_ * d_alpha0_);
        da = c * d_alpha0_ - kI * s * (std::conj(q_) * d_beta0_ - 0.5 * detuning_ * d_alpha0_);
    }
    RabiPoint p;
    p.time = t;
    p.s_minus = std::exp(-kI * (drive_rate_ * t)) * std::conj(da) * db;
    p.s_z = std::norm(db) - std::norm(da);
    return p;
}

Trajectory RabiOracle::trajectory(std::span<const double> times) const {
    Trajectory traj;
    traj.meta.source = "oracle";
    for (double t : times) {
        const RabiPoint p = at(t);
        Sample s;
        s.time = t;
        s.sites.push_back({p.s_minus, std::conj(p.s_minus), p.s_z});
        s.norm = 1.0;
        // Site energy plus the drive interaction, as in the lab-frame Hamiltonian.
        const auto& lv = params_.site_energies.front();
        s.energy = 0.5 * (lv.upper - lv.lower) * p.s_z + 0.5 * (lv.upper + lv.lower) +
                   2.0 * std::real(p.s_minus) * drive_field(params_, 0, t);
        traj.samples.push_back(std::move(s));
    }
    return traj;
}

double RabiOracle::inversion_amplitude() const noexcept {
    return general_ > 0.0 ? rabi_ * rabi_ / (general_ * general_) : 0.0;
}

double RabiOracle::inversion_time() const noexcept {
    return general_ > 0.0 ? M_PI / general_ : 0.0;
}

}  // namespace qedchain
