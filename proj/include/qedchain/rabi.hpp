// rabi.hpp: closed-form two-level solution for a single site under one classical drive.
//
// With Q = q·alpha the drive field is B(t) = Q e^{-i w t} + c.c. and H = (w0/2) sz + B(t) sx.
// Keeping only the co-rotating part, the amplitudes in the frame rotating at w obey
//   i d/dt (d_beta, d_alpha) = [[D/2, Q], [Q*, -D/2]] (d_beta, d_alpha),   D = w0 - w,
// which is solved by d(t) = [cos(W t/2) - i sin(W t/2) H_r/(W/2)] d(0) with W = sqrt(W_R^2 + D^2), W_R = 2|Q|.
// Back in the lab frame s- = e^{-i w t} d_alpha* d_beta and sz = |d_beta|^2 - |d_alpha|^2.

#pragma once

#include "qedchain/dynamics.hpp"
#include "qedchain/hamiltonian.hpp"
#include "qedchain/trajectory.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qedchain {

// Largest |Q|/w0 and |D|/w0 for which the rotating-wave solution is accepted.
inline constexpr double kRabiMaxCouplingRatio = 0.05;
inline constexpr double kRabiMaxDetuningRatio = 0.1;

class RabiRefused : public std::invalid_argument {
public:
    explicit RabiRefused(const std::vector<std::string>& reasons);
    const std::vector<std::string>& reasons() const noexcept { return reasons_; }

private:
    std::vector<std::string> reasons_;
};

// Empty when the oracle applies; otherwise one message per violated condition.
std::vector<std::string> rabi_validity(const SystemParams& params);

struct RabiPoint {
    double time{0.0};
    cplx s_minus{0.0};
    double s_z{0.0};
};

class RabiOracle {
public:
    // Throws RabiRefused outside the single-site, single-drive, weak-coupling window.
    RabiOracle(const SystemParams& params, const SiteState& initial, double t0 = 0.0);

    RabiPoint at(double t) const;
    Trajectory trajectory(std::span<const double> times) const;

    double rabi_frequency() const noexcept { return rabi_; }          // W_R = 2|Q|
    double detuning() const noexcept { return detuning_; }            // D
    double generalized_frequency() const noexcept { return general_; } // W
    double drive_frequency() const noexcept { return drive_rate_; }
    // Peak-to-trough swing of sz from the lower level, W_R^2 / W^2.
    double inversion_amplitude() const noexcept;
    // First time of maximal inversion, pi / W.
    double inversion_time() const noexcept;

private:
    SystemParams params_;
    double t0_;
    double omega0_;
    double drive_rate_;
    cplx q_;
    double rabi_;
    double detuning_;
    double general_;
    cplx d_beta0_;
    cplx d_alpha0_;
};

}  // namespace qedchain
