// phonon_memory.cpp

#include "qedchain/phonon_memory.hpp"

#include <cmath>
#include <stdexcept>

namespace qedchain {

namespace {

// (e^x - 1)/x and (x e^x - e^x + 1)/x^2, with series near 0.
cplx phi1(cplx x) {
    if (std::abs(x) < 0.1) {
        cplx term = 1.0, sum = 0.0;
        for (int n = 1; n <= 14; ++n) {
            sum += term;
            term *= x / static_cast<double>(n + 1);
        }
        return sum;
    }
    return (std::exp(x) - 1.0) / x;
}

cplx psi1(cplx x) {
    if (std::abs(x) < 0.1) {
        // sum_{n>=2} (n-1)/n! x^{n-2}
        cplx sum = 0.0, xp = 1.0;
        double fact = 2.0;
        for (int n = 2; n <= 16; ++n) {
            sum += static_cast<double>(n - 1) / fact * xp;
            xp *= x;
            fact *= static_cast<double>(n + 1);
        }
        return sum;
    }
    return (std::exp(x) * (x - 1.0) + 1.0) / (x * x);
}

}  // namespace

SigmaZHistory SigmaZHistory::from_trajectory(const Trajectory& traj) {
    SigmaZHistory h;
    if (traj.empty()) return h;
    h.times = traj.times();
    const std::size_t n_sites = traj.samples.front().sites.size();
    h.sz.assign(n_sites, std::vector<double>(traj.size()));
    for (std::size_t i = 0; i < traj.size(); ++i)
        for (std::size_t l = 0; l < n_sites; ++l) h.sz[l][i] = traj.samples[i].sites[l].z;
    for (const auto& ph : traj.samples.front().phonons) h.b0.push_back(ph.amplitude);
    return h;
}

SigmaZHistory SigmaZHistory::constant(std::size_t n_sites, double value, double t_end, std::size_t points,
                                      std::vector<cplx> b0) {
    if (points < 2) throw std::invalid_argument("SigmaZHistory::constant needs at least 2 points");
    SigmaZHistory h;
    for (std::size_t i = 0; i < points; ++i) h.times.push_back(t_end * static_cast<double>(i) / static_cast<double>(points - 1));
    h.sz.assign(n_sites, std::vector<double>(points, value));
    h.b0 = std::move(b0);
    return h;
}

cplx retarded_integral(std::span<const double> times, std::span<const double> values, double t, double rate) {
    if (times.size() != values.size()) throw std::invalid_argument("retarded_integral: size mismatch");
    if (times.size() < 2) throw std::invalid_argument("retarded_integral: history needs at least 2 points");
    if (t < times.front() || t > times.back() + 1e-12 * std::max(1.0, std::abs(times.back())))
        throw std::invalid_argument("retarded_integral: t outside the recorded history");

    // ∫ f(t') e^{i rate t'} dt', then multiply by e^{-i rate t}. Each interval is shifted to its left end.
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size() && times[i] < t; ++i) {
        const double ta = times[i];
        const double tb_full = times[i + 1];
        const double slope = (values[i + 1] - values[i]) / (tb_full - ta);
        const double h = std::min(tb_full, t) - ta;
        const cplx x = kI * (rate * h);
        const cplx i0 = h * phi1(x);
        const cplx i1 = h * h * psi1(x);
        acc += std::exp(kI * (rate * (ta - t))) * (values[i] * i0 + slope * i1);
    }
    return acc;
}

double sine_kernel_integral(std::span<const double> times, std::span<const double> values, double t, double nu) {
    return -retarded_integral(times, values, t, nu).imag();
}

cplx formal_phonon_amplitude(const SystemParams& params, const SigmaZHistory& history, int mode, double t) {
    const auto& ph = params.phonon_modes.at(static_cast<std::size_t>(mode));
    const cplx b0 = static_cast<std::size_t>(mode) < history.b0.size() ? history.b0[mode] : cplx(0.0);
    cplx b = b0 * std::exp(-kI * (ph.nu * t));
    for (const auto& sz : history.sz) b -= kI * ph.lambda * retarded_integral(history.times, sz, t, ph.nu);
    return b;
}

double phonon_memory_field(const SystemParams& params, const SigmaZHistory& history, double t) {
    double x = 0.0;
    for (std::size_t q = 0; q < params.phonon_modes.size(); ++q)
        x += params.phonon_modes[q].lambda * 2.0 * formal_phonon_amplitude(params, history, static_cast<int>(q), t).real();
    return x;
}

PhononCorrection phonon_memory_correction(const SpaceIndex& space, const SystemParams& params, int site, double t,
                                          const SigmaZHistory& history) {
    if (history.times.empty() || history.sz.empty())
        throw std::invalid_argument("phonon memory correction requires a recorded sz history");
    if (static_cast<int>(history.sz.size()) != params.n_sites())
        throw std::invalid_argument("phonon memory correction: history site count does not match the system");
    const double x = phonon_memory_field(params, history, t);
    const TransitionSet s = build_transition_set(space, site);
    return {(-2.0 * kI * x) * s.minus, (2.0 * kI * x) * s.plus};
}

}  // namespace qedchain
