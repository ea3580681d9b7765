// sampling.cpp

#include "qedchain/sampling.hpp"

#include <cmath>

namespace qedchain {

double ParameterSampler::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

SystemParams ParameterSampler::system(const DrawSpec& spec) {
    SystemParams p;
    p.boundary = spec.boundary;
    p.coupling_mode = spec.coupling_mode;
    for (int j = 0; j < spec.n_sites; ++j) {
        const double lower = uniform(-0.2, 0.2);
        p.site_energies.push_back({lower, lower + uniform(0.8, 1.5)});
        p.dipole_p.push_back(uniform(0.5, 1.5));
    }
    p.exchange_J = uniform(-0.3, 0.3);
    p.lattice_spacing = uniform(0.5, 2.0);
    for (int k = 0; k < spec.n_field; ++k) {
        FieldMode m;
        m.omega = uniform(0.8, 1.5);
        m.wavevector = uniform(-1.0, 1.0);
        m.amplitude = uniform(0.05, 0.3);
        for (int j = 0; j < spec.n_sites; ++j) m.polarization_overlap.push_back(uniform(-1.0, 1.0));
        p.field_modes.push_back(std::move(m));
    }
    for (int q = 0; q < spec.n_phonon; ++q) {
        const double nu = uniform(0.2, 0.8);
        p.phonon_modes.push_back({nu, uniform(0.01, 0.2)});
    }
    return p;
}

InitialState ParameterSampler::initial(const DrawSpec& spec, double max_alpha) {
    InitialState s;
    for (int j = 0; j < spec.n_sites; ++j) {
        const double theta = uniform(0.0, M_PI);
        s.sites.push_back({theta, uniform(0.0, 2.0 * M_PI)});
    }
    auto coherent = [&] {
        const double r = max_alpha * std::sqrt(unit());
        return ModeState::coherent_state(std::polar(r, uniform(0.0, 2.0 * M_PI)));
    };
    for (int k = 0; k < spec.n_field; ++k) s.field.push_back(coherent());
    for (int q = 0; q < spec.n_phonon; ++q) s.phonons.push_back(coherent());
    return s;
}

}  // namespace qedchain
