// trajectory.cpp

#include "qedchain/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace qedchain {

std::vector<std::string> column_names(std::size_t n_sites, std::size_t n_field, std::size_t n_phonon) {
    std::vector<std::string> c{"time"};
    for (std::size_t l = 0; l < n_sites; ++l) {
        const std::string p = "s" + std::to_string(l);
        for (const char* suffix : {"_minus_re", "_minus_im", "_plus_re", "_plus_im", "_z"}) c.push_back(p + suffix);
    }
    for (std::size_t k = 0; k < n_field; ++k) {
        const std::string p = "a" + std::to_string(k);
        for (const char* suffix : {"_re", "_im", "_n", "_top"}) c.push_back(p + suffix);
    }
    for (std::size_t q = 0; q < n_phonon; ++q) {
        const std::string p = "b" + std::to_string(q);
        for (const char* suffix : {"_re", "_im", "_n", "_top"}) c.push_back(p + suffix);
    }
    c.push_back("norm");
    c.push_back("energy");
    return c;
}

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(samples.size());
    for (const auto& s : samples) t.push_back(s.time);
    return t;
}

std::vector<std::string> Trajectory::column_names() const {
    if (samples.empty()) return qedchain::column_names(0, 0, 0);
    const auto& s = samples.front();
    return qedchain::column_names(s.sites.size(), s.field.size(), s.phonons.size());
}

std::vector<double> Trajectory::row(std::size_t i) const {
    const Sample& s = samples.at(i);
    std::vector<double> r{s.time};
    for (const auto& site : s.sites) {
        r.insert(r.end(), {site.minus.real(), site.minus.imag(), site.plus.real(), site.plus.imag(), site.z});
    }
    for (const auto* modes : {&s.field, &s.phonons})
        for (const auto& m : *modes) r.insert(r.end(), {m.amplitude.real(), m.amplitude.imag(), m.occupation, m.top_population});
    r.push_back(s.norm);
    r.push_back(s.energy);
    return r;
}

std::vector<double> Trajectory::series(std::string_view column) const {
    const auto names = column_names();
    std::size_t idx = names.size();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == column) idx = i;
    if (idx == names.size()) throw std::invalid_argument("unknown trajectory column '" + std::string(column) + "'");
    std::vector<double> out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out.push_back(row(i)[idx]);
    return out;
}

std::vector<double> uniform_grid(double t0, double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("output grid spacing must be positive");
    if (!(t_end >= t0)) throw std::invalid_argument("t_end must not precede the start time");
    const auto n = static_cast<std::size_t>(std::llround(std::ceil((t_end - t0) / dt - 1e-9)));
    std::vector<double> g;
    g.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) g.push_back(t0 + static_cast<double>(i) * dt);
    g.push_back(t_end);
    return g;
}

}  // namespace qedchain
