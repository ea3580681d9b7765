// acceptance.cpp: one pass/fail line per acceptance criterion; tolerances and parameters are pinned here.

#include "qedchain/config.hpp"
#include "qedchain/dynamics.hpp"
#include "qedchain/hamiltonian.hpp"
#include "qedchain/heisenberg.hpp"
#include "qedchain/meanfield.hpp"
#include "qedchain/phonon_memory.hpp"
#include "qedchain/rabi.hpp"
#include "qedchain/runner.hpp"
#include "qedchain/sampling.hpp"
#include "qedchain/transition_ops.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace qedchain;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

SpaceIndex make_space(int sites, std::vector<int> field, std::vector<int> phonon = {}) {
    SpaceSpec s;
    s.n_sites = sites;
    for (int c : field) s.field_modes.push_back({c});
    for (int c : phonon) s.phonon_modes.push_back({c});
    return SpaceIndex(s);
}

// Every draw of criteria 3 and 4: n = 3, one field mode, one phonon mode, static coupling.
std::vector<SystemParams> eom_draws() {
    ParameterSampler sampler(kSeed);
    DrawSpec spec;
    std::vector<SystemParams> out;
    for (int d = 0; d < 10; ++d) out.push_back(sampler.system(spec));
    return out;
}

Outcome criterion1() {
    constexpr double tol = 1e-13;
    const SpaceIndex space = make_space(2, {3});
    double worst = 0.0;
    bool exact = named_relations_exact();
    std::size_t checks = 0;
    for (int site = 0; site < 2; ++site) {
        const AlgebraReport r = check_algebra_closure(build_transition_set(space, site), tol);
        worst = std::max(worst, r.max_residual);
        exact = exact && r.exact_named_relations && r.failures.empty();
        checks += r.checks;
    }
    return {exact && worst <= tol,
            fmt("max commutator residual %.3e (tol %.0e), ", worst, tol) + std::to_string(checks) +
                " checks, integer named relations " + (exact ? "exact" : "NOT exact")};
}

Outcome criterion2() {
    constexpr double tol = 1e-13;
    const SpaceIndex space = make_space(2, {3});
    const PauliReport r = check_pauli_isomorphism(build_transition_set(space, 0), tol);
    return {r.ok(tol), fmt("structure-constant residual %.3e, mapping residual %.3e (tol %.0e), ", r.max_residual,
                           r.mapping_residual, tol) +
                           std::to_string(r.checks) + " checks"};
}

Outcome criterion3() {
    constexpr double tol = 1e-11;
    constexpr double t = 0.37;
    const SpaceIndex space = make_space(3, {4}, {3});
    double sigma = 0.0, bosonic = 0.0, term = 0.0;
    for (const SystemParams& p : eom_draws()) {
        const EomResiduals r = verify_eom(space, p, t);
        sigma = std::max(sigma, r.max_sigma());
        bosonic = std::max(bosonic, r.max_bosonic());
        term = std::max(term, r.max_phonon_term());
    }
    const double worst = std::max({sigma, bosonic, term});
    return {worst <= tol, fmt("10 draws seed %.0f: sigma %.3e, ", static_cast<double>(kSeed), sigma) +
                              fmt("field/phonon %.3e, phonon term %.3e ", bosonic, term) + fmt("(tol %.0e)", tol)};
}

Outcome criterion4() {
    constexpr double tol = 1e-10;
    constexpr double control_min = 1e-3;
    constexpr double t = 0.37;
    const SpaceIndex space = make_space(3, {4}, {3});
    double worst = 0.0, weakest_control = std::numeric_limits<double>::infinity();
    for (const SystemParams& p : eom_draws()) {
        double control = 0.0;
        for (int l = 0; l < 3; ++l) {
            worst = std::max(worst, verify_compact_form(space, p, l, t, kTransitionMetric));
            control = std::max(control, verify_compact_form(space, p, l, t, kIdentityMetric));
        }
        weakest_control = std::min(weakest_control, control);
    }
    return {worst <= tol && weakest_control > control_min,
            fmt("compact residual %.3e (tol %.0e), identity-metric control min %.3e ", worst, tol, weakest_control) +
                fmt("(must exceed %.0e)", control_min)};
}

Outcome criterion5() {
    constexpr double tol = 1e-5;
    const SpaceIndex space = make_space(2, {16});
    SystemParams p = uniform_chain(2, 1.0, 0.05);
    p.site_energies[1] = {0.0, 1.1};
    FieldMode m;
    m.omega = 1.05;
    m.amplitude = 0.04;
    m.wavevector = 0.6;
    p.field_modes.push_back(m);
    InitialState init;
    init.sites = {{1.1, 0.2}, SiteState::lower()};
    init.field = {ModeState::coherent_state(2.0)};
    const double fastest_period = 2.0 * M_PI / 1.1;
    PropagationSettings st;
    st.output_dt = 1e-3 * fastest_period;
    st.t_end = 2000 * st.output_dt;
    st.keep_states = true;
    st.integrator.rtol = 1e-12;
    st.integrator.atol = 1e-14;
    const Trajectory traj = propagate(space, p, product_state(space, init), st);
    double worst = 0.0;
    for (const char* obs : {"sz_0", "sz_1"})
        worst = std::max(worst, ehrenfest_check(traj, space, p, parse_observable(obs), tol).max_deviation);
    return {worst <= tol, fmt("max |d<sz>/dt - <RHS>| %.3e over 2000 steps of dt %.4e (tol %.0e)", worst, st.output_dt, tol)};
}

Outcome criterion6() {
    constexpr double tol = 1e-8;
    constexpr double sz_tol = 1e-9;
    const SpaceIndex space = make_space(3, {4}, {3});
    SystemParams p = uniform_chain(3, 1.0, 0.06);
    p.site_energies[0] = {0.0, 0.95};
    p.site_energies[2] = {0.1, 1.2};
    FieldMode m;
    m.omega = 1.0;
    m.amplitude = 0.05;
    m.wavevector = 0.3;
    p.field_modes.push_back(m);
    p.phonon_modes.push_back({0.5, 0.03});
    InitialState init;
    init.sites = {SiteState::upper(), {1.2, 0.4}, SiteState::lower()};
    init.field = {ModeState::coherent_state({0.5, 0.2})};
    init.phonons = {ModeState::number(1)};
    PropagationSettings st;
    st.t_end = 50.0 * 2.0 * M_PI;
    st.output_dt = 0.5;
    st.integrator.rtol = 1e-12;
    st.integrator.atol = 1e-14;
    const Trajectory traj = propagate(space, p, product_state(space, init), st);
    const double e0 = traj.samples.front().energy;
    double norm = 0.0, energy = 0.0;
    for (const auto& s : traj.samples) {
        norm = std::max(norm, std::abs(s.norm - 1.0));
        energy = std::max(energy, std::abs(s.energy - e0) / std::abs(e0));
    }

    const SpaceIndex chain = make_space(4, {});
    const SystemParams ex = uniform_chain(4, 1.0, 0.15);
    InitialState ei;
    ei.sites = {SiteState::upper(), {0.8, 0.0}, {2.0, 1.0}, SiteState::lower()};
    const Trajectory et = propagate(chain, ex, product_state(chain, ei), st);
    auto total = [](const Sample& s) {
        double z = 0.0;
        for (const auto& site : s.sites) z += site.z;
        return z;
    };
    double sz = 0.0;
    for (const auto& s : et.samples) sz = std::max(sz, std::abs(total(s) - total(et.samples.front())));
    return {norm <= tol && energy <= tol && sz <= sz_tol,
            fmt("norm drift %.3e, relative energy drift %.3e (tol %.0e), ", norm, energy, tol) +
                fmt("exchange-only sum sz drift %.3e (tol %.0e)", sz, sz_tol)};
}

SystemParams driven_site(double drive_omega, double q_alpha) {
    SystemParams p = uniform_chain(1, 1.0, 0.0);
    ClassicalDrive d;
    d.mode.omega = drive_omega;
    d.mode.amplitude = q_alpha;
    d.coherent_amplitude = -1.0;  // q = -amplitude, so q alpha = amplitude
    p.drives.push_back(d);
    return p;
}

double max_upper_population(const Trajectory& t) {
    double best = 0.0;
    for (const auto& s : t.samples) best = std::max(best, 0.5 * (1.0 + s.sites[0].z));
    return best;
}

Outcome criterion7() {
    constexpr double tol = 0.01;
    constexpr double detuned_tol = 0.02;
    const SpaceIndex space = make_space(1, {});
    InitialState init;
    init.sites = {SiteState::lower()};
    AdaptiveSettings acc;
    acc.rtol = 1e-11;
    acc.atol = 1e-13;

    const SystemParams res = driven_site(1.0, 0.005);
    const RabiOracle oracle(res, SiteState::lower());
    const double t_pi = M_PI / oracle.rabi_frequency();
    const double p_oracle = 0.5 * (1.0 + oracle.at(t_pi).s_z);
    PropagationSettings st;
    st.t_end = t_pi;
    st.output_dt = t_pi / 4.0;
    st.integrator = acc;
    const double p_exact = 0.5 * (1.0 + propagate(space, res, product_state(space, init), st).samples.back().sites[0].z);
    MeanFieldSettings ms;
    ms.t_end = t_pi;
    ms.output_dt = t_pi / 4.0;
    ms.integrator = acc;
    const double p_mf = 0.5 * (1.0 + mf_propagate(mean_field_state(init, 1, 0, 0), res, ms).samples.back().sites[0].z);
    const double err_exact = std::abs(p_exact - p_oracle) / p_oracle;
    const double err_mf = std::abs(p_mf - p_oracle) / p_oracle;

    const SystemParams det = driven_site(0.99, 0.005);
    const RabiOracle dor(det, SiteState::lower());
    st.t_end = ms.t_end = 2.0 * dor.inversion_time();
    st.output_dt = ms.output_dt = 0.05;
    const double amp = dor.inversion_amplitude();
    const double det_exact = std::abs(max_upper_population(propagate(space, det, product_state(space, init), st)) - amp) / amp;
    const double det_mf = std::abs(max_upper_population(mf_propagate(mean_field_state(init, 1, 0, 0), det, ms)) - amp) / amp;

    return {err_exact <= tol && err_mf <= tol && det_exact <= detuned_tol && det_mf <= detuned_tol,
            fmt("inversion at pi/W_R: exact rel err %.3e, mean-field %.3e (tol %.2f); ", err_exact, err_mf, tol) +
                fmt("detuned amplitude %.4f: exact rel err %.3e, ", amp, det_exact) +
                fmt("mean-field %.3e (tol %.2f)", det_mf, detuned_tol)};
}

Outcome criterion8() {
    constexpr double tol = 0.05;
    const SpaceIndex space = make_space(1, {30});
    SystemParams p = uniform_chain(1, 1.0, 0.0);
    FieldMode m;
    m.omega = 1.0;
    m.amplitude = 0.01;
    p.field_modes.push_back(m);
    InitialState init;
    init.sites = {SiteState::upper()};
    init.field = {ModeState::coherent_state(3.0)};
    // Mean-field Rabi frequency 2 |q| |alpha|.
    const double period = 2.0 * M_PI / (2.0 * 0.01 * 3.0);
    PropagationSettings st;
    st.t_end = 4.0 * period;
    st.output_dt = period / 200.0;
    st.integrator.rtol = 1e-11;
    st.integrator.atol = 1e-13;
    const Trajectory exact = propagate(space, p, product_state(space, init), st);
    MeanFieldSettings ms;
    ms.t_end = st.t_end;
    ms.output_dt = st.output_dt;
    ms.integrator = st.integrator;
    const Trajectory mf = mf_propagate(mean_field_state(init, 1, 1, 0), p, ms);

    std::vector<double> per_period(4, 0.0);
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const std::size_t k = std::min<std::size_t>(3, static_cast<std::size_t>(exact.samples[i].time / period * (1.0 - 1e-12)));
        per_period[k] = std::max(per_period[k], std::abs(exact.samples[i].sites[0].z - mf.samples[i].sites[0].z));
    }
    std::string growth = "growth by period:";
    for (double d : per_period) growth += fmt(" %.3f", d);
    return {per_period[0] <= tol && exact.meta.max_top_population <= kTruncationFlagThreshold,
            fmt("first-period max |sz_mf - <sz>| %.3e (tol %.2f), top Fock population %.1e; ", per_period[0], tol,
                exact.meta.max_top_population) +
                growth};
}

Outcome criterion9() {
    constexpr double memory_tol = 1e-8;
    constexpr double direct_tol = 1e-12;
    SystemParams p = uniform_chain(2, 1.0, 0.1);
    p.phonon_modes = {{0.45, 0.07}, {0.8, 0.12}};
    const double sz = -0.6;
    const SigmaZHistory history = SigmaZHistory::constant(2, sz, 40.0, 801);
    double memory = 0.0;
    for (double t : {0.0, 0.5, 3.3, 12.0, 27.5, 40.0}) {
        double closed = 0.0;
        for (const auto& ph : p.phonon_modes) closed += -2.0 * ph.lambda * ph.lambda * (2.0 * sz) * (1.0 - std::cos(ph.nu * t)) / ph.nu;
        memory = std::max(memory, std::abs(phonon_memory_field(p, history, t) - closed));
        for (const auto& ph : p.phonon_modes)
            memory = std::max(memory, std::abs(sine_kernel_integral(history.times, history.sz[0], t, ph.nu) -
                                               sz * (1.0 - std::cos(ph.nu * t)) / ph.nu));
    }

    const SpaceIndex space = make_space(2, {}, {4, 3});
    const Operator hcp = build_HCP(space, p);
    double direct = 0.0;
    for (int l = 0; l < 2; ++l) {
        const TransitionSet ts = build_transition_set(space, l);
        const PhononCorrection c = sigma_phonon_correction(space, p, l);
        direct = std::max(direct, frobenius_norm(c.minus - commutator_rhs(hcp, ts.minus)));
        direct = std::max(direct, frobenius_norm(c.plus - commutator_rhs(hcp, ts.plus)));
    }
    return {memory <= memory_tol && direct <= direct_tol,
            fmt("memory path vs (1-cos nu t)/nu: %.3e (tol %.0e), direct path vs commutator %.3e ", memory, memory_tol, direct) +
                fmt("(tol %.0e)", direct_tol)};
}

Outcome criterion10() {
    constexpr double tol = 1e-8;
    ParameterSampler sampler(kSeed + 10);
    DrawSpec spec;
    double worst = 0.0;
    for (int d = 0; d < 5; ++d) {
        const SystemParams p = sampler.system(spec);
        const InitialState init = sampler.initial(spec, 1.5);
        double slowest = 0.0;
        for (int l = 0; l < p.n_sites(); ++l) slowest = std::max(slowest, 2.0 * M_PI / p.omega(l));
        MeanFieldSettings ms;
        ms.t_end = 100.0 * slowest;
        ms.output_dt = 0.5;
        ms.integrator.rtol = 1e-12;
        ms.integrator.atol = 1e-14;
        worst = std::max(worst, max_bloch_drift(mf_propagate(mean_field_state(init, 3, 1, 1), p, ms)));
    }
    return {worst <= tol, fmt("max invariant drift %.3e over 100 periods, 5 draws (tol %.0e)", worst, tol)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion11() {
    const RunConfig config = parse_config_text(R"({
        "task": "compare",
        "seed": 5,
        "space": {"sites": 2, "field_cutoffs": [6], "phonon_cutoffs": [3]},
        "system": {"sites": [{"E_alpha": 0.0, "E_beta": 1.0}, {"E_alpha": 0.05, "E_beta": 1.2}],
                   "exchange_J": 0.07,
                   "field_modes": [{"omega": 1.1, "amplitude": 0.06, "wavevector": 0.8}],
                   "phonon_modes": [{"nu": 0.5, "lambda": 0.04}]},
        "initial": {"sites": [{"theta": 0.7, "phi": 0.3}, "alpha"], "field": [{"coherent": [0.8, -0.4]}]},
        "integrator": {"t_end": 30.0, "output_dt": 0.25},
        "checks": {"compare_tolerance": 1.0}
    })", "determinism");
    const auto root = std::filesystem::temp_directory_path() / "qedchain_acceptance_determinism";
    std::filesystem::remove_all(root);
    RunOptions a, b;
    a.out_dir = root / "a";
    b.out_dir = root / "b";
    const RunReport ra = run(config, a);
    const RunReport rb = run(config, b);
    std::size_t identical = 0, total = 0;
    for (const auto& f : ra.body.at("files")) {
        ++total;
        const std::string name = f.get<std::string>();
        const std::string x = slurp(a.out_dir / name);
        if (!x.empty() && x == slurp(b.out_dir / name)) ++identical;
    }
    const bool reports = ra.without_timing() == rb.without_timing();
    return {total == 4 && identical == total && reports,
            std::to_string(identical) + "/" + std::to_string(total) + " trajectory files byte-identical, reports " +
                (reports ? "identical" : "differ")};
}

struct Criterion {
    const char* name;
    double max_seconds;  // 0: no runtime bound
    std::function<Outcome()> body;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {"algebra closure", 1.0, criterion1},
        {"Pauli isomorphism", 1.0, criterion2},
        {"Heisenberg equations of motion", 60.0, criterion3},
        {"compact vector form", 30.0, criterion4},
        {"Ehrenfest consistency", 120.0, criterion5},
        {"conservation", 0.0, criterion6},
        {"Rabi limit", 10.0, criterion7},
        {"quantum-classical closure gap", 300.0, criterion8},
        {"phonon memory kernel", 0.0, criterion9},
        {"mean-field invariant", 0.0, criterion10},
        {"determinism", 0.0, criterion11},
    };
    return all;
}

bool run_one(int n) {
    const Criterion& c = criteria().at(static_cast<std::size_t>(n - 1));
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.body();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.max_seconds <= 0.0 || secs < c.max_seconds;
    const bool pass = o.pass && in_time;
    std::printf("criterion %d: %s %s: %s; runtime %.2f s%s\n", n, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                c.max_seconds > 0.0 ? fmt(" (limit %.0f s)", c.max_seconds).c_str() : "");
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            which.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
            return 2;
        }
    }
    if (which.empty())
        for (int n = 1; n <= static_cast<int>(criteria().size()); ++n) which.push_back(n);
    bool all = true;
    for (int n : which) {
        if (n < 1 || n > static_cast<int>(criteria().size())) {
            std::fprintf(stderr, "no criterion %d\n", n);
            return 2;
        }
        all = run_one(n) && all;
    }
    return all ? 0 : 1;
}
