// ehrenfest.cpp: observable selection and finite-difference consistency checks

#include "qedchain/dynamics.hpp"
#include "qedchain/heisenberg.hpp"

#include <charconv>
#include <cmath>

namespace qedchain {

ObservableRef parse_observable(std::string_view name) {
    struct Prefix {
        std::string_view text;
        ObservableRef::Kind kind;
    };
    static constexpr Prefix prefixes[] = {
        {"s-_", ObservableRef::Kind::sigma_minus},     {"sminus_", ObservableRef::Kind::sigma_minus},
        {"s+_", ObservableRef::Kind::sigma_plus},      {"splus_", ObservableRef::Kind::sigma_plus},
        {"sz_", ObservableRef::Kind::sigma_z},         {"adag_", ObservableRef::Kind::field_a_dag},
        {"a_", ObservableRef::Kind::field_a},          {"bdag_", ObservableRef::Kind::phonon_b_dag},
        {"b_", ObservableRef::Kind::phonon_b},
    };
    for (const auto& p : prefixes) {
        if (name.substr(0, p.text.size()) != p.text) continue;
        const auto rest = name.substr(p.text.size());
        int idx = -1;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), idx);
        if (ec == std::errc{} && ptr == rest.data() + rest.size() && idx >= 0) return {p.kind, idx};
        break;
    }
    throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

std::string observable_name(const ObservableRef& ref) {
    const char* p = "";
    switch (ref.kind) {
        case ObservableRef::Kind::sigma_minus: p = "s-_"; break;
        case ObservableRef::Kind::sigma_plus: p = "s+_"; break;
        case ObservableRef::Kind::sigma_z: p = "sz_"; break;
        case ObservableRef::Kind::field_a: p = "a_"; break;
        case ObservableRef::Kind::field_a_dag: p = "adag_"; break;
        case ObservableRef::Kind::phonon_b: p = "b_"; break;
        case ObservableRef::Kind::phonon_b_dag: p = "bdag_"; break;
    }
    return p + std::to_string(ref.index);
}

Operator observable_operator(const SpaceIndex& space, const ObservableRef& ref) {
    switch (ref.kind) {
        case ObservableRef::Kind::sigma_minus: return build_transition_set(space, ref.index).minus;
        case ObservableRef::Kind::sigma_plus: return build_transition_set(space, ref.index).plus;
        case ObservableRef::Kind::sigma_z: return build_transition_set(space, ref.index).z;
        case ObservableRef::Kind::field_a:
        case ObservableRef::Kind::field_a_dag: {
            const std::size_t s = space.field_mode(ref.index);
            Operator a = embed_local(space, s, annihilation_local(space.spec().field_modes[ref.index].cutoff));
            return ref.kind == ObservableRef::Kind::field_a ? a : adjoint(a);
        }
        case ObservableRef::Kind::phonon_b:
        case ObservableRef::Kind::phonon_b_dag: {
            const std::size_t s = space.phonon_mode(ref.index);
            Operator b = embed_local(space, s, annihilation_local(space.spec().phonon_modes[ref.index].cutoff));
            return ref.kind == ObservableRef::Kind::phonon_b ? b : adjoint(b);
        }
    }
    throw std::logic_error("unhandled observable kind");
}

Operator observable_rhs(const SpaceIndex& space, const SystemParams& params, const ObservableRef& ref, double t) {
    switch (ref.kind) {
        case ObservableRef::Kind::sigma_minus: return heisenberg_rhs_sigma(space, params, ref.index, t).minus;
        case ObservableRef::Kind::sigma_plus: return heisenberg_rhs_sigma(space, params, ref.index, t).plus;
        case ObservableRef::Kind::sigma_z: return heisenberg_rhs_sigma(space, params, ref.index, t).z;
        case ObservableRef::Kind::field_a: return heisenberg_rhs_field(space, params, ref.index, t).first;
        case ObservableRef::Kind::field_a_dag: return heisenberg_rhs_field(space, params, ref.index, t).second;
        case ObservableRef::Kind::phonon_b: return heisenberg_rhs_phonon(space, params, ref.index).first;
        case ObservableRef::Kind::phonon_b_dag: return heisenberg_rhs_phonon(space, params, ref.index).second;
    }
    throw std::logic_error("unhandled observable kind");
}

EhrenfestReport ehrenfest_check(const Trajectory& traj, const SpaceIndex& space, const SystemParams& params,
                                const ObservableRef& observable, double tol) {
    const std::size_t n = traj.samples.size();
    if (n < 3) throw std::invalid_argument("ehrenfest_check: grid too coarse (fewer than 3 points)");
    if (traj.states.size() != n) throw std::invalid_argument("ehrenfest_check: trajectory did not keep its states");

    const double h = traj.samples[1].time - traj.samples[0].time;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(traj.samples[i].time - traj.samples[i - 1].time - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("ehrenfest_check: output grid is not uniform");

    const Operator op = observable_operator(space, observable);
    std::vector<cplx> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = expectation(op, traj.states[i]);

    // RHS operators are rebuilt per time only when the generator is explicitly time dependent.
    const bool time_dependent = params.coupling_mode == CouplingMode::literal_time_dependent || !params.drives.empty();
    Operator rhs = observable_rhs(space, params, observable, traj.samples[1].time);

    EhrenfestReport rep;
    rep.observable = observable_name(observable);
    rep.step = h;
    rep.tolerance = tol;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = traj.samples[i].time;
        if (time_dependent) rhs = observable_rhs(space, params, observable, t);
        const cplx fd = (f[i + 1] - f[i - 1]) / (2.0 * h);
        const cplx ex = expectation(rhs, traj.states[i]);
        const double dev = std::abs(fd - ex);
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.worst_time = t;
        }
        ++rep.points_checked;
    }
    double max_third = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const cplx d3 = (f[i + 2] - 2.0 * f[i + 1] + 2.0 * f[i - 1] - f[i - 2]) / (2.0 * h * h * h);
        max_third = std::max(max_third, std::abs(d3));
    }
    rep.truncation_bound = h * h / 6.0 * max_third;
    rep.passed = rep.max_deviation <= tol;
    return rep;
}

}  // namespace qedchain
