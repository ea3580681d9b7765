// heisenberg.cpp: equation-of-motion right-hand sides and the compact vector form

#include "qedchain/heisenberg.hpp"

#include <algorithm>

namespace qedchain {

namespace {

struct NeighbourSums {
    Operator minus, plus, z;
};

NeighbourSums neighbour_sums(const SpaceIndex& space, const SystemParams& params, int site) {
    NeighbourSums n{Operator::zero(space.dimension()), Operator::zero(space.dimension()),
                    Operator::zero(space.dimension())};
    for (int m : neighbours(params, site)) {
        const TransitionSet ts = build_transition_set(space, m);
        n.minus += ts.minus;
        n.plus += ts.plus;
        n.z += ts.z;
    }
    return n;
}

Operator embedded_annihilator(const SpaceIndex& space, std::size_t subsystem) {
    return embed_local(space, subsystem, annihilation_local(space.subsystems()[subsystem].dim - 1));
}

double restricted_residual(const Operator& a, const Operator& b, const Operator* projector) {
    const Operator diff = a - b;
    return projector ? frobenius_norm(diff * *projector) : frobenius_norm(diff);
}

}  // namespace

OpVector heisenberg_rhs_sigma(const SpaceIndex& space, const SystemParams& params, int site, double t) {
    const TransitionSet s = build_transition_set(space, site);
    const Operator b = field_coupling_operator(space, params, site, t);
    const NeighbourSums n = neighbour_sums(space, params, site);
    const double w = params.omega(site);
    const double j = params.exchange_J;
    const cplx i = kI;

    OpVector rhs;
    rhs.z = (2.0 * i) * ((s.minus - s.plus) * b) +
            (2.0 * i * j) * (anticommutator(s.minus, n.plus) - anticommutator(s.plus, n.minus));
    rhs.plus = (i * w) * s.plus - i * (s.z * b) + (i * j) * (anticommutator(s.plus, n.z) - anticommutator(s.z, n.plus));
    rhs.minus =
        (-i * w) * s.minus + i * (s.z * b) + (i * j) * (anticommutator(s.z, n.minus) - anticommutator(s.minus, n.z));

    if (space.n_phonon_modes() > 0) {
        const PhononCorrection pc = sigma_phonon_correction(space, params, site);
        rhs.minus += pc.minus;
        rhs.plus += pc.plus;
    }
    rhs.minus.retag("ds-_" + std::to_string(site) + "/dt");
    rhs.plus.retag("ds+_" + std::to_string(site) + "/dt");
    rhs.z.retag("dsz_" + std::to_string(site) + "/dt");
    return rhs;
}

std::pair<Operator, Operator> heisenberg_rhs_field(const SpaceIndex& space, const SystemParams& params, int mode,
                                                   double t) {
    const Operator a = embedded_annihilator(space, space.field_mode(mode));
    const Operator a_dag = adjoint(a);
    const double w = params.field_modes.at(static_cast<std::size_t>(mode)).omega;
    Operator source = Operator::zero(space.dimension());  // sum_j (s+_j + s-_j) q*_jk
    Operator source_c = Operator::zero(space.dimension());
    for (int j = 0; j < params.n_sites(); ++j) {
        const cplx q = coupling_q(params, j, mode, t);
        if (q == cplx(0.0)) continue;
        const TransitionSet s = build_transition_set(space, j);
        source += std::conj(q) * (s.plus + s.minus);
        source_c += q * (s.plus + s.minus);
    }
    Operator da = (-kI * w) * a - kI * source;
    Operator da_dag = (kI * w) * a_dag + kI * source_c;
    return {da.retag("da_" + std::to_string(mode) + "/dt"), da_dag.retag("da†_" + std::to_string(mode) + "/dt")};
}

std::pair<Operator, Operator> heisenberg_rhs_phonon(const SpaceIndex& space, const SystemParams& params, int mode) {
    const Operator b = embedded_annihilator(space, space.phonon_mode(mode));
    const Operator b_dag = adjoint(b);
    const auto& ph = params.phonon_modes.at(static_cast<std::size_t>(mode));
    Operator zsum = Operator::zero(space.dimension());
    for (int j = 0; j < params.n_sites(); ++j) zsum += build_transition_set(space, j).z;
    Operator db = (-kI * ph.nu) * b - (kI * ph.lambda) * zsum;
    Operator db_dag = (kI * ph.nu) * b_dag + (kI * ph.lambda) * zsum;
    return {db.retag("db_" + std::to_string(mode) + "/dt"), db_dag.retag("db†_" + std::to_string(mode) + "/dt")};
}

PhononCorrection sigma_phonon_correction(const SpaceIndex& space, const SystemParams& params, int site) {
    const TransitionSet s = build_transition_set(space, site);
    const Operator x = phonon_displacement_sum(space, params);
    return {(-2.0 * kI) * (x * s.minus), (2.0 * kI) * (x * s.plus)};
}

Operator commutator_rhs(const Operator& hamiltonian, const Operator& observable) {
    return kI * commutator(hamiltonian, observable);
}

OpVector build_G_vector(const SpaceIndex& space, const SystemParams& params, int site, double t) {
    const Operator b = field_coupling_operator(space, params, site, t);
    const NeighbourSums n = neighbour_sums(space, params, site);
    const double j_eff = params.exchange_effective();
    const Operator id = Operator::identity(space.dimension());
    OpVector g;
    g.minus = -b - j_eff * n.minus;
    g.plus = -b - j_eff * n.plus;
    g.z = (-params.omega(site)) * id - j_eff * n.z;
    if (space.n_phonon_modes() > 0) g.z -= 2.0 * phonon_displacement_sum(space, params);
    return g;
}

OpVector compact_form_rhs(const SpaceIndex& space, const SystemParams& params, int site, double t,
                          const Metric& metric) {
    const OpVector sigma = sigma_vector(build_transition_set(space, site));
    const OpVector g = build_G_vector(space, params, site, t);
    return apply_metric(metric, compact_bracket(sigma, g), 2.0);
}

double verify_compact_form(const SpaceIndex& space, const SystemParams& params, int site, double t,
                           const Metric& metric) {
    const OpVector compact = compact_form_rhs(space, params, site, t, metric);
    const OpVector rhs = heisenberg_rhs_sigma(space, params, site, t);
    return std::max({frobenius_norm(compact.minus - rhs.minus), frobenius_norm(compact.plus - rhs.plus),
                     frobenius_norm(compact.z - rhs.z)});
}

double EomResiduals::max_sigma() const {
    double m = 0.0;
    for (const auto& r : sigma) m = std::max({m, r[0], r[1], r[2]});
    for (double c : conjugation) m = std::max(m, c);
    return m;
}

double EomResiduals::max_bosonic() const {
    double m = 0.0;
    for (const auto* v : {&field, &phonon})
        for (const auto& r : *v) m = std::max({m, r[0], r[1]});
    return m;
}

double EomResiduals::max_phonon_term() const {
    double m = 0.0;
    for (const auto& r : phonon_term) m = std::max({m, r[0], r[1]});
    return m;
}

double EomResiduals::max() const { return std::max({max_sigma(), max_bosonic(), max_phonon_term()}); }

EomResiduals verify_eom(const SpaceIndex& space, const SystemParams& params, double t) {
    EomResiduals res;
    const Operator h = build_total(space, params, t);
    const Operator hcp = build_HCP(space, params);
    const Operator interior = interior_projector(space);

    for (int l = 0; l < space.n_sites(); ++l) {
        const TransitionSet s = build_transition_set(space, l);
        const OpVector rhs = heisenberg_rhs_sigma(space, params, l, t);
        res.sigma.push_back({restricted_residual(rhs.minus, commutator_rhs(h, s.minus), nullptr),
                             restricted_residual(rhs.plus, commutator_rhs(h, s.plus), nullptr),
                             restricted_residual(rhs.z, commutator_rhs(h, s.z), nullptr)});
        res.conjugation.push_back(frobenius_norm(adjoint(rhs.minus) - rhs.plus));
        const PhononCorrection pc = sigma_phonon_correction(space, params, l);
        res.phonon_term.push_back({restricted_residual(pc.minus, commutator_rhs(hcp, s.minus), nullptr),
                                   restricted_residual(pc.plus, commutator_rhs(hcp, s.plus), nullptr)});
    }
    for (int k = 0; k < space.n_field_modes(); ++k) {
        const Operator a = embedded_annihilator(space, space.field_mode(k));
        const auto [da, da_dag] = heisenberg_rhs_field(space, params, k, t);
        res.field.push_back({restricted_residual(da, commutator_rhs(h, a), &interior),
                             restricted_residual(da_dag, commutator_rhs(h, adjoint(a)), &interior)});
    }
    for (int q = 0; q < space.n_phonon_modes(); ++q) {
        const Operator b = embedded_annihilator(space, space.phonon_mode(q));
        const auto [db, db_dag] = heisenberg_rhs_phonon(space, params, q);
        res.phonon.push_back({restricted_residual(db, commutator_rhs(h, b), &interior),
                              restricted_residual(db_dag, commutator_rhs(h, adjoint(b)), &interior)});
    }
    return res;
}

}  // namespace qedchain
