// transition_ops.cpp: transition operators, algebra checks, operator cross product

#include "qedchain/transition_ops.hpp"

#include <cmath>
#include <sstream>

namespace qedchain {

namespace local {

DenseMatrix transition(Level row, Level col) {
    DenseMatrix m = DenseMatrix::Zero(2, 2);
    m(static_cast<int>(row), static_cast<int>(col)) = 1.0;
    return m;
}

DenseMatrix sigma_minus() { return transition(Level::alpha, Level::beta); }
DenseMatrix sigma_plus() { return transition(Level::beta, Level::alpha); }
DenseMatrix sigma_z() { return transition(Level::beta, Level::beta) - transition(Level::alpha, Level::alpha); }
DenseMatrix sigma_unit() { return DenseMatrix::Identity(2, 2); }
DenseMatrix sigma_zero() { return DenseMatrix::Zero(2, 2); }

}  // namespace local

Operator TransitionSet::basic(Level row, Level col) const {
    if (row == Level::alpha && col == Level::beta) return minus;
    if (row == Level::beta && col == Level::alpha) return plus;
    if (row == Level::beta) return 0.5 * (unit + z);
    return 0.5 * (unit - z);
}

TransitionSet build_transition_set(const SpaceIndex& space, int site) {
    const std::size_t s = space.site(site);
    const std::string suffix = "_" + std::to_string(site);
    TransitionSet ts;
    ts.site = site;
    ts.minus = embed_local(space, s, local::sigma_minus(), "s-" + suffix);
    ts.plus = embed_local(space, s, local::sigma_plus(), "s+" + suffix);
    ts.z = embed_local(space, s, local::sigma_z(), "sz" + suffix);
    ts.unit = embed_local(space, s, local::sigma_unit(), "sE" + suffix);
    ts.zero = ts.plus - ts.plus;
    ts.zero.retag("s0" + suffix);
    return ts;
}

namespace {

cplx hs_inner(const SparseMatrix& x, const SparseMatrix& m) {
    return SparseMatrix(x.conjugate().cwiseProduct(m)).sum();
}

// Coefficients of m on an orthogonal basis, plus the reconstruction residual.
struct Decomposition {
    std::vector<cplx> coeff;
    double residual;
};

Decomposition decompose(const SparseMatrix& m, const std::vector<SparseMatrix>& basis) {
    Decomposition d;
    SparseMatrix rebuilt(m.rows(), m.cols());
    for (const auto& b : basis) {
        const cplx c = hs_inner(b, m) / hs_inner(b, b);
        d.coeff.push_back(c);
        rebuilt += c * b;
    }
    d.residual = max_abs(Operator(SparseMatrix(m - rebuilt)));
    return d;
}

Decomposition decompose(const DenseMatrix& m, const std::vector<DenseMatrix>& basis) {
    Decomposition d;
    DenseMatrix rebuilt = DenseMatrix::Zero(m.rows(), m.cols());
    for (const auto& b : basis) {
        const cplx c = (b.adjoint() * m).trace() / (b.adjoint() * b).trace();
        d.coeff.push_back(c);
        rebuilt += c * b;
    }
    d.residual = (m - rebuilt).cwiseAbs().maxCoeff();
    return d;
}

const char* kLevelName[2] = {"a", "b"};
const char* kExtendedName[5] = {"s-", "s+", "sz", "sE", "s0"};

using IntMat = std::array<std::array<long, 2>, 2>;

IntMat imul(const IntMat& a, const IntMat& b) {
    IntMat c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

IntMat icomm(const IntMat& a, const IntMat& b) {
    IntMat ab = imul(a, b), ba = imul(b, a), c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = ab[i][j] - ba[i][j];
    return c;
}

IntMat iscale(long s, const IntMat& a) {
    IntMat c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = s * a[i][j];
    return c;
}

}  // namespace

bool named_relations_exact() {
    // Site basis 0 = alpha, 1 = beta.
    const IntMat sm{{{0, 1}, {0, 0}}};
    const IntMat sp{{{0, 0}, {1, 0}}};
    const IntMat sz{{{-1, 0}, {0, 1}}};
    return icomm(sm, sz) == iscale(2, sm) && icomm(sz, sp) == iscale(2, sp) && icomm(sp, sm) == sz;
}

AlgebraReport check_algebra_closure(const TransitionSet& ts, double tol) {
    AlgebraReport rep;
    auto record = [&](double r, const std::string& what) {
        ++rep.checks;
        rep.max_residual = std::max(rep.max_residual, r);
        if (!(r <= tol)) {
            std::ostringstream os;
            os << what << ": residual " << r;
            rep.failures.push_back(os.str());
        }
    };

    const Level levels[2] = {Level::alpha, Level::beta};
    for (Level l : levels)
        for (Level m : levels)
            for (Level p : levels)
                for (Level q : levels) {
                    Operator lhs = commutator(ts.basic(l, m), ts.basic(p, q));
                    Operator rhs = Operator::zero(ts.unit.dimension());
                    if (m == p) rhs += ts.basic(l, q);
                    if (q == l) rhs -= ts.basic(p, m);
                    std::string name = std::string("[s^") + kLevelName[static_cast<int>(l)] +
                                       kLevelName[static_cast<int>(m)] + ",s^" + kLevelName[static_cast<int>(p)] +
                                       kLevelName[static_cast<int>(q)] + "]";
                    record(max_abs(lhs - rhs), name);
                }

    record(max_abs(commutator(ts.minus, ts.z) - 2.0 * ts.minus), "[s-,sz]=2s-");
    record(max_abs(commutator(ts.z, ts.plus) - 2.0 * ts.plus), "[sz,s+]=2s+");
    record(max_abs(commutator(ts.plus, ts.minus) - ts.z), "[s+,s-]=sz");

    // Closure of the extended set in its linear span.
    const Operator* ext[5] = {&ts.minus, &ts.plus, &ts.z, &ts.unit, &ts.zero};
    const std::vector<SparseMatrix> basis{ts.minus.matrix(), ts.plus.matrix(), ts.z.matrix(), ts.unit.matrix()};
    for (int i = 0; i < 5; ++i) {
        record(decompose(adjoint(*ext[i]).matrix(), basis).residual, std::string(kExtendedName[i]) + "^dagger");
        for (int j = 0; j < 5; ++j) {
            const std::string pair = std::string(kExtendedName[i]) + "," + kExtendedName[j];
            record(decompose(commutator(*ext[i], *ext[j]).matrix(), basis).residual, "[" + pair + "] in span");
            record(decompose(anticommutator(*ext[i], *ext[j]).matrix(), basis).residual, "{" + pair + "} in span");
        }
    }

    rep.exact_named_relations = named_relations_exact();
    if (!rep.exact_named_relations) rep.failures.push_back("exact integer check of named relations failed");
    return rep;
}

PauliReport check_pauli_isomorphism(const TransitionSet& ts, double tol) {
    PauliReport rep;
    // Pauli images in the spin basis (up, down).
    DenseMatrix px(2, 2), py(2, 2), pz(2, 2);
    px << 0, 1, 1, 0;
    py << 0, cplx(0, -1), cplx(0, 1), 0;
    pz << 1, 0, 0, -1;
    const DenseMatrix id = DenseMatrix::Identity(2, 2);
    const DenseMatrix pauli[5] = {0.5 * (px - kI * py), 0.5 * (px + kI * py), pz, id, DenseMatrix::Zero(2, 2)};

    // The site basis lists alpha (spin down) first, so the isomorphism is realized by the swap.
    DenseMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    const DenseMatrix locals[5] = {local::sigma_minus(), local::sigma_plus(), local::sigma_z(), local::sigma_unit(),
                                   local::sigma_zero()};
    for (int i = 0; i < 5; ++i) {
        const double r = (swap * pauli[i] * swap.adjoint() - locals[i]).cwiseAbs().maxCoeff();
        rep.mapping_residual = std::max(rep.mapping_residual, r);
    }

    const Operator* ext[5] = {&ts.minus, &ts.plus, &ts.z, &ts.unit, &ts.zero};
    const std::vector<SparseMatrix> basis{ts.minus.matrix(), ts.plus.matrix(), ts.z.matrix(), ts.unit.matrix()};
    const std::vector<DenseMatrix> pbasis{pauli[0], pauli[1], pauli[2], pauli[3]};

    auto compare = [&](const Decomposition& a, const Decomposition& b, const std::string& what) {
        ++rep.checks;
        double r = std::max(a.residual, b.residual);
        for (std::size_t c = 0; c < a.coeff.size(); ++c) r = std::max(r, std::abs(a.coeff[c] - b.coeff[c]));
        rep.max_residual = std::max(rep.max_residual, r);
        if (!(r <= tol)) {
            std::ostringstream os;
            os << what << ": structure-constant mismatch " << r;
            rep.failures.push_back(os.str());
        }
    };

    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const std::string pair = std::string(kExtendedName[i]) + "," + kExtendedName[j];
            const DenseMatrix& a = pauli[i];
            const DenseMatrix& b = pauli[j];
            compare(decompose(commutator(*ext[i], *ext[j]).matrix(), basis), decompose(DenseMatrix(a * b - b * a), pbasis),
                    "[" + pair + "]");
            compare(decompose(anticommutator(*ext[i], *ext[j]).matrix(), basis),
                    decompose(DenseMatrix(a * b + b * a), pbasis), "{" + pair + "}");
        }
    if (!(rep.mapping_residual <= tol)) rep.failures.push_back("local matrices do not match mapped Pauli images");
    return rep;
}

OpVector sigma_vector(const TransitionSet& ts) { return {ts.minus, ts.plus, ts.z}; }

Operator symmetric_product(const Operator& a, const Operator& b) { return 0.5 * anticommutator(a, b); }

OpVector generalized_cross(const OpVector& a, const OpVector& b) {
    OpVector out;
    out.minus = cplx(0, -1) * (symmetric_product(a.z, b.minus) - symmetric_product(a.minus, b.z));
    out.plus = cplx(0, -1) * (symmetric_product(a.plus, b.z) - symmetric_product(a.z, b.plus));
    out.z = cplx(0, -0.5) * (symmetric_product(a.minus, b.plus) - symmetric_product(a.plus, b.minus));
    return out;
}

CVector generalized_cross(const CVector& a, const CVector& b) {
    const cplx i{0.0, 1.0};
    return {-i * (symmetric_product(a[2], b[0]) - symmetric_product(a[0], b[2])),
            -i * (symmetric_product(a[1], b[2]) - symmetric_product(a[2], b[1])),
            -0.5 * i * (symmetric_product(a[0], b[1]) - symmetric_product(a[1], b[0]))};
}

CVector to_cartesian(const CVector& pm) {
    return {0.5 * (pm[0] + pm[1]), 0.5 * kI * (pm[0] - pm[1]), pm[2]};
}

CVector from_cartesian(const CVector& xyz) { return {xyz[0] - kI * xyz[1], xyz[0] + kI * xyz[1], xyz[2]}; }

OpVector apply_metric(const Metric& g, const OpVector& v, cplx prefactor) {
    return {prefactor * g[0] * v.minus, prefactor * g[1] * v.plus, prefactor * g[2] * v.z};
}

OpVector compact_bracket(const OpVector& sigma, const OpVector& g_vector) {
    OpVector c = generalized_cross(sigma, g_vector);
    return {0.5 * c.minus, 0.5 * c.plus, 0.5 * c.z};
}

}  // namespace qedchain
