// hilbert.cpp: space bookkeeping, local-operator embedding, sparse arithmetic

#include "qedchain/hilbert.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qedchain {

namespace {

std::string too_large_message(std::size_t dim, std::size_t cap) {
    std::ostringstream os;
    os << "space too large: dimension " << dim << " exceeds cap " << cap;
    return os.str();
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
    if (a.dimension() != b.dimension()) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a.dimension() << " vs " << b.dimension() << ")";
        throw std::invalid_argument(os.str());
    }
}

std::string join_tags(const std::string& a, const char* op, const std::string& b) {
    if (a.empty() && b.empty()) return {};
    return "(" + a + op + b + ")";
}

}  // namespace

SpaceTooLarge::SpaceTooLarge(std::size_t dimension, std::size_t cap)
    : std::runtime_error(too_large_message(dimension, cap)), dimension_(dimension) {}

SpaceIndex::SpaceIndex(const SpaceSpec& spec) : spec_(spec) {
    if (spec.n_sites < 1) throw std::invalid_argument("SpaceSpec: n_sites must be >= 1");
    for (const auto& m : spec.field_modes)
        if (m.cutoff < 1) throw std::invalid_argument("SpaceSpec: field mode cutoff must be >= 1");
    for (const auto& m : spec.phonon_modes)
        if (m.cutoff < 1) throw std::invalid_argument("SpaceSpec: phonon mode cutoff must be >= 1");

    for (int l = 0; l < spec.n_sites; ++l) subsystems_.push_back({SubsystemKind::site, l, 2});
    for (std::size_t k = 0; k < spec.field_modes.size(); ++k)
        subsystems_.push_back({SubsystemKind::field_mode, static_cast<int>(k), spec.field_modes[k].cutoff + 1});
    for (std::size_t q = 0; q < spec.phonon_modes.size(); ++q)
        subsystems_.push_back({SubsystemKind::phonon_mode, static_cast<int>(q), spec.phonon_modes[q].cutoff + 1});

    // Overflow-safe product against the cap.
    std::size_t dim = 1;
    bool overflow = false;
    for (const auto& s : subsystems_) {
        const auto d = static_cast<std::size_t>(s.dim);
        if (dim > std::numeric_limits<std::size_t>::max() / d) {
            overflow = true;
            break;
        }
        dim *= d;
    }
    if (overflow) throw SpaceTooLarge(std::numeric_limits<std::size_t>::max(), spec.max_dimension);
    if (dim > spec.max_dimension) throw SpaceTooLarge(dim, spec.max_dimension);
    dimension_ = dim;

    strides_.assign(subsystems_.size(), 1);
    for (std::size_t i = subsystems_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * static_cast<std::size_t>(subsystems_[i].dim);
}

std::size_t SpaceIndex::site(int l) const {
    if (l < 0 || l >= spec_.n_sites) throw std::out_of_range("site index " + std::to_string(l) + " out of range");
    return static_cast<std::size_t>(l);
}

std::size_t SpaceIndex::field_mode(int k) const {
    if (k < 0 || k >= n_field_modes())
        throw std::out_of_range("field mode index " + std::to_string(k) + " out of range");
    return static_cast<std::size_t>(spec_.n_sites + k);
}

std::size_t SpaceIndex::phonon_mode(int q) const {
    if (q < 0 || q >= n_phonon_modes())
        throw std::out_of_range("phonon mode index " + std::to_string(q) + " out of range");
    return static_cast<std::size_t>(spec_.n_sites + n_field_modes() + q);
}

std::vector<int> SpaceIndex::to_occupation(std::size_t index) const {
    if (index >= dimension_) throw std::out_of_range("basis index out of range");
    std::vector<int> occ(subsystems_.size());
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        occ[i] = static_cast<int>(index / strides_[i]);
        index %= strides_[i];
    }
    return occ;
}

std::size_t SpaceIndex::to_index(std::span<const int> occupation) const {
    if (occupation.size() != subsystems_.size()) throw std::invalid_argument("occupation tuple has wrong length");
    std::size_t index = 0;
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        if (occupation[i] < 0 || occupation[i] >= subsystems_[i].dim)
            throw std::out_of_range("occupation out of range at subsystem " + std::to_string(i));
        index += static_cast<std::size_t>(occupation[i]) * strides_[i];
    }
    return index;
}

int SpaceIndex::occupation_of(std::size_t index, std::size_t subsystem) const {
    return static_cast<int>((index / strides_.at(subsystem)) % static_cast<std::size_t>(subsystems_[subsystem].dim));
}

SpaceIndex build_space(const SpaceSpec& spec) { return SpaceIndex(spec); }

// ---------------------------------------------------------------------------

Operator::Operator(SparseMatrix m, std::string tag) : m_(std::move(m)), tag_(std::move(tag)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("Operator: matrix must be square");
    m_.makeCompressed();
}

Operator Operator::identity(std::size_t dim, std::string tag) {
    SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setIdentity();
    return Operator(std::move(m), std::move(tag));
}

Operator Operator::zero(std::size_t dim, std::string tag) {
    return Operator(SparseMatrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), std::move(tag));
}

Operator Operator::diagonal(const Eigen::VectorXd& diag, std::string tag) {
    const auto n = diag.size();
    SparseMatrix m(n, n);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        if (diag[i] != 0.0) trip.emplace_back(i, i, diag[i]);
    m.setFromTriplets(trip.begin(), trip.end());
    return Operator(std::move(m), std::move(tag));
}

Vector Operator::apply(const Vector& v) const {
    if (v.size() != m_.cols()) throw std::invalid_argument("Operator::apply: dimension mismatch");
    return m_ * v;
}

Operator& Operator::operator+=(const Operator& other) {
    require_same_dim(*this, other, "operator+=");
    m_ += other.m_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other) {
    require_same_dim(*this, other, "operator-=");
    m_ -= other.m_;
    return *this;
}

Operator& Operator::operator*=(cplx s) {
    m_ *= s;
    return *this;
}

Operator add(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "add");
    return Operator(SparseMatrix(a.matrix() + b.matrix()), join_tags(a.tag(), "+", b.tag()));
}

Operator scale(const Operator& a, cplx s) { return Operator(SparseMatrix(s * a.matrix()), a.tag()); }

Operator multiply(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "multiply");
    return Operator(SparseMatrix(a.matrix() * b.matrix()), join_tags(a.tag(), "*", b.tag()));
}

Operator adjoint(const Operator& a) {
    return Operator(SparseMatrix(a.matrix().adjoint()), a.tag().empty() ? std::string{} : a.tag() + "†");
}

Operator commutator(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "commutator");
    SparseMatrix ab = a.matrix() * b.matrix();
    SparseMatrix ba = b.matrix() * a.matrix();
    return Operator(SparseMatrix(ab - ba), "[" + a.tag() + "," + b.tag() + "]");
}

Operator anticommutator(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "anticommutator");
    SparseMatrix ab = a.matrix() * b.matrix();
    SparseMatrix ba = b.matrix() * a.matrix();
    return Operator(SparseMatrix(ab + ba), "{" + a.tag() + "," + b.tag() + "}");
}

Operator operator+(const Operator& a, const Operator& b) { return add(a, b); }
Operator operator-(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "subtract");
    return Operator(SparseMatrix(a.matrix() - b.matrix()), join_tags(a.tag(), "-", b.tag()));
}
Operator operator-(const Operator& a) { return scale(a, -1.0); }
Operator operator*(const Operator& a, const Operator& b) { return multiply(a, b); }
Operator operator*(cplx s, const Operator& a) { return scale(a, s); }
Operator operator*(const Operator& a, cplx s) { return scale(a, s); }

double max_abs(const Operator& a) {
    double m = 0.0;
    const auto& mat = a.matrix();
    for (Eigen::Index k = 0; k < mat.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(mat, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

double frobenius_norm(const Operator& a) { return a.matrix().norm(); }

double hermiticity_residual(const Operator& a) {
    return max_abs(Operator(SparseMatrix(a.matrix() - SparseMatrix(a.matrix().adjoint()))));
}

cplx expectation(const Operator& a, const Vector& psi) { return psi.dot(a.matrix() * psi); }

cplx trace(const Operator& a) {
    cplx t = 0.0;
    const auto& mat = a.matrix();
    for (Eigen::Index k = 0; k < mat.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(mat, k); it; ++it)
            if (it.row() == it.col()) t += it.value();
    return t;
}

DenseMatrix annihilation_local(int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("annihilation_local: cutoff must be >= 1");
    DenseMatrix a = DenseMatrix::Zero(cutoff + 1, cutoff + 1);
    for (int m = 1; m <= cutoff; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
    return a;
}

Operator embed_local(const SpaceIndex& space, std::size_t subsystem, const DenseMatrix& local, std::string tag) {
    const auto& subs = space.subsystems();
    if (subsystem >= subs.size()) throw std::out_of_range("embed_local: subsystem index out of range");
    const int d = subs[subsystem].dim;
    if (local.rows() != d || local.cols() != d) {
        std::ostringstream os;
        os << "embed_local: local matrix is " << local.rows() << "x" << local.cols() << " but subsystem "
           << subsystem << " has dimension " << d;
        throw std::invalid_argument(os.str());
    }
    const std::size_t dim = space.dimension();
    const std::size_t stride = space.stride(subsystem);

    std::size_t nnz_local = 0;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (local(r, c) != cplx(0.0)) ++nnz_local;

    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(dim / static_cast<std::size_t>(d) * nnz_local);
    for (std::size_t col = 0; col < dim; ++col) {
        const int c = space.occupation_of(col, subsystem);
        const std::size_t base = col - static_cast<std::size_t>(c) * stride;
        for (int r = 0; r < d; ++r) {
            const cplx v = local(r, c);
            if (v != cplx(0.0))
                trip.emplace_back(static_cast<Eigen::Index>(base + static_cast<std::size_t>(r) * stride),
                                  static_cast<Eigen::Index>(col), v);
        }
    }
    SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trip.begin(), trip.end());
    return Operator(std::move(m), std::move(tag));
}

Operator interior_projector(const SpaceIndex& space) {
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(space.dimension()));
    const auto& subs = space.subsystems();
    for (std::size_t i = 0; i < space.dimension(); ++i)
        for (std::size_t s = 0; s < subs.size(); ++s)
            if (subs[s].kind != SubsystemKind::site && space.occupation_of(i, s) == subs[s].dim - 1) {
                diag[static_cast<Eigen::Index>(i)] = 0.0;
                break;
            }
    return Operator::diagonal(diag, "P_interior");
}

Operator top_level_projector(const SpaceIndex& space, std::size_t subsystem) {
    const int d = space.subsystems().at(subsystem).dim;
    DenseMatrix local = DenseMatrix::Zero(d, d);
    local(d - 1, d - 1) = 1.0;
    return embed_local(space, subsystem, local, "P_top");
}

}  // namespace qedchain
