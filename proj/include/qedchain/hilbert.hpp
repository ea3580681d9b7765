// hilbert.hpp: truncated tensor-product space of sites, field modes and phonon modes,
// plus the sparse operator type every other module builds on.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qedchain {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

// Fock truncation: the ladder keeps levels 0..cutoff.
struct ModeSpec {
    int cutoff{1};
};

struct SpaceSpec {
    int n_sites{1};
    std::vector<ModeSpec> field_modes;
    std::vector<ModeSpec> phonon_modes;
    std::size_t max_dimension{std::size_t{1} << 20};
};

class SpaceTooLarge : public std::runtime_error {
public:
    SpaceTooLarge(std::size_t dimension, std::size_t cap);
    std::size_t dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

enum class SubsystemKind { site, field_mode, phonon_mode };

struct Subsystem {
    SubsystemKind kind;
    int index;  // index within its kind
    int dim;    // local dimension
};

// Subsystem order is fixed: sites 0..n-1, then field modes, then phonon modes.
// Basis enumeration is row-major mixed radix (first subsystem most significant).
// Site local basis: 0 = |alpha> (lower level), 1 = |beta> (upper level).
class SpaceIndex {
public:
    explicit SpaceIndex(const SpaceSpec& spec);

    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<Subsystem>& subsystems() const noexcept { return subsystems_; }
    const SpaceSpec& spec() const noexcept { return spec_; }

    int n_sites() const noexcept { return spec_.n_sites; }
    int n_field_modes() const noexcept { return static_cast<int>(spec_.field_modes.size()); }
    int n_phonon_modes() const noexcept { return static_cast<int>(spec_.phonon_modes.size()); }

    // Position of a subsystem in the ordered list.
    std::size_t site(int l) const;
    std::size_t field_mode(int k) const;
    std::size_t phonon_mode(int q) const;

    std::size_t stride(std::size_t subsystem) const { return strides_.at(subsystem); }

    std::vector<int> to_occupation(std::size_t index) const;
    std::size_t to_index(std::span<const int> occupation) const;
    int occupation_of(std::size_t index, std::size_t subsystem) const;

private:
    SpaceSpec spec_;
    std::vector<Subsystem> subsystems_;
    std::vector<std::size_t> strides_;
    std::size_t dimension_{1};
};

SpaceIndex build_space(const SpaceSpec& spec);

class Operator {
public:
    Operator() = default;
    explicit Operator(SparseMatrix m, std::string tag = {});

    static Operator identity(std::size_t dim, std::string tag = "I");
    static Operator zero(std::size_t dim, std::string tag = "0");
    static Operator diagonal(const Eigen::VectorXd& diag, std::string tag = {});

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const SparseMatrix& matrix() const noexcept { return m_; }
    const std::string& tag() const noexcept { return tag_; }
    Operator& retag(std::string tag) {
        tag_ = std::move(tag);
        return *this;
    }

    DenseMatrix dense() const { return DenseMatrix(m_); }
    Vector apply(const Vector& v) const;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(cplx s);

private:
    SparseMatrix m_;
    std::string tag_;
};

// Arithmetic. Dimension mismatches throw std::invalid_argument.
Operator add(const Operator& a, const Operator& b);
Operator scale(const Operator& a, cplx s);
Operator multiply(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator-(const Operator& a);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, const Operator& a);
Operator operator*(const Operator& a, cplx s);
inline Operator operator*(double s, const Operator& a) { return cplx(s) * a; }

double max_abs(const Operator& a);
// Frobenius norm; an upper bound on the spectral norm.
double frobenius_norm(const Operator& a);
double hermiticity_residual(const Operator& a);
cplx expectation(const Operator& a, const Vector& psi);
cplx trace(const Operator& a);

// Truncated bosonic annihilator: (cutoff+1)x(cutoff+1), sqrt(m) on the superdiagonal.
DenseMatrix annihilation_local(int cutoff);

// I ⊗ … ⊗ local ⊗ … ⊗ I with `local` at position `subsystem`.
Operator embed_local(const SpaceIndex& space, std::size_t subsystem, const DenseMatrix& local,
                     std::string tag = {});

// Diagonal projector onto basis states with no bosonic mode at its top Fock level.
Operator interior_projector(const SpaceIndex& space);

// Population of the top Fock level of one bosonic subsystem.
Operator top_level_projector(const SpaceIndex& space, std::size_t subsystem);

}  // namespace qedchain
