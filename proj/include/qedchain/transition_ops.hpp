// transition_ops.hpp: spectroscopic transition operators of a two-level site,
// their closed algebra, the Pauli isomorphism, and vector operators with the
// symmetrized (anticommutator) cross product.

#pragma once

#include "qedchain/hilbert.hpp"

#include <array>
#include <string>
#include <vector>

namespace qedchain {

enum class Level { alpha = 0, beta = 1 };

namespace local {
// 2x2 matrices in the site basis (0 = |alpha>, 1 = |beta>).
DenseMatrix transition(Level row, Level col);  // |row><col|
DenseMatrix sigma_minus();                     // |alpha><beta|
DenseMatrix sigma_plus();                      // |beta><alpha|
DenseMatrix sigma_z();                         // |beta><beta| - |alpha><alpha|
DenseMatrix sigma_unit();
DenseMatrix sigma_zero();
}  // namespace local

struct TransitionSet {
    int site{0};
    Operator minus;
    Operator plus;
    Operator z;
    Operator unit;
    Operator zero;

    // |row><col| at this site, built from the set: sigma^{ab} = sigma-, sigma^{ba} = sigma+,
    // sigma^{bb} = (E + z)/2, sigma^{aa} = (E - z)/2.
    Operator basic(Level row, Level col) const;
};

TransitionSet build_transition_set(const SpaceIndex& space, int site);

struct AlgebraReport {
    double max_residual{0.0};
    std::size_t checks{0};
    bool exact_named_relations{false};
    std::vector<std::string> failures;

    bool ok(double tol) const { return failures.empty() && max_residual <= tol; }
};

// Commutators of all 16 basic pairs against [s^lm, s^pq] = s^lq d_mp - s^pm d_ql, the three
// named relations, and closure of the extended set under [.,.], {.,.} and adjoint.
AlgebraReport check_algebra_closure(const TransitionSet& ts, double tol = 1e-13);

// Integer 2x2 arithmetic: [s-, sz] = 2 s-, [sz, s+] = 2 s+, [s+, s-] = sz.
bool named_relations_exact();

struct PauliReport {
    double max_residual{0.0};         // structure-constant mismatch
    double mapping_residual{0.0};     // local matrices vs mapped Pauli images
    std::size_t checks{0};
    std::vector<std::string> failures;

    bool ok(double tol) const { return failures.empty() && max_residual <= tol && mapping_residual <= tol; }
};

PauliReport check_pauli_isomorphism(const TransitionSet& ts, double tol = 1e-13);

// Vector operator with components on (e+, e-, ez), e± = (ex ± i ey)/2:
// V = minus·e+ + plus·e- + z·ez.
struct OpVector {
    Operator minus;
    Operator plus;
    Operator z;
};

OpVector sigma_vector(const TransitionSet& ts);

// ½{A, B}; the single definition of the symmetrized product used for operator vectors
// and for the c-number closure.
Operator symmetric_product(const Operator& a, const Operator& b);
inline cplx symmetric_product(cplx a, cplx b) { return a * b; }

// Cross product in the (e+, e-, ez) basis with every component product replaced by ½{.,.}.
// With e-×ez = -i e-, ez×e+ = -i e+, e+×e- = -(i/2) ez:
//   minus = -i (½{Az,B-} - ½{A-,Bz})
//   plus  = -i (½{A+,Bz} - ½{Az,B+})
//   z     = -(i/2) (½{A-,B+} - ½{A+,B-})
// Reduces to the ordinary cross product when all components commute.
OpVector generalized_cross(const OpVector& a, const OpVector& b);

// c-number version, same basis and formula.
using CVector = std::array<cplx, 3>;  // {minus, plus, z}
CVector generalized_cross(const CVector& a, const CVector& b);

// (x, y, z) <-> (minus, plus, z): minus = x - i y, plus = x + i y.
CVector to_cartesian(const CVector& pm);
CVector from_cartesian(const CVector& xyz);

// Diagonal metric acting on (minus, plus, z) components.
using Metric = std::array<double, 3>;
inline constexpr Metric kTransitionMetric{1.0, 1.0, 4.0};
inline constexpr Metric kIdentityMetric{1.0, 1.0, 1.0};

OpVector apply_metric(const Metric& g, const OpVector& v, cplx prefactor = 1.0);

// Bracket of the compact equation of motion: d(sigma)/dt = 2 g [sigma (x) G].
// The determinant directions are normalized so that the bracket is half the symmetrized
// cross product; this is the normalization under which the compact form reproduces the
// component equations of motion.
OpVector compact_bracket(const OpVector& sigma, const OpVector& g_vector);

}  // namespace qedchain
