#ifndef HEUN_TERMINATION_HPP
#define HEUN_TERMINATION_HPP

#include <complex>
#include <vector>

#include "heun/expansions.hpp"
#include "heun/params.hpp"

namespace heun {

/// Which of the three termination conditions holds:
///   Eps:   epsilon             = -N
///   Alpha: epsilon+gamma-alpha = -N
///   Beta:  epsilon+gamma-beta  = -N
enum class CaseKind { Eps, Alpha, Beta };

struct TerminationCase {
    CaseKind kind = CaseKind::Eps;
    int N = 0;
};

/// Accessory-parameter roots of the degree-(N+1) characteristic polynomial of
/// the truncated tridiagonal system, with per-root residuals relative to the
/// polynomial coefficient scale.
struct QRootSet {
    TerminationCase tcase;
    std::vector<std::complex<double>> roots;   // N+1 roots, conjugate-paired
    std::vector<double> residuals;
    std::vector<double> poly;                  // coefficients, ascending powers of q
};

/// A terminating expansion: coefficients a_0..a_N over the ascending basis,
/// with q set to a chosen root (possibly complex).
struct FiniteSolution {
    HeunParams base;                 // q field = Re(q)
    std::complex<double> q{0.0, 0.0};
    TerminationCase tcase;
    Expansion expansion;
};

/// Quasi-polynomial representation (1-z)^exponent * Poly(z) of an Alpha- or
/// Beta-case finite solution.
struct QuasiPolynomial {
    double exponent = 0.0;           // 1 - delta
    std::vector<std::complex<double>> poly;
};

/// All termination conditions satisfied within 1e-9 of a non-positive
/// integer, with their N.  p.q is ignored.
std::vector<TerminationCase> detect_termination_cases(const HeunParams& p);

/// D_N(q): determinant of the (N+1) x (N+1) tridiagonal matrix of the
/// truncated ascending recurrence, via D_n = Q_n(q) D_{n-1} - P_{n-1} R_n D_{n-2}.
/// p.q is ignored; q is the argument.
std::complex<double> q_determinant(const HeunParams& p, const TerminationCase& tc,
                                   std::complex<double> q);

/// All N+1 roots of D_N(q) by Durand-Kerner iteration on the explicit
/// coefficient array, one Newton polish per root, conjugate symmetrization.
QRootSet q_roots(const HeunParams& p, const TerminationCase& tc);

/// Set q to roots[root_index], generate coefficients through N+2 and verify
/// that a_{N+1} and a_{N+2} vanish.  Throws TerminationFailure otherwise.
FiniteSolution build_finite_solution(const HeunParams& p, const TerminationCase& tc,
                                     int root_index);

/// Exact value of a finite solution at z in [0, 1).
std::complex<double> eval_finite_solution(const FiniteSolution& s, double z,
                                          double tol = 1e-13);
std::complex<double> eval_finite_solution_derivative(const FiniteSolution& s, double z,
                                                     double tol = 1e-13);

/// Rewrite an Alpha/Beta-case solution as (1-z)^{1-delta} times a polynomial
/// by applying the Euler transformation term-wise.  DomainError for Eps case.
QuasiPolynomial quasi_polynomial_form(const FiniteSolution& s);

std::complex<double> eval_quasi_polynomial(const QuasiPolynomial& qp, double z);

/// For an Eps case: ascending and descending (gamma0 = gamma) finite
/// solutions agree pointwise after normalization at z = 0.2, and the two
/// characteristic-root multisets coincide to 1e-9.
bool mirror_equivalence_check(const HeunParams& p, const TerminationCase& tc);

namespace detail {

/// Coefficient array of D_N(q), ascending powers, leading sign (-1)^{N+1}.
std::vector<double> characteristic_poly(const HeunParams& p, const TerminationCase& tc,
                                        bool ascending_family);

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& coeffs);

std::complex<double> eval_poly(const std::vector<double>& c, std::complex<double> x);

} // namespace detail
} // namespace heun

#endif
