#ifndef HEUN_CLOSED_VALUES_HPP
#define HEUN_CLOSED_VALUES_HPP

#include <optional>
#include <vector>

#include "heun/params.hpp"

namespace heun {

/// Which closed-form family produced a boundary value.
enum class BoundaryMethod { AscendingSeries, DescendingSeries, DescendingReduced };

/// Closed-form boundary data of a two-term-regime expansion.  u_at_1 is
/// empty when a gamma-function pole makes the prefactor undefined; it is
/// exactly zero for the descending families anchored at alpha or beta.
struct BoundaryValues {
    double u_at_0 = 0.0;
    double du_at_0 = 0.0;
    std::optional<double> u_at_1;
    BoundaryMethod method_u0 = BoundaryMethod::AscendingSeries;
    BoundaryMethod method_du0 = BoundaryMethod::AscendingSeries;
    BoundaryMethod method_u1 = BoundaryMethod::AscendingSeries;
};

/// Sum of the two-term ascending expansion at z = 0, as a Clausen 3F2 at
/// unit argument (parametric excess exactly 1).  Requires the two-term regime.
double value_at_origin(const HeunParams& p);

/// Term-wise derivative at z = 0: (alpha beta / (gamma+epsilon)) times a 3F2
/// with parametric excess 2.
double derivative_at_origin(const HeunParams& p);

/// Closed form of the ascending-expansion value at z = 1: gamma-function
/// prefactor times a 3F2.  The prefactor equals 2F1(alpha,beta;gamma+eps;1)
/// by Gauss summation whenever gamma > 1; that identity is asserted
/// internally when applicable.
double value_at_one(const HeunParams& p);

/// Boundary data of the descending family anchored at gamma0 in
/// {gamma, alpha, beta}.  u(1) = 0 exactly for gamma0 = alpha or beta; for
/// gamma0 = gamma with gamma - alpha - beta > 1 the reduced product form is
/// also computed and checked against the prefactor form.
BoundaryValues descending_boundary_values(const HeunParams& p, double gamma0);

/// The six locations of the fourth singular point reachable by Moebius
/// relocations of 0, 1, infinity: {a, 1/a, 1-a, 1/(1-a), a/(a-1), (a-1)/a},
/// deduplicated and sorted.
std::vector<double> a_orbit(double a1);

} // namespace heun

#endif
