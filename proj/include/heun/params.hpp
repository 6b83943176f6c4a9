#ifndef HEUN_PARAMS_HPP
#define HEUN_PARAMS_HPP

#include <cmath>
#include <complex>

#include "heun/errors.hpp"

namespace heun {

/// Parameters of the general Heun equation in canonical form,
///
///   u'' + (gamma/z + delta/(z-1) + epsilon/(z-a)) u'
///      + (alpha beta z - q) / (z (z-1) (z-a)) u = 0.
///
/// delta is always derived from the Fuchsian relation
/// delta = 1 + alpha + beta - gamma - epsilon and cannot be set directly.
struct HeunParams {
    double a = 2.0;        // third finite singular point, a != 0, 1
    double q = 0.0;        // accessory parameter
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;
    double delta = 0.0;    // derived
    double epsilon = 0.0;
};

/// Build a HeunParams record; delta comes from the Fuchsian relation.
/// Throws DomainError for a in {0, 1}.
HeunParams make_params(double a, double q, double alpha, double beta,
                       double gamma, double epsilon);

/// Residual of the Heun equation at z for a sampled (u, u', u'') triple.
/// Zero iff the triple samples a solution at z.
double heun_residual(const HeunParams& p, double u, double u1, double u2, double z);

namespace detail {

/// Same residual for complex-valued samples and accessory parameter
/// (finite solutions built from complex roots), any float width.
template <class R>
std::complex<R> heun_residual_c(const HeunParams& p, std::complex<R> q,
                                std::complex<R> u, std::complex<R> u1,
                                std::complex<R> u2, R z) {
    R a = R(p.a), g = R(p.gamma), d = R(p.delta), e = R(p.epsilon);
    R ab = R(p.alpha) * R(p.beta);
    std::complex<R> coeff1 = g / z + d / (z - R(1)) + e / (z - a);
    std::complex<R> coeff0 = (ab * z - q) / (z * (z - R(1)) * (z - a));
    return u2 + coeff1 * u1 + coeff0 * u;
}

inline void check_off_singular(const HeunParams& p, double z, double margin = 1e-12) {
    if (std::fabs(z) < margin || std::fabs(z - 1.0) < margin ||
        std::fabs(z - p.a) < margin)
        throw DomainError("z coincides with a singular point");
}

} // namespace detail
} // namespace heun

#endif
