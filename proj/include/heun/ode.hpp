#ifndef HEUN_ODE_HPP
#define HEUN_ODE_HPP

#include "heun/params.hpp"

namespace heun {

struct OdeResult {
    double u = 0.0;
    double du = 0.0;
    long steps = 0;
};

/// Adaptive Dormand-Prince 5(4) integration of the Heun equation as a first
/// order system from (z0, u0, u0p) to z1.  The closed interval [z0, z1] must
/// stay at least 1e-8 away from the singular points 0, 1 and a.
/// rel and abs tolerance are both `tol`; initial step 1e-3 |z1 - z0|.
OdeResult integrate_ode(const HeunParams& p, double z0, double u0, double u0p,
                        double z1, double tol);

/// Limit u(1-) of the solution passing through (z0, u0, u0p), for delta < 1
/// (both local exponents at z = 1 then give finite u).  Integrates to
/// 1 - 2^-j for a ladder of j and Richardson-extrapolates with the local
/// exponent set {1-delta, 1, 2-delta, 2, ...}.
double integrate_to_one(const HeunParams& p, double z0, double u0, double u0p,
                        double tol);

} // namespace heun

#endif
