#include "heun/params.hpp"

namespace heun {

HeunParams make_params(double a, double q, double alpha, double beta,
                       double gamma, double epsilon) {
    if (a == 0.0 || a == 1.0)
        throw DomainError("make_params: singular point a must differ from 0 and 1");
    HeunParams p;
    p.a = a;
    p.q = q;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = gamma;
    p.epsilon = epsilon;
    p.delta = 1.0 + alpha + beta - gamma - epsilon;
    return p;
}

double heun_residual(const HeunParams& p, double u, double u1, double u2, double z) {
    detail::check_off_singular(p, z);
    double coeff1 = p.gamma / z + p.delta / (z - 1.0) + p.epsilon / (z - p.a);
    double coeff0 = (p.alpha * p.beta * z - p.q) / (z * (z - 1.0) * (z - p.a));
    return u2 + coeff1 * u1 + coeff0 * u;
}

} // namespace heun
