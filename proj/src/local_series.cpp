#include "heun/local_series.hpp"

#include <algorithm>
#include <cmath>

#include "heun/hypergeom.hpp"

namespace heun {

LocalSeries frobenius_series(const HeunParams& p, int order) {
    if (order < 2) throw DomainError("frobenius_series: order must be >= 2");
    if (detail::near_nonpositive_integer(p.gamma))
        throw PoleError("frobenius_series: gamma at a non-positive integer");

    LocalSeries s;
    s.radius_hint = std::min(1.0, std::fabs(p.a));
    s.coefficients.resize(order + 1);
    s.coefficients[0] = 1.0;
    s.coefficients[1] = p.q / (p.a * p.gamma);
    for (int k = 1; k < order; ++k) {
        double ck = s.coefficients[k];
        double ckm1 = s.coefficients[k - 1];
        double mid = k * ((k - 1 + p.gamma) * (1.0 + p.a) + p.a * p.delta + p.epsilon) + p.q;
        double low = (k - 1 + p.alpha) * (k - 1 + p.beta);
        s.coefficients[k + 1] = (mid * ck - low * ckm1) / (p.a * (k + 1) * (k + p.gamma));
    }
    return s;
}

LocalValue eval_local(const LocalSeries& series, double z) {
    if (std::fabs(z) >= series.radius_hint)
        throw DomainError("eval_local: z outside the series radius");
    const auto& c = series.coefficients;
    double u = 0.0, du = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        du = du * z + u;       // derivative via paired Horner
        u = u * z + c[k];
    }
    LocalValue v;
    v.u = u;
    v.du = du;
    v.tail = std::fabs(c.back() * std::pow(z, static_cast<double>(c.size() - 1)));
    return v;
}

} // namespace heun
