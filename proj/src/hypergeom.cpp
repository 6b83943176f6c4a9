#include "heun/hypergeom.hpp"

#include <algorithm>
#include <limits>

namespace heun {

LogGamma ln_gamma(double x) {
    if (detail::near_nonpositive_integer(x))
        throw PoleError("ln_gamma: argument at a non-positive integer");
    if (x > 0.0) return {std::lgamma(x), 1};
    // Gamma(x) Gamma(1-x) = pi / sin(pi x); Gamma(1-x) > 0 here
    double s = std::sin(M_PI * x);
    double la = std::log(M_PI) - std::log(std::fabs(s)) - std::lgamma(1.0 - x);
    return {la, s > 0.0 ? 1 : -1};
}

double pochhammer(double x, int k) {
    return detail::poch<double>(x, k);
}

namespace {

void check_2f1_domain(const HyperParams2F1& p) {
    if (!(p.argument_z >= 0.0) || p.argument_z > 1.0)
        throw DomainError("2F1: argument outside [0, 1]");
}

// Gauss summation: 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)), c-a-b > 0.
SeriesValue gauss_summation_closed_form(double a, double b, double c) {
    LogGamma n1 = ln_gamma(c), n2 = ln_gamma(c - a - b);
    LogGamma d1 = ln_gamma(c - a), d2 = ln_gamma(c - b);
    double lg = n1.log_abs + n2.log_abs - d1.log_abs - d2.log_abs;
    int sign = n1.sign * n2.sign * d1.sign * d2.sign;
    SeriesValue out;
    out.value = sign * std::exp(lg);
    out.abs_error_estimate = std::fabs(out.value) * 1e-13;
    out.terms_used = 1;
    out.converged = true;
    return out;
}

} // namespace

SeriesValue gauss_2f1(const HyperParams2F1& p, double tol) {
    check_2f1_domain(p);
    const double a = p.upper_a, b = p.upper_b, c = p.lower_c, z = p.argument_z;

    if (z == 0.0) {
        int mc;
        if (detail::near_nonpositive_integer(c, &mc) && mc == 0)
            throw PoleError("2F1: lower parameter zero");
        return {1.0, 0.0, 1, true};
    }
    if (z == 1.0) {
        bool terminates = detail::near_nonpositive_integer(a) ||
                          detail::near_nonpositive_integer(b);
        if (!terminates) {
            if (c - a - b <= 0.0)
                throw DomainError("2F1: z = 1 requires c - a - b > 0");
            return gauss_summation_closed_form(a, b, c);
        }
        // fall through: a terminating series is a finite sum at z = 1 as well
    }

    int cap = (z <= 0.9) ? detail::kCapInterior : detail::kCapUnit;
    auto r = detail::gauss2f1_series<double>(a, b, c, z, tol, cap);
    return {r.value, r.abs_err, r.terms, r.converged};
}

SeriesValue gauss_2f1_derivative(const HyperParams2F1& p, double tol) {
    check_2f1_domain(p);
    if (p.upper_a == 0.0 || p.upper_b == 0.0) return {0.0, 0.0, 1, true};
    HyperParams2F1 shifted{p.upper_a + 1.0, p.upper_b + 1.0, p.lower_c + 1.0,
                           p.argument_z};
    double scale = p.upper_a * p.upper_b / p.lower_c;
    SeriesValue inner = gauss_2f1(shifted, tol / std::max(1.0, std::fabs(scale)));
    inner.value *= scale;
    inner.abs_error_estimate *= std::fabs(scale);
    return inner;
}

SeriesValue hyper_3f2_unit(const std::array<double, 3>& upper,
                           const std::array<double, 2>& lower, double tol) {
    std::vector<double> u(upper.begin(), upper.end());
    std::vector<double> l(lower.begin(), lower.end());
    auto r = detail::unit_pfq_sum<double>(u, l, tol, detail::kCapUnit);
    return {r.value, r.abs_err, r.terms, r.converged};
}

SeriesValue hyper_4f3_unit(const std::array<double, 4>& upper,
                           const std::array<double, 3>& lower, double tol) {
    // cancel one matched upper/lower pair and delegate
    for (std::size_t i = 0; i < upper.size(); ++i) {
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (std::fabs(upper[i] - lower[j]) <= 1e-12) {
                std::array<double, 3> u3{};
                std::array<double, 2> l2{};
                std::size_t n = 0;
                for (std::size_t k = 0; k < upper.size(); ++k)
                    if (k != i) u3[n++] = upper[k];
                n = 0;
                for (std::size_t k = 0; k < lower.size(); ++k)
                    if (k != j) l2[n++] = lower[k];
                return hyper_3f2_unit(u3, l2, tol);
            }
        }
    }
    std::vector<double> u(upper.begin(), upper.end());
    std::vector<double> l(lower.begin(), lower.end());
    auto r = detail::unit_pfq_sum<double>(u, l, tol, detail::kCapUnit);
    return {r.value, r.abs_err, r.terms, r.converged};
}

} // namespace heun
