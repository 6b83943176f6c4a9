#include "heun/closed_values.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heun/expansions.hpp"
#include "heun/hypergeom.hpp"

namespace heun {

namespace {

constexpr double kSeriesTol = 1e-12;

void require_two_term(const HeunParams& p, const char* who) {
    if (!is_two_term(p))
        throw DomainError(std::string(who) + ": parameters are not in the two-term regime");
}

// sign-tracked Gamma(n1)Gamma(n2) / (Gamma(d1)Gamma(d2)); nullopt on a
// numerator pole, exact zero on a denominator pole
std::optional<double> gamma_ratio(double n1, double n2, double d1, double d2) {
    bool den_pole = detail::near_nonpositive_integer(d1) ||
                    detail::near_nonpositive_integer(d2);
    if (den_pole) return 0.0;
    if (detail::near_nonpositive_integer(n1) || detail::near_nonpositive_integer(n2))
        return std::nullopt;
    LogGamma a = ln_gamma(n1), b = ln_gamma(n2), c = ln_gamma(d1), d = ln_gamma(d2);
    return a.sign * b.sign * c.sign * d.sign *
           std::exp(a.log_abs + b.log_abs - c.log_abs - d.log_abs);
}

} // namespace

double value_at_origin(const HeunParams& p) {
    require_two_term(p, "value_at_origin");
    double ge = p.gamma + p.epsilon;
    return hyper_3f2_unit({(ge - p.alpha) / 2, (ge - p.beta) / 2, p.epsilon / 2},
                          {ge / 2, (1.0 + ge) / 2}, kSeriesTol)
        .value;
}

double derivative_at_origin(const HeunParams& p) {
    require_two_term(p, "derivative_at_origin");
    if (p.alpha * p.beta == 0.0) return 0.0;
    double ge = p.gamma + p.epsilon;
    double f = hyper_3f2_unit({(ge - p.alpha) / 2, (ge - p.beta) / 2, p.epsilon / 2},
                              {(1.0 + ge) / 2, (2.0 + ge) / 2}, kSeriesTol)
                   .value;
    return p.alpha * p.beta / ge * f;
}

double value_at_one(const HeunParams& p) {
    require_two_term(p, "value_at_one");
    double ge = p.gamma + p.epsilon;
    auto pre = gamma_ratio(ge, p.gamma - 1.0, ge - p.alpha, p.gamma - 1.0 + p.alpha);
    if (!pre)
        throw PoleError("value_at_one: gamma-function prefactor undefined");

    // Gauss summation cross-check of the prefactor, applicable for gamma > 1
    if (p.gamma > 1.05 && *pre != 0.0) {
        double direct = gauss_2f1({p.alpha, p.beta, ge, 1.0}, kSeriesTol).value;
        if (std::fabs(direct - *pre) > 1e-8 * std::fabs(*pre))
            throw std::logic_error("value_at_one: prefactor disagrees with Gauss summation");
    }

    double f = hyper_3f2_unit({(p.gamma - 1.0) / 2, p.gamma / 2, p.epsilon / 2},
                              {(p.gamma + p.alpha) / 2, (p.gamma + p.beta) / 2},
                              kSeriesTol)
                   .value;
    return *pre * f;
}

BoundaryValues descending_boundary_values(const HeunParams& p, double gamma0) {
    require_two_term(p, "descending_boundary_values");
    bool is_g = std::fabs(gamma0 - p.gamma) <= 1e-12;
    bool is_a = std::fabs(gamma0 - p.alpha) <= 1e-12;
    bool is_b = std::fabs(gamma0 - p.beta) <= 1e-12;
    if (!is_g && !is_a && !is_b)
        throw DomainError("descending_boundary_values: gamma0 must be gamma, alpha or beta");

    double ge = p.gamma + p.epsilon;
    std::array<double, 3> lowers{1.0 + (p.gamma - gamma0) / 2, 1.0 + (p.alpha - gamma0) / 2,
                                 1.0 + (p.beta - gamma0) / 2};

    BoundaryValues bv;
    bv.method_u0 = bv.method_du0 = bv.method_u1 = BoundaryMethod::DescendingSeries;
    bv.u_at_0 = hyper_4f3_unit({1.0, (1.0 - gamma0) / 2, (2.0 - gamma0) / 2, (ge - gamma0) / 2},
                               lowers, kSeriesTol)
                    .value;
    bv.du_at_0 = p.alpha * p.beta / gamma0 *
                 hyper_4f3_unit({1.0, (1.0 - gamma0) / 2, -gamma0 / 2, (ge - gamma0) / 2},
                                lowers, kSeriesTol)
                     .value;

    if (is_a || is_b) {
        bv.u_at_1 = 0.0;   // prefactor carries 1/Gamma(0)
        return bv;
    }

    auto pre = gamma_ratio(gamma0, gamma0 - p.alpha - p.beta, gamma0 - p.alpha,
                           gamma0 - p.beta);
    if (!pre) {
        bv.u_at_1 = std::nullopt;
        return bv;
    }
    double f = hyper_4f3_unit(
                   {1.0, (1.0 + p.alpha - gamma0) / 2, (1.0 + p.beta - gamma0) / 2,
                    (ge - gamma0) / 2},
                   {(1.0 + p.alpha + p.beta - gamma0) / 2,
                    (2.0 + p.alpha + p.beta - gamma0) / 2, 1.0 + (p.gamma - gamma0) / 2},
                   kSeriesTol)
                   .value;
    bv.u_at_1 = *pre * f;

    if (p.gamma - p.alpha - p.beta > 1.0) {
        double reduced = gauss_2f1({p.alpha, p.beta, p.gamma, 1.0}, kSeriesTol).value *
                         hyper_3f2_unit({(1.0 + p.alpha - p.gamma) / 2,
                                         (1.0 + p.beta - p.gamma) / 2, p.epsilon / 2},
                                        {(1.0 + p.alpha + p.beta - p.gamma) / 2,
                                         (2.0 + p.alpha + p.beta - p.gamma) / 2},
                                        kSeriesTol)
                             .value;
        double scale = std::max({1.0, std::fabs(*bv.u_at_1), std::fabs(reduced)});
        if (std::fabs(reduced - *bv.u_at_1) > 1e-8 * scale)
            throw std::logic_error(
                "descending_boundary_values: reduced form disagrees with prefactor form");
        bv.u_at_1 = reduced;
        bv.method_u1 = BoundaryMethod::DescendingReduced;
    }
    return bv;
}

std::vector<double> a_orbit(double a1) {
    if (a1 == 0.0 || a1 == 1.0) throw DomainError("a_orbit: a1 must differ from 0 and 1");
    std::vector<double> all{a1,
                            1.0 / a1,
                            1.0 - a1,
                            1.0 / (1.0 - a1),
                            a1 / (a1 - 1.0),
                            (a1 - 1.0) / a1};
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double v : all) {
        if (out.empty() || std::fabs(v - out.back()) > 1e-12 * std::max(1.0, std::fabs(v)))
            out.push_back(v);
    }
    return out;
}

} // namespace heun
