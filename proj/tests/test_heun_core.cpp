#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heun/hypergeom.hpp"
#include "heun/local_series.hpp"
#include "heun/ode.hpp"
#include "heun/params.hpp"
#include "heun/verify.hpp"

using namespace heun;

namespace {

// second derivative of a local series directly from its coefficients
double local_u2(const LocalSeries& s, double z) {
    double u2 = 0.0;
    for (int k = static_cast<int>(s.coefficients.size()) - 1; k >= 2; --k)
        u2 = u2 * z + s.coefficients[k] * k * (k - 1);
    return u2;
}

} // namespace

TEST_CASE("make_params derives delta from the Fuchsian relation") {
    HeunParams p = make_params(2.0, 0.0, 1.0, 1.0, 1.0, 1.0);
    CHECK(p.delta == 1.0);
    HeunParams f = make_params(0.5, 0.475, 0.5, 1.5, 1.2, 1.0);
    CHECK(f.delta == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(1.0 + f.alpha + f.beta - f.gamma - f.delta - f.epsilon == 0.0);
    CHECK_THROWS_AS(make_params(1.0, 0, 1, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(make_params(0.0, 0, 1, 1, 1, 1), DomainError);
}

TEST_CASE("heun_residual") {
    HeunParams p = make_params(2.0, 0.3, 1.1, 0.7, 1.3, 0.9);
    CHECK(heun_residual(p, 0, 0, 0, 0.4) == 0.0);

    // constants solve the equation when q = alpha beta = 0
    HeunParams c = make_params(2.0, 0.0, 0.0, 1.2, 1.3, 0.9);
    CHECK(heun_residual(c, 1.0, 0.0, 0.0, 0.4) == 0.0);

    // power solution u = (1-z)^{1-delta} for eps+gamma-alpha = 0,
    // q = a gamma (delta - 1)
    double a = 2.0, g = 0.6, e = 0.9, al = g + e, be = 0.4;
    HeunParams f = make_params(a, a * g * be, al, be, g, e);  // delta = 1 + beta
    REQUIRE(f.delta == doctest::Approx(1.0 + be));
    REQUIRE(f.q == doctest::Approx(a * g * (f.delta - 1.0)));
    double z = 0.3, d = f.delta;
    double u = std::pow(1 - z, 1 - d);
    double u1 = (d - 1) * std::pow(1 - z, -d);
    double u2 = d * (d - 1) * std::pow(1 - z, -d - 1);
    CHECK(std::fabs(heun_residual(f, u, u1, u2, z)) < 1e-12);

    CHECK_THROWS_AS(heun_residual(p, 1, 0, 0, 0.0), DomainError);
    CHECK_THROWS_AS(heun_residual(p, 1, 0, 0, 2.0), DomainError);
}

TEST_CASE("frobenius_series coefficients") {
    // c1 = q / (a gamma)
    HeunParams p = make_params(2.0, 1.0, 0.9, 0.8, 1.0, 0.7);
    LocalSeries s = frobenius_series(p, 10);
    CHECK(s.coefficients[0] == 1.0);
    CHECK(s.coefficients[1] == doctest::Approx(0.5).epsilon(1e-15));

    // q = 0, alpha beta = 0: constant solution
    HeunParams c = make_params(2.0, 0.0, 0.0, 0.8, 1.0, 0.7);
    LocalSeries sc = frobenius_series(c, 12);
    for (std::size_t k = 1; k < sc.coefficients.size(); ++k)
        CHECK(sc.coefficients[k] == 0.0);

    // eps = 0, q = a alpha beta reduces to the Gauss series
    double a = 2.0, al = 0.7, be = 1.4, g = 1.3;
    HeunParams h = make_params(a, a * al * be, al, be, g, 0.0);
    LocalSeries sh = frobenius_series(h, 14);
    for (int k = 0; k <= 10; ++k) {
        double expect = pochhammer(al, k) * pochhammer(be, k) /
                        (pochhammer(g, k) * pochhammer(1.0, k));
        CHECK(sh.coefficients[k] == doctest::Approx(expect).epsilon(1e-12));
    }

    CHECK_THROWS_AS(frobenius_series(make_params(2, 0, 1, 1, -1.0, 1), 10), PoleError);
    CHECK_THROWS_AS(frobenius_series(p, 1), DomainError);
}

TEST_CASE("eval_local") {
    HeunParams p = make_params(2.0, 1.0, 0.9, 0.8, 1.0, 0.7);
    LocalSeries s = frobenius_series(p, 60);
    LocalValue v0 = eval_local(s, 0.0);
    CHECK(v0.u == 1.0);
    CHECK(v0.du == s.coefficients[1]);

    // against the integrator from near the origin
    LocalValue near = eval_local(s, 1e-6);
    OdeResult ode = integrate_ode(p, 1e-6, near.u, near.du, 0.1, 1e-12);
    LocalValue at = eval_local(s, 0.1);
    CHECK(std::fabs(at.u - ode.u) / std::fabs(at.u) < 1e-8);

    CHECK_THROWS_AS(eval_local(s, 1.5), DomainError);
}

TEST_CASE("local series solves the equation (residual property)") {
    verify::Rng rng(77);
    const double a_pool[] = {2.0, -1.0, 0.5, 3.0};
    for (int i = 0; i < 25; ++i) {
        double a = a_pool[i % 4];
        double g;
        do {
            g = rng.uniform(0.3, 3.0);
        } while (std::fabs(g - std::round(g)) < 0.05);
        HeunParams p = make_params(a, rng.uniform(-2.0, 2.0), rng.uniform(0.3, 3.0),
                                   rng.uniform(0.3, 3.0), g, rng.uniform(0.3, 3.0));
        LocalSeries s = frobenius_series(p, 60);
        double z = 0.1 * std::min(1.0, std::fabs(a));
        LocalValue v = eval_local(s, z);
        double res = heun_residual(p, v.u, v.du, local_u2(s, z), z);
        CHECK(std::fabs(res) < 1e-8);
    }
}

TEST_CASE("integrate_ode") {
    // constant solution
    HeunParams c = make_params(2.0, 0.0, 0.0, 1.2, 1.3, 0.9);
    OdeResult r = integrate_ode(c, 0.05, 1.0, 0.0, 0.7, 1e-12);
    CHECK(r.u == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(r.du) < 1e-12);

    // hypergeometric reduction: eps = 0, q = a alpha beta
    double a = 2.0, al = 0.7, be = 1.4, g = 1.3;
    HeunParams h = make_params(a, a * al * be, al, be, g, 0.0);
    OdeResult rh = integrate_ode(h, 1e-4, gauss_2f1({al, be, g, 1e-4}, 1e-14).value,
                                 gauss_2f1_derivative({al, be, g, 1e-4}, 1e-14).value,
                                 0.5, 1e-12);
    double expect = gauss_2f1({al, be, g, 0.5}, 1e-14).value;
    CHECK(std::fabs(rh.u - expect) / expect < 1e-8);

    // power solution fixture propagated across the interval
    double g2 = 0.6, e2 = 0.9, be2 = 0.4;
    HeunParams f = make_params(2.0, 2.0 * g2 * be2, g2 + e2, be2, g2, e2);
    double d = f.delta;
    OdeResult rf = integrate_ode(f, 0.05, std::pow(0.95, 1 - d),
                                 (d - 1) * std::pow(0.95, -d), 0.6, 1e-12);
    CHECK(std::fabs(rf.u - std::pow(0.4, 1 - d)) < 1e-10);

    // interval contract
    CHECK_THROWS_AS(integrate_ode(f, 0.05, 1, 0, 2.5, 1e-10), DomainError);
    CHECK_THROWS_AS(integrate_ode(c, -0.1, 1, 0, 0.5, 1e-10), DomainError);
}

TEST_CASE("oracle agreement: frobenius vs integrator on random parameter sets") {
    verify::Rng rng(2025);
    const double a_pool[] = {2.0, -1.0, 0.5, 3.0};
    int done = 0;
    while (done < 100) {
        double a = a_pool[rng.pick(4)];
        double g;
        do {
            g = rng.uniform(0.3, 3.0);
        } while (std::fabs(g - std::round(g)) < 0.05);
        HeunParams p = make_params(a, rng.uniform(-2.0, 2.0), rng.uniform(0.3, 3.0),
                                   rng.uniform(0.3, 3.0), g, rng.uniform(0.3, 3.0));
        LocalSeries s = frobenius_series(p, 60);
        double z = 0.1 * std::min(1.0, std::fabs(a));
        LocalValue ic = eval_local(s, 1e-6);
        OdeResult ode = integrate_ode(p, 1e-6, ic.u, ic.du, z, 1e-12);
        double ref = eval_local(s, z).u;
        CHECK(std::fabs(ode.u - ref) / std::fabs(ref) < 1e-8);
        ++done;
    }
}

TEST_CASE("integrate_to_one extrapolates the singular endpoint (delta < 1)") {
    // power solution with beta < 0 so that delta = 1 + beta < 1; u(1) = 0
    double g = 0.8, e = 0.9, be = -0.35, a = 2.0;
    HeunParams f = make_params(a, a * g * be, g + e, be, g, e);
    REQUIRE(f.delta < 1.0);
    double d = f.delta;
    double z0 = 0.1;
    double lim = integrate_to_one(f, z0, std::pow(1 - z0, 1 - d),
                                  (d - 1) * std::pow(1 - z0, -d), 1e-12);
    CHECK(std::fabs(lim) < 1e-7);

    CHECK_THROWS_AS(integrate_to_one(make_params(2.0, 0.1, 1.2, 1.1, 0.7, 0.8), 0.1,
                                     1.0, 0.0, 1e-10),
                    DomainError);  // delta >= 1
}
