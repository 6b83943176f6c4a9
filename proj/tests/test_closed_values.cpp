#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "heun/closed_values.hpp"
#include "heun/expansions.hpp"
#include "heun/ode.hpp"
#include "heun/verify.hpp"

using namespace heun;

namespace {

HeunParams fixture() { return make_params(0.5, 0.475, 0.5, 1.5, 1.2, 1.0); }

// two-term family: beta and q derived from (gamma, alpha, eps)
HeunParams two_term_set(double gamma, double alpha, double eps) {
    double beta = 1.0 + eps - alpha;
    double delta = 2.0 - gamma;
    double q = 0.5 * alpha * beta + 0.5 * (1.0 - delta) * eps;
    return make_params(0.5, q, alpha, beta, gamma, eps);
}

// iterated Aitken limit of a partial-sum sequence checkpointed at
// geometrically growing indices (test-side oracle, independent of the
// library's summation code path)
double aitken_limit(const std::vector<double>& cps) {
    std::vector<double> col = cps;
    while (col.size() >= 3) {
        std::vector<double> nxt(col.size() - 2);
        for (std::size_t j = 0; j + 2 < col.size(); ++j) {
            double d1 = col[j + 1] - col[j], d2 = col[j + 2] - col[j + 1];
            double den = d2 - d1;
            nxt[j] = (den == 0.0) ? col[j + 2] : col[j + 2] - d2 * d2 / den;
        }
        col = std::move(nxt);
    }
    return col.back();
}

// brute-force coefficient sum of the ascending two-term closed form
double brute_u0(const HeunParams& p, bool derivative) {
    double ge = p.gamma + p.epsilon;
    double c = 1.0, sum = derivative ? p.alpha * p.beta / ge : 1.0;
    std::vector<double> cps;
    int next = 32;
    for (int k = 0; k < (1 << 18); ++k) {
        double num = (p.epsilon / 2 + k) * ((ge - p.alpha) / 2 + k) *
                     ((ge - p.beta) / 2 + k);
        double den = (k + 1.0) * (ge / 2 + k) * ((1.0 + ge) / 2 + k);
        c *= num / den;
        if (c == 0.0) break;
        sum += derivative ? c * p.alpha * p.beta / (ge + 2.0 * (k + 1)) : c;
        if (k + 2 == next) {
            cps.push_back(sum);
            next *= 2;
        }
    }
    return cps.size() >= 4 ? aitken_limit(cps) : sum;
}

// same for the descending family (no k! in the ratio)
double brute_desc_u0(const HeunParams& p, double g0, bool derivative) {
    double ge = p.gamma + p.epsilon;
    double c = 1.0, sum = derivative ? p.alpha * p.beta / g0 : 1.0;
    std::vector<double> cps;
    int next = 32;
    for (int k = 0; k < (1 << 18); ++k) {
        double num = ((1.0 - g0) / 2 + k) * ((2.0 - g0) / 2 + k) * ((ge - g0) / 2 + k);
        double den = (1.0 + (p.gamma - g0) / 2 + k) * (1.0 + (p.alpha - g0) / 2 + k) *
                     (1.0 + (p.beta - g0) / 2 + k);
        c *= num / den;
        if (c == 0.0) break;
        sum += derivative ? c * p.alpha * p.beta / (g0 - 2.0 * (k + 1)) : c;
        if (k + 2 == next) {
            cps.push_back(sum);
            next *= 2;
        }
    }
    return cps.size() >= 4 ? aitken_limit(cps) : sum;
}

} // namespace

TEST_CASE("value_at_origin") {
    // eps = 0: the series collapses to its first term
    CHECK(value_at_origin(two_term_set(1.2, 0.3, 0.0)) == 1.0);

    HeunParams p = fixture();
    double u0 = value_at_origin(p);
    CHECK(u0 == doctest::Approx(1.1709999385771782).epsilon(1e-10));
    CHECK(u0 == doctest::Approx(brute_u0(p, false)).epsilon(1e-8));

    CHECK_THROWS_AS(value_at_origin(make_params(2, 0.3, 1, 1, 1.2, 1)), DomainError);
}

TEST_CASE("derivative_at_origin") {
    // eps = 0 collapses to alpha beta / gamma
    HeunParams h = two_term_set(1.2, 0.3, 0.0);
    CHECK(derivative_at_origin(h) ==
          doctest::Approx(h.alpha * h.beta / h.gamma).epsilon(1e-13));

    // vanishing prefactor
    HeunParams z = two_term_set(1.2, 0.0, 0.7);
    CHECK(derivative_at_origin(z) == 0.0);

    HeunParams p = fixture();
    double du0 = derivative_at_origin(p);
    CHECK(du0 == doctest::Approx(0.3626645492458786).epsilon(1e-10));
    CHECK(du0 == doctest::Approx(brute_u0(p, true)).epsilon(1e-8));
}

TEST_CASE("value_at_one") {
    HeunParams p = fixture();
    CHECK(value_at_one(p) == doctest::Approx(4.4960639964533094).epsilon(1e-10));

    // eps = 0, gamma > 1: reduces to the Gauss value of the single basis
    HeunParams h = two_term_set(1.2, 0.3, 0.0);
    double direct = gauss_2f1({h.alpha, h.beta, h.gamma, 1.0}, 1e-13).value;
    CHECK(value_at_one(h) == doctest::Approx(direct).epsilon(1e-12));

    // terminating eps = -2 set: closed form against the integrator pushed
    // into the singular endpoint (the expansion is a finite sum here, so it
    // is a genuine solution and the comparison is meaningful)
    HeunParams t = two_term_set(1.35, 0.62, -2.0);
    REQUIRE(t.delta < 1.0);
    double u1 = value_at_one(t);
    CHECK(u1 == doctest::Approx(-5.0618781665428896).epsilon(1e-10));

    Expansion e = two_term_coefficients(t, 8);
    REQUIRE(e.terminated);
    double z0 = 0.75;
    double u = sum_expansion(t, e, z0, 1e-13).value.real();
    double du = sum_expansion_derivative(t, e, z0, 1e-13).value.real();
    double ode = integrate_to_one(t, z0, u, du, 1e-12);
    CHECK(std::fabs(ode - u1) / std::fabs(u1) < 1e-4);
    CHECK(std::fabs(ode - u1) / std::fabs(u1) < 1e-8);  // much tighter in practice
}

TEST_CASE("descending_boundary_values") {
    HeunParams p = fixture();

    // anchored at alpha or beta: u(1) is exactly zero
    BoundaryValues ba = descending_boundary_values(p, p.alpha);
    REQUIRE(ba.u_at_1.has_value());
    CHECK(*ba.u_at_1 == 0.0);

    // anchored at gamma: frozen values and coefficient-sum oracles
    BoundaryValues bg = descending_boundary_values(p, p.gamma);
    CHECK(bg.u_at_0 == doctest::Approx(0.95433610041687015).epsilon(1e-10));
    CHECK(bg.du_at_0 == doctest::Approx(0.65300509391915644).epsilon(1e-10));
    REQUIRE(bg.u_at_1.has_value());
    CHECK(*bg.u_at_1 == doctest::Approx(1.0065734806146166).epsilon(1e-9));
    CHECK(bg.u_at_0 == doctest::Approx(brute_desc_u0(p, p.gamma, false)).epsilon(1e-8));
    CHECK(bg.du_at_0 == doctest::Approx(brute_desc_u0(p, p.gamma, true)).epsilon(1e-8));
    CHECK(bg.method_u1 == BoundaryMethod::DescendingSeries);

    // gamma - alpha - beta > 1: the reduced product form applies and the
    // two routes must coincide
    HeunParams r = two_term_set(1.7, 0.3, -1.5);
    REQUIRE(r.gamma - r.alpha - r.beta > 1.0);
    BoundaryValues br = descending_boundary_values(r, r.gamma);
    REQUIRE(br.u_at_1.has_value());
    CHECK(*br.u_at_1 == doctest::Approx(-0.97277366581958065).epsilon(1e-9));
    CHECK(br.method_u1 == BoundaryMethod::DescendingReduced);
    CHECK(br.u_at_0 == doctest::Approx(0.36673053954963916).epsilon(1e-9));

    CHECK_THROWS_AS(descending_boundary_values(p, 0.77), DomainError);
}

TEST_CASE("consistency triangle at z = 0") {
    for (HeunParams p : {fixture(), two_term_set(1.45, 0.8, 0.9),
                         two_term_set(0.7, 1.3, 1.6)}) {
        double route1 = value_at_origin(p);
        Expansion e = two_term_coefficients(p, 16384);
        ExpansionValue route2 = sum_expansion(p, e, 0.0, 1e-9);
        REQUIRE(route2.converged);
        double route3 = brute_u0(p, false);
        CHECK(std::fabs(route1 - route2.value.real()) < 1e-8);
        CHECK(std::fabs(route1 - route3) < 1e-8);
        CHECK(std::fabs(route2.value.real() - route3) < 1e-8);
    }
}

TEST_CASE("derivative consistency against finite differences of the sum") {
    HeunParams p = fixture();
    Expansion e = two_term_coefficients(p, 8192);
    auto S = [&](double z) { return sum_expansion(p, e, z, 1e-10).value.real(); };
    auto fd_at = [&](double z0) { return (S(z0 + 1e-4) - S(z0 - 1e-4)) / 2e-4; };
    // eliminate the O(z0) offset between u'(z0) and u'(0)
    double extrap = 2.0 * fd_at(5e-4) - fd_at(1e-3);
    CHECK(std::fabs(extrap - derivative_at_origin(p)) < 1e-5);
}

TEST_CASE("terminating upper parameter: closed sum in finitely many terms") {
    HeunParams t = two_term_set(1.35, 0.62, -2.0);  // eps/2 = -1 truncates at k=1
    double ge = t.gamma + t.epsilon;
    double c1 = (t.epsilon / 2) * ((ge - t.alpha) / 2) * ((ge - t.beta) / 2) /
                (1.0 * (ge / 2) * ((1.0 + ge) / 2));
    CHECK(value_at_origin(t) == doctest::Approx(1.0 + c1).epsilon(1e-12));
}

TEST_CASE("a_orbit") {
    auto o2 = a_orbit(2.0);
    REQUIRE(o2.size() == 3);
    CHECK(o2[0] == doctest::Approx(-1.0));
    CHECK(o2[1] == doctest::Approx(0.5));
    CHECK(o2[2] == doctest::Approx(2.0));

    auto om1 = a_orbit(-1.0);
    REQUIRE(om1.size() == 3);
    CHECK(om1[1] == doctest::Approx(0.5));

    CHECK_THROWS_AS(a_orbit(0.0), DomainError);
    CHECK_THROWS_AS(a_orbit(1.0), DomainError);

    // group action: the orbit of any orbit member is the same set
    verify::Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        double a1 = rng.uniform(-3.0, 4.0);
        if (std::fabs(a1) < 0.05 || std::fabs(a1 - 1.0) < 0.05) continue;
        auto orb = a_orbit(a1);
        bool contains = false;
        for (double v : orb) contains |= std::fabs(v - a1) < 1e-12;
        CHECK(contains);
        for (double y : orb) {
            auto orb2 = a_orbit(y);
            REQUIRE(orb2.size() == orb.size());
            for (std::size_t k = 0; k < orb.size(); ++k)
                CHECK(orb2[k] == doctest::Approx(orb[k]).epsilon(1e-10));
        }
    }
}
