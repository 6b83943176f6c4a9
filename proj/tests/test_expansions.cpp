#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heun/expansions.hpp"
#include "heun/hypergeom.hpp"
#include "heun/local_series.hpp"

using namespace heun;

namespace {
// the two-term fixture used throughout: delta = 0.8, q picked so the middle
// recurrence coefficient vanishes identically
HeunParams fixture() { return make_params(0.5, 0.475, 0.5, 1.5, 1.2, 1.0); }
} // namespace

TEST_CASE("ascending recurrence coefficients") {
    HeunParams p = fixture();
    RecurrenceCoeffs c0 = recurrence_ascending(p, 0);
    CHECK(c0.R == 0.0);

    // middle coefficient vanishes identically in the two-term regime
    for (int n = 0; n <= 10; ++n)
        CHECK(std::fabs(recurrence_ascending(p, n).Q) < 1e-14);

    // eps = 0, q = a alpha beta makes Q_0 vanish
    HeunParams h = make_params(2.0, 2.0 * 0.7 * 1.4, 0.7, 1.4, 1.3, 0.0);
    CHECK(std::fabs(recurrence_ascending(h, 0).Q) < 1e-15);

    // frozen: P_0 = -(1/2)/2.2 * 1 * 1.7 * 0.7, R_2 = (1/2)*2*3.2
    CHECK(recurrence_ascending(p, 0).P ==
          doctest::Approx(-0.5 / 2.2 * 1.0 * 1.7 * 0.7).epsilon(1e-15));
    CHECK(recurrence_ascending(p, 2).R == doctest::Approx(3.2).epsilon(1e-15));
}

TEST_CASE("descending recurrence coefficients") {
    HeunParams p = fixture();
    CHECK(recurrence_descending(p, p.gamma, 0).R == 0.0);
    CHECK(recurrence_descending(p, p.alpha, 0).R == 0.0);
    CHECK(recurrence_descending(p, p.beta, 0).R == 0.0);

    // two-term regime: Q vanishes for the descending family as well
    for (int n = 0; n <= 8; ++n)
        CHECK(std::fabs(recurrence_descending(p, p.gamma, n).Q) < 1e-14);

    // gamma0 = gamma, eps = -N: P_N = 0
    HeunParams e2 = make_params(2.0, 0.3, 0.8, 0.9, 1.3, -2.0);
    CHECK(recurrence_descending(e2, e2.gamma, 2).P == 0.0);

    // pole when gamma0 - n vanishes
    HeunParams gi = make_params(2.0, 0.3, 0.8, 0.9, 1.0, 0.7);
    CHECK_THROWS_AS(recurrence_descending(gi, gi.gamma, 1), PoleError);
}

TEST_CASE("generate_coefficients") {
    HeunParams p = fixture();
    Expansion e = generate_coefficients(p, ascending_spec(p), 8);
    CHECK(e.coefficients[0] == std::complex<double>(1.0, 0.0));

    // odd entries exactly zero, a2 = -P_0/R_2 (frozen 0.08451704545...)
    CHECK(e.coefficients[1] == std::complex<double>(0.0, 0.0));
    CHECK(e.coefficients[3] == std::complex<double>(0.0, 0.0));
    CHECK(e.coefficients[5] == std::complex<double>(0.0, 0.0));
    CHECK(e.coefficients[2].real() == doctest::Approx(0.0845170454545455).epsilon(1e-12));

    // hypergeometric degeneration: eps = 0, q = a alpha beta
    HeunParams h = make_params(2.0, 2.0 * 0.7 * 1.4, 0.7, 1.4, 1.3, 0.0);
    Expansion eh = generate_coefficients(h, ascending_spec(h), 6);
    CHECK(eh.terminated);
    for (int n = 1; n <= 6; ++n) CHECK(eh.coefficients[n] == std::complex<double>(0.0, 0.0));

    // inapplicable when alpha beta = 0
    HeunParams z = make_params(2.0, 0.3, 0.0, 1.4, 1.3, 0.4);
    CHECK_THROWS_AS(generate_coefficients(z, ascending_spec(z), 6), DomainError);

    // ascending basis pole
    HeunParams gp = make_params(2.0, 0.3, 0.8, 0.9, 1.0, -3.0);
    CHECK_THROWS_AS(generate_coefficients(gp, ascending_spec(gp), 6), PoleError);
}

TEST_CASE("is_two_term") {
    CHECK(is_two_term(fixture()));
    HeunParams p1 = fixture();
    p1.a = 0.3;
    CHECK_FALSE(is_two_term(p1));
    HeunParams p2 = fixture();
    p2.q += 0.1;
    CHECK_FALSE(is_two_term(p2));
}

TEST_CASE("two_term_coefficients against the recurrence") {
    HeunParams p = fixture();
    Expansion closed = two_term_coefficients(p, 20);
    Expansion rec = generate_coefficients(p, ascending_spec(p), 40);
    CHECK(closed.coefficients[0].real() == 1.0);
    CHECK(closed.coefficients[2].real() ==
          doctest::Approx(0.0845170454545455).epsilon(1e-13));
    for (int k = 0; k <= 20; ++k) {
        double c = closed.coefficients[2 * k].real();
        double g = rec.coefficients[2 * k].real();
        CHECK(std::fabs(c - g) <= 1e-12 * std::fabs(c));
    }

    // two-term relation R_n a_n + P_{n-2} a_{n-2} = 0
    for (int n = 2; n <= 40; n += 2) {
        RecurrenceCoeffs rc = recurrence_ascending(p, n);
        RecurrenceCoeffs pc = recurrence_ascending(p, n - 2);
        double lhs = rc.R * closed.coefficients[n].real() +
                     pc.P * closed.coefficients[n - 2].real();
        CHECK(std::fabs(lhs) <= 1e-12 * std::fabs(rc.R * closed.coefficients[n].real()));
    }

    // eps = 0 zeroes every higher coefficient
    HeunParams pe = make_params(0.5, 0.5 * 0.3 * 0.7, 0.3, 0.7, 1.2, 0.0);
    REQUIRE(is_two_term(pe));
    Expansion ce = two_term_coefficients(pe, 6);
    CHECK(ce.terminated);
    for (std::size_t n = 1; n < ce.coefficients.size(); ++n)
        CHECK(ce.coefficients[n] == std::complex<double>(0.0, 0.0));

    CHECK_THROWS_AS(two_term_coefficients(make_params(2, 0.3, 1, 1, 1.2, 1), 6),
                    DomainError);
}

TEST_CASE("two_term_descending_coefficients") {
    HeunParams p = fixture();
    Expansion d = two_term_descending_coefficients(p, p.gamma, 12);
    CHECK(d.coefficients[0].real() == 1.0);
    // frozen: (-0.1)(0.4)(0.5) / ((1)(0.65)(1.15))
    CHECK(d.coefficients[2].real() == doctest::Approx(-0.0267558528428).epsilon(1e-10));

    // matches the descending recurrence
    Expansion rec = generate_coefficients(p, descending_spec(p, p.gamma), 24);
    for (int k = 0; k <= 12; ++k) {
        double c = d.coefficients[2 * k].real();
        double g = rec.coefficients[2 * k].real();
        CHECK(std::fabs(c - g) <= 1e-12 * std::max(1e-300, std::fabs(c)));
    }

    // two-term relation for the descending family
    for (int n = 2; n <= 24; n += 2) {
        RecurrenceCoeffs rc = recurrence_descending(p, p.gamma, n);
        RecurrenceCoeffs pc = recurrence_descending(p, p.gamma, n - 2);
        double lhs = rc.R * d.coefficients[n].real() +
                     pc.P * d.coefficients[n - 2].real();
        CHECK(std::fabs(lhs) <= 1e-12 * std::fabs(rc.R * d.coefficients[n].real()));
    }
}

TEST_CASE("sum_expansion basics") {
    HeunParams p = fixture();
    Expansion e = two_term_coefficients(p, 4096);

    // z = 0 sums the coefficients; series limit frozen from the closed
    // 3F2 representation of the coefficient sum
    ExpansionValue at0 = sum_expansion(p, e, 0.0, 1e-8);
    CHECK(at0.converged);
    CHECK(at0.value.real() == doctest::Approx(1.17099993857718).epsilon(1e-8));
    CHECK(at0.value.imag() == 0.0);

    // series limit at z = 0.3 (frozen from an independent high-precision
    // checkpoint extrapolation of the same series)
    ExpansionValue at3 = sum_expansion(p, e, 0.3, 1e-8);
    CHECK(at3.converged);
    CHECK(at3.value.real() == doctest::Approx(1.30335901272874).epsilon(1e-8));

    // hypergeometric degeneration: value equals a single Gauss function
    HeunParams h = make_params(2.0, 2.0 * 0.7 * 1.4, 0.7, 1.4, 1.3, 0.0);
    Expansion eh = generate_coefficients(h, ascending_spec(h), 8);
    ExpansionValue vh = sum_expansion(h, eh, 0.4, 1e-12);
    CHECK(vh.converged);
    CHECK(vh.value.real() ==
          doctest::Approx(gauss_2f1({0.7, 1.4, 1.3, 0.4}, 1e-14).value).epsilon(1e-12));

    CHECK_THROWS_AS(sum_expansion(p, e, 1.0, 1e-8), DomainError);
    CHECK_THROWS_AS(sum_expansion(p, e, -0.2, 1e-8), DomainError);
}

TEST_CASE("sum_expansion derivative consistency") {
    HeunParams p = fixture();
    Expansion e = two_term_coefficients(p, 4096);
    double h = 1e-5;
    ExpansionValue up = sum_expansion(p, e, 0.3 + h, 1e-10);
    ExpansionValue um = sum_expansion(p, e, 0.3 - h, 1e-10);
    ExpansionValue d = sum_expansion_derivative(p, e, 0.3, 1e-9);
    double fd = (up.value.real() - um.value.real()) / (2 * h);
    CHECK(d.converged);
    CHECK(d.value.real() == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("sum_expansion reports honest non-convergence for growing coefficients") {
    // a = 2 with generic q: the ascending coefficient sequence grows
    // geometrically, so the sum cannot settle
    HeunParams p = make_params(2.0, 0.37, 0.8, 1.1, 1.3, 0.6);
    Expansion e = generate_coefficients(p, ascending_spec(p), 400);
    ExpansionValue v = sum_expansion(p, e, 0.2, 1e-10);
    CHECK_FALSE(v.converged);
}
