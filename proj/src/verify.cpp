#include "heun/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "heun/hypergeom.hpp"
#include "heun/local_series.hpp"
#include "heun/ode.hpp"

namespace heun::verify {

namespace {

constexpr double kBasisTol = 1e-14;

double f21(double a, double b, double c, double z) {
    return gauss_2f1({a, b, c, z}, kBasisTol).value;
}

double f21d(double a, double b, double c, double z) {
    return gauss_2f1_derivative({a, b, c, z}, kBasisTol).value;
}

// per-case deterministic substream
Rng case_rng(std::uint64_t seed, int index) {
    Rng h(seed ^ (0x100000001B3ull * static_cast<std::uint64_t>(index + 1)));
    h.next();
    return h;
}

// residual vector -> SuiteResult
SuiteResult summarize(std::string name, const std::vector<double>& residuals,
                      double threshold) {
    SuiteResult r;
    r.name = std::move(name);
    r.cases = static_cast<int>(residuals.size());
    r.threshold = threshold;
    for (double v : residuals) {
        r.worst = std::max(r.worst, v);
        if (!(v <= threshold)) ++r.failures;
    }
    return r;
}

template <class F>
std::vector<double> run_cases(int cases, F&& one) {
    std::vector<double> residuals(cases, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cases; ++i) {
        try {
            residuals[i] = one(i);
        } catch (...) {
            residuals[i] = std::numeric_limits<double>::infinity();
        }
    }
    return residuals;
}

} // namespace

SuiteResult contiguous_suite(std::uint64_t seed, int cases) {
    auto residuals = run_cases(cases, [&](int i) {
        Rng rng = case_rng(seed, i);
        double al = rng.uniform(0.3, 2.5), be = rng.uniform(0.3, 2.5);
        double c = rng.uniform(1.3, 4.0), z = rng.uniform(0.05, 0.8);
        double fd = f21d(al, be, c, z);
        double fm = f21(al, be, c - 1.0, z), f0 = f21(al, be, c, z),
               fp = f21(al, be, c + 1.0, z);
        double r1 = std::fabs(z * fd - (c - 1.0) * (fm - f0));
        double s = al + be;
        double r2 = std::fabs((z - 1.0) * fd + (s - c) * f0 -
                              (s - c - al * be / c) * fp);
        return std::max(r1, r2);
    });
    return summarize("contiguous-relations", residuals, 1e-10);
}

SuiteResult euler_transform_suite(std::uint64_t seed, int cases) {
    auto residuals = run_cases(cases, [&](int i) {
        Rng rng = case_rng(seed, i);
        int k = 1 + rng.pick(5);
        double al, be;
        do {
            al = rng.uniform(0.3, 2.5);
            be = rng.uniform(0.3, 2.5);
        } while (std::fabs(al - be + k - std::round(al - be + k)) < 1e-3);
        double z = rng.uniform(0.05, 0.8);
        double lhs = f21(al, be, al + k, z);
        double rhs = std::pow(1.0 - z, k - be) *
                     f21(static_cast<double>(k), al - be + k, al + k, z);
        return std::fabs(lhs - rhs);
    });
    return summarize("euler-transform", residuals, 1e-12);
}

double extrapolated_series_at_one(double a, double b, double c) {
    std::vector<double> vals;
    for (int j = 3; j <= 10; ++j) {
        double z = 1.0 - std::pow(2.0, -j);
        vals.push_back(gauss_2f1({a, b, c, z}, 1e-13).value);
    }
    // exponent set of the z -> 1 expansion: {s, s+1, ...} and the analytic
    // {1, 2, ...}.  Duplicates are kept: for integer s the expansion carries
    // h^s log h terms, and a repeated elimination at the same exponent
    // removes the logarithmic factor as well.
    double s = c - a - b;
    std::vector<double> exps;
    for (int i = 0; i < 8; ++i) {
        exps.push_back(s + i);
        exps.push_back(1.0 + i);
    }
    std::sort(exps.begin(), exps.end());

    std::vector<double> t = vals;
    std::size_t level = 0;
    while (t.size() > 1 && level < exps.size()) {
        double w = std::pow(2.0, -exps[level]);
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            t[i] = (t[i + 1] - w * t[i]) / (1.0 - w);
        t.pop_back();
        ++level;
    }
    return t[0];
}

SuiteResult gauss_summation_suite(std::uint64_t seed, int cases) {
    auto residuals = run_cases(cases, [&](int i) {
        Rng rng = case_rng(seed, i);
        double a, b, c, s;
        do {
            a = rng.uniform(0.2, 1.5);
            b = rng.uniform(0.2, 1.5);
            s = 0.5 + rng.uniform(0.1, 2.0);
            c = a + b + s;
        } while (std::fabs(s - 1.0) < 0.07 || std::fabs(s - 2.0) < 0.07);
        double closed = gauss_2f1({a, b, c, 1.0}, 1e-13).value;
        double series = extrapolated_series_at_one(a, b, c);
        return std::fabs(series - closed) / std::fabs(closed);
    });
    return summarize("gauss-summation", residuals, 1e-8);
}

bool sample_terminating_instance(Rng& rng, HeunParams& out, TerminationCase& tc_out) {
    static const double a_pool[] = {2.0, -1.0, 0.5, 3.0};
    for (int attempt = 0; attempt < 64; ++attempt) {
        double a = a_pool[rng.pick(4)];
        int kind = rng.pick(3);
        int N = rng.pick(4);
        double gamma = rng.uniform(0.4, 2.2);
        if (std::fabs(gamma - std::round(gamma)) < 0.05) continue;
        double alpha, beta, eps;
        if (kind == 0) {
            eps = -static_cast<double>(N);
            alpha = rng.uniform(0.3, 2.5);
            beta = rng.uniform(0.3, 2.5);
        } else if (kind == 1) {
            eps = rng.uniform(0.3, 2.0);
            alpha = gamma + eps + N;
            beta = rng.uniform(0.3, 2.5);
        } else {
            eps = rng.uniform(0.3, 2.0);
            beta = gamma + eps + N;
            alpha = rng.uniform(0.3, 2.5);
        }
        double ge = gamma + eps;
        if (detail::near_nonpositive_integer(ge) ||
            std::fabs(ge - std::round(ge)) < 0.05)
            continue;
        if (alpha == 0.0 || beta == 0.0) continue;

        HeunParams p = make_params(a, 0.0, alpha, beta, gamma, eps);
        TerminationCase tc{kind == 0 ? CaseKind::Eps
                                     : (kind == 1 ? CaseKind::Alpha : CaseKind::Beta),
                           N};
        QRootSet rs;
        try {
            rs = q_roots(p, tc);
        } catch (const std::exception&) {
            continue;
        }
        std::vector<int> real_idx;
        for (std::size_t r = 0; r < rs.roots.size(); ++r)
            if (std::fabs(rs.roots[r].imag()) == 0.0) real_idx.push_back(static_cast<int>(r));
        if (real_idx.empty()) continue;
        int pickr = real_idx[rng.pick(static_cast<int>(real_idx.size()))];
        p.q = rs.roots[pickr].real();
        out = p;
        tc_out = tc;
        return true;
    }
    return false;
}

SuiteResult oracle_agreement_suite(std::uint64_t seed, int cases) {
    auto residuals = run_cases(cases, [&](int i) {
        Rng rng = case_rng(seed, i);
        HeunParams p;
        TerminationCase tc;
        if (!sample_terminating_instance(rng, p, tc))
            return std::numeric_limits<double>::infinity();

        double zstar = 0.1 * std::min(1.0, std::fabs(p.a));

        LocalSeries loc = frobenius_series(p, 60);
        double u_frob = eval_local(loc, zstar).u;

        LocalValue ic = eval_local(loc, 1e-6);
        OdeResult ode = integrate_ode(p, 1e-6, ic.u, ic.du, zstar, 1e-12);

        Expansion e;
        e.spec = ascending_spec(p);
        e.coefficients = heun::detail::generate_seq<double, std::complex<double>>(
            p.a, p.alpha, p.beta, p.gamma, p.delta, p.epsilon,
            std::complex<double>(p.q, 0.0), true, p.gamma + p.epsilon, tc.N + 2);
        double cmax = 0.0;
        for (int n = 0; n <= tc.N; ++n)
            cmax = std::max(cmax, std::abs(e.coefficients[n]));
        if (std::abs(e.coefficients[tc.N + 1]) > 1e-8 * cmax ||
            std::abs(e.coefficients[tc.N + 2]) > 1e-8 * cmax)
            return std::numeric_limits<double>::infinity();
        e.coefficients[tc.N + 1] = e.coefficients[tc.N + 2] = 0.0;
        e.terminated = true;
        e.truncation_index = tc.N;

        std::complex<double> s0 = sum_expansion(p, e, 0.0, 1e-12).value;
        std::complex<double> sz = sum_expansion(p, e, zstar, 1e-12).value;
        if (std::abs(s0) < 1e-8) return std::numeric_limits<double>::infinity();
        double u_sum = (sz / s0).real();

        double scale = std::fabs(u_frob);
        double r1 = std::fabs(u_frob - ode.u) / scale;
        double r2 = std::fabs(u_frob - u_sum) / scale;
        double r3 = std::fabs(ode.u - u_sum) / scale;
        return std::max({r1, r2, r3});
    });
    return summarize("oracle-agreement", residuals, 1e-8);
}

SuiteResult two_term_suite(std::uint64_t seed, int cases) {
    auto residuals = run_cases(cases, [&](int i) {
        Rng rng = case_rng(seed, i);
        double gamma, alpha, eps, beta;
        auto bad = [](double x) {  // too close to an integer
            return std::fabs(x - std::round(x)) < 0.05;
        };
        do {
            gamma = rng.uniform(0.4, 1.6);
            alpha = rng.uniform(0.3, 2.2);
            eps = rng.uniform(0.2, 2.0);
            beta = 1.0 + eps - alpha;
        } while (bad(gamma + eps) || bad(gamma) || bad(alpha) || bad(beta) ||
                 std::fabs(beta) < 0.05 || bad((beta - gamma) / 2) ||
                 bad((alpha - gamma) / 2));
        double delta = 2.0 - gamma;
        double q = 0.5 * alpha * beta + 0.5 * (1.0 - delta) * eps;
        HeunParams p = make_params(0.5, q, alpha, beta, gamma, eps);

        const int kmax = 20;
        Expansion closed = two_term_coefficients(p, kmax);
        Expansion rec = generate_coefficients(p, ascending_spec(p), 2 * kmax);

        double worst = 0.0;
        for (int k = 0; k <= kmax; ++k) {
            std::complex<double> c = closed.coefficients[2 * k];
            std::complex<double> g = rec.coefficients[2 * k];
            double rel = std::abs(c - g) / std::max(1e-300, std::abs(c));
            worst = std::max(worst, rel);
        }
        for (int n = 1; n < 2 * kmax; n += 2) {
            if (rec.coefficients[n] != std::complex<double>(0.0, 0.0))
                worst = std::max(worst, 1.0);
        }
        // degenerate recurrence: R_n a_n + P_{n-2} a_{n-2} = 0
        for (int n = 2; n <= 2 * kmax; n += 2) {
            RecurrenceCoeffs rc = recurrence_ascending(p, n);
            RecurrenceCoeffs pc = recurrence_ascending(p, n - 2);
            std::complex<double> lhs =
                rc.R * closed.coefficients[n] + pc.P * closed.coefficients[n - 2];
            double scale = std::abs(rc.R * closed.coefficients[n]) + 1e-300;
            worst = std::max(worst, std::abs(lhs) / scale);
        }
        // descending family, gamma0 = gamma
        Expansion dclosed = two_term_descending_coefficients(p, p.gamma, 8);
        Expansion drec = generate_coefficients(p, descending_spec(p, p.gamma), 16);
        for (int k = 0; 2 * k < static_cast<int>(dclosed.coefficients.size()) && 2 * k <= 16;
             ++k) {
            std::complex<double> c = dclosed.coefficients[2 * k];
            std::complex<double> g = drec.coefficients[2 * k];
            worst = std::max(worst, std::abs(c - g) / std::max(1e-300, std::abs(c)));
        }
        return worst;
    });
    return summarize("two-term-consistency", residuals, 1e-12);
}

SuiteResult mirror_equivalence_suite(std::uint64_t seed, int cases) {
    auto residuals = run_cases(cases, [&](int i) {
        Rng rng = case_rng(seed, i);
        for (int attempt = 0; attempt < 32; ++attempt) {
            int N = 1 + rng.pick(2);
            double a = (rng.pick(2) == 0) ? 2.0 : -1.0;
            double gamma = rng.uniform(1.3, 2.4);
            if (std::fabs(gamma - 2.0) < 0.05) continue;
            double alpha = rng.uniform(0.3, 1.8), beta = rng.uniform(0.3, 1.8);
            HeunParams p = make_params(a, 0.0, alpha, beta, gamma,
                                       -static_cast<double>(N));
            if (detail::near_nonpositive_integer(p.gamma + p.epsilon)) continue;
            TerminationCase tc{CaseKind::Eps, N};
            return mirror_equivalence_check(p, tc) ? 0.0
                                                   : std::numeric_limits<double>::infinity();
        }
        return std::numeric_limits<double>::infinity();
    });
    return summarize("mirror-equivalence", residuals, 1e-9);
}

double finite_solution_fd_residual(const FiniteSolution& s, double z, double h) {
    using C = std::complex<long double>;
    const HeunParams& p = s.base;
    auto eval = [&](long double zz) {
        C sum{0.0L, 0.0L};
        for (int n = 0; n <= s.tcase.N; ++n) {
            std::complex<double> an = s.expansion.coefficients[n];
            if (an == std::complex<double>(0.0, 0.0)) continue;
            long double cn = static_cast<long double>(p.gamma) +
                             static_cast<long double>(p.epsilon) + n;
            auto f = heun::detail::gauss2f1_series<long double>(
                static_cast<long double>(p.alpha), static_cast<long double>(p.beta), cn,
                zz, 1e-17L, heun::detail::kCapInterior);
            sum += C(static_cast<long double>(an.real()), static_cast<long double>(an.imag())) *
                   f.value;
        }
        return sum;
    };
    long double zl = static_cast<long double>(z), hl = static_cast<long double>(h);
    C u0 = eval(zl), up = eval(zl + hl), um = eval(zl - hl);
    C u1 = (up - um) / (2.0L * hl);
    C u2 = (up - 2.0L * u0 + um) / (hl * hl);
    C qc(static_cast<long double>(s.q.real()), static_cast<long double>(s.q.imag()));
    C res = heun::detail::heun_residual_c<long double>(p, qc, u0, u1, u2, zl);
    return static_cast<double>(std::abs(res));
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
    std::vector<SuiteResult> out;
    out.push_back(contiguous_suite(seed, 200));
    out.push_back(euler_transform_suite(seed + 1, 100));
    out.push_back(gauss_summation_suite(seed + 2, 50));
    out.push_back(oracle_agreement_suite(seed + 3, 100));
    out.push_back(two_term_suite(seed + 4, 20));
    out.push_back(mirror_equivalence_suite(seed + 5, 20));
    return out;
}

} // namespace heun::verify
