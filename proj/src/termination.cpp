#include "heun/termination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heun {

namespace detail {

std::complex<double> eval_poly(const std::vector<double>& c, std::complex<double> x) {
    std::complex<double> r{0.0, 0.0};
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * x + c[i];
    return r;
}

namespace {

std::complex<double> eval_poly_deriv(const std::vector<double>& c, std::complex<double> x) {
    std::complex<double> r{0.0, 0.0};
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
        r = r * x + c[i] * static_cast<double>(i);
    return r;
}

} // namespace

std::vector<double> characteristic_poly(const HeunParams& p, const TerminationCase& tc,
                                        bool ascending_family) {
    const int N = tc.N;
    auto rqp = [&](int n) {
        return ascending_family
                   ? ascending_rqp<double>(p.a, p.alpha, p.beta, p.gamma, p.delta,
                                           p.epsilon, n)
                   : descending_rqp<double>(p.a, p.alpha, p.beta, p.gamma, p.epsilon,
                                            p.gamma, n);
    };

    std::vector<double> dm1{1.0};                 // D_{-1}
    std::vector<double> d0{rqp(0).q0, -1.0};      // D_0 = Q_0(q)
    for (int n = 1; n <= N; ++n) {
        auto cur = rqp(n);
        std::vector<double> dn(d0.size() + 1, 0.0);
        for (std::size_t i = 0; i < d0.size(); ++i) {
            dn[i] += cur.q0 * d0[i];
            dn[i + 1] -= d0[i];
        }
        double pr = rqp(n - 1).p * cur.r;
        for (std::size_t i = 0; i < dm1.size(); ++i) dn[i] -= pr * dm1[i];
        dm1 = std::move(d0);
        d0 = std::move(dn);
    }
    return d0;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1) throw RootFailure("durand_kerner: degree zero polynomial");
    double lead = coeffs.back();
    if (lead == 0.0) throw RootFailure("durand_kerner: vanishing leading coefficient");

    if (deg == 1) return {std::complex<double>(-coeffs[0] / coeffs[1], 0.0)};

    std::vector<double> monic(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / lead;

    double radius = 0.0;
    for (int i = 0; i < deg; ++i) radius = std::max(radius, std::fabs(monic[i]));
    radius = 1.0 + radius;

    std::vector<std::complex<double>> x(deg);
    std::complex<double> seed{0.4, 0.9};
    std::complex<double> pw{1.0, 0.0};
    for (int k = 0; k < deg; ++k) {
        pw *= seed;
        x[k] = 0.7 * radius * pw / std::abs(pw) * std::pow(0.97, k);
    }

    bool settled = false;
    for (int sweep = 0; sweep < 500 && !settled; ++sweep) {
        double worst = 0.0;
        for (int k = 0; k < deg; ++k) {
            std::complex<double> den{1.0, 0.0};
            for (int j = 0; j < deg; ++j)
                if (j != k) den *= x[k] - x[j];
            if (den == std::complex<double>(0.0, 0.0)) {
                x[k] += std::complex<double>(1e-8 * radius, 1e-8 * radius);
                continue;
            }
            std::complex<double> w = eval_poly(monic, x[k]) / den;
            x[k] -= w;
            worst = std::max(worst, std::abs(w));
        }
        settled = worst <= 1e-14 * (1.0 + radius);
    }
    if (!settled) throw RootFailure("durand_kerner: no convergence in 500 sweeps");

    // one Newton step per root on the original coefficients
    for (auto& r : x) {
        std::complex<double> d = eval_poly_deriv(coeffs, r);
        if (std::abs(d) > 0.0) r -= eval_poly(coeffs, r) / d;
    }

    // real coefficients: force exact conjugate pairing
    double imag_tol = 1e-10 * (1.0 + radius);
    std::vector<std::complex<double>> out;
    std::vector<std::complex<double>> pending;
    for (auto& r : x) {
        if (std::fabs(r.imag()) <= imag_tol)
            out.emplace_back(r.real(), 0.0);
        else
            pending.push_back(r);
    }
    std::vector<bool> used(pending.size(), false);
    for (std::size_t i = 0; i < pending.size(); ++i) {
        if (used[i]) continue;
        std::size_t best = i;
        double bestd = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
            if (used[j]) continue;
            double dd = std::abs(std::conj(pending[i]) - pending[j]);
            if (dd < bestd) {
                bestd = dd;
                best = j;
            }
        }
        if (best == i) {
            out.push_back(pending[i]);  // unpaired (should not happen)
            used[i] = true;
            continue;
        }
        used[i] = used[best] = true;
        std::complex<double> m = 0.5 * (pending[i] + std::conj(pending[best]));
        out.push_back(m);
        out.push_back(std::conj(m));
    }
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace detail

std::vector<TerminationCase> detect_termination_cases(const HeunParams& p) {
    std::vector<TerminationCase> out;
    const std::pair<CaseKind, double> checks[] = {
        {CaseKind::Eps, p.epsilon},
        {CaseKind::Alpha, p.epsilon + p.gamma - p.alpha},
        {CaseKind::Beta, p.epsilon + p.gamma - p.beta},
    };
    for (auto [kind, value] : checks) {
        int m;
        if (detail::near_nonpositive_integer(value, &m)) out.push_back({kind, m});
    }
    return out;
}

std::complex<double> q_determinant(const HeunParams& p, const TerminationCase& tc,
                                   std::complex<double> q) {
    std::complex<double> dm1{1.0, 0.0};
    std::complex<double> d0 =
        detail::ascending_rqp<double>(p.a, p.alpha, p.beta, p.gamma, p.delta, p.epsilon, 0)
            .q0 -
        q;
    for (int n = 1; n <= tc.N; ++n) {
        auto cur = detail::ascending_rqp<double>(p.a, p.alpha, p.beta, p.gamma, p.delta,
                                                 p.epsilon, n);
        auto prev = detail::ascending_rqp<double>(p.a, p.alpha, p.beta, p.gamma, p.delta,
                                                  p.epsilon, n - 1);
        std::complex<double> dn = (cur.q0 - q) * d0 - prev.p * cur.r * dm1;
        dm1 = d0;
        d0 = dn;
    }
    return d0;
}

QRootSet q_roots(const HeunParams& p, const TerminationCase& tc) {
    QRootSet rs;
    rs.tcase = tc;
    rs.poly = detail::characteristic_poly(p, tc, true);
    rs.roots = detail::durand_kerner(rs.poly);
    double scale = 0.0;
    for (double c : rs.poly) scale = std::max(scale, std::fabs(c));
    for (auto r : rs.roots)
        rs.residuals.push_back(std::abs(detail::eval_poly(rs.poly, r)) / scale);
    return rs;
}

FiniteSolution build_finite_solution(const HeunParams& p, const TerminationCase& tc,
                                     int root_index) {
    QRootSet rs = q_roots(p, tc);
    if (root_index < 0 || root_index >= static_cast<int>(rs.roots.size()))
        throw DomainError("build_finite_solution: root index out of range");
    std::complex<double> q = rs.roots[root_index];

    FiniteSolution s;
    s.base = p;
    s.base.q = q.real();
    s.q = q;
    s.tcase = tc;
    s.expansion.spec = ascending_spec(s.base);
    s.expansion.spec.regime = is_two_term(s.base) ? Regime::TwoTerm : Regime::ThreeTerm;
    s.expansion.coefficients = detail::generate_seq<double, std::complex<double>>(
        p.a, p.alpha, p.beta, p.gamma, p.delta, p.epsilon, q, true,
        p.gamma + p.epsilon, tc.N + 2);

    double max_abs = 0.0;
    for (int n = 0; n <= tc.N; ++n)
        max_abs = std::max(max_abs, std::abs(s.expansion.coefficients[n]));
    if (std::abs(s.expansion.coefficients[tc.N + 1]) > 1e-8 * max_abs ||
        std::abs(s.expansion.coefficients[tc.N + 2]) > 1e-8 * max_abs)
        throw TerminationFailure("build_finite_solution: series does not terminate at this root");
    s.expansion.coefficients[tc.N + 1] = 0.0;
    s.expansion.coefficients[tc.N + 2] = 0.0;
    s.expansion.terminated = true;
    s.expansion.truncation_index = tc.N;
    return s;
}

std::complex<double> eval_finite_solution(const FiniteSolution& s, double z, double tol) {
    return sum_expansion(s.base, s.expansion, z, tol).value;
}

std::complex<double> eval_finite_solution_derivative(const FiniteSolution& s, double z,
                                                     double tol) {
    return sum_expansion_derivative(s.base, s.expansion, z, tol).value;
}

QuasiPolynomial quasi_polynomial_form(const FiniteSolution& s) {
    if (s.tcase.kind == CaseKind::Eps)
        throw DomainError("quasi_polynomial_form: Eps-case solutions are irreducible");

    const HeunParams& p = s.base;
    const int N = s.tcase.N;
    const bool alpha_case = s.tcase.kind == CaseKind::Alpha;
    const double lam = alpha_case ? p.alpha : p.beta;   // parameter matched by the basis
    const double mu = alpha_case ? p.beta : p.alpha;

    QuasiPolynomial qp;
    qp.exponent = 1.0 - p.delta;
    qp.poly.assign(N + 1, {0.0, 0.0});

    // term n: a_n (1-z)^{1-delta} (1-z)^n 2F1(k, lam-mu+k; lam+k; z), k = n-N <= 0
    std::vector<double> binom(N + 1);  // (1-z)^n coefficients, rebuilt per n
    for (int n = 0; n <= N; ++n) {
        std::complex<double> a_n = s.expansion.coefficients[n];
        if (a_n == std::complex<double>(0.0, 0.0)) continue;
        int k = n - N;
        int deg_inner = -k;

        std::vector<double> inner(deg_inner + 1);
        for (int j = 0; j <= deg_inner; ++j) {
            double num = pochhammer(static_cast<double>(k), j) * pochhammer(lam - mu + k, j);
            double den = pochhammer(lam + k, j) * pochhammer(1.0, j);
            if (den == 0.0)
                throw PoleError("quasi_polynomial_form: basis parameter at a pole");
            inner[j] = num / den;
        }

        binom.assign(n + 1, 0.0);
        binom[0] = 1.0;
        for (int i = 1; i <= n; ++i) {  // multiply by (1-z)
            for (int j = i; j >= 1; --j) binom[j] = binom[j] - binom[j - 1];
        }

        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= deg_inner; ++j)
                qp.poly[i + j] += a_n * binom[i] * inner[j];
    }
    return qp;
}

std::complex<double> eval_quasi_polynomial(const QuasiPolynomial& qp, double z) {
    std::complex<double> r{0.0, 0.0};
    for (int i = static_cast<int>(qp.poly.size()) - 1; i >= 0; --i) r = r * z + qp.poly[i];
    return std::pow(1.0 - z, qp.exponent) * r;
}

bool mirror_equivalence_check(const HeunParams& p, const TerminationCase& tc) {
    if (tc.kind != CaseKind::Eps)
        throw DomainError("mirror_equivalence_check: worked mirror case requires the Eps condition");

    auto poly_a = detail::characteristic_poly(p, tc, true);
    auto poly_d = detail::characteristic_poly(p, tc, false);
    auto roots_a = detail::durand_kerner(poly_a);
    auto roots_d = detail::durand_kerner(poly_d);
    if (roots_a.size() != roots_d.size()) return false;

    double scale = 1.0;
    for (auto r : roots_a) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 0; i < roots_a.size(); ++i)
        if (std::abs(roots_a[i] - roots_d[i]) > 1e-9 * scale) return false;

    const double z_norm = 0.2;
    const double z_check[] = {0.1, 0.3, 0.5};
    for (std::size_t i = 0; i < roots_a.size(); ++i) {
        std::complex<double> q = roots_a[i];
        auto ca = detail::generate_seq<double, std::complex<double>>(
            p.a, p.alpha, p.beta, p.gamma, p.delta, p.epsilon, q, true,
            p.gamma + p.epsilon, tc.N + 2);
        auto cd = detail::generate_seq<double, std::complex<double>>(
            p.a, p.alpha, p.beta, p.gamma, p.delta, p.epsilon, q, false, p.gamma,
            tc.N + 2);

        auto eval = [&](const std::vector<std::complex<double>>& c, bool ascending,
                        double z) {
            std::complex<double> sum{0.0, 0.0};
            for (int n = 0; n <= tc.N; ++n) {
                if (c[n] == std::complex<double>(0.0, 0.0)) continue;
                double cn = ascending ? p.gamma + p.epsilon + n : p.gamma - n;
                sum += c[n] * gauss_2f1({p.alpha, p.beta, cn, z}, 1e-13).value;
            }
            return sum;
        };

        std::complex<double> na = eval(ca, true, z_norm);
        std::complex<double> nd = eval(cd, false, z_norm);
        if (std::abs(na) == 0.0 || std::abs(nd) == 0.0) return false;
        for (double z : z_check) {
            std::complex<double> va = eval(ca, true, z) / na;
            std::complex<double> vd = eval(cd, false, z) / nd;
            if (std::abs(va - vd) > 1e-9) return false;
        }
    }
    return true;
}

} // namespace heun
