#include "heun/expansions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

namespace heun {

namespace {

std::atomic<bool> g_term_trace{false};

constexpr double kTwoTermTol = 1e-12;

void require_applicable(const HeunParams& p) {
    if (p.alpha * p.beta == 0.0)
        throw DomainError("expansion inapplicable: alpha beta = 0 (basis functions constant)");
}

int last_nonzero(const std::vector<std::complex<double>>& c) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[i] != std::complex<double>(0.0, 0.0)) return i;
    return 0;
}

} // namespace

ExpansionSpec ascending_spec(const HeunParams& p) {
    ExpansionSpec s;
    s.direction = Direction::Ascending;
    s.gamma0 = p.gamma + p.epsilon;
    s.regime = is_two_term(p) ? Regime::TwoTerm : Regime::ThreeTerm;
    return s;
}

ExpansionSpec descending_spec(const HeunParams& p, double gamma0) {
    bool known = std::fabs(gamma0 - p.gamma) <= 1e-12 ||
                 std::fabs(gamma0 - p.alpha) <= 1e-12 ||
                 std::fabs(gamma0 - p.beta) <= 1e-12;
    if (!known)
        throw DomainError("descending expansion: gamma0 must be gamma, alpha or beta");
    ExpansionSpec s;
    s.direction = Direction::Descending;
    s.gamma0 = gamma0;
    s.regime = is_two_term(p) ? Regime::TwoTerm : Regime::ThreeTerm;
    return s;
}

RecurrenceCoeffs recurrence_ascending(const HeunParams& p, int n) {
    if (detail::near_nonpositive_integer(p.gamma + p.epsilon))
        throw PoleError("ascending recurrence: gamma + epsilon at a non-positive integer");
    auto c = detail::ascending_rqp<double>(p.a, p.alpha, p.beta, p.gamma, p.delta,
                                           p.epsilon, n);
    return {c.r, c.q0 - p.q, c.p};
}

RecurrenceCoeffs recurrence_descending(const HeunParams& p, double gamma0, int n) {
    auto c = detail::descending_rqp<double>(p.a, p.alpha, p.beta, p.gamma,
                                            p.epsilon, gamma0, n);
    return {c.r, c.q0 - p.q, c.p};
}

Expansion generate_coefficients(const HeunParams& p, const ExpansionSpec& spec,
                                int max_index) {
    require_applicable(p);
    if (max_index < 1) throw DomainError("generate_coefficients: max_index must be >= 1");
    if (spec.direction == Direction::Ascending &&
        detail::near_nonpositive_integer(p.gamma + p.epsilon))
        throw PoleError("ascending expansion: gamma + epsilon at a non-positive integer");

    Expansion e;
    e.spec = spec;
    e.coefficients = detail::generate_seq<double, std::complex<double>>(
        p.a, p.alpha, p.beta, p.gamma, p.delta, p.epsilon,
        std::complex<double>(p.q, 0.0), spec.direction == Direction::Ascending,
        spec.gamma0, max_index);
    int lnz = last_nonzero(e.coefficients);
    e.terminated = lnz + 2 <= max_index;
    e.truncation_index = e.terminated ? lnz : max_index;
    return e;
}

bool is_two_term(const HeunParams& p) {
    double q_two = p.a * p.alpha * p.beta + p.a * (1.0 - p.delta) * p.epsilon;
    return std::fabs(p.a - 0.5) <= kTwoTermTol &&
           std::fabs(p.gamma + p.delta - 2.0) <= kTwoTermTol &&
           std::fabs(p.q - q_two) <= kTwoTermTol;
}

Expansion two_term_coefficients(const HeunParams& p, int kmax) {
    if (!is_two_term(p)) throw DomainError("two_term_coefficients: parameters not in the two-term regime");
    double ge = p.gamma + p.epsilon;
    if (detail::near_nonpositive_integer(ge))
        throw PoleError("two_term_coefficients: gamma + epsilon at a non-positive integer");

    Expansion e;
    e.spec = ascending_spec(p);
    e.coefficients.assign(2 * kmax + 1, {0.0, 0.0});
    double c = 1.0;
    e.coefficients[0] = c;
    bool done = false;
    for (int k = 0; k < kmax && !done; ++k) {
        double num = (p.epsilon / 2 + k) * ((ge - p.alpha) / 2 + k) * ((ge - p.beta) / 2 + k);
        double den = (k + 1.0) * (ge / 2 + k) * ((1.0 + ge) / 2 + k);
        if (std::fabs(den) < 1e-12)
            throw PoleError("two_term_coefficients: denominator factor vanishes");
        c *= num / den;
        if (c == 0.0) done = true;
        e.coefficients[2 * (k + 1)] = c;
    }
    int lnz = last_nonzero(e.coefficients);
    e.terminated = done;
    e.truncation_index = done ? lnz : static_cast<int>(e.coefficients.size()) - 1;
    return e;
}

Expansion two_term_descending_coefficients(const HeunParams& p, double gamma0, int kmax) {
    if (!is_two_term(p)) throw DomainError("two_term_descending_coefficients: not in the two-term regime");
    Expansion e;
    e.spec = descending_spec(p, gamma0);
    double ge = p.gamma + p.epsilon;
    e.coefficients.assign(2 * kmax + 1, {0.0, 0.0});
    double c = 1.0;
    e.coefficients[0] = c;
    bool done = false;
    int filled = 0;
    for (int k = 0; k < kmax && !done; ++k) {
        double num = ((1.0 - gamma0) / 2 + k) * ((2.0 - gamma0) / 2 + k) *
                     ((ge - gamma0) / 2 + k);
        double den = (1.0 + (p.gamma - gamma0) / 2 + k) * (1.0 + (p.alpha - gamma0) / 2 + k) *
                     (1.0 + (p.beta - gamma0) / 2 + k);
        if (std::fabs(den) < 1e-12) break;  // stop before a denominator pole
        c *= num / den;
        if (c == 0.0) done = true;
        e.coefficients[2 * (k + 1)] = c;
        filled = k + 1;
    }
    if (!done && filled < kmax) e.coefficients.resize(2 * filled + 1);
    int lnz = last_nonzero(e.coefficients);
    e.terminated = done;
    e.truncation_index = done ? lnz : static_cast<int>(e.coefficients.size()) - 1;
    return e;
}

namespace {

ExpansionValue sum_core(const HeunParams& p, const Expansion& e, double z, double tol,
                        bool derivative) {
    if (!(z >= 0.0) || z >= 1.0)
        throw DomainError("sum_expansion: z must lie in [0, 1)");

    const double tol_basis = std::max(tol * 1e-2, 1e-15);
    const bool ascending = e.spec.direction == Direction::Ascending;

    std::complex<double> sum{0.0, 0.0};
    double err_inner = 0.0;
    int terms = 0;

    std::vector<std::complex<double>> cp_sums;
    std::vector<double> cp_terms;
    int next_cp = 32;

    // Partial sums are checkpointed at geometrically spaced term counts, so
    // an algebraic tail n^-s becomes geometric in the checkpoint index and
    // iterated Aitken extrapolation removes it level by level without
    // needing the decay exponent.
    auto extrapolate = [&](std::complex<double>& value, double& err) {
        if (cp_sums.size() < 4) return false;
        std::vector<std::complex<double>> col(cp_sums);
        std::complex<double> prev_est = col.back();
        double change = std::numeric_limits<double>::infinity();
        while (col.size() >= 3) {
            std::vector<std::complex<double>> nxt(col.size() - 2);
            for (std::size_t j = 0; j + 2 < col.size(); ++j) {
                std::complex<double> d1 = col[j + 1] - col[j];
                std::complex<double> d2 = col[j + 2] - col[j + 1];
                std::complex<double> den = d2 - d1;
                nxt[j] = (den == std::complex<double>(0.0, 0.0))
                             ? col[j + 2]
                             : col[j + 2] - d2 * d2 / den;
            }
            change = std::abs(nxt.back() - prev_est);
            prev_est = nxt.back();
            col = std::move(nxt);
        }
        value = col.back();
        err = change * 10.0 + err_inner;
        return true;
    };

    double last_mag = 0.0;  // previous nonzero term magnitude
    int small_run = 0;
    int nonzero_count = 0;
    bool algebraic = false;

    for (std::size_t n = 0; n < e.coefficients.size(); ++n) {
        std::complex<double> a_n = e.coefficients[n];
        if (a_n == std::complex<double>(0.0, 0.0)) continue;
        double c_n = ascending ? e.spec.gamma0 + static_cast<double>(n)
                               : e.spec.gamma0 - static_cast<double>(n);
        HyperParams2F1 hp{p.alpha, p.beta, c_n, z};
        SeriesValue f = derivative ? gauss_2f1_derivative(hp, tol_basis)
                                   : gauss_2f1(hp, tol_basis);
        std::complex<double> term = a_n * f.value;
        sum += term;
        err_inner += std::abs(a_n) * f.abs_error_estimate;
        ++terms;
        ++nonzero_count;
        if (g_term_trace.load(std::memory_order_relaxed))
            std::fprintf(stderr, "trace: n=%zu c=%.17g term=(%.17g,%.17g)\n", n, c_n,
                         term.real(), term.imag());

        double mag = std::abs(term);
        if (nonzero_count == next_cp) {
            cp_sums.push_back(sum);
            cp_terms.push_back(mag);
            next_cp *= 2;
            if (algebraic) {
                std::complex<double> value;
                double err;
                if (extrapolate(value, err) && err <= tol) {
                    ExpansionValue out;
                    out.value = value;
                    out.abs_error_estimate = err;
                    out.terms_used = terms;
                    out.converged = true;
                    return out;
                }
            }
        }
        small_run = (mag < tol) ? small_run + 1 : 0;
        if (small_run >= 3 && !e.terminated && !algebraic) {
            double r = (last_mag > 0.0) ? mag / last_mag : 0.0;
            if (r <= 0.9) {
                ExpansionValue out;
                out.value = sum;
                out.terms_used = terms;
                double tail = mag * r / (1.0 - r) * 10.0;
                out.abs_error_estimate = tail + err_inner;
                out.converged = out.abs_error_estimate <= tol;
                return out;
            }
            algebraic = true;  // keep summing; the ladder needs checkpoints
        }
        last_mag = mag;
    }

    ExpansionValue out;
    out.terms_used = terms;

    if (e.terminated) {
        out.value = sum;
        out.abs_error_estimate = err_inner + std::abs(sum) * 1e-15;
        out.converged = out.abs_error_estimate <= tol;
        return out;
    }

    std::complex<double> value;
    double err;
    if (extrapolate(value, err)) {
        out.value = value;
        out.abs_error_estimate = err;
        out.converged = err <= tol;
        return out;
    }
    out.value = sum;
    out.abs_error_estimate = last_mag * static_cast<double>(terms + 1);
    out.converged = false;
    return out;
}

} // namespace

ExpansionValue sum_expansion(const HeunParams& p, const Expansion& e, double z, double tol) {
    return sum_core(p, e, z, tol, false);
}

ExpansionValue sum_expansion_derivative(const HeunParams& p, const Expansion& e,
                                        double z, double tol) {
    return sum_core(p, e, z, tol, true);
}

void set_term_trace(bool on) { g_term_trace.store(on, std::memory_order_relaxed); }

} // namespace heun
