#ifndef HEUN_EXPANSIONS_HPP
#define HEUN_EXPANSIONS_HPP

#include <complex>
#include <vector>

#include "heun/hypergeom.hpp"
#include "heun/params.hpp"

namespace heun {

enum class Direction { Ascending, Descending };
enum class Regime { ThreeTerm, TwoTerm };

/// Which expansion family and which basis shift it uses.  The ascending
/// family sums a_n 2F1(alpha, beta; gamma0 + n; z) with gamma0 locked to
/// gamma + epsilon; the descending family sums over gamma0 - n with gamma0
/// one of gamma, alpha, beta.
struct ExpansionSpec {
    Direction direction = Direction::Ascending;
    double gamma0 = 0.0;
    Regime regime = Regime::ThreeTerm;
};

/// Recurrence coefficients at one index n in
/// R_n a_n + Q_{n-1} a_{n-1} + P_{n-2} a_{n-2} = 0.
struct RecurrenceCoeffs {
    double R = 0.0;
    double Q = 0.0;
    double P = 0.0;
};

/// Generated coefficient sequence a_0 .. a_M, a_0 = 1.  Coefficients become
/// complex when the accessory parameter is a complex determinant root; the
/// basis functions stay real.
struct Expansion {
    ExpansionSpec spec;
    std::vector<std::complex<double>> coefficients;
    int truncation_index = 0;   // last nonzero index when terminated, else M
    bool terminated = false;
};

/// Numeric value of a summed expansion.  Mirrors SeriesValue but carries a
/// complex value (real for real accessory parameters).
struct ExpansionValue {
    std::complex<double> value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    int terms_used = 0;
    bool converged = false;
};

ExpansionSpec ascending_spec(const HeunParams& p);
ExpansionSpec descending_spec(const HeunParams& p, double gamma0);

/// Ascending-family coefficients at index n:
///   R_n = (1-a) n (eps+gam+n-1)
///   Q_n = -R_n + a (1+n-delta)(n+eps) + (a alpha beta - q)
///   P_n = -a/(n+eps+gam) (n+eps)(n+eps+gam-alpha)(n+eps+gam-beta)
RecurrenceCoeffs recurrence_ascending(const HeunParams& p, int n);

/// Descending-family coefficients (gamma0 in {gamma, alpha, beta}):
///   R_n = a/(gam0-n) (gam-gam0+n)(alpha-gam0+n)(beta-gam0+n)
///   Q_n = -P_n + a (gam-gam0+n)(alpha+beta-gam0+n) + a alpha beta - q
///   P_n = (a-1)(eps+gam-gam0+n)(gam0-n-1)
RecurrenceCoeffs recurrence_descending(const HeunParams& p, double gamma0, int n);

/// Run the three-term recurrence forward from a_0 = 1.  Coefficients whose
/// magnitude falls below 1e-14 times the running maximum are snapped to an
/// exact zero, so true terminations are detected despite round-off.
Expansion generate_coefficients(const HeunParams& p, const ExpansionSpec& spec, int max_index);

/// True iff a = 1/2, gamma + delta = 2 and q = a alpha beta + a (1-delta) eps,
/// each within 1e-12: the middle recurrence coefficient then vanishes
/// identically and the recurrence degenerates to two-term.
bool is_two_term(const HeunParams& p);

/// Closed-form two-term coefficients of the ascending expansion:
///   c_k = (e/2)_k ((g+e-al)/2)_k ((g+e-be)/2)_k
///         / (k! ((g+e)/2)_k ((1+g+e)/2)_k)
/// stored at even indices n = 2k (odd entries are exactly zero).
Expansion two_term_coefficients(const HeunParams& p, int kmax);

/// Closed-form two-term coefficients of the descending expansion (no k! in
/// the denominator); basis lower parameter gamma0 - 2k.
Expansion two_term_descending_coefficients(const HeunParams& p, double gamma0, int kmax);

/// Sum an expansion at z in [0, 1).  Terms are a_n 2F1(alpha,beta;c_n;z).
/// Terminated expansions sum exactly.  Infinite expansions stop when three
/// consecutive nonzero terms fall below tol; algebraically decaying tails
/// (term ratio -> 1) are extrapolated to the series limit by iterated
/// Aitken acceleration over geometrically checkpointed partial sums, and
/// the error estimate reflects the extrapolation.  `converged` means the
/// series limit is trusted to tol; whether that limit solves the Heun
/// equation is a separate question -- it does exactly when the expansion
/// terminates (see README).
ExpansionValue sum_expansion(const HeunParams& p, const Expansion& e, double z, double tol);

/// Term-wise derivative sum (same stop and extrapolation rules).
ExpansionValue sum_expansion_derivative(const HeunParams& p, const Expansion& e,
                                        double z, double tol);

/// Per-term trace logging to stderr (the CLI switches this on for
/// HEUN_LOG=debug).  Off by default.
void set_term_trace(bool on);

namespace detail {

/// Recurrence coefficients with the accessory parameter split out:
/// Q(q) = Q0 - q.  Shared by coefficient generation and the tridiagonal
/// characteristic polynomial.
template <class R>
struct RQP {
    R r, q0, p;
};

template <class R>
RQP<R> ascending_rqp(R a, R alpha, R beta, R gamma, R delta, R eps, int n) {
    R nn = R(n);
    R r = (R(1) - a) * nn * (eps + gamma + nn - R(1));
    R denom = nn + eps + gamma;
    if (std::fabs(static_cast<double>(denom)) < 1e-12)
        throw PoleError("ascending recurrence: n + epsilon + gamma vanishes");
    R p = -a / denom * (nn + eps) * (nn + eps + gamma - alpha) * (nn + eps + gamma - beta);
    R q0 = -r + a * (R(1) + nn - delta) * (nn + eps) + a * alpha * beta;
    return {r, q0, p};
}

template <class R>
RQP<R> descending_rqp(R a, R alpha, R beta, R gamma, R eps, R gamma0, int n) {
    R nn = R(n);
    R denom = gamma0 - nn;
    if (std::fabs(static_cast<double>(denom)) < 1e-12)
        throw PoleError("descending recurrence: gamma0 - n vanishes");
    R r = a / denom * (gamma - gamma0 + nn) * (alpha - gamma0 + nn) * (beta - gamma0 + nn);
    R p = (a - R(1)) * (eps + gamma - gamma0 + nn) * (gamma0 - nn - R(1));
    R q0 = -p + a * (gamma - gamma0 + nn) * (alpha + beta - gamma0 + nn) + a * alpha * beta;
    return {r, q0, p};
}

/// Forward generation with scalar coefficient type S (double or complex) and
/// real type R; q enters only through Q(q) = Q0 - q.
template <class R, class S>
std::vector<S> generate_seq(R a, R alpha, R beta, R gamma, R delta, R eps,
                            S q, bool ascending, R gamma0, int max_index) {
    std::vector<S> c(max_index + 1);
    c[0] = S(1);
    R max_abs = R(1);
    auto rqp = [&](int n) {
        return ascending ? ascending_rqp<R>(a, alpha, beta, gamma, delta, eps, n)
                         : descending_rqp<R>(a, alpha, beta, gamma, eps, gamma0, n);
    };
    int zeros = 0;
    for (int n = 1; n <= max_index; ++n) {
        if (zeros >= 2) {
            c[n] = S(0);
            continue;
        }
        auto cur = rqp(n);
        auto prev = rqp(n - 1);
        S num = (S(prev.q0) - q) * c[n - 1];
        if (n >= 2) num += S(rqp(n - 2).p) * c[n - 2];
        if (cur.r == R(0)) {
            if (std::abs(num) <= R(1e-12) * max_abs) {
                c[n] = S(0);
                ++zeros;
                continue;
            }
            throw PoleError("generate_coefficients: vanishing R_n with nonzero numerator");
        }
        c[n] = -num / S(cur.r);
        R mag = std::abs(c[n]);
        if (mag < R(1e-14) * max_abs) {
            c[n] = S(0);   // round-off floor of a true zero
            ++zeros;
        } else {
            zeros = 0;
            max_abs = std::max(max_abs, mag);
        }
    }
    return c;
}

} // namespace detail
} // namespace heun

#endif
