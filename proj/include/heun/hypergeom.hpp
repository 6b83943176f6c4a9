#ifndef HEUN_HYPERGEOM_HPP
#define HEUN_HYPERGEOM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "heun/errors.hpp"

namespace heun {

/// Numeric result of a series evaluation.  `converged == true` guarantees
/// `abs_error_estimate <= ` the tolerance the caller requested.
struct SeriesValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int terms_used = 0;
    bool converged = false;
};

/// log |Gamma(x)| together with the sign of Gamma(x).
struct LogGamma {
    double log_abs = 0.0;
    int sign = 1;
};

/// Natural log of |Gamma(x)| with sign tracking; reflection formula for x < 0.
/// Throws PoleError when x is within 1e-9 of a non-positive integer.
LogGamma ln_gamma(double x);

/// Rising factorial (x)_k computed as an iterated product, so that zeros at
/// non-positive integer x are exact.
double pochhammer(double x, int k);

/// Parameters of a Gauss 2F1 evaluation on the real interval [0, 1].
struct HyperParams2F1 {
    double upper_a = 0.0;
    double upper_b = 0.0;
    double lower_c = 1.0;
    double argument_z = 0.0;
};

/// 2F1(a, b; c; z) for z in [0, 1); z = 1 allowed when c - a - b > 0 (Gauss
/// summation closed form) or when the series terminates.
SeriesValue gauss_2f1(const HyperParams2F1& p, double tol);

/// d/dz 2F1(a, b; c; z) = (a b / c) 2F1(a+1, b+1; c+1; z).
SeriesValue gauss_2f1_derivative(const HyperParams2F1& p, double tol);

/// Clausen 3F2 at unit argument.  Requires positive parametric excess
/// (sum of lower minus sum of upper parameters) unless an upper parameter is
/// a non-positive integer, which truncates the series.
SeriesValue hyper_3f2_unit(const std::array<double, 3>& upper,
                           const std::array<double, 2>& lower, double tol);

/// 4F3 at unit argument.  An upper parameter equal to a lower parameter is
/// cancelled and the evaluation delegates to hyper_3f2_unit.
SeriesValue hyper_4f3_unit(const std::array<double, 4>& upper,
                           const std::array<double, 3>& lower, double tol);

namespace detail {

inline constexpr double kIntegerTol = 1e-9;   // pole proximity window
inline constexpr int kCapInterior = 10000;    // term cap, |z| <= 0.9
inline constexpr int kCapUnit = 1000000;      // term cap, unit-argument / z > 0.9

/// True when x is within kIntegerTol of an integer <= 0; *m receives -round(x).
inline bool near_nonpositive_integer(double x, int* m = nullptr) {
    double r = std::round(x);
    if (r > 0.5 || std::fabs(x - r) > kIntegerTol) return false;
    if (m) *m = static_cast<int>(-r);
    return true;
}

template <class R>
R poch(R x, int k) {
    R p = R(1);
    for (int i = 0; i < k; ++i) p *= x + R(i);
    return p;
}

template <class R>
struct SeriesResult {
    R value{};
    R abs_err{};
    int terms = 0;
    bool converged = false;
};

/// Power series for 2F1(a, b; c; z), 0 <= z < 1 (also z = 1 for terminating
/// series).  Terminates exactly when a or b sits on a non-positive integer.
/// The tail is bounded geometrically once the term ratio settles below
/// (1 + z) / 2.
template <class R>
SeriesResult<R> gauss2f1_series(R a, R b, R c, R z, R tol, int cap) {
    const R eps = std::numeric_limits<R>::epsilon();

    int term_at = -1;  // k of the last nonzero term when the series terminates
    int ma, mb;
    {
        int m;
        bool ta = near_nonpositive_integer(static_cast<double>(a), &m);
        ma = ta ? m : -1;
        bool tb = near_nonpositive_integer(static_cast<double>(b), &m);
        mb = tb ? m : -1;
    }
    if (ma >= 0 && mb >= 0) term_at = std::min(ma, mb);
    else if (ma >= 0) term_at = ma;
    else if (mb >= 0) term_at = mb;

    int mc;
    if (near_nonpositive_integer(static_cast<double>(c), &mc)) {
        // pole of (c)_k at k = mc + 1; fine only if the series stops first
        if (term_at < 0 || term_at > mc)
            throw PoleError("2F1: lower parameter at a non-positive integer");
    }

    SeriesResult<R> out;
    R term = R(1), sum = R(1), max_term = R(1);
    if (term_at == 0) {
        out.value = sum;
        out.abs_err = eps;
        out.terms = 1;
        out.converged = true;
        return out;
    }

    const R ratio_bound = (R(1) + z) / R(2);
    int settled = 0;
    // sign flips and denominator crossings only happen while k is below the
    // magnitude of a negative parameter
    const int transient = static_cast<int>(std::max(
        {-std::min(0.0, static_cast<double>(a)), -std::min(0.0, static_cast<double>(b)),
         -std::min(0.0, static_cast<double>(c))})) + 2;

    for (int k = 0; k < cap; ++k) {
        term *= (a + R(k)) * (b + R(k)) / ((c + R(k)) * R(k + 1)) * z;
        sum += term;
        max_term = std::max(max_term, std::fabs(term));
        out.terms = k + 2;
        if (term_at >= 0 && k + 1 >= term_at) {
            out.value = sum;
            out.abs_err = eps * max_term * R(out.terms);
            out.converged = true;
            return out;
        }
        if (k + 1 > transient) {
            R r = std::min(ratio_bound,
                           std::fabs((a + R(k + 1)) * (b + R(k + 1)) /
                                     ((c + R(k + 1)) * R(k + 2)) * z));
            R tail = std::fabs(term) * r / (R(1) - r) * R(10);
            if (tail <= tol || std::fabs(term) <= eps * std::fabs(sum)) {
                if (++settled >= 2) {
                    out.value = sum;
                    out.abs_err = tail + eps * max_term * R(out.terms);
                    out.converged = out.abs_err <= tol || tail <= tol;
                    return out;
                }
            } else {
                settled = 0;
            }
        }
    }
    throw NoConvergence("2F1: term cap reached");
}

/// Generalized hypergeometric series at unit argument with algebraic tail.
/// Partial sums are checkpointed at geometrically spaced indices and the
/// limit is extracted by Richardson extrapolation with the exact exponent
/// ladder {s, s+1, ...}, s = parametric excess.  Raw term-ratio decay there
/// is k^-(1+s), so plain summation cannot reach tight tolerances.
template <class R>
SeriesResult<R> unit_pfq_sum(const std::vector<R>& upper, const std::vector<R>& lower,
                             R tol, int cap) {
    const R eps = std::numeric_limits<R>::epsilon();

    int term_at = -1;
    for (R u : upper) {
        int m;
        if (near_nonpositive_integer(static_cast<double>(u), &m))
            term_at = (term_at < 0) ? m : std::min(term_at, m);
    }
    for (R l : lower) {
        int m;
        if (near_nonpositive_integer(static_cast<double>(l), &m)) {
            if (term_at < 0 || term_at > m)
                throw PoleError("pFq: lower parameter at a non-positive integer");
        }
    }

    SeriesResult<R> out;
    R term = R(1), sum = R(1), max_term = R(1);
    if (term_at == 0) {
        out.value = R(1);
        out.abs_err = eps;
        out.terms = 1;
        out.converged = true;
        return out;
    }

    if (term_at >= 0) {
        for (int k = 0; k < term_at; ++k) {
            R num = R(1), den = R(k + 1);
            for (R u : upper) num *= u + R(k);
            for (R l : lower) den *= l + R(k);
            term *= num / den;
            sum += term;
            max_term = std::max(max_term, std::fabs(term));
        }
        out.value = sum;
        out.terms = term_at + 1;
        out.abs_err = eps * max_term * R(out.terms);
        out.converged = true;
        return out;
    }

    R excess = R(0);
    for (R l : lower) excess += l;
    for (R u : upper) excess -= u;
    if (excess <= R(0))
        throw DomainError("pFq(1): non-positive parametric excess, series diverges");

    // checkpointed summation
    std::vector<R> cps;          // partial sums at k = 32 * 2^j
    int next_cp = 32;
    R prev_limit = R(0);
    bool have_prev = false;

    for (int k = 0; k < cap; ++k) {
        R num = R(1), den = R(k + 1);
        for (R u : upper) num *= u + R(k);
        for (R l : lower) den *= l + R(k);
        term *= num / den;
        sum += term;
        max_term = std::max(max_term, std::fabs(term));
        out.terms = k + 2;

        // quasi-terminating or fast-decay escape
        if (std::fabs(term) < tol * R(1e-3) && std::fabs(term) < eps * std::fabs(sum) * R(10)) {
            out.value = sum;
            out.abs_err = std::fabs(term) * R(10) + eps * max_term * R(out.terms);
            out.converged = out.abs_err <= tol;
            return out;
        }

        if (k + 2 == next_cp) {
            cps.push_back(sum);
            next_cp *= 2;
            if (cps.size() >= 4) {
                // Richardson ladder, ratio 2, exponents s, s+1, s+2, ...
                std::vector<R> t = cps;
                R p = excess;
                while (t.size() > 1) {
                    R w = std::pow(R(2), p);
                    for (std::size_t i = 0; i + 1 < t.size(); ++i)
                        t[i] = t[i + 1] + (t[i + 1] - t[i]) / (w - R(1));
                    t.pop_back();
                    p += R(1);
                }
                R limit = t[0];
                if (have_prev) {
                    R change = std::fabs(limit - prev_limit);
                    R err = change * R(10) + eps * max_term * R(out.terms);
                    if (err <= tol) {
                        out.value = limit;
                        out.abs_err = err;
                        out.converged = true;
                        return out;
                    }
                }
                prev_limit = limit;
                have_prev = true;
            }
        }
    }
    throw NoConvergence("pFq(1): term cap reached");
}

} // namespace detail
} // namespace heun

#endif
