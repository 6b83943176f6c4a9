#ifndef HEUN_LOCAL_SERIES_HPP
#define HEUN_LOCAL_SERIES_HPP

#include <vector>

#include "heun/params.hpp"

namespace heun {

/// Frobenius power-series solution at z = 0 for the exponent-0 branch,
/// normalized to c0 = 1.  Valid inside |z| < min(1, |a|).
struct LocalSeries {
    std::vector<double> coefficients;  // c0 .. cK
    double radius_hint = 1.0;          // min(1, |a|)
};

/// Evaluation of a LocalSeries: value, derivative and the magnitude of the
/// last retained term (a crude truncation indicator).
struct LocalValue {
    double u = 0.0;
    double du = 0.0;
    double tail = 0.0;
};

/// Coefficients of the exponent-0 local solution via the three-term
/// recurrence obtained by inserting a power series into the equation
/// multiplied through by z (z-1) (z-a):
///
///   a (k+1)(k+gamma) c_{k+1}
///     = [k ((k-1+gamma)(1+a) + a delta + epsilon) + q] c_k
///       - (k-1+alpha)(k-1+beta) c_{k-1}.
///
/// Throws PoleError when gamma is a non-positive integer; requires K >= 2.
LocalSeries frobenius_series(const HeunParams& p, int order);

/// Horner evaluation of the series and its term-wise derivative.
/// Throws DomainError outside the radius hint.
LocalValue eval_local(const LocalSeries& series, double z);

} // namespace heun

#endif
