#ifndef HEUN_VERIFY_HPP
#define HEUN_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "heun/termination.hpp"

namespace heun::verify {

/// Outcome of one randomized property suite.
struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double worst = 0.0;      // worst residual seen
    double threshold = 0.0;  // pass bound the residuals were held to
};

/// Deterministic splitmix64 stream; identical sequences for identical seeds.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * ((next() >> 11) * 0x1.0p-53);
    }
    int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

/// Derivative / shift relations linking 2F1 values at lower parameters
/// c-1, c, c+1.
SuiteResult contiguous_suite(std::uint64_t seed, int cases);

/// (1-z)^{k-beta} basis change for integer k = 1..5.
SuiteResult euler_transform_suite(std::uint64_t seed, int cases);

/// Closed form at z = 1 against a Richardson-extrapolated series ladder
/// z = 1 - 2^-j.
SuiteResult gauss_summation_suite(std::uint64_t seed, int cases);

/// Frobenius series, adaptive integration and terminating-expansion
/// summation mutually agree on randomly drawn terminating parameter sets.
/// (Non-terminating expansions converge to series limits that do not solve
/// the equation, so solution-level cross-checks sample the terminating
/// family; see README.)
SuiteResult oracle_agreement_suite(std::uint64_t seed, int cases);

/// Recurrence-generated two-term coefficients against the closed
/// Pochhammer-ratio forms, ascending and descending, plus the degenerate
/// two-term recurrence identity.
SuiteResult two_term_suite(std::uint64_t seed, int cases);

/// Ascending and descending (gamma0 = gamma) finite solutions coincide for
/// Eps-type termination.
SuiteResult mirror_equivalence_suite(std::uint64_t seed, int cases);

/// All six suites at their default case counts.
std::vector<SuiteResult> run_all(std::uint64_t seed);

/// Oracle helpers shared with the acceptance suite.

/// 2F1(a,b;c;1) by raw series at z = 1 - 2^-j, j = 3..10, extrapolated with
/// the exponent ladder {c-a-b, c-a-b+1, ...} merged with {1, 2, ...}.
double extrapolated_series_at_one(double a, double b, double c);

/// |Heun residual| of a finite solution at z with centered differences of
/// step h, evaluated in extended precision (the h^-2 amplification of
/// double round-off would otherwise swamp residuals near 1e-7).
double finite_solution_fd_residual(const FiniteSolution& s, double z, double h = 1e-5);

/// Draw a random terminating parameter set (with q already set to a real
/// characteristic root) or return false if the stream yields none quickly.
bool sample_terminating_instance(Rng& rng, HeunParams& out, TerminationCase& tc_out);

} // namespace heun::verify

#endif
