#include "heun/batch.hpp"

#include <exception>

namespace heun::batch {

namespace {

// run f(i) for i in [0, n), OpenMP-parallel, propagating the first exception
template <class F>
void parallel_for(std::size_t n, F&& f) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

} // namespace

std::vector<ExpansionValue> sum_expansion_grid_serial(const HeunParams& p,
                                                      const Expansion& e,
                                                      const std::vector<double>& zs,
                                                      double tol) {
    std::vector<ExpansionValue> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = sum_expansion(p, e, zs[i], tol);
    return out;
}

std::vector<ExpansionValue> sum_expansion_grid(const HeunParams& p, const Expansion& e,
                                               const std::vector<double>& zs, double tol) {
    std::vector<ExpansionValue> out(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { out[i] = sum_expansion(p, e, zs[i], tol); });
    return out;
}

std::vector<QRootSet> q_roots_sweep_serial(const std::vector<HeunParams>& ps,
                                           const std::vector<TerminationCase>& cases) {
    if (ps.size() != cases.size())
        throw DomainError("q_roots_sweep: parameter and case lists differ in length");
    std::vector<QRootSet> out(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) out[i] = q_roots(ps[i], cases[i]);
    return out;
}

std::vector<QRootSet> q_roots_sweep(const std::vector<HeunParams>& ps,
                                    const std::vector<TerminationCase>& cases) {
    if (ps.size() != cases.size())
        throw DomainError("q_roots_sweep: parameter and case lists differ in length");
    std::vector<QRootSet> out(ps.size());
    parallel_for(ps.size(), [&](std::size_t i) { out[i] = q_roots(ps[i], cases[i]); });
    return out;
}

} // namespace heun::batch
