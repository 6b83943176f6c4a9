#ifndef HEUN_BATCH_HPP
#define HEUN_BATCH_HPP

#include <vector>

#include "heun/expansions.hpp"
#include "heun/termination.hpp"

namespace heun::batch {

/// Evaluate one expansion on a grid of z values.  The _serial variants are
/// the reference implementations; the unsuffixed ones distribute across
/// OpenMP threads (identical per-point code path, so results match the
/// serial ones bit for bit) and fall back to serial without OpenMP.

std::vector<ExpansionValue> sum_expansion_grid_serial(const HeunParams& p,
                                                      const Expansion& e,
                                                      const std::vector<double>& zs,
                                                      double tol);

std::vector<ExpansionValue> sum_expansion_grid(const HeunParams& p, const Expansion& e,
                                               const std::vector<double>& zs, double tol);

/// Characteristic-polynomial root sweeps across independent parameter sets.
std::vector<QRootSet> q_roots_sweep_serial(const std::vector<HeunParams>& ps,
                                           const std::vector<TerminationCase>& cases);

std::vector<QRootSet> q_roots_sweep(const std::vector<HeunParams>& ps,
                                    const std::vector<TerminationCase>& cases);

} // namespace heun::batch

#endif
