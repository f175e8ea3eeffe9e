#pragma once

#include <cstdint>

#include "lyco/cocycle.hpp"
#include "lyco/parallel.hpp"

namespace lyco {

struct LyapEstimate {
    double mean = 0;       // nats per step
    double stderr_ = 0;    // sample sd across replicas / sqrt(replicas)
    index_t orbit_length = 0;
    int replicas = 0;
};

// (1/T) log||A^T(x)|| averaged over M independent mu_p-orbits. Replicas run
// in parallel with counter-derived seeds; the reduction is sequential by
// replica index, so the result does not depend on `workers`.
LyapEstimate lyapunov_mc(const Cocycle& A, double p, index_t T, int M, std::uint64_t seed,
                         int workers = 1);

struct InducedEstimate {
    double first_return = 0;     // mu(Z) * E[ log||A^{tau_Z}|| ]
    double first_return_se = 0;
    double second_return = 0;    // mu(Z) * (1/2) * E[ log||A^{tau_Z^(2)}|| ]
    double second_return_se = 0;
    double mean_tau = 0;         // Kac check: should be ~ mu(Z)^{-1}
    double mean_tau_se = 0;
    double discard_rate = 0;     // excursions that hit the step budget
    index_t budget = 0;
    int samples_used = 0;
};

// Induced-map estimates over mu_Z samples. Excursions that do not reach the
// second return within `budget_factor / mu(Z)` steps are discarded and
// counted.
InducedEstimate lyapunov_induced(const Cocycle& A, double p, int N, int samples,
                                 std::uint64_t seed, int workers = 1,
                                 double budget_factor = 50.0);

} // namespace lyco
