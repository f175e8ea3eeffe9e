#pragma once

#include <cstdint>

#include "lyco/cocycle.hpp"

namespace lyco {

struct HolderNorm {
    double sup = 0;        // sup_x ||D(x)||
    double seminorm = 0;   // sup pairs ||D(x)-D(y)|| / d(x,y)^alpha
    double total() const { return sup + seminorm; }
};

// Exact alpha-Hoelder norm of a fixed-window cocycle by enumeration of the
// window words. The seminorm only sees pairs agreeing on |n| < k for
// k <= max(|lo|, hi), since beyond the window the values coincide.
// Throws cocycle_window_error when the enumeration would exceed the pair
// budget; use holder_distance_sampled instead.
HolderNorm holder_norm_exact(const Cocycle& A, double alpha);

// Same, for the pointwise difference A - B (window = union of windows).
HolderNorm holder_diff_norm_exact(const Cocycle& A, const Cocycle& B, double alpha);

// Certified lower bound on ||A - B||_alpha from sampled points and sampled
// pairs agreeing on |n| < k, k <= radius. Never decreases in `samples`.
HolderNorm holder_distance_sampled(const Cocycle& A, const Cocycle& B, double alpha,
                                   int samples, int radius, std::uint64_t seed,
                                   double p = 0.5);

// sup over words of ||A^n(x)|| * ||(A^n(x))^{-1}|| (exact enumeration).
double fiber_bunching_product(const Cocycle& A, int n);

// Fiber bunched iff some n <= n_max has the product < 2^{alpha n}.
bool is_fiber_bunched(const Cocycle& A, double alpha, int n_max = 8);

} // namespace lyco
