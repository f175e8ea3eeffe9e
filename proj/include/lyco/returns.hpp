#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lyco/orbit.hpp"

namespace lyco {

// Parameters the return-time layer needs. The perturbation builder derives
// one of these from its full parameter set.
struct ReturnParams {
    int N = 0;
    int gammaN = 0;      // gamma * N, integral
    int omega = 0;
    double p = 0;
    double beta = 0;
    index_t zeta_cap = 0;  // floor(zeta / mu(Z)): return-time cutoff for G
    index_t budget = 0;    // simulation cap per excursion (0: 50/mu(Z))

    double mu_z() const;
    double mu_w() const;
    index_t effective_budget() const;
};

// N^k with saturation; block-length thresholds N^{j+1} stay in range for
// every parameter set we run.
index_t ipow_sat(index_t base, int exp);

struct budget_exceeded_error : std::runtime_error {
    index_t cap;
    explicit budget_exceeded_error(index_t c)
        : std::runtime_error("return-time budget exceeded: cap " + std::to_string(c)), cap(c) {}
};

// A W-return block: v_0 = 1, v_1..v_{gammaN} = 0, no interior W-pattern.
struct ReturnBlock {
    std::vector<std::uint8_t> bits;
    index_t ones = 0;
    bool z_prefixed = false;  // C(v) subset of Z: starts 1 0^N (and |v| > N)

    index_t length() const { return static_cast<index_t>(bits.size()); }

    static ReturnBlock from_bits(std::vector<std::uint8_t> bits, const ReturnParams& par);
    // grammar check only (v0=1, forced zeros, no interior W-pattern)
    static bool valid(const std::vector<std::uint8_t>& bits, int gammaN);
};

// Decomposition of one Z-excursion into W-return blocks.
struct BlockParse {
    std::vector<ReturnBlock> blocks;      // v^1 .. v^t
    std::vector<index_t> tau_w_cum;       // tau_W^{(n)}, n = 1..t
    std::vector<index_t> ones_cum;        // S_{tau_W^{(n)}}
    bool truncated = false;

    index_t t() const { return static_cast<index_t>(blocks.size()); }
    index_t tau_z() const { return tau_w_cum.empty() ? 0 : tau_w_cum.back(); }
    index_t s_tau_z() const { return ones_cum.empty() ? 0 : ones_cum.back(); }
};

// smallest n >= 1 with f^{pos+n}(x) in W; requires in_W(x, pos).
index_t first_return_w(const OrbitBuffer& x, index_t pos, const ReturnParams& par);

// Parse the excursion of x in Z at pos into W-return blocks, ending at the
// first W-return that is also a Z-return. A truncated parse (budget hit) is
// flagged, not thrown; tail statistics count those.
BlockParse parse_blocks(const OrbitBuffer& x, index_t pos, const ReturnParams& par);

// G_l membership of a tuple of consecutive blocks: |v^j| < N^{j+1} for
// j < l, and the final block satisfies N^{l+1} <= |v| <= zeta_cap together
// with the deviation bound |ones - p |v|| <= beta |v|.
std::optional<int> classify_g_ell(const std::vector<ReturnBlock>& blocks,
                                  const ReturnParams& par);

struct GoodSetReport {
    bool verdict = false;
    // the four failure modes of Section-4 numbering plus the long-return cutoff
    bool fail_first_block = false;     // (1) |v^1| < N^2 (or deviation on v^1)
    bool fail_deviation = false;       // (2) some long block breaks the deviation bound
    bool fail_short_chain = false;     // (3) omega consecutive short blocks
    bool fail_last_block = false;      // (4) |v^t| < N^{omega+1}
    bool fail_long_return = false;     // tau_Z > zeta_cap (or truncated parse)
    std::optional<std::vector<std::pair<index_t, int>>> partition;  // (start idx, l)
};

GoodSetReport good_set_membership(const BlockParse& parse, const ReturnParams& par);

// Greedy left-to-right partition; precondition: good_set_membership verdict.
std::vector<std::pair<index_t, int>> partition_good(const BlockParse& parse,
                                                    const ReturnParams& par);

// Closed-form Section-4 upper bound for mu_Z(Z \ G), evaluated at the given
// parameters (it is typically vacuous, i.e. > 1, at desk-scale N).
double good_set_mass_bound(const ReturnParams& par, double zeta, double eta_hat);

// ---- statistics ----

struct TailStats {
    std::vector<double> a_grid;
    std::vector<double> tail;       // empirical mu_Z(tau_Z > a / mu(Z))
    std::vector<double> tail_se;
    double eta_hat = 0;             // max over grid of tail * e^a
    double mean_tau = 0, mean_tau_se = 0;
    double truncated_rate = 0;
};

TailStats return_tail_stats(double p, int N, int samples, std::uint64_t seed,
                            std::vector<double> a_grid = {0.5, 1.0, 1.5, 2.0, 3.0},
                            int workers = 1);

struct ChernoffRow {
    index_t n = 0;
    double empirical = 0, empirical_se = 0;
    double bound = 0;               // e^{-n beta^2 / 2}
    double exact = 0;               // exact binomial tail
};

std::vector<ChernoffRow> chernoff_check(double p, double beta, std::vector<index_t> n_grid,
                                        int samples, std::uint64_t seed, int workers = 1);

// exact P(|S_n - p n| > beta n), S_n ~ Binomial(n, p)
double binomial_deviation_exact(index_t n, double p, double beta);

struct WaldReport {
    int samples = 0;
    double mean_tau = 0, mean_tau_se = 0;
    double mean_T = 0, mean_T_se = 0;          // T = 2 S_{tau_Z} - tau_Z + N
    double mean_S = 0, mean_S_se = 0;
    double mean_psi = 0, mean_psi_se = 0;      // psi = T - T o f^{tau_Z}
    double mean_psi2 = 0, mean_psi2_se = 0;
    // references
    double kac = 0;                            // mu(Z)^{-1}
    double paper_mean_T = 0;                   // (2p-1)(mu(Z)^{-1} - N)
    double exact_mean_T = 0;                   // (2p-1) mu(Z)^{-1} + N  (Kakutani tower)
    double exact_mean_S = 0;                   // p mu(Z)^{-1}
    double paper_psi2 = 0;                     // 2 (1-(2p-1)^2)(mu(Z)^{-1} - N)
    // Chebyshev step at a = mu(Z)^{-3/4}
    double cheb_lhs = 0;                       // empirical mu_Z(|psi| > a)
    double cheb_rhs = 0;                       // empirical E[psi^2] / a^2
};

WaldReport wald_check(double p, int N, int samples, std::uint64_t seed, int workers = 1);

} // namespace lyco
