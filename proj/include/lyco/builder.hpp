#pragma once

#include <memory>
#include <optional>

#include "lyco/cocycle.hpp"
#include "lyco/params.hpp"

namespace lyco {

// Construction stages. Levels: -2 = B_*, -1 = B, l in [0, omega] = B_l,
// with L = B_omega. The homotopy parameter t scales every shear.
class StageCocycle : public Cocycle {
public:
    StageCocycle(ConstructionParams par, int level, double t = 1.0);

    Mat2 value(const OrbitBuffer& x, index_t pos) const override;
    Window dependence() const override;
    Mat2 value_resolved(const OrbitBuffer& x, index_t pos,
                        index_t* lo, index_t* hi) const override;

    const ConstructionParams& params() const { return par_; }
    int level() const { return level_; }
    double t() const { return t_; }

    // The layered evaluation with an optional exclusion of the block-end
    // shear at `exclude_end` (used by the shear solvers) and t forced to 1.
    Mat2 value_solver(const OrbitBuffer& x, index_t pos, index_t exclude_end) const;

private:
    struct Extent;  // consulted-coordinate tracking
    Mat2 value_impl(const OrbitBuffer& x, index_t pos, double t, index_t exclude_end,
                    Extent* ext) const;
    std::optional<double> block_end_shear(const OrbitBuffer& x, index_t pos, Extent* ext) const;

    ConstructionParams par_;
    int level_;
    double t_;
};

using StagePtr = std::shared_ptr<const StageCocycle>;

StagePtr build_b_star(const ConstructionParams& par);
StagePtr build_b(const ConstructionParams& par);
StagePtr build_stage(const ConstructionParams& par, int level);  // B_level
StagePtr build_l(const ConstructionParams& par);                 // B_omega
StagePtr homotopy(const StageCocycle& L, double t);               // shears scaled by t

// theta with R1^{-theta}(B_*^N(x) e1) parallel to e2 for x in Z, solved from
// the closed form; solve_theta_product recomputes it from the actual
// B_*^N product as a cross-check.
double solve_theta(const ConstructionParams& par);
double solve_theta_product(const ConstructionParams& par);

// delta(v) for a Z-prefixed block in G_1: R2^{delta}(B^{tau_W}(x) e2)
// parallel to e1, solved by direct product over the block word. Asserts the
// alpha-form smallness bound; the sign/magnitude is also reported in log
// scale (delta can underflow for long blocks, which is harmless).
struct ShearSolve {
    double delta = 0;
    double log_abs_delta = 0;  // -inf when delta underflows to 0
    double log_bound = 0;      // log( eps 2^{-alpha(span + gamma N)} )
    bool paper_bound_no_alpha = false;  // delta < eps 2^{-(span + gamma N)} (Section-3 display)
};

ShearSolve solve_delta_v(const ReturnBlock& v, const ConstructionParams& par);

// delta(u^1,...,u^{k-1},v) for a G_k tuple of W\Z blocks, by direct product
// over the concatenated word with the interior modifications included.
ShearSolve solve_delta_tuple(const std::vector<ReturnBlock>& blocks,
                             const ConstructionParams& par);

// Certified upper bound on ||A - stage||_alpha, split as
// sup-term + 2 * weighted-term with per-class majorants. Every entry is
// linear in eps (and in t), using the assertion bounds rather than the
// solved shears.
struct LedgerEntry {
    std::string cls;
    double sup = 0;       // bound on ||D|| on this class
    double weighted = 0;  // bound on ||D|| 2^{alpha r} on this class
};

struct LedgerReport {
    std::vector<LedgerEntry> entries;
    double sup_term = 0;       // max over classes
    double seminorm_term = 0;  // 2 * max over classes of weighted
    double total = 0;
    double per_eps = 0;        // total / eps (homotopy: / (eps t))
    double sup_norm_bound = 0; // bound on sup ||stage(x)||
};

LedgerReport holder_ledger(const StageCocycle& stage);

} // namespace lyco
