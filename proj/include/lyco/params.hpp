#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lyco/returns.hpp"

namespace lyco {

// Construction failures carry a machine-readable code; the CLI maps
// hypothesis/feasibility failures to exit code 2.
struct construction_error : std::runtime_error {
    std::string code;
    construction_error(std::string code_, const std::string& what_)
        : std::runtime_error(what_), code(std::move(code_)) {}
};

struct FamilyMargin {
    std::string name;
    double log_margin = 0;   // log RHS - log LHS; positive = satisfied
    bool satisfied = false;
    bool vacuous = false;    // family constrains nothing at these parameters
};

struct FeasibilityReport {
    int N = 0;
    bool feasible = false;
    bool overridden = false;            // N was forced by the caller
    std::vector<FamilyMargin> margins;  // at the reported N
    std::string binding;                // least-margin family
};

// Fixed and derived parameters of the Section-2/3 construction.
struct ConstructionParams {
    // inputs
    double sigma = 0, p = 0, alpha = 0, kappa = 0, eps = 0;
    double eta_hat = 1.0;

    // derived
    int gamma_q = 1;      // gamma = 1 / gamma_q
    double gamma = 1;
    int omega = 2;
    double beta = 0;
    double zeta = 0;
    double xi = 0;        // sigma^{-4p+2+4beta} 2^alpha
    int N = 0;
    int gammaN = 0;
    double theta = 0;     // eps^{-1} sigma^{4-2N} 2^{gamma alpha N}
    double delta0 = 0;    // eps 2^{-gamma alpha N}
    bool sigma_bumped = false;

    FeasibilityReport feasibility;

    double mu_z() const { return p * std::pow(1.0 - p, N); }
    double mu_w() const { return p * std::pow(1.0 - p, gammaN); }
    index_t zeta_cap() const { return static_cast<index_t>(zeta / mu_z()); }

    ReturnParams returns() const {
        ReturnParams r;
        r.N = N;
        r.gammaN = gammaN;
        r.omega = omega;
        r.p = p;
        r.beta = beta;
        r.zeta_cap = zeta_cap();
        return r;
    }
};

// Section-2 parameter selection. Requires sigma^{4p-2} >= 2^alpha; the
// boundary case is reduced to the strict one by bumping sigma within
// `sigma_bump`. N is left at 0; fill it with feasible_N or set_N.
ConstructionParams select_parameters(double sigma, double p, double alpha, double kappa,
                                     double eps, double eta_hat = 1.0,
                                     double sigma_bump = 1e-3);

// Smallest admissible N (gamma N integral) satisfying the inequality
// families with this artifact's explicit constants:
//   F1          eps^{-1} 2^{gamma alpha N} sigma^{-2(N-2)} < eps 2^{-alpha N}
//   F2          3 sigma xi^{N^2} <= 1
//   F3(l,k)     the stage-l tuple family, 1 <= k <= l <= omega (gamma < 1)
// Returns params with N, theta, delta0 and the margin report filled.
ConstructionParams feasible_N(ConstructionParams par, int n_cap = 2048);

// Force a particular N (feasibility margins still evaluated and reported).
ConstructionParams set_N(ConstructionParams par, int N);

// Individual margins at a given N (used by feasible_N and the reports).
std::vector<FamilyMargin> feasibility_margins(const ConstructionParams& par, int N);

} // namespace lyco
