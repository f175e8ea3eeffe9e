#include "lyco/params.hpp"

#include <cmath>

namespace lyco {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// log(exp(a) + exp(b)) without overflow
double logaddexp(double a, double b) {
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// P(m) = sum_{j=1}^{m} N^{j+1}
double poly_sum(int N, int m) {
    double s = 0;
    for (int j = 1; j <= m; ++j) s += std::pow(static_cast<double>(N), j + 1);
    return s;
}

} // namespace

ConstructionParams select_parameters(double sigma, double p, double alpha, double kappa,
                                     double eps, double eta_hat, double sigma_bump) {
    if (!(sigma > 1.0)) throw construction_error("bad_input", "sigma > 1 required");
    if (!(p > 0.5 && p < 1.0)) throw construction_error("bad_input", "p in (1/2, 1) required");
    if (!(alpha > 0.0)) throw construction_error("bad_input", "alpha > 0 required");
    if (!(eps > 0.0)) throw construction_error("bad_input", "eps > 0 required");

    // hypothesis sigma^{4p-2} >= 2^alpha; reduce equality to strictness by a
    // sigma bump (the theorem's own reduction)
    double lhs = (4 * p - 2) * std::log(sigma);
    double rhs = alpha * kLn2;
    bool bumped = false;
    if (lhs <= rhs) {
        if (lhs >= rhs * (1.0 - 1e-9) - 1e-12) {
            sigma *= 1.0 + sigma_bump;
            bumped = true;
            lhs = (4 * p - 2) * std::log(sigma);
        } else {
            throw construction_error("hypothesis_violated",
                                     "sigma^{4p-2} >= 2^alpha fails: the Theorem-1 hypothesis");
        }
    }

    if (!(kappa > 0.0 && kappa <= (2 * p - 1) * std::log(sigma)))
        throw construction_error("bad_input", "kappa in (0, (2p-1) log sigma] required");

    ConstructionParams par;
    par.sigma = sigma;
    par.p = p;
    par.alpha = alpha;
    par.kappa = kappa;
    par.eps = eps;
    par.eta_hat = eta_hat;
    par.sigma_bumped = bumped;

    // gamma: largest 1/q with sigma^2 > 2^{(gamma+1) alpha}
    int q = 0;
    for (int cand = 1; cand <= 64; ++cand) {
        double g = 1.0 / cand;
        if (2.0 * std::log(sigma) > (g + 1.0) * alpha * kLn2) {
            q = cand;
            break;
        }
    }
    if (q == 0)
        throw construction_error("no_feasible_gamma",
                                 "no gamma = 1/q, q <= 64, with sigma^2 > 2^{(gamma+1) alpha}");
    par.gamma_q = q;
    par.gamma = 1.0 / q;
    par.omega = q + 1;  // smallest integer > 1/gamma

    // beta: half of half the admissible slack, sigma^{4p-2-4beta} > 2^alpha
    double slack = (4 * p - 2) - alpha * kLn2 / std::log(sigma);
    par.beta = slack / 8.0;
    par.xi = std::pow(sigma, -4 * p + 2 + 4 * par.beta) * std::pow(2.0, alpha);
    if (!(par.xi < 1.0))
        throw construction_error("internal", "xi >= 1 after beta selection");

    // zeta: smallest half-integer > 1 with eta (log sigma^2) e^{-z}/(1-e^{-z})^2 < kappa/100
    double z = 1.5;
    for (; z <= 400.0; z += 0.5) {
        double val = eta_hat * std::log(sigma * sigma) * std::exp(-z) /
                     ((1 - std::exp(-z)) * (1 - std::exp(-z)));
        if (val < kappa / 100.0) break;
    }
    if (z > 400.0) throw construction_error("internal", "no zeta <= 400 satisfies the kappa/100 bound");
    par.zeta = z;
    return par;
}

std::vector<FamilyMargin> feasibility_margins(const ConstructionParams& par, int N) {
    std::vector<FamilyMargin> out;
    double lsig = std::log(par.sigma);
    double lxi = std::log(par.xi);
    double gN = static_cast<double>(N) / par.gamma_q;

    {
        FamilyMargin f;
        f.name = "F1_theta";
        double lhs = -std::log(par.eps) + gN * par.alpha * kLn2 - 2.0 * (N - 2) * lsig;
        double rhs = std::log(par.eps) - par.alpha * N * kLn2;
        f.log_margin = rhs - lhs;
        f.satisfied = f.log_margin > 0;
        out.push_back(f);
    }
    {
        FamilyMargin f;
        f.name = "F2_b0";
        f.log_margin = -(std::log(3.0 * par.sigma) +
                         static_cast<double>(N) * N * lxi);
        f.satisfied = f.log_margin > 0;
        out.push_back(f);
    }
    for (int l = 1; l <= par.omega; ++l) {
        for (int k = 1; k <= l; ++k) {
            FamilyMargin f;
            f.name = "F3_stage_l" + std::to_string(l) + "_k" + std::to_string(k);
            if (par.gamma_q == 1) {
                // gamma = 1: W = Z, no W\Z blocks exist, the stage
                // modifications are empty
                f.vacuous = true;
                f.satisfied = true;
                f.log_margin = std::numeric_limits<double>::infinity();
                out.push_back(f);
                continue;
            }
            double Pk1 = poly_sum(N, k - 1);
            double Pl1 = poly_sum(N, l - 1);
            double probe = 2.0 * std::pow(static_cast<double>(N), std::max(l - k + 1, 1));
            double depth = std::max(Pl1, Pk1 + probe + gN + 1.0);
            double logF3 = std::pow(static_cast<double>(N), l + 1) * lxi +
                           logaddexp(0.0, std::log(2.0 * k) + 2.0 * Pk1 * lsig +
                                              par.alpha * gN * kLn2) +
                           par.alpha * kLn2 * depth + std::log(3.0 * par.sigma);
            f.log_margin = -logF3;
            f.satisfied = f.log_margin > 0;
            out.push_back(f);
        }
    }
    return out;
}

namespace {

ConstructionParams finish(ConstructionParams par, int N, bool overridden) {
    par.N = N;
    par.gammaN = N / par.gamma_q;
    par.theta = (1.0 / par.eps) * std::pow(par.sigma, 4.0 - 2.0 * N) *
                std::pow(2.0, par.gamma * par.alpha * N);
    par.delta0 = par.eps * std::pow(2.0, -par.gamma * par.alpha * N);
    par.feasibility.N = N;
    par.feasibility.overridden = overridden;
    par.feasibility.margins = feasibility_margins(par, N);
    par.feasibility.feasible = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& m : par.feasibility.margins) {
        if (!m.satisfied) par.feasibility.feasible = false;
        if (!m.vacuous && m.log_margin < worst) {
            worst = m.log_margin;
            par.feasibility.binding = m.name;
        }
    }
    return par;
}

} // namespace

ConstructionParams feasible_N(ConstructionParams par, int n_cap) {
    for (int N = std::max(2, par.gamma_q); N <= n_cap; N += par.gamma_q) {
        if (N % par.gamma_q != 0) continue;
        auto margins = feasibility_margins(par, N);
        bool ok = true;
        for (const auto& m : margins)
            if (!m.satisfied) ok = false;
        if (ok) return finish(std::move(par), N, false);
    }
    // infeasible at cap: report the binding constraint at the cap
    auto margins = feasibility_margins(par, n_cap);
    std::string binding;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& m : margins)
        if (!m.vacuous && m.log_margin < worst) {
            worst = m.log_margin;
            binding = m.name;
        }
    throw construction_error("infeasible_at_cap",
                             "no feasible N <= " + std::to_string(n_cap) +
                                 "; binding constraint: " + binding);
}

ConstructionParams set_N(ConstructionParams par, int N) {
    if (N < 2 || N % par.gamma_q != 0)
        throw construction_error("bad_input", "N must be >= 2 with gamma N integral");
    return finish(std::move(par), N, true);
}

} // namespace lyco
