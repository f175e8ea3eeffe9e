#include "lyco/returns.hpp"

#include <cmath>

#include "lyco/parallel.hpp"
#include "lyco/rng.hpp"

namespace lyco {

double ReturnParams::mu_z() const { return p * std::pow(1.0 - p, N); }
double ReturnParams::mu_w() const { return p * std::pow(1.0 - p, gammaN); }
index_t ReturnParams::effective_budget() const {
    return budget > 0 ? budget : static_cast<index_t>(50.0 / mu_z());
}

index_t ipow_sat(index_t base, int exp) {
    index_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (std::numeric_limits<index_t>::max() / base)) return std::numeric_limits<index_t>::max();
        r *= base;
    }
    return r;
}

bool ReturnBlock::valid(const std::vector<std::uint8_t>& bits, int gammaN) {
    index_t m = static_cast<index_t>(bits.size());
    if (m < gammaN + 1) return false;
    if (bits[0] != 1) return false;
    for (int i = 1; i <= gammaN; ++i)
        if (bits[static_cast<std::size_t>(i)] != 0) return false;
    // no subsegment of v_{gammaN+1} .. v_{m-1} equal to 1 0^gammaN
    for (index_t i = gammaN + 1; i + gammaN < m; ++i) {
        if (bits[static_cast<std::size_t>(i)] != 1) continue;
        bool w = true;
        for (int j = 1; j <= gammaN; ++j)
            if (bits[static_cast<std::size_t>(i + j)] != 0) { w = false; break; }
        if (w) return false;
    }
    return true;
}

ReturnBlock ReturnBlock::from_bits(std::vector<std::uint8_t> bits, const ReturnParams& par) {
    if (!valid(bits, par.gammaN))
        throw std::invalid_argument("ReturnBlock: not a W-return block");
    ReturnBlock b;
    b.ones = 0;
    for (auto v : bits) b.ones += v;
    index_t m = static_cast<index_t>(bits.size());
    b.z_prefixed = m > par.N;
    for (int i = 1; i <= par.N && b.z_prefixed; ++i)
        if (bits[static_cast<std::size_t>(i)] != 0) b.z_prefixed = false;
    b.bits = std::move(bits);
    return b;
}

index_t first_return_w(const OrbitBuffer& x, index_t pos, const ReturnParams& par) {
    if (!in_w(x, pos, par.gammaN))
        throw std::invalid_argument("first_return_w: x not in W at pos");
    index_t cap = par.effective_budget();
    for (index_t n = 1; n <= cap; ++n)
        if (in_w(x, pos + n, par.gammaN)) return n;
    throw budget_exceeded_error(cap);
}

BlockParse parse_blocks(const OrbitBuffer& x, index_t pos, const ReturnParams& par) {
    if (!in_z(x, pos, par.N))
        throw std::invalid_argument("parse_blocks: x not in Z at pos");
    BlockParse out;
    index_t cap = par.effective_budget();
    index_t cur = pos;
    index_t total = 0, ones = 0;
    for (;;) {
        // next W-visit after cur
        index_t nxt = -1;
        for (index_t n = cur + 1; n - pos <= cap; ++n) {
            if (in_w(x, n, par.gammaN)) { nxt = n; break; }
        }
        if (nxt < 0) {
            out.truncated = true;
            return out;
        }
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(nxt - cur));
        index_t bones = 0;
        for (index_t i = cur; i < nxt; ++i) {
            bits[static_cast<std::size_t>(i - cur)] = static_cast<std::uint8_t>(x.bit(i));
            bones += x.bit(i);
        }
        ReturnBlock blk;
        blk.bits = std::move(bits);
        blk.ones = bones;
        blk.z_prefixed = in_z(x, cur, par.N);
        total += blk.length();
        ones += bones;
        out.blocks.push_back(std::move(blk));
        out.tau_w_cum.push_back(total);
        out.ones_cum.push_back(ones);
        if (in_z(x, nxt, par.N)) return out;  // this W-return is the Z-return
        cur = nxt;
    }
}

namespace {

bool deviation_ok(index_t len, index_t ones, const ReturnParams& par) {
    return std::fabs(static_cast<double>(ones) - par.p * static_cast<double>(len)) <=
           par.beta * static_cast<double>(len);
}

} // namespace

std::optional<int> classify_g_ell(const std::vector<ReturnBlock>& blocks,
                                  const ReturnParams& par) {
    if (blocks.empty()) return std::nullopt;
    int l = static_cast<int>(blocks.size());
    for (int j = 1; j <= l - 1; ++j)
        if (blocks[static_cast<std::size_t>(j - 1)].length() >= ipow_sat(par.N, j + 1))
            return std::nullopt;
    const ReturnBlock& last = blocks.back();
    if (last.length() < ipow_sat(par.N, l + 1)) return std::nullopt;
    if (last.length() > par.zeta_cap) return std::nullopt;
    if (!deviation_ok(last.length(), last.ones, par)) return std::nullopt;
    return l;
}

GoodSetReport good_set_membership(const BlockParse& parse, const ReturnParams& par) {
    GoodSetReport rep;
    if (parse.truncated || parse.blocks.empty()) {
        rep.fail_long_return = true;
        return rep;
    }
    index_t n2 = ipow_sat(par.N, 2);
    const auto& bs = parse.blocks;

    rep.fail_first_block = bs.front().length() < n2;
    for (const auto& b : bs)
        if (b.length() >= n2 && !deviation_ok(b.length(), b.ones, par))
            rep.fail_deviation = true;
    // (3): some i with |v^{i+j-1}| < N^{j+1} for all 1 <= j <= omega
    index_t t = parse.t();
    for (index_t i = 0; i + par.omega <= t; ++i) {
        bool all_short = true;
        for (int j = 1; j <= par.omega; ++j) {
            if (bs[static_cast<std::size_t>(i + j - 1)].length() >= ipow_sat(par.N, j + 1)) {
                all_short = false;
                break;
            }
        }
        if (all_short) { rep.fail_short_chain = true; break; }
    }
    rep.fail_last_block = bs.back().length() < ipow_sat(par.N, par.omega + 1);
    rep.fail_long_return = parse.tau_z() > par.zeta_cap;

    rep.verdict = !(rep.fail_first_block || rep.fail_deviation || rep.fail_short_chain ||
                    rep.fail_last_block || rep.fail_long_return);
    if (rep.verdict) rep.partition = partition_good(parse, par);
    return rep;
}

std::vector<std::pair<index_t, int>> partition_good(const BlockParse& parse,
                                                    const ReturnParams& par) {
    std::vector<std::pair<index_t, int>> parts;
    index_t t = parse.t();
    index_t k = 0;
    while (k < t) {
        // next part: single block if long, else extend to the first j with
        // |v^{k+j}| >= N^{j+1}
        int l = -1;
        for (int j = 1; j <= par.omega; ++j) {
            if (k + j > t) break;
            if (parse.blocks[static_cast<std::size_t>(k + j - 1)].length() >=
                ipow_sat(par.N, j + 1)) {
                l = j;
                break;
            }
        }
        if (l < 0)
            throw std::logic_error("partition_good: no admissible part on a good parse");
        std::vector<ReturnBlock> part(parse.blocks.begin() + k, parse.blocks.begin() + k + l);
        auto cls = classify_g_ell(part, par);
        if (!cls || *cls != l)
            throw std::logic_error("partition_good: part fails G_l classification");
        parts.emplace_back(k, l);
        k += l;
    }
    return parts;
}

double good_set_mass_bound(const ReturnParams& par, double zeta, double eta_hat) {
    double p = par.p, N = par.N;
    double gamma = static_cast<double>(par.gammaN) / N;
    double muW = par.mu_w();
    double b2 = par.beta * par.beta;
    double t1 = N * N * muW;
    double t2 = zeta / p * std::pow(1.0 - p, (gamma - 2.0) * N) *
                std::exp(-N * N * b2 / 2.0) / (1.0 - std::exp(-b2 / 2.0));
    double t3 = zeta *
                std::pow(N, static_cast<double>((par.omega + 1) * (par.omega + 2)) / 2.0) *
                std::pow(p, par.omega - 1) *
                std::pow(1.0 - p, (par.omega * gamma - 1.0) * N);
    double t4 = std::pow(N, par.omega + 1) * muW;
    double t5 = eta_hat * std::exp(-zeta);
    return t1 + t2 + t3 + t4 + t5;
}

// ---- statistics ----

namespace {

// Lean excursion scanner: first `count` Z-return times and one-counts of a
// mu_Z-conditioned orbit, via the ones-gap characterization of Z-visits.
struct Excursions {
    std::vector<index_t> tau, ones;
    bool ok = false;
};

Excursions scan_excursions(double p, int N, std::uint64_t seed, int count, index_t budget) {
    Excursions e;
    OrbitBuffer x = sample_conditioned_z(p, N, seed);
    index_t prev_one = 0;     // position of the last 1 seen
    index_t prev_z = 0;       // last Z-visit
    index_t ones_at_prev_z = 0;
    index_t ones = 1;         // x_0 = 1
    index_t limit = budget * (count + 1);
    for (index_t i = N + 1; i <= limit; ++i) {
        if (x.bit(i) != 1) continue;
        if (i - prev_one > N && prev_one > prev_z) {
            // prev_one followed by >= N zeros: Z-visit (the starting visit at
            // 0 is excluded by prev_one > prev_z)
            e.tau.push_back(prev_one - prev_z);
            e.ones.push_back(ones - ones_at_prev_z);
            prev_z = prev_one;
            ones_at_prev_z = ones;
            if (static_cast<int>(e.tau.size()) == count) {
                e.ok = true;
                return e;
            }
        }
        prev_one = i;
        ++ones;
    }
    return e;  // budget exhausted
}

} // namespace

TailStats return_tail_stats(double p, int N, int samples, std::uint64_t seed,
                            std::vector<double> a_grid, int workers) {
    double muZinv = 1.0 / (p * std::pow(1.0 - p, N));
    index_t budget = static_cast<index_t>(50.0 * muZinv);
    struct Row { double tau = -1; };
    auto rows = parallel_map<Row>(static_cast<std::size_t>(samples), workers, [&](std::size_t s) {
        Excursions e = scan_excursions(p, N, derive_seed(seed, s), 1, budget);
        Row r;
        if (e.ok) r.tau = static_cast<double>(e.tau[0]);
        return r;
    });
    TailStats out;
    out.a_grid = a_grid;
    std::vector<double> taus;
    int truncated = 0;
    for (const auto& r : rows) {
        if (r.tau < 0) ++truncated;
        else taus.push_back(r.tau);
    }
    out.truncated_rate = static_cast<double>(truncated) / samples;
    MeanStderr m = mean_stderr(taus);
    out.mean_tau = m.mean;
    out.mean_tau_se = m.stderr_;
    for (double a : a_grid) {
        double thr = a * muZinv;
        index_t hits = truncated;  // truncated excursions exceed every grid point
        for (double t : taus)
            if (t > thr) ++hits;
        double q = static_cast<double>(hits) / samples;
        out.tail.push_back(q);
        out.tail_se.push_back(std::sqrt(q * (1 - q) / samples));
        if (q > 0) out.eta_hat = std::max(out.eta_hat, q * std::exp(a));
    }
    return out;
}

double binomial_deviation_exact(index_t n, double p, double beta) {
    double lo = p * n - beta * n;
    double hi = p * n + beta * n;
    double total = 0;
    for (index_t k = 0; k <= n; ++k) {
        double kd = static_cast<double>(k);
        if (kd >= lo && kd <= hi) continue;  // |k - pn| <= beta n
        double lg = std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) +
                    kd * std::log(p) + (n - kd) * std::log1p(-p);
        total += std::exp(lg);
    }
    return total;
}

std::vector<ChernoffRow> chernoff_check(double p, double beta, std::vector<index_t> n_grid,
                                        int samples, std::uint64_t seed, int workers) {
    std::vector<ChernoffRow> rows;
    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        index_t n = n_grid[gi];
        auto devs = parallel_map<int>(static_cast<std::size_t>(samples), workers,
                                      [&](std::size_t s) {
            RngStream g(derive_seed(seed, (gi << 32) ^ s), 1);
            index_t ones = 0;
            for (index_t i = 0; i < n; ++i) ones += g.bernoulli(p) ? 1 : 0;
            return std::fabs(static_cast<double>(ones) - p * n) > beta * n ? 1 : 0;
        });
        index_t hits = 0;
        for (int d : devs) hits += d;
        ChernoffRow r;
        r.n = n;
        r.empirical = static_cast<double>(hits) / samples;
        r.empirical_se = std::sqrt(r.empirical * (1 - r.empirical) / samples);
        r.bound = std::exp(-static_cast<double>(n) * beta * beta / 2.0);
        r.exact = binomial_deviation_exact(n, p, beta);
        rows.push_back(r);
    }
    return rows;
}

WaldReport wald_check(double p, int N, int samples, std::uint64_t seed, int workers) {
    double muZinv = 1.0 / (p * std::pow(1.0 - p, N));
    index_t budget = static_cast<index_t>(50.0 * muZinv);
    struct Row {
        double tau = 0, S = 0, T1 = 0, psi = 0;
        bool ok = false;
    };
    auto rows = parallel_map<Row>(static_cast<std::size_t>(samples), workers, [&](std::size_t s) {
        Row r;
        Excursions e = scan_excursions(p, N, derive_seed(seed, s), 2, budget);
        if (!e.ok) return r;
        double T1 = 2.0 * e.ones[0] - e.tau[0] + N;
        double T2 = 2.0 * e.ones[1] - e.tau[1] + N;
        r.tau = static_cast<double>(e.tau[0]);
        r.S = static_cast<double>(e.ones[0]);
        r.T1 = T1;
        r.psi = T1 - T2;
        r.ok = true;
        return r;
    });
    std::vector<double> taus, Ss, Ts, psis, psi2s;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        taus.push_back(r.tau);
        Ss.push_back(r.S);
        Ts.push_back(r.T1);
        psis.push_back(r.psi);
        psi2s.push_back(r.psi * r.psi);
    }
    WaldReport w;
    w.samples = static_cast<int>(taus.size());
    auto fill = [](const std::vector<double>& v, double& m, double& se) {
        MeanStderr r = mean_stderr(v);
        m = r.mean;
        se = r.stderr_;
    };
    fill(taus, w.mean_tau, w.mean_tau_se);
    fill(Ss, w.mean_S, w.mean_S_se);
    fill(Ts, w.mean_T, w.mean_T_se);
    fill(psis, w.mean_psi, w.mean_psi_se);
    fill(psi2s, w.mean_psi2, w.mean_psi2_se);
    w.kac = muZinv;
    w.paper_mean_T = (2 * p - 1) * (muZinv - N);
    w.exact_mean_T = (2 * p - 1) * muZinv + N;
    w.exact_mean_S = p * muZinv;
    w.paper_psi2 = 2.0 * (1.0 - (2 * p - 1) * (2 * p - 1)) * (muZinv - N);
    double a = std::pow(1.0 / muZinv, -0.75);  // mu(Z)^{-3/4}
    index_t over = 0;
    for (double ps : psis)
        if (std::fabs(ps) > a) ++over;
    w.cheb_lhs = taus.empty() ? 0 : static_cast<double>(over) / static_cast<double>(taus.size());
    w.cheb_rhs = w.mean_psi2 / (a * a);
    return w;
}

} // namespace lyco
