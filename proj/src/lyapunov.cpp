#include "lyco/lyapunov.hpp"

#include <cmath>

namespace lyco {

LyapEstimate lyapunov_mc(const Cocycle& A, double p, index_t T, int M, std::uint64_t seed,
                         int workers) {
    if (T < 1) throw std::invalid_argument("lyapunov_mc: T >= 1");
    std::vector<double> lam = parallel_map<double>(
        static_cast<std::size_t>(M), workers, [&](std::size_t r) {
            OrbitBuffer x = OrbitBuffer::with_extender(p, derive_seed(seed, r));
            LogMat2 prod = cocycle_product(A, x, 0, T);
            return prod.log_opnorm() / static_cast<double>(T);
        });
    MeanStderr ms = mean_stderr(lam);
    return {ms.mean, ms.stderr_, T, M};
}

namespace {

// first n >= from with f^n(x) in Z; -1 if the budget runs out
index_t next_z_visit(const OrbitBuffer& x, index_t from, int N, index_t limit) {
    for (index_t n = from; n <= limit; ++n)
        if (in_z(x, n, N)) return n;
    return -1;
}

} // namespace

InducedEstimate lyapunov_induced(const Cocycle& A, double p, int N, int samples,
                                 std::uint64_t seed, int workers, double budget_factor) {
    double muZ = p * std::pow(1.0 - p, N);
    index_t budget = static_cast<index_t>(budget_factor / muZ);

    struct Row {
        double l1 = 0, l2 = 0, tau = 0;
        bool ok = false;
    };
    std::vector<Row> rows = parallel_map<Row>(
        static_cast<std::size_t>(samples), workers, [&](std::size_t s) {
            Row row;
            OrbitBuffer x = sample_conditioned_z(p, N, derive_seed(seed, s));
            index_t t1 = next_z_visit(x, 1, N, budget);
            if (t1 < 0) return row;
            index_t t2 = next_z_visit(x, t1 + 1, N, budget);
            if (t2 < 0) return row;
            row.l1 = cocycle_product(A, x, 0, t1).log_opnorm();
            row.l2 = cocycle_product(A, x, 0, t2).log_opnorm();
            row.tau = static_cast<double>(t1);
            row.ok = true;
            return row;
        });

    std::vector<double> l1s, l2s, taus;
    int discarded = 0;
    for (const Row& r : rows) {
        if (!r.ok) {
            ++discarded;
            continue;
        }
        l1s.push_back(muZ * r.l1);
        l2s.push_back(0.5 * muZ * r.l2);
        taus.push_back(r.tau);
    }
    InducedEstimate out;
    out.budget = budget;
    out.samples_used = static_cast<int>(l1s.size());
    out.discard_rate = samples > 0 ? static_cast<double>(discarded) / samples : 0.0;
    MeanStderr a = mean_stderr(l1s), b = mean_stderr(l2s), c = mean_stderr(taus);
    out.first_return = a.mean;
    out.first_return_se = a.stderr_;
    out.second_return = b.mean;
    out.second_return_se = b.stderr_;
    out.mean_tau = c.mean;
    out.mean_tau_se = c.stderr_;
    return out;
}

} // namespace lyco
