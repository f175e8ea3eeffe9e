#include "lyco/holder.hpp"

#include <cmath>
#include <vector>

#include "lyco/rng.hpp"

namespace lyco {

namespace {

constexpr std::uint64_t kPairBudget = 1ull << 26;

// Evaluate fn on every word over window [lo, hi] around pos 0.
template <typename Fn>
void for_each_word(index_t lo, index_t hi, Fn&& fn) {
    int bits = static_cast<int>(hi - lo + 1);
    std::uint64_t count = 1ull << bits;
    std::vector<int> word(static_cast<std::size_t>(bits));
    for (std::uint64_t w = 0; w < count; ++w) {
        for (int k = 0; k < bits; ++k) word[static_cast<std::size_t>(k)] = (w >> k) & 1u;
        fn(w, word);
    }
}

HolderNorm holder_norm_impl(index_t lo, index_t hi, double alpha,
                            const std::function<Mat2(const std::vector<int>&)>& eval) {
    int bits = static_cast<int>(hi - lo + 1);
    if (bits > 25)
        throw cocycle_window_error("holder_norm_exact: window too large to enumerate; "
                                   "use holder_distance_sampled");
    std::uint64_t nwords = 1ull << bits;

    std::vector<Mat2> vals(nwords);
    for_each_word(lo, hi, [&](std::uint64_t w, const std::vector<int>& word) {
        vals[w] = eval(word);
    });

    HolderNorm out;
    for (const Mat2& m : vals) out.sup = std::max(out.sup, opnorm(m));

    // k = 0: any pair; k >= 1: pairs agreeing on window coords with |n| < k.
    // Values differ only if the words differ, so k ranges to max(|lo|, hi).
    index_t kmax = std::max<index_t>(lo < 0 ? -lo : 0, hi > 0 ? hi : 0);
    for (index_t k = 0; k <= kmax; ++k) {
        // mask of coords with |n| < k
        std::uint64_t mid = 0;
        for (index_t n = lo; n <= hi; ++n)
            if (std::llabs(n) < k) mid |= 1ull << (n - lo);
        // bucket by the mid-pattern
        std::uint64_t freebits = static_cast<std::uint64_t>(bits) - static_cast<std::uint64_t>(__builtin_popcountll(mid));
        std::uint64_t bucket_size = 1ull << freebits;
        std::uint64_t nbuckets = nwords >> freebits;
        if (nbuckets * bucket_size * bucket_size > kPairBudget)
            throw cocycle_window_error("holder_norm_exact: pair enumeration too large; "
                                       "use holder_distance_sampled");
        double dk = 0;
        std::vector<std::vector<std::uint64_t>> buckets(nbuckets);
        std::vector<std::uint64_t> key_of(nwords);
        // compact the mid-bits of each word into a bucket key
        for (std::uint64_t w = 0; w < nwords; ++w) {
            std::uint64_t key = 0;
            int kb = 0;
            for (int t = 0; t < bits; ++t)
                if (mid & (1ull << t)) key |= static_cast<std::uint64_t>((w >> t) & 1u) << kb++;
            key_of[w] = key;
        }
        for (std::uint64_t w = 0; w < nwords; ++w) buckets[key_of[w]].push_back(w);
        for (const auto& bucket : buckets)
            for (std::size_t i = 0; i < bucket.size(); ++i)
                for (std::size_t j = i + 1; j < bucket.size(); ++j)
                    dk = std::max(dk, opnorm(vals[bucket[i]] - vals[bucket[j]]));
        out.seminorm = std::max(out.seminorm, dk * std::pow(2.0, alpha * static_cast<double>(k)));
    }
    return out;
}

} // namespace

HolderNorm holder_norm_exact(const Cocycle& A, double alpha) {
    Window w = A.dependence();
    if (w.dynamic) throw cocycle_window_error("holder_norm_exact: dynamic window");
    return holder_norm_impl(w.lo, w.hi, alpha, [&](const std::vector<int>& word) {
        return value_on_word(A, word, w.lo);
    });
}

HolderNorm holder_diff_norm_exact(const Cocycle& A, const Cocycle& B, double alpha) {
    Window wa = A.dependence(), wb = B.dependence();
    if (wa.dynamic || wb.dynamic)
        throw cocycle_window_error("holder_diff_norm_exact: dynamic window");
    Window w{std::min(wa.lo, wb.lo), std::max(wa.hi, wb.hi), false};
    return holder_norm_impl(w.lo, w.hi, alpha, [&](const std::vector<int>& word) {
        return value_on_word(A, word, w.lo) - value_on_word(B, word, w.lo);
    });
}

HolderNorm holder_distance_sampled(const Cocycle& A, const Cocycle& B, double alpha,
                                   int samples, int radius, std::uint64_t seed, double p) {
    HolderNorm out;
    for (int s = 0; s < samples; ++s) {
        RngStream ctrl(derive_seed(seed, static_cast<std::uint64_t>(s)), 3);
        OrbitBuffer x = OrbitBuffer::with_extender(p, derive_seed(seed, 2 * s));
        OrbitBuffer y = OrbitBuffer::with_extender(p, derive_seed(seed, 2 * s + 1));
        index_t k = static_cast<index_t>(ctrl.next_below(static_cast<std::uint64_t>(radius + 1)));
        index_t r = radius + 4;
        x.ensure(-r, r + 1);
        y.ensure(-r, r + 1);
        for (index_t n = -k + 1; n < k; ++n) y.set_bit(n, x.bit(n));  // agree on |n| < k

        Mat2 dx = A.value(x, 0) - B.value(x, 0);
        Mat2 dy = A.value(y, 0) - B.value(y, 0);
        out.sup = std::max(out.sup, std::max(opnorm(dx), opnorm(dy)));

        MetricResult d = metric_distance(x, y);
        if (!d.lower_bound_only) {
            double q = opnorm(dx - dy) * std::pow(d.d, -alpha);
            out.seminorm = std::max(out.seminorm, q);
        }
    }
    return out;
}

double fiber_bunching_product(const Cocycle& A, int n) {
    Window w = A.dependence();
    if (w.dynamic) throw cocycle_window_error("fiber_bunching_product: dynamic window");
    index_t lo = w.lo;
    index_t hi = w.hi + n - 1;
    int bits = static_cast<int>(hi - lo + 1);
    if (bits > 24)
        throw cocycle_window_error("fiber_bunching_product: enumeration too large");
    double best = 0;
    OrbitBuffer b = OrbitBuffer::window(lo, hi + 1);
    for_each_word(lo, hi, [&](std::uint64_t, const std::vector<int>& word) {
        for (std::size_t t = 0; t < word.size(); ++t)
            b.set_bit(lo + static_cast<index_t>(t), word[t]);
        Mat2 prod = Mat2::identity();
        for (int i = 0; i < n; ++i) prod = A.value(b, i) * prod;
        best = std::max(best, opnorm(prod) * opnorm(prod.inverse()));
    });
    return best;
}

bool is_fiber_bunched(const Cocycle& A, double alpha, int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        if (fiber_bunching_product(A, n) < std::pow(2.0, alpha * n)) return true;
    }
    return false;
}

} // namespace lyco
