#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lyco/rng.hpp"

namespace lyco {

using index_t = std::int64_t;

// Thrown when a buffer without an extender is asked for a coordinate it
// does not hold. Carries the offending index so callers can state the
// required extension.
struct orbit_range_error : std::runtime_error {
    index_t index;
    explicit orbit_range_error(index_t i)
        : std::runtime_error("orbit coordinate not materialized and no extender: index " +
                             std::to_string(i)),
          index(i) {}
};

// A point of the two-sided shift space {0,1}^Z, realized as a dense window
// [lo, hi) of bits plus an optional seeded i.i.d. Bernoulli(p) extender.
//
// Extender bits are a pure function of (seed, side, |i|): reading never
// mutates, reads are thread-safe on a shared const buffer, and materializing
// a larger window can never change a value already observed.
class OrbitBuffer {
public:
    OrbitBuffer() = default;

    static OrbitBuffer with_extender(double p, std::uint64_t seed) {
        OrbitBuffer b;
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("OrbitBuffer: p must be in (0,1)");
        b.p_ = p;
        b.seed_ = seed;
        b.has_extender_ = true;
        return b;
    }

    // Finite hand-built window, no extender; bits default to 0.
    static OrbitBuffer window(index_t lo, index_t hi) {
        OrbitBuffer b;
        if (lo >= hi) throw std::invalid_argument("OrbitBuffer::window: need lo < hi");
        b.lo_ = lo;
        b.hi_ = hi;
        b.bits_.assign(static_cast<std::size_t>(hi - lo), 0);
        return b;
    }

    bool has_extender() const { return has_extender_; }
    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }
    index_t lo() const { return lo_; }
    index_t hi() const { return hi_; }

    int bit(index_t i) const {
        if (i >= lo_ && i < hi_) return bits_[static_cast<std::size_t>(i - lo_)];
        if (!has_extender_) throw orbit_range_error(i);
        return extender_bit(i);
    }

    // Materialize [a, b); values come from the extender, so already-visible
    // bits are unchanged.
    void ensure(index_t a, index_t b) {
        if (a >= b) return;
        if (bits_.empty()) {
            if (!has_extender_) throw orbit_range_error(a);
            lo_ = a;
            hi_ = b;
            bits_.resize(static_cast<std::size_t>(b - a));
            for (index_t i = a; i < b; ++i)
                bits_[static_cast<std::size_t>(i - a)] = static_cast<std::uint8_t>(extender_bit(i));
            return;
        }
        if (a < lo_) {
            if (!has_extender_) throw orbit_range_error(a);
            std::vector<std::uint8_t> front(static_cast<std::size_t>(lo_ - a));
            for (index_t i = a; i < lo_; ++i)
                front[static_cast<std::size_t>(i - a)] = static_cast<std::uint8_t>(extender_bit(i));
            bits_.insert(bits_.begin(), front.begin(), front.end());
            lo_ = a;
        }
        if (b > hi_) {
            if (!has_extender_) throw orbit_range_error(b - 1);
            for (index_t i = hi_; i < b; ++i)
                bits_.push_back(static_cast<std::uint8_t>(extender_bit(i)));
            hi_ = b;
        }
    }

    void set_bit(index_t i, int v) {
        ensure(i, i + 1);
        bits_[static_cast<std::size_t>(i - lo_)] = static_cast<std::uint8_t>(v != 0);
    }

    // Largest symmetric radius M with [-M, M] materialized; -1 if 0 is not
    // covered.
    index_t materialized_radius() const {
        if (bits_.empty() || lo_ > 0 || hi_ <= 0) return -1;
        index_t m = (-lo_ < hi_ - 1) ? -lo_ : hi_ - 1;
        return m;
    }

private:
    int extender_bit(index_t i) const {
        std::uint64_t side = i >= 0 ? 1u : 2u;
        std::uint64_t off = i >= 0 ? static_cast<std::uint64_t>(i)
                                   : static_cast<std::uint64_t>(-(i + 1));
        return u01(hash3(seed_, side, off)) < p_ ? 1 : 0;
    }

    std::vector<std::uint8_t> bits_;
    index_t lo_ = 0, hi_ = 0;
    double p_ = 0.5;
    std::uint64_t seed_ = 0;
    bool has_extender_ = false;
};

struct MetricResult {
    double d;                // 2^{-N}, or the certified bound 2^{-(M+1)}
    bool lower_bound_only;   // buffers agree on the whole common window
    index_t agreement;       // N(x,y), or M+1 when lower_bound_only
};

// d(x,y) = 2^{-N}, N = max{ N >= 0 : x_n = y_n for all |n| < N }, evaluated
// on the common materialized symmetric window. Exact only up to that radius.
MetricResult metric_distance(const OrbitBuffer& x, const OrbitBuffer& y);

// i.i.d. Bernoulli(p) point, coordinates [0, length) materialized.
OrbitBuffer sample_orbit(double p, index_t length, std::uint64_t seed);

// Exact sampler of mu_Z: x_0 = 1, x_1..x_N = 0, all other coordinates i.i.d.
// Materializes [0, N + 1 + length).
OrbitBuffer sample_conditioned_z(double p, int N, std::uint64_t seed, index_t length = 0);

struct CylinderSpec {
    std::vector<std::pair<index_t, int>> constraints;  // (index, required bit)

    void validate() const;
    bool contains(const OrbitBuffer& x, index_t pos = 0) const;
};

double cylinder_measure(const CylinderSpec& spec, double p);

CylinderSpec z_cylinder(int N);
CylinderSpec w_cylinder(int gammaN);

// Pattern tests; read through the buffer (extending via the seeded source).
inline bool in_w(const OrbitBuffer& x, index_t pos, int gammaN) {
    if (x.bit(pos) != 1) return false;
    for (int i = 1; i <= gammaN; ++i)
        if (x.bit(pos + i) != 0) return false;
    return true;
}

inline bool in_z(const OrbitBuffer& x, index_t pos, int N) {
    if (x.bit(pos) != 1) return false;
    for (int i = 1; i <= N; ++i)
        if (x.bit(pos + i) != 0) return false;
    return true;
}

} // namespace lyco
