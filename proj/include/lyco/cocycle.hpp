#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "lyco/mat2.hpp"
#include "lyco/orbit.hpp"

namespace lyco {

// Coordinate window [lo, hi] (relative to the evaluation position) a cocycle
// may consult. A dynamic cocycle reports the window actually used per call.
struct Window {
    index_t lo = 0, hi = 0;
    bool dynamic = false;
};

struct cocycle_window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Cocycle {
public:
    virtual ~Cocycle() = default;

    virtual Mat2 value(const OrbitBuffer& x, index_t pos) const = 0;
    virtual Window dependence() const = 0;

    // Like value(), but also reports the consulted coordinate range
    // [pos+*lo, pos+*hi]. Default: the declared fixed window.
    virtual Mat2 value_resolved(const OrbitBuffer& x, index_t pos,
                                index_t* lo, index_t* hi) const {
        Window w = dependence();
        *lo = w.lo;
        *hi = w.hi;
        return value(x, pos);
    }
};

using CocyclePtr = std::shared_ptr<const Cocycle>;

// Locally constant of depth 0: value depends on x_pos only.
class Depth0Cocycle : public Cocycle {
public:
    Depth0Cocycle(Mat2 on0, Mat2 on1) : m0_(on0), m1_(on1) {}
    Mat2 value(const OrbitBuffer& x, index_t pos) const override {
        return x.bit(pos) ? m1_ : m0_;
    }
    Window dependence() const override { return {0, 0, false}; }
    const Mat2& on0() const { return m0_; }
    const Mat2& on1() const { return m1_; }

private:
    Mat2 m0_, m1_;
};

class ConstantCocycle : public Cocycle {
public:
    explicit ConstantCocycle(Mat2 m) : m_(m) {}
    Mat2 value(const OrbitBuffer&, index_t) const override { return m_; }
    Window dependence() const override { return {0, 0, false}; }

private:
    Mat2 m_;
};

// A_sigma: 0 -> diag(1/sigma, sigma), 1 -> diag(sigma, 1/sigma)
CocyclePtr a_sigma(double sigma);
// F_sigma: 0 -> identity, 1 -> diag(sigma, 1/sigma)
CocyclePtr f_sigma(double sigma);
CocyclePtr identity_cocycle();

// C(x) = g A(x) g^{-1}; same Lyapunov exponents.
CocyclePtr conjugated(CocyclePtr base, Mat2 g);

// B(x) = A(x) * R for x in the cylinder (at the evaluation position), else
// A(x). Used by Hoelder-distance tests.
CocyclePtr composed_on_cylinder(CocyclePtr base, CylinderSpec cyl, Mat2 right_factor);

// Ordered product A(f^{n-1}x) ... A(x) starting at pos, in log scale.
LogMat2 cocycle_product(const Cocycle& A, const OrbitBuffer& x, index_t pos, index_t n);

// Evaluate on a word placed at positions [pos + window.lo, pos + window.hi];
// helper for enumeration-based oracles.
Mat2 value_on_word(const Cocycle& A, const std::vector<int>& word, index_t word_lo,
                   index_t pos = 0);

} // namespace lyco
