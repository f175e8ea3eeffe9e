#pragma once

#include <cmath>
#include <stdexcept>

namespace lyco {

// 2x2 real matrix, row-major. Everything this library produces has det = 1
// up to rounding; nothing here enforces it.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

    static Mat2 identity() { return {}; }
    static Mat2 diag(double x, double y) { return {x, 0, 0, y}; }

    double det() const { return a * d - b * c; }

    Mat2 inverse() const {
        double dt = det();
        if (dt == 0) throw std::domain_error("Mat2::inverse: singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    Mat2 transpose() const { return {a, c, b, d}; }

    double max_abs() const {
        double m = std::fabs(a);
        if (std::fabs(b) > m) m = std::fabs(b);
        if (std::fabs(c) > m) m = std::fabs(c);
        if (std::fabs(d) > m) m = std::fabs(d);
        return m;
    }

    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend Mat2 operator-(const Mat2& l, const Mat2& r) {
        return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
    }
    friend Mat2 operator*(double s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
};

struct Vec2 {
    double x = 0, y = 0;
};

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

// Largest singular value, closed form: s^2 = (q + sqrt(q^2 - 4 det^2)) / 2
// with q the squared Frobenius norm.
inline double opnorm(const Mat2& m) {
    double q = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
    double dt = m.det();
    double disc = q * q - 4.0 * dt * dt;
    if (disc < 0) disc = 0;  // rounding
    return std::sqrt(0.5 * (q + std::sqrt(disc)));
}

// Shears: R1 fixes e1, R2 fixes e2.
inline Mat2 shear_r1(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("shear_r1: theta not finite");
    return {1, theta, 0, 1};
}
inline Mat2 shear_r2(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("shear_r2: theta not finite");
    return {1, 0, theta, 1};
}

// Projective vector: unit direction with the first nonzero component
// positive, plus natural-log magnitude. Products of any length stay finite.
struct ProjVec {
    Vec2 dir{1, 0};
    double logmag = 0;

    static ProjVec from(const Vec2& v, double logscale = 0) {
        double n = std::hypot(v.x, v.y);
        if (n == 0) throw std::domain_error("ProjVec: zero vector");
        ProjVec p;
        p.dir = {v.x / n, v.y / n};
        p.logmag = logscale + std::log(n);
        double lead = p.dir.x != 0 ? p.dir.x : p.dir.y;
        if (lead < 0) p.dir = {-p.dir.x, -p.dir.y};
        return p;
    }

    ProjVec apply(const Mat2& m) const {
        Vec2 w = m * dir;
        return ProjVec::from(w, logmag);
    }

    // |sin| of the angle to another line through the origin
    double sin_angle_to(const Vec2& u) const {
        double nu = std::hypot(u.x, u.y);
        return std::fabs(dir.x * u.y - dir.y * u.x) / nu;
    }
};

// Product accumulator in log scale: the stored matrix is renormalized to
// unit max-entry every `renorm_every` factors.
class LogMat2 {
public:
    static constexpr int renorm_every = 32;

    LogMat2() = default;

    void mul_left(const Mat2& f) {
        m_ = f * m_;
        if (++since_ >= renorm_every) renorm();
    }

    void renorm() {
        since_ = 0;
        double s = m_.max_abs();
        if (s == 0) throw std::domain_error("LogMat2: zero matrix");
        logscale_ += std::log(s);
        m_ = (1.0 / s) * m_;
    }

    const Mat2& scaled() const { return m_; }
    double logscale() const { return logscale_; }

    double log_opnorm() const { return logscale_ + std::log(opnorm(m_)); }

    // det of the true product; the scale contributes exp(2*logscale)
    double det_scaled() const { return m_.det(); }
    double log_abs_det() const {
        return 2.0 * logscale_ + std::log(std::fabs(m_.det()));
    }

private:
    Mat2 m_ = Mat2::identity();
    double logscale_ = 0;
    int since_ = 0;
};

} // namespace lyco
