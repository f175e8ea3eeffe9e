#include "lyco/cocycle.hpp"

namespace lyco {

CocyclePtr a_sigma(double sigma) {
    if (!(sigma > 1.0)) throw std::invalid_argument("a_sigma: sigma > 1 required");
    return std::make_shared<Depth0Cocycle>(Mat2::diag(1.0 / sigma, sigma),
                                           Mat2::diag(sigma, 1.0 / sigma));
}

CocyclePtr f_sigma(double sigma) {
    if (!(sigma > 1.0)) throw std::invalid_argument("f_sigma: sigma > 1 required");
    return std::make_shared<Depth0Cocycle>(Mat2::identity(),
                                           Mat2::diag(sigma, 1.0 / sigma));
}

CocyclePtr identity_cocycle() {
    return std::make_shared<ConstantCocycle>(Mat2::identity());
}

namespace {

class Conjugated : public Cocycle {
public:
    Conjugated(CocyclePtr base, Mat2 g) : base_(std::move(base)), g_(g), gi_(g.inverse()) {}
    Mat2 value(const OrbitBuffer& x, index_t pos) const override {
        return g_ * base_->value(x, pos) * gi_;
    }
    Window dependence() const override { return base_->dependence(); }

private:
    CocyclePtr base_;
    Mat2 g_, gi_;
};

class ComposedOnCylinder : public Cocycle {
public:
    ComposedOnCylinder(CocyclePtr base, CylinderSpec cyl, Mat2 r)
        : base_(std::move(base)), cyl_(std::move(cyl)), r_(r) {
        cyl_.validate();
        Window w = base_->dependence();
        win_ = w;
        for (const auto& [i, v] : cyl_.constraints) {
            (void)v;
            if (i < win_.lo) win_.lo = i;
            if (i > win_.hi) win_.hi = i;
        }
    }
    Mat2 value(const OrbitBuffer& x, index_t pos) const override {
        Mat2 v = base_->value(x, pos);
        if (cyl_.contains(x, pos)) v = v * r_;
        return v;
    }
    Window dependence() const override { return win_; }

private:
    CocyclePtr base_;
    CylinderSpec cyl_;
    Mat2 r_;
    Window win_;
};

} // namespace

CocyclePtr conjugated(CocyclePtr base, Mat2 g) {
    return std::make_shared<Conjugated>(std::move(base), g);
}

CocyclePtr composed_on_cylinder(CocyclePtr base, CylinderSpec cyl, Mat2 right_factor) {
    return std::make_shared<ComposedOnCylinder>(std::move(base), std::move(cyl), right_factor);
}

LogMat2 cocycle_product(const Cocycle& A, const OrbitBuffer& x, index_t pos, index_t n) {
    LogMat2 prod;
    for (index_t i = 0; i < n; ++i) prod.mul_left(A.value(x, pos + i));
    prod.renorm();
    return prod;
}

Mat2 value_on_word(const Cocycle& A, const std::vector<int>& word, index_t word_lo, index_t pos) {
    OrbitBuffer b = OrbitBuffer::window(word_lo, word_lo + static_cast<index_t>(word.size()));
    for (std::size_t k = 0; k < word.size(); ++k)
        b.set_bit(word_lo + static_cast<index_t>(k), word[k]);
    return A.value(b, pos);
}

} // namespace lyco
