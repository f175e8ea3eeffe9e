#include "lyco/orbit.hpp"

#include <cmath>
#include <set>

namespace lyco {

MetricResult metric_distance(const OrbitBuffer& x, const OrbitBuffer& y) {
    index_t mx = x.materialized_radius();
    index_t my = y.materialized_radius();
    index_t m = mx < my ? mx : my;
    if (m < 0) throw std::invalid_argument("metric_distance: empty common symmetric range");
    for (index_t k = 0; k <= m; ++k) {
        if (x.bit(k) != y.bit(k) || x.bit(-k) != y.bit(-k))
            return {std::ldexp(1.0, static_cast<int>(-k)), false, k};
    }
    return {std::ldexp(1.0, static_cast<int>(-(m + 1))), true, m + 1};
}

OrbitBuffer sample_orbit(double p, index_t length, std::uint64_t seed) {
    OrbitBuffer b = OrbitBuffer::with_extender(p, seed);
    if (length > 0) b.ensure(0, length);
    return b;
}

OrbitBuffer sample_conditioned_z(double p, int N, std::uint64_t seed, index_t length) {
    if (N < 1) throw std::invalid_argument("sample_conditioned_z: N >= 1");
    OrbitBuffer b = OrbitBuffer::with_extender(p, seed);
    b.ensure(0, N + 1 + (length > 0 ? length : 0));
    b.set_bit(0, 1);
    for (int i = 1; i <= N; ++i) b.set_bit(i, 0);
    return b;
}

void CylinderSpec::validate() const {
    std::set<index_t> seen;
    for (const auto& [i, v] : constraints) {
        if (v != 0 && v != 1) throw std::invalid_argument("CylinderSpec: bit must be 0 or 1");
        if (!seen.insert(i).second)
            throw std::invalid_argument("CylinderSpec: duplicate index");
    }
}

bool CylinderSpec::contains(const OrbitBuffer& x, index_t pos) const {
    for (const auto& [i, v] : constraints)
        if (x.bit(pos + i) != v) return false;
    return true;
}

double cylinder_measure(const CylinderSpec& spec, double p) {
    spec.validate();
    double m = 1.0;
    for (const auto& [i, v] : spec.constraints) {
        (void)i;
        m *= v ? p : (1.0 - p);
    }
    return m;
}

CylinderSpec z_cylinder(int N) {
    CylinderSpec s;
    s.constraints.emplace_back(0, 1);
    for (int i = 1; i <= N; ++i) s.constraints.emplace_back(i, 0);
    return s;
}

CylinderSpec w_cylinder(int gammaN) {
    return z_cylinder(gammaN);
}

} // namespace lyco
