#include "okspec/series/backend.hpp"

#include <cmath>
#include <stdexcept>

namespace okspec {

int chart_count(Variety v) { return v == Variety::P1 ? 2 : 3; }

int series_dim(Variety v, int n) {
    return v == Variety::P1 ? n + 1 : (n + 1) * (n + 2) / 2;
}

Backend Backend::make(Variety v, int n, const MonomialOrder& order) {
    if (n < 0) throw std::invalid_argument("Backend: negative tensor power");
    Backend b;
    b.variety = v;
    b.n = n;
    if ((v == Variety::P1 && order.dim != 1) || (v == Variety::P2 && order.dim != 2))
        throw std::invalid_argument("Backend: order dimension does not match the variety");
    b.basis = order.graded_box(n);
    if ((int)b.basis.size() != series_dim(v, n))
        throw std::logic_error("Backend: basis enumeration mismatch");
    return b;
}

std::complex<double> Backend::basis_value(int j, const ChartPoint& p) const {
    const Exponent& a = basis[(size_t)j];
    auto ipow = [](std::complex<double> z, int k) {
        std::complex<double> r{1.0, 0.0};
        for (int i = 0; i < k; ++i) r *= z;
        return r;
    };
    if (variety == Variety::P1) {
        int k = a[0];
        if (p.chart == 0) return ipow(p.x1, k);
        return ipow(p.x1, n - k);  // w = 1/z, section rep z^k -> w^{n-k}
    }
    int a1 = a[0], a2 = a[1];
    int a0 = n - a1 - a2;
    switch (p.chart) {
        case 0: return ipow(p.x1, a1) * ipow(p.x2, a2);            // (X1/X0, X2/X0)
        case 1: return ipow(p.x1, a0) * ipow(p.x2, a2);            // (X0/X1, X2/X1)
        case 2: return ipow(p.x1, a0) * ipow(p.x2, a1);            // (X0/X2, X1/X2)
        default: throw std::invalid_argument("Backend: bad chart");
    }
}

Grid Grid::polar(Variety v, int radial, int angular, double radius, int cap) {
    if (radial < 1 || angular < 4) throw std::invalid_argument("Grid: resolution too small");
    Grid g;
    g.variety = v;
    g.radial_ = radial;
    g.angular_ = angular;
    g.radius_ = radius;
    g.cap_ = cap;

    auto ring = [&](int ri) { return radius * (double)(ri + 1) / (double)radial; };
    auto angle = [&](int ai) { return 2.0 * M_PI * (double)ai / (double)angular; };

    for (int c = 0; c < chart_count(v); ++c) {
        if (v == Variety::P1) {
            ChartPoint center{c, {0.0, 0.0}, {0.0, 0.0}};
            g.points.push_back(center);
            for (int ri = 0; ri < radial; ++ri)
                for (int ai = 0; ai < angular; ++ai) {
                    double r = ring(ri), t = angle(ai);
                    g.points.push_back({c, {r * std::cos(t), r * std::sin(t)}, {0.0, 0.0}});
                }
        } else {
            // product polar grid, thinned to respect the cap
            long long full = (long long)(radial * angular + 1) * (radial * angular + 1);
            int thin = 1;
            while (full / (thin * thin) > cap) ++thin;
            int rad2 = std::max(1, radial / thin), ang2 = std::max(4, angular / thin);
            auto ring2 = [&](int ri) { return radius * (double)(ri + 1) / (double)rad2; };
            auto angle2 = [&](int ai) { return 2.0 * M_PI * (double)ai / (double)ang2; };
            std::vector<std::complex<double>> coords{{0.0, 0.0}};
            for (int ri = 0; ri < rad2; ++ri)
                for (int ai = 0; ai < ang2; ++ai) {
                    double r = ring2(ri), t = angle2(ai);
                    coords.push_back({r * std::cos(t), r * std::sin(t)});
                }
            for (auto& z1 : coords)
                for (auto& z2 : coords) g.points.push_back({c, z1, z2});
        }
    }
    return g;
}

Grid Grid::refined() const {
    return polar(variety, 2 * radial_, 2 * angular_, radius_, 4 * cap_);
}

}  // namespace okspec
