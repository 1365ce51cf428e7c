#include "okspec/series/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace okspec {

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign((size_t)n, 0.0);
    weights.assign((size_t)n, 0.0);
    const int m = (n + 1) / 2;
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton on the Legendre recurrence
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        nodes[(size_t)i] = xm - xl * z;
        nodes[(size_t)(n - 1 - i)] = xm + xl * z;
        weights[(size_t)i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[(size_t)(n - 1 - i)] = weights[(size_t)i];
    }
}

void QuadratureMeasure::validate(double tol) const {
    if (nodes.size() != weights.size())
        throw std::invalid_argument("QuadratureMeasure: node/weight mismatch");
    double total = 0.0;
    for (double w : weights) {
        if (w <= 0.0) throw std::invalid_argument("QuadratureMeasure: non-positive weight");
        total += w;
    }
    if (std::abs(total - 1.0) > tol)
        throw std::invalid_argument("QuadratureMeasure: total mass " + std::to_string(total));
}

QuadratureMeasure QuadratureMeasure::fubini_study(Variety v, int radial, int angular) {
    QuadratureMeasure q;
    q.variety = v;
    q.radial_ = radial;
    q.angular_ = angular;
    std::vector<double> rn, rw;
    gauss_legendre(radial, 0.0, 1.0, rn, rw);
    const double dth = 2.0 * M_PI / (double)angular;

    if (v == Variety::P1) {
        for (int c = 0; c < 2; ++c)
            for (int ri = 0; ri < radial; ++ri)
                for (int ai = 0; ai < angular; ++ai) {
                    double r = rn[(size_t)ri], t = dth * ai;
                    double dens = (1.0 / M_PI) * r / ((1.0 + r * r) * (1.0 + r * r));
                    q.nodes.push_back({c, {r * std::cos(t), r * std::sin(t)}, {0.0, 0.0}});
                    q.weights.push_back(dens * rw[(size_t)ri] * dth);
                }
    } else {
        for (int c = 0; c < 3; ++c)
            for (int r1 = 0; r1 < radial; ++r1)
                for (int a1 = 0; a1 < angular; ++a1)
                    for (int r2 = 0; r2 < radial; ++r2)
                        for (int a2 = 0; a2 < angular; ++a2) {
                            double s = rn[(size_t)r1], t = rn[(size_t)r2];
                            double th1 = dth * a1, th2 = dth * a2;
                            double den = 1.0 + s * s + t * t;
                            double dens = (2.0 / (M_PI * M_PI)) * s * t / (den * den * den);
                            q.nodes.push_back({c,
                                               {s * std::cos(th1), s * std::sin(th1)},
                                               {t * std::cos(th2), t * std::sin(th2)}});
                            q.weights.push_back(dens * rw[(size_t)r1] * rw[(size_t)r2] * dth * dth);
                        }
    }
    q.validate(1e-9);
    return q;
}

QuadratureMeasure QuadratureMeasure::refined() const {
    return fubini_study(variety, 2 * radial_, 2 * angular_);
}

}  // namespace okspec
