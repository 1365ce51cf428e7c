#include "okspec/laws/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace okspec {

double truncated_mean(const SpectralMeasure& measure, double a) {
    double s = 0.0;
    for (auto& [v, w] : measure.atoms) s += w * std::max(v, a);
    return s;
}

double GriddedCdf::at(double t) const {
    // step interpolation: value of the last grid point <= t
    double f = 0.0;
    for (auto& [x, v] : points) {
        if (x <= t) f = v;
        else break;
    }
    return f;
}

namespace {

template <class F1, class F2>
double sup_cdf_distance(const F1& a, const F2& b, const std::vector<double>& knots) {
    double worst = 0.0;
    for (double t : knots) {
        worst = std::max(worst, std::abs(a(t) - b(t)));
        double tm = t - 1e-12;
        worst = std::max(worst, std::abs(a(tm) - b(tm)));
    }
    return worst;
}

std::vector<double> measure_knots(const SpectralMeasure& m) {
    std::vector<double> k;
    for (auto& [v, w] : m.atoms) k.push_back(v);
    return k;
}

}  // namespace

double kolmogorov(const SpectralMeasure& m1, const SpectralMeasure& m2) {
    auto knots = measure_knots(m1);
    auto k2 = measure_knots(m2);
    knots.insert(knots.end(), k2.begin(), k2.end());
    return sup_cdf_distance([&](double t) { return m1.cdf(t); },
                            [&](double t) { return m2.cdf(t); }, knots);
}

double kolmogorov(const SpectralMeasure& m1, const GriddedCdf& m2) {
    auto knots = measure_knots(m1);
    for (auto& [t, f] : m2.points) knots.push_back(t);
    return sup_cdf_distance([&](double t) { return m1.cdf(t); },
                            [&](double t) { return m2.at(t); }, knots);
}

double kolmogorov(const GriddedCdf& m1, const GriddedCdf& m2) {
    std::vector<double> knots;
    for (auto& [t, f] : m1.points) knots.push_back(t);
    for (auto& [t, f] : m2.points) knots.push_back(t);
    return sup_cdf_distance([&](double t) { return m1.at(t); },
                            [&](double t) { return m2.at(t); }, knots);
}

}  // namespace okspec
