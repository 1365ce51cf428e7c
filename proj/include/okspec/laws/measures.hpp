#pragma once

#include <vector>

#include "okspec/hermitian/hermitian.hpp"

namespace okspec {

// E[max(Z, a)] for a discrete law
double truncated_mean(const SpectralMeasure& measure, double a);

// left-continuous step CDF on a grid, kept sorted by t
struct GriddedCdf {
    std::vector<std::pair<double, double>> points;  // (t, F(t)), F non-decreasing

    double at(double t) const;
};

// sup-distance between CDFs over the merged support
double kolmogorov(const SpectralMeasure& m1, const SpectralMeasure& m2);
double kolmogorov(const SpectralMeasure& m1, const GriddedCdf& m2);
double kolmogorov(const GriddedCdf& m1, const GriddedCdf& m2);

}  // namespace okspec
