#pragma once

#include <vector>

#include "okspec/series/backend.hpp"

namespace okspec {

// Gauss-Legendre nodes and weights on [a, b]
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// probability measure given by quadrature nodes on each chart
struct QuadratureMeasure {
    Variety variety = Variety::P1;
    std::vector<ChartPoint> nodes;
    std::vector<double> weights;

    void validate(double tol = 1e-10) const;

    // Fubini-Study measure split into the standard chart regions
    // (|coordinates| <= 1), Gauss-Legendre radially, trapezoid in angle
    static QuadratureMeasure fubini_study(Variety v, int radial, int angular);
    QuadratureMeasure refined() const;

private:
    int radial_ = 0, angular_ = 0;
};

}  // namespace okspec
