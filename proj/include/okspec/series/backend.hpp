#pragma once

#include <complex>
#include <vector>

#include "okspec/okounkov/order.hpp"

namespace okspec {

enum class Variety { P1, P2 };

int chart_count(Variety v);
int series_dim(Variety v, int n);

// One point in an affine chart; x2 is unused on the line.
struct ChartPoint {
    int chart = 0;
    std::complex<double> x1{0.0, 0.0};
    std::complex<double> x2{0.0, 0.0};
};

// The degree-n monomial basis of the complete linear system of O(1)^n,
// with per-chart evaluations. Exponents are taken at the distinguished
// point (origin of chart 0): alpha = k on the line, (a1, a2) on the plane.
struct Backend {
    Variety variety = Variety::P1;
    int n = 1;
    std::vector<Exponent> basis;  // sorted ascending in the given order

    static Backend make(Variety v, int n, const MonomialOrder& order);

    int dim() const { return (int)basis.size(); }
    int d() const { return variety == Variety::P1 ? 1 : 2; }

    // value of the j-th basis monomial in the chart of the point
    std::complex<double> basis_value(int j, const ChartPoint& p) const;
};

// evaluation grids for sup norms
struct Grid {
    Variety variety = Variety::P1;
    std::vector<ChartPoint> points;

    // polar grids per chart of radius `radius`; the plane uses the product
    // of two polar grids capped at `cap` points per chart
    static Grid polar(Variety v, int radial, int angular, double radius = 1.2,
                      int cap = 300000);
    Grid refined() const;  // doubled resolution
private:
    int radial_ = 0, angular_ = 0;
    double radius_ = 1.2;
    int cap_ = 300000;
};

}  // namespace okspec
