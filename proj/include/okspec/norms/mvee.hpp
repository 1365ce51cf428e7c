#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace okspec {

// Result of the minimum-volume enclosing ellipsoid iteration on the circled
// hull of a point set. The ellipsoid {x : x^* H x <= 1} contains every input
// point, and its shrink by 1/sqrt(dim * slack) lies inside the hull.
struct MveeResult {
    Eigen::MatrixXcd h;     // Hermitian positive definite
    double slack;           // >= 1, converges to 1 as the tolerance tightens
    int iterations;
};

class MveeNonConvergence : public std::runtime_error {
public:
    MveeNonConvergence(std::string msg, MveeResult best)
        : std::runtime_error(std::move(msg)), best_iterate(std::move(best)) {}
    MveeResult best_iterate;
};

// Khachiyan multiplicative-weights iteration with Wolfe-Atwood away steps.
// Points are rows; complex points give the minimal enclosing circled
// ellipsoid directly (no realification needed).
MveeResult minimum_enclosing_ellipsoid(const Eigen::MatrixXcd& points, double tol = 1e-7,
                                       int max_iterations = 100000);

}  // namespace okspec
