#pragma once

#include <optional>
#include <string>
#include <vector>

#include "okspec/laws/measures.hpp"

namespace okspec {

// one normalized level law Z_n / n together with its provenance
struct LevelLaw {
    int n = 0;
    int dim = 0;  // rank of the level, drives the A(r)/n budget
    SpectralMeasure law;
};

// truncated-mean budget A(r) = 2 ln r + (1/2) ln 2
double truncation_budget(int rank);

struct ConvergenceReport {
    std::vector<int> ns;
    std::vector<double> mean_slopes;                   // E[Z_n/n] per level
    std::vector<double> a_grid;
    std::vector<std::vector<double>> truncated_means;  // [level][a]
    std::vector<double> budgets;                       // A(r_n)/n per level
    std::vector<double> kolmogorov_steps;              // consecutive law distances
    std::vector<double> polygon_steps;                 // uniform polygon distances
    std::vector<Polygon> polygons;                     // normalized, per level
    GriddedCdf extrapolated_cdf;
    double energy_estimate = 0.0;  // Richardson limit of the mean slopes
    bool converged = false;
    std::string note;
};

// Cauchy diagnostics for a sequence of uniformly bounded laws. When `bound`
// is set, every law must live inside [-bound, bound].
ConvergenceReport convergence_report(const std::vector<LevelLaw>& laws,
                                     const std::vector<double>& a_grid,
                                     std::optional<double> bound = std::nullopt,
                                     double tolerance = 5e-2);

}  // namespace okspec
