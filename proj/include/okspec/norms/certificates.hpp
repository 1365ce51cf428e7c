#pragma once

#include <string>

#include "okspec/hermitian/hermitian.hpp"
#include "okspec/norms/oracle.hpp"

namespace okspec {

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Hermitian surrogate with certified two-sided comparison factors:
// lower_factor * ||x||_form <= ||x||_oracle <= upper_factor * ||x||_form.
struct SandwichCertificate {
    HermitianForm form;
    double lower_factor;
    double upper_factor;
    int checked_directions = 0;

    double log_ratio() const;  // ln(upper/lower), twice the distance bound
};

struct ErrorBudget {
    double additive = 0.0;  // per-unit-rank (or per-unit-t) slack
    std::string source;
};

// Worst relative violation of the sandwich on random directions plus the
// oracle's own functionals; <= 0 when every checked direction passes.
double audit_certificate(const NormOracle& oracle, SandwichCertificate& cert, int directions,
                         Rng& rng);

// Ellipsoid-fit controls. The defaults suit small functional families; the
// sampled sup-norm clouds of the series pipeline pass a looser tolerance,
// which only widens the certified factors accordingly.
struct SurrogateOptions {
    double mvee_tol = 1e-7;
    int mvee_max_iterations = 100000;
};

// Inscribed-ellipsoid surrogate: ||.|| <= ||.||_form, with lower factor
// 1/sqrt(dim * slack) from the enclosing ellipsoid of the dual functional
// cloud. Hermitian oracles return their own form with factors (1, 1); max
// nodes over Hermitian leaves combine the children's forms by Gram sum.
SandwichCertificate john_form(const NormOracle& oracle, SurrogateOptions opts = {});

// Enclosing-ellipsoid surrogate: ||.||_form <= ||.|| <= sqrt(dim)-ish above.
SandwichCertificate lowner_form(const NormOracle& oracle, SurrogateOptions opts = {});

struct DegreeBand {
    Interval band;              // guaranteed to contain the volume-ratio degree
    double surrogate_degree;    // midpoint surrogate value
    double cert_halfwidth;      // half-width implied by the certificates alone
    bool has_monte_carlo = false;
    double mc_estimate = 0.0;
    double mc_stderr = 0.0;
};

DegreeBand degree_band(const NormOracle& phi, const NormOracle& psi,
                       std::uint64_t mc_seed = 2026, std::uint64_t mc_samples = 1000000,
                       SurrogateOptions opts = {});

struct PolygonBand {
    Polygon surrogate;
    ErrorBudget budget;  // additive band is budget.additive * t
};

PolygonBand polygon_band(const NormOracle& phi, const NormOracle& psi,
                         SurrogateOptions opts = {});

// Certified interval for the norm distance d(n1, n2) = sup |ln ratio|.
Interval distance_estimate(const NormOracle& n1, const NormOracle& n2, int probes = 512,
                           std::uint64_t seed = 9, SurrogateOptions opts = {});

}  // namespace okspec
