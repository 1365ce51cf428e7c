#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "okspec/core/rng.hpp"

namespace okspec {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

enum class ScalarKind { real, complex };

// A positive-definite Hermitian (or real symmetric) inner product, stored as
// its Gram matrix against a fixed ambient basis. Real inputs are kept in the
// complex container with zero imaginary part; scalar_kind records the origin
// for serialization.
class HermitianForm {
public:
    HermitianForm(MatrixXcd gram, ScalarKind kind);

    const MatrixXcd& gram() const { return gram_; }
    ScalarKind scalar_kind() const { return kind_; }
    int dim() const { return (int)gram_.rows(); }

    double norm(const VectorXcd& x) const;  // sqrt(x^* G x)

private:
    MatrixXcd gram_;
    ScalarKind kind_;
};

// (V, phi, psi): one space, two inner products.
struct HermitianPair {
    HermitianForm phi;
    HermitianForm psi;

    HermitianPair(HermitianForm p, HermitianForm q);
    int dim() const { return phi.dim(); }
};

// Slopes mu_1 >= ... >= mu_r, in nats.
struct SlopeProfile {
    std::vector<double> slopes;

    double sum() const;
    double mean() const;
};

// Piecewise-linear concave polygon: breakpoints[i] = P~(i) for i = 0..r,
// normalized[i] = P(i/r) = P~(i)/r.
struct Polygon {
    std::vector<double> breakpoints;
    std::vector<double> normalized;

    static Polygon from_slopes(const SlopeProfile& s);
    int rank() const { return (int)breakpoints.size() - 1; }
    // evaluate P~ at a real t in [0, rank]
    double at(double t) const;
    double uniform_distance_normalized(const Polygon& other) const;
};

// Nested subspaces with strictly decreasing step slopes. steps[i] is an
// ambient-dim x k_i basis matrix of V_{i+1} (the zero subspace is implicit).
struct Flag {
    std::vector<MatrixXcd> steps;
    std::vector<double> step_slopes;
};

// Discrete probability law sum_i mass_i * delta(value_i).
struct SpectralMeasure {
    std::vector<std::pair<double, double>> atoms;  // (value, mass)

    static SpectralMeasure from_slopes(const SlopeProfile& s);
    static SpectralMeasure dirac(double v) { return SpectralMeasure{{{v, 1.0}}}; }
    void validate() const;
    double mean() const;
    // right-continuous upper CDF is not needed; cdf(t) = P(Z <= t)
    double cdf(double t) const;
    std::vector<double> sorted_values() const;
};

// --- operations ------------------------------------------------------------

// Slopes mu_i = (1/2) ln lambda_i of the pencil (psi, phi), descending.
// Computed by Cholesky whitening of phi followed by a Hermitian eigensolve.
SlopeProfile relative_spectrum(const HermitianPair& pair);

// (1/2) ln det(phi^{-1} psi) via triangular log-determinants.
double degree(const HermitianPair& pair);

// Eigenspace flag of the whitened transition matrix, grouped by a relative
// slope gap of 1e-8; step slopes are the distinct slope values.
Flag hn_filtration(const HermitianPair& pair);

Polygon polygon_of(const HermitianPair& pair);

// Congruence of both Grams by the columns of w (must have full column rank).
HermitianPair restrict_pair(const HermitianPair& pair, const MatrixXcd& w);

// Quotient V / span(w) with the quotient inner products, realized as the
// Schur complement on the inverse Gram in a w-adapted unitary basis.
HermitianPair quotient_pair(const HermitianPair& pair, const MatrixXcd& w);

struct TruncationResult {
    double value;            // sum_i max(mu_i, a)
    HermitianForm surrogate; // psi' with diagonal entries max(lambda_i, e^{2a})
};

TruncationResult truncated_degree(const HermitianPair& pair, double a);

// Largest relative violation of
//   ||x||_{psi v phi(a)} <= ||x||_{psi'} <= sqrt(2) ||x||_{psi v phi(a)}
// over random directions; <= 0 when the sandwich holds.
double truncation_sandwich_violation(const HermitianPair& pair, double a,
                                     const HermitianForm& surrogate, int samples, Rng& rng);

// Random positive-definite pair for tests and audits.
HermitianPair random_pair(int dim, Rng& rng, ScalarKind kind = ScalarKind::complex,
                          double spread = 1.0);

}  // namespace okspec
