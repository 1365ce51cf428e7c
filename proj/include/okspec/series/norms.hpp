#pragma once

#include <memory>
#include <optional>

#include "okspec/norms/certificates.hpp"
#include "okspec/okounkov/semigroup.hpp"
#include "okspec/series/quadrature.hpp"
#include "okspec/series/weight.hpp"

namespace okspec {

// sup norm of the level-n system sampled on the grid: one point-evaluation
// functional per grid node, scaled by e^{-n u}. Throws when doubling the
// grid moves any basis norm by more than `stability_tol` relative.
NormOracle sup_norm_oracle(const Backend& backend, const MetricWeight& weight, const Grid& grid,
                           std::optional<double> stability_tol = std::nullopt);

// L2 Gram of the monomial basis under the quadrature measure. Throws when
// doubling the quadrature moves entries more than `stability_tol` relative.
HermitianForm l2_gram(const Backend& backend, const MetricWeight& weight,
                      const QuadratureMeasure& measure,
                      std::optional<double> stability_tol = std::nullopt);

enum class NormKind { sup, l2 };

// graded subspaces: per-level coefficient rows over the monomial basis
// (empty level = full system)
struct GradedSubspaces {
    std::map<int, std::vector<std::vector<Rational>>> rows;

    bool full() const { return rows.empty(); }
    // image of multiplication by powers of a degree-k section: level np
    // holds s^n * H0(O(n(p-k)))
    static GradedSubspaces sub_series(Variety v, const std::vector<Rational>& section_coeffs,
                                      int k, int p, int n_max, const MonomialOrder& order);
};

struct GrValues {
    std::shared_ptr<SemigroupSample> sample_ptr;  // stable across moves
    ValueTable table;
    ErrorBudget budget;  // per-value surrogate slack (0 for exact paths)

    explicit GrValues(std::shared_ptr<SemigroupSample> s)
        : sample_ptr(std::move(s)), table(*sample_ptr) {}
    const SemigroupSample& sample() const { return *sample_ptr; }
};

// Okounkov value table Phi(n, alpha) = -ln(quotient norm of the order-alpha
// pivot section), for levels 1..n_max.
//  - Hermitian (l2) norms: exact orthogonal-projection residuals;
//  - sup oracles with rotation-invariant weights on uniform angular grids:
//    exact, the pivot monomial's own norm;
//  - general sup oracles: surrogate-based with the John budget recorded.
GrValues gr_quotient_values(Variety v, const MetricWeight& weight, NormKind kind,
                            const MonomialOrder& order, int n_max, const Grid& grid,
                            const QuadratureMeasure* measure = nullptr,
                            const GradedSubspaces* subspaces = nullptr);

// -ln of the distance from each row (ord-ascending, unit leading
// coefficients) to the span of the later rows, in the given inner product;
// for a full monomial system pass the identity
std::vector<double> quotient_log_norms(const Eigen::MatrixXcd& reduced_rows,
                                       const Eigen::MatrixXcd& gram);

// n * max over the grids of |u - v|: an upper bound for d(phi_n, psi_n)
double distortion_bound(const MetricWeight& u, const MetricWeight& v, int n, const Grid& grid);

// submultiplicativity defect max(0, ln ||s t|| - ln ||s|| - ln ||t||) over
// sampled monomial pairs (levels n, m <= n_max / 2)
double submultiplicativity_defect(Variety v, const MetricWeight& weight, const Grid& grid,
                                  int n_max, const MonomialOrder& order, int samples, Rng& rng);

}  // namespace okspec
