#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>

#include "okspec/core/parallel.hpp"
#include "okspec/core/rng.hpp"

namespace okspec::kernels {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Weighted Gram accumulation: G(j,k) = sum_q w(q) * conj(S(q,j)) * S(q,k).
// S holds one sample row per quadrature node, one column per section.
// Parallelism is across output entries; each entry sums nodes in index
// order in both variants, so the two agree bitwise.
MatrixXcd gram_matrix(const MatrixXcd& samples, const VectorXd& weights, Exec exec);

// Per-direction max of |l_j(x)|: out(i) = max_j |(F * dirs.row(i)^T)(j)|.
VectorXd batch_max_abs(const MatrixXcd& functionals, const MatrixXcd& directions, Exec exec);

// Ellipsoid scores M_j = Re(p_j^* Xinv p_j) for every point row p_j.
VectorXd ellipsoid_scores(const MatrixXcd& points, const MatrixXcd& xinv, Exec exec);

// Monte Carlo counting with a counter-based stream per trial: the hit count
// is a sum of integers, identical for any thread count or schedule.
std::uint64_t mc_count(std::uint64_t seed, std::uint64_t trials,
                       const std::function<bool(Rng&)>& trial, Exec exec);

}  // namespace okspec::kernels
