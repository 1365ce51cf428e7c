#include "okspec/core/kernels.hpp"

#include <stdexcept>

namespace okspec::kernels {

MatrixXcd gram_matrix(const MatrixXcd& samples, const VectorXd& weights, Exec exec) {
    const Eigen::Index q = samples.rows(), dim = samples.cols();
    if (weights.size() != q)
        throw std::invalid_argument("gram_matrix: weight count != sample rows");
    MatrixXcd g = MatrixXcd::Zero(dim, dim);

    auto entry = [&](Eigen::Index j, Eigen::Index k) {
        std::complex<double> acc(0.0, 0.0);
        for (Eigen::Index r = 0; r < q; ++r)
            acc += weights(r) * std::conj(samples(r, j)) * samples(r, k);
        return acc;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
        for (Eigen::Index j = 0; j < dim; ++j)
            for (Eigen::Index k = j; k < dim; ++k) g(j, k) = entry(j, k);
    } else {
        for (Eigen::Index j = 0; j < dim; ++j)
            for (Eigen::Index k = j; k < dim; ++k) g(j, k) = entry(j, k);
    }
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index k = 0; k < j; ++k) g(j, k) = std::conj(g(k, j));
    return g;
}

VectorXd batch_max_abs(const MatrixXcd& functionals, const MatrixXcd& directions, Exec exec) {
    const Eigen::Index m = functionals.rows(), n = directions.rows();
    if (functionals.cols() != directions.cols())
        throw std::invalid_argument("batch_max_abs: dimension mismatch");
    VectorXd out(n);

    auto one = [&](Eigen::Index i) {
        double best = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            double v = std::abs(functionals.row(j).dot(directions.row(i)));
            if (v > best) best = v;
        }
        return best;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (Eigen::Index i = 0; i < n; ++i) out(i) = one(i);
    } else {
        for (Eigen::Index i = 0; i < n; ++i) out(i) = one(i);
    }
    return out;
}

VectorXd ellipsoid_scores(const MatrixXcd& points, const MatrixXcd& xinv, Exec exec) {
    const Eigen::Index m = points.rows();
    VectorXd out(m);

    auto one = [&](Eigen::Index j) {
        // p^* Xinv p, real for Hermitian Xinv
        std::complex<double> acc(0.0, 0.0);
        const auto p = points.row(j);
        for (Eigen::Index a = 0; a < points.cols(); ++a) {
            std::complex<double> row(0.0, 0.0);
            for (Eigen::Index b = 0; b < points.cols(); ++b) row += xinv(a, b) * p(b);
            acc += std::conj(p(a)) * row;
        }
        return acc.real();
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (Eigen::Index j = 0; j < m; ++j) out(j) = one(j);
    } else {
        for (Eigen::Index j = 0; j < m; ++j) out(j) = one(j);
    }
    return out;
}

std::uint64_t mc_count(std::uint64_t seed, std::uint64_t trials,
                       const std::function<bool(Rng&)>& trial, Exec exec) {
    std::uint64_t hits = 0;
    Rng base(seed);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(max_threads())
        for (long long i = 0; i < (long long)trials; ++i) {
            Rng r = base.split((std::uint64_t)i);
            if (trial(r)) ++hits;
        }
    } else {
        for (std::uint64_t i = 0; i < trials; ++i) {
            Rng r = base.split(i);
            if (trial(r)) ++hits;
        }
    }
    return hits;
}

}  // namespace okspec::kernels
