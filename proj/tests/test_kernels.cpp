#include "doctest.h"

#include "okspec/core/kernels.hpp"

using namespace okspec;
using namespace okspec::kernels;

TEST_CASE("parallel kernels match the serial reference bitwise") {
    Rng rng(1234);
    const int q = 300, dim = 12, m = 40;
    MatrixXcd samples(q, dim);
    VectorXd weights(q);
    for (int i = 0; i < q; ++i) {
        weights(i) = rng.uniform(0.1, 1.0);
        for (int j = 0; j < dim; ++j) samples(i, j) = rng.cnormal();
    }
    auto g_s = gram_matrix(samples, weights, Exec::serial);
    auto g_p = gram_matrix(samples, weights, Exec::parallel);
    CHECK((g_s - g_p).norm() == 0.0);

    MatrixXcd functionals(m, dim), dirs(25, dim);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < dim; ++j) functionals(i, j) = rng.cnormal();
    for (int i = 0; i < 25; ++i)
        for (int j = 0; j < dim; ++j) dirs(i, j) = rng.cnormal();
    auto b_s = batch_max_abs(functionals, dirs, Exec::serial);
    auto b_p = batch_max_abs(functionals, dirs, Exec::parallel);
    CHECK((b_s - b_p).norm() == 0.0);

    MatrixXcd xinv = (samples.adjoint() * samples / q).inverse();
    auto e_s = ellipsoid_scores(functionals, xinv, Exec::serial);
    auto e_p = ellipsoid_scores(functionals, xinv, Exec::parallel);
    CHECK((e_s - e_p).norm() == 0.0);

    auto trial = [](Rng& r) { return r.uniform() < 0.37; };
    auto h_s = mc_count(42, 20000, trial, Exec::serial);
    auto h_p = mc_count(42, 20000, trial, Exec::parallel);
    CHECK(h_s == h_p);
    CHECK((double)h_s / 20000.0 == doctest::Approx(0.37).epsilon(0.02));
}

TEST_CASE("gram kernel matches a direct dense product") {
    Rng rng(7);
    const int q = 64, dim = 5;
    MatrixXcd samples(q, dim);
    VectorXd weights(q);
    for (int i = 0; i < q; ++i) {
        weights(i) = rng.uniform(0.0, 2.0);
        for (int j = 0; j < dim; ++j) samples(i, j) = rng.cnormal();
    }
    MatrixXcd direct = samples.adjoint() * weights.asDiagonal() * samples;
    auto g = gram_matrix(samples, weights, Exec::serial);
    CHECK((g - direct).norm() < 1e-12 * direct.norm());
}
