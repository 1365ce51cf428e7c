// Timing harness comparing the serial reference kernels against the OpenMP
// variants; the parallel results must match the serial ones bitwise.

#include <chrono>
#include <cstdio>

#include "okspec/core/kernels.hpp"

using namespace okspec;
using namespace okspec::kernels;
using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = clk::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", max_threads());
    Rng rng(2026);

    {
        const int q = 20000, dim = 48;
        MatrixXcd samples(q, dim);
        VectorXd weights(q);
        for (int i = 0; i < q; ++i) {
            weights(i) = rng.uniform(0.1, 1.0);
            for (int j = 0; j < dim; ++j) samples(i, j) = rng.cnormal();
        }
        MatrixXcd gs, gp;
        double ts = time_best_of(3, [&] { gs = gram_matrix(samples, weights, Exec::serial); });
        double tp = time_best_of(3, [&] { gp = gram_matrix(samples, weights, Exec::parallel); });
        std::printf("gram_matrix      %6d x %-3d  serial %8.4fs  parallel %8.4fs  x%.2f  %s\n",
                    q, dim, ts, tp, ts / tp, (gs - gp).norm() == 0.0 ? "bitwise-equal" : "MISMATCH");
    }
    {
        const int m = 4000, dim = 48, dirs = 3000;
        MatrixXcd f(m, dim), d(dirs, dim);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < dim; ++j) f(i, j) = rng.cnormal();
        for (int i = 0; i < dirs; ++i)
            for (int j = 0; j < dim; ++j) d(i, j) = rng.cnormal();
        VectorXd bs, bp;
        double ts = time_best_of(3, [&] { bs = batch_max_abs(f, d, Exec::serial); });
        double tp = time_best_of(3, [&] { bp = batch_max_abs(f, d, Exec::parallel); });
        std::printf("batch_max_abs    %6d x %-3d  serial %8.4fs  parallel %8.4fs  x%.2f  %s\n",
                    m, dirs, ts, tp, ts / tp, (bs - bp).norm() == 0.0 ? "bitwise-equal" : "MISMATCH");
    }
    {
        const int m = 20000, dim = 40;
        MatrixXcd pts(m, dim);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < dim; ++j) pts(i, j) = rng.cnormal();
        MatrixXcd xinv = (pts.adjoint() * pts / (double)m).inverse();
        VectorXd es, ep;
        double ts = time_best_of(3, [&] { es = ellipsoid_scores(pts, xinv, Exec::serial); });
        double tp = time_best_of(3, [&] { ep = ellipsoid_scores(pts, xinv, Exec::parallel); });
        std::printf("ellipsoid_scores %6d x %-3d  serial %8.4fs  parallel %8.4fs  x%.2f  %s\n",
                    m, dim, ts, tp, ts / tp, (es - ep).norm() == 0.0 ? "bitwise-equal" : "MISMATCH");
    }
    {
        const std::uint64_t trials = 4000000;
        auto trial = [](Rng& r) {
            double x = r.uniform(-1.0, 1.0), y = r.uniform(-1.0, 1.0);
            return x * x + y * y <= 1.0;
        };
        std::uint64_t hs = 0, hp = 0;
        double ts = time_best_of(3, [&] { hs = mc_count(7, trials, trial, Exec::serial); });
        double tp = time_best_of(3, [&] { hp = mc_count(7, trials, trial, Exec::parallel); });
        std::printf("mc_count         %8llu     serial %8.4fs  parallel %8.4fs  x%.2f  %s\n",
                    (unsigned long long)trials, ts, tp, ts / tp,
                    hs == hp ? "bitwise-equal" : "MISMATCH");
    }
    return 0;
}
