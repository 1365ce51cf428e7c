#include "doctest.h"

#include <cmath>

#include "okspec/series/norms.hpp"

using namespace okspec;

namespace {

const MonomialOrder kOrd1{OrderKind::grlex, 1};
const MonomialOrder kOrd2{OrderKind::grlex, 2};

Grid test_grid() { return Grid::polar(Variety::P1, 24, 48); }

}  // namespace

TEST_CASE("weights are chart-consistent") {
    CHECK(MetricWeight::fubini_study(Variety::P1).overlap_defect() < 1e-12);
    CHECK(MetricWeight::fubini_study(Variety::P2).overlap_defect() < 1e-12);
    CHECK(MetricWeight::max_log(Variety::P1).overlap_defect() < 1e-12);
    CHECK(MetricWeight::max_log(Variety::P2).overlap_defect() < 1e-12);
    auto fs = MetricWeight::fubini_study(Variety::P1);
    CHECK(MetricWeight::shifted(fs, 0.3).overlap_defect() < 1e-12);
    CHECK(MetricWeight::bump(fs, {0.2, 0.1}, 0.1, 0.5).overlap_defect() < 1e-10);
    CHECK(MetricWeight::vee(MetricWeight::bump(fs, {0.0, 0.0}, 0.1, 0.4), fs, 0.05)
              .overlap_defect() < 1e-10);
}

TEST_CASE("fubini-study quadrature has unit mass") {
    CHECK_NOTHROW(QuadratureMeasure::fubini_study(Variety::P1, 16, 32).validate(1e-12));
    CHECK_NOTHROW(QuadratureMeasure::fubini_study(Variety::P2, 10, 12).validate(1e-10));
}

TEST_CASE("sup norms of monomials under the FS weight") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    MonomialOrder ord = kOrd1;

    // z^0 on O(n): norm 1 at z = 0
    Backend b3 = Backend::make(Variety::P1, 3, ord);
    auto oracle3 = sup_norm_oracle(b3, fs, test_grid(), 1e-3);
    VectorXcd e0 = VectorXcd::Zero(4);
    e0(0) = 1.0;
    CHECK(oracle3.evaluate(e0) == doctest::Approx(1.0).epsilon(1e-9));

    // z^1 on O(2): radial optimization oracle max r/(1+r^2) = 1/2
    Backend b2 = Backend::make(Variety::P1, 2, ord);
    auto oracle2 = sup_norm_oracle(b2, fs, test_grid());
    VectorXcd e1 = VectorXcd::Zero(3);
    e1(1) = 1.0;
    double dense_best = 0.0;
    for (int i = 0; i <= 400000; ++i) {
        double r = 1.2 * i / 400000.0;
        dense_best = std::max(dense_best, r / (1.0 + r * r));
    }
    CHECK(dense_best == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(oracle2.evaluate(e1) == doctest::Approx(dense_best).epsilon(2e-3));

    // flat weight on the unit-disc grid: ||z^k|| = 1
    MetricWeight flat(Variety::P1, "flat", [](const ChartPoint&) { return 0.0; }, true, true);
    Grid unit = Grid::polar(Variety::P1, 16, 32, 1.0);
    Backend b4 = Backend::make(Variety::P1, 4, ord);
    auto oflat = sup_norm_oracle(b4, flat, unit);
    for (int k = 0; k <= 4; ++k) {
        VectorXcd ek = VectorXcd::Zero(5);
        ek(k) = 1.0;
        CHECK(oflat.evaluate(ek) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("l2 gram under FS weight and measure") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    auto mu = QuadratureMeasure::fubini_study(Variety::P1, 24, 24);
    Backend b2 = Backend::make(Variety::P1, 2, kOrd1);
    auto gram = l2_gram(b2, fs, mu, 1e-6);

    // rotation invariance: monomials orthogonal
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(gram.gram()(i, j)) < 1e-8);

    // analytic diagonal: ||z^k||^2 = k!(n-k)!/(n+1)!
    CHECK(gram.gram()(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(gram.gram()(1, 1).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
    CHECK(gram.gram()(2, 2).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    // constant shift scales the gram by e^{-2nc}
    auto shifted = l2_gram(b2, MetricWeight::shifted(fs, 0.25), mu);
    double factor = std::exp(-2.0 * 2 * 0.25);
    CHECK((shifted.gram() - factor * gram.gram()).norm() < 1e-10);
}

TEST_CASE("gr quotient values: rotation-invariant sup case is exact") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    auto gr = gr_quotient_values(Variety::P1, fs, NormKind::sup, kOrd1, 8, test_grid());
    CHECK(gr.budget.additive == 0.0);
    CHECK(gr.sample().level(5).size() == 6);

    // Phi(n,k) = -ln sup-norm of z^k; verify the level-4 values directly
    Backend b4 = Backend::make(Variety::P1, 4, kOrd1);
    auto oracle = sup_norm_oracle(b4, fs, test_grid());
    for (int k = 0; k <= 4; ++k) {
        VectorXcd ek = VectorXcd::Zero(5);
        ek(k) = 1.0;
        CHECK(gr.table.at(4, {k}) == doctest::Approx(-std::log(oracle.evaluate(ek))));
    }
    CHECK(gr.table.audit_superadditive(1e-9).pass);

    // Schwarz-type lower bound: min Phi/n bounded below
    double lo = 0.0;
    for (int n = 1; n <= 8; ++n)
        for (auto& a : gr.sample().level(n)) lo = std::min(lo, gr.table.at(n, a) / n);
    CHECK(lo >= -1.0);
}

TEST_CASE("gr quotient values: trivial weight with the uniform circle measure") {
    MetricWeight flat(Variety::P1, "flat", [](const ChartPoint&) { return 0.0; }, true, true);
    // uniform probability measure on the unit circle, chart 0
    QuadratureMeasure circle;
    circle.variety = Variety::P1;
    const int m = 64;
    for (int i = 0; i < m; ++i) {
        double t = 2.0 * M_PI * i / m;
        circle.nodes.push_back({0, {std::cos(t), std::sin(t)}, {0.0, 0.0}});
        circle.weights.push_back(1.0 / m);
    }
    Backend b1 = Backend::make(Variety::P1, 1, kOrd1);
    auto gram = l2_gram(b1, flat, circle);
    auto gr = gr_quotient_values(Variety::P1, flat, NormKind::l2, kOrd1, 1,
                                 Grid::polar(Variety::P1, 8, 16), &circle);
    CHECK(gr.table.at(1, {0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gr.table.at(1, {1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((gram.gram() - MatrixXcd::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("gr quotient values: bump weight uses the surrogate with a budget") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    auto bump = MetricWeight::bump(fs, {0.3, 0.0}, 0.1, 0.5);
    auto gr = gr_quotient_values(Variety::P1, bump, NormKind::sup, kOrd1, 6, test_grid());
    CHECK(gr.budget.additive > 0.0);
    CHECK(gr.budget.additive <= 0.5 * std::log(7.0) + 1e-9);
    // superadditivity within three surrogate slacks
    auto rep = gr.table.audit_superadditive(3.0 * gr.budget.additive + 1e-9);
    CHECK(rep.pass);
}

TEST_CASE("distortion bound") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    auto grid = test_grid();
    CHECK(distortion_bound(fs, fs, 7, grid) == 0.0);
    CHECK(distortion_bound(fs, MetricWeight::shifted(fs, -0.4), 7, grid) ==
          doctest::Approx(7 * 0.4));
    auto bumped = MetricWeight::bump(fs, {0.2, 0.0}, 0.1, 0.4);
    CHECK(distortion_bound(fs, bumped, 5, grid) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("submultiplicativity of grid sup norms") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    Rng rng(3);
    CHECK(submultiplicativity_defect(Variety::P1, fs, test_grid(), 10, kOrd1, 60, rng) <= 1e-12);
    auto bumped = MetricWeight::bump(fs, {0.3, 0.2}, 0.1, 0.5);
    Rng rng2(4);
    CHECK(submultiplicativity_defect(Variety::P1, bumped, test_grid(), 10, kOrd1, 60, rng2) <=
          1e-12);
}

TEST_CASE("sub series: shifted interval and identity") {
    // s = z (degree 1), p = 2: levels 2n carry z^n * H0(O(n))
    std::vector<Rational> z_coeffs{Rational(0), Rational(1)};
    auto sub = GradedSubspaces::sub_series(Variety::P1, z_coeffs, 1, 2, 20, kOrd1);
    auto fs = MetricWeight::fubini_study(Variety::P1);
    auto gr = gr_quotient_values(Variety::P1, fs, NormKind::sup, kOrd1, 20, test_grid(),
                                 nullptr, &sub);
    CHECK(gr.sample().level(3).empty());
    REQUIRE(!gr.sample().level(10).empty());
    // Gamma_{2n} = {n..2n}: Delta = [1/2, 1]
    auto body = delta_body(gr.sample(), 2);
    CHECK(body.body.volume == doctest::Approx(0.5));
    CHECK(body.body.vertices.front()[0] == Rational(1, 2));
    CHECK(body.body.vertices.back()[0] == Rational(1));

    // p = 1, s = 1 recovers the complete series
    std::vector<Rational> one{Rational(1)};
    auto full = GradedSubspaces::sub_series(Variety::P1, one, 0, 1, 6, kOrd1);
    auto gr_full = gr_quotient_values(Variety::P1, fs, NormKind::sup, kOrd1, 6, test_grid(),
                                      nullptr, &full);
    for (int n = 1; n <= 6; ++n) CHECK((int)gr_full.sample().level(n).size() == n + 1);

    CHECK_THROWS(GradedSubspaces::sub_series(Variety::P1, {Rational(0)}, 0, 1, 4, kOrd1));
}

TEST_CASE("grid refinement rejects a coarse grid") {
    auto fs = MetricWeight::fubini_study(Variety::P1);
    Backend b20 = Backend::make(Variety::P1, 20, kOrd1);
    CHECK_THROWS(sup_norm_oracle(b20, fs, Grid::polar(Variety::P1, 2, 6), 1e-3));
}
