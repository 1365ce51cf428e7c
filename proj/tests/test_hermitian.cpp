#include "doctest.h"

#include <cmath>

#include "okspec/hermitian/hermitian.hpp"

using namespace okspec;

namespace {

HermitianForm identity(int r) {
    return HermitianForm(MatrixXcd::Identity(r, r), ScalarKind::real);
}

HermitianForm real_form(std::initializer_list<std::initializer_list<double>> rows) {
    int r = (int)rows.size();
    MatrixXcd g(r, r);
    int i = 0;
    for (auto& row : rows) {
        int j = 0;
        for (double v : row) g(i, j++) = v;
        ++i;
    }
    return HermitianForm(g, ScalarKind::real);
}

MatrixXcd random_subspace(int r, int m, Rng& rng) {
    MatrixXcd w(r, m);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j) w(i, j) = rng.cnormal();
    return w;
}

}  // namespace

TEST_CASE("relative spectrum on identical and scaled norms") {
    HermitianPair same(identity(2), identity(2));
    auto s = relative_spectrum(same);
    CHECK(s.slopes[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.slopes[1] == doctest::Approx(0.0).epsilon(1e-12));

    const double c = 0.7;
    HermitianPair scaledp(identity(2),
                          HermitianForm(std::exp(2 * c) * MatrixXcd::Identity(2, 2),
                                        ScalarKind::real));
    auto t = relative_spectrum(scaledp);
    CHECK(t.slopes[0] == doctest::Approx(c).epsilon(1e-12));
    CHECK(t.slopes[1] == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("2x2 coupled pair: spectrum, degree, polygon, flag") {
    // eigenvalues of [[2,1],[1,2]] are 3 and 1
    HermitianPair pair(identity(2), real_form({{2, 1}, {1, 2}}));
    auto s = relative_spectrum(pair);
    CHECK(s.slopes[0] == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    CHECK(s.slopes[1] == doctest::Approx(0.0).epsilon(1e-10));

    CHECK(degree(pair) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));

    auto p = polygon_of(pair);
    CHECK(p.breakpoints[0] == 0.0);
    CHECK(p.breakpoints[1] == doctest::Approx(0.5 * std::log(3.0)));
    CHECK(p.breakpoints[2] == doctest::Approx(0.5 * std::log(3.0)));

    auto flag = hn_filtration(pair);
    REQUIRE(flag.steps.size() == 2);
    // first step spans e1 + e2
    VectorXcd v = flag.steps[0].col(0);
    CHECK(std::abs(v(0)) == doctest::Approx(std::abs(v(1))).epsilon(1e-10));
    CHECK(std::abs(v(0) - v(1)) < 1e-8 * std::abs(v(0)));
}

TEST_CASE("diagonal pair flag and polygon") {
    HermitianPair pair(identity(2), real_form({{std::exp(2.0), 0}, {0, 1}}));
    auto flag = hn_filtration(pair);
    REQUIRE(flag.steps.size() == 2);
    CHECK(flag.step_slopes[0] == doctest::Approx(1.0));
    CHECK(flag.step_slopes[1] == doctest::Approx(0.0));
    CHECK(std::abs(flag.steps[0](1, 0)) < 1e-12);

    auto p = polygon_of(pair);
    CHECK(p.breakpoints[1] == doctest::Approx(1.0));
    CHECK(p.breakpoints[2] == doctest::Approx(1.0));

    // proportional norms give a single-step flag
    HermitianPair prop(identity(3),
                       HermitianForm(2.5 * MatrixXcd::Identity(3, 3), ScalarKind::real));
    CHECK(hn_filtration(prop).steps.size() == 1);
}

TEST_CASE("restriction and quotient") {
    HermitianPair pair(identity(2), real_form({{2, 1}, {1, 2}}));
    MatrixXcd w(2, 1);
    w << 1.0, 0.0;
    auto sub = restrict_pair(pair, w);
    CHECK(degree(sub) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

    auto quot = quotient_pair(pair, w);
    CHECK(degree(sub) + degree(quot) == doctest::Approx(degree(pair)).epsilon(1e-10));

    // W = V behaves as the identity
    MatrixXcd full = MatrixXcd::Identity(2, 2);
    auto same = restrict_pair(pair, full);
    CHECK(degree(same) == doctest::Approx(degree(pair)).epsilon(1e-12));

    MatrixXcd bad(2, 2);
    bad << 1.0, 2.0, 1.0, 2.0;
    CHECK_THROWS(restrict_pair(pair, bad));
}

TEST_CASE("degree additivity on random pairs") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        int r = 2 + (int)rng.below(6);
        int m = 1 + (int)rng.below((std::uint64_t)(r - 1));
        auto pair = random_pair(r, rng);
        MatrixXcd w = random_subspace(r, m, rng);
        double lhs = degree(pair);
        double rhs = degree(restrict_pair(pair, w)) + degree(quotient_pair(pair, w));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("slope sum equals degree and P(1) equals mean slope") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 2 + (int)rng.below(49);
        auto pair = random_pair(r, rng);
        auto s = relative_spectrum(pair);
        CHECK(s.sum() == doctest::Approx(degree(pair)).epsilon(1e-10));
        auto p = polygon_of(pair);
        CHECK(p.normalized.back() == doctest::Approx(s.mean()).epsilon(1e-10));
    }
}

TEST_CASE("Ky Fan bound: subspace degrees stay under the polygon") {
    Rng rng(55);
    auto pair = random_pair(6, rng);
    auto poly = polygon_of(pair);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + (int)rng.below(5);
        MatrixXcd w = random_subspace(6, m, rng);
        CHECK(degree(restrict_pair(pair, w)) <= poly.breakpoints[(size_t)m] + 1e-9);
    }
    // flag steps attain the bound
    auto flag = hn_filtration(pair);
    for (size_t i = 0; i < flag.steps.size(); ++i) {
        int m = (int)flag.steps[i].cols();
        CHECK(degree(restrict_pair(pair, flag.steps[i])) ==
              doctest::Approx(poly.breakpoints[(size_t)m]).epsilon(1e-8));
    }
}

TEST_CASE("scaling equivariance shifts slopes and keeps the flag") {
    Rng rng(31);
    auto pair = random_pair(5, rng);
    const double c = -0.43;
    HermitianPair shifted(pair.phi,
                          HermitianForm(std::exp(2 * c) * pair.psi.gram(),
                                        pair.psi.scalar_kind()));
    auto s0 = relative_spectrum(pair);
    auto s1 = relative_spectrum(shifted);
    for (int i = 0; i < 5; ++i)
        CHECK(s1.slopes[(size_t)i] == doctest::Approx(s0.slopes[(size_t)i] + c).epsilon(1e-10));

    auto f0 = hn_filtration(pair), f1 = hn_filtration(shifted);
    REQUIRE(f0.steps.size() == f1.steps.size());
    for (size_t i = 0; i < f0.steps.size(); ++i) {
        // same span: projectors agree
        auto proj = [](const MatrixXcd& w) {
            return MatrixXcd(w * (w.adjoint() * w).inverse() * w.adjoint());
        };
        CHECK((proj(f0.steps[i]) - proj(f1.steps[i])).norm() < 1e-8);
    }
}

TEST_CASE("perturbation moves the polygon by at most 2*delta*t") {
    Rng rng(13);
    auto pair = random_pair(6, rng);
    const double delta = 0.09;
    Rng rng2(14);
    auto jitter = [&](const HermitianForm& f) {
        double s = std::exp(2.0 * rng2.uniform(-delta, delta));
        return HermitianForm(s * f.gram(), f.scalar_kind());
    };
    HermitianPair moved(jitter(pair.phi), jitter(pair.psi));
    auto p0 = polygon_of(pair), p1 = polygon_of(moved);
    for (int i = 1; i <= 6; ++i)
        CHECK(std::abs(p1.breakpoints[(size_t)i] - p0.breakpoints[(size_t)i]) <=
              2.0 * delta * i + 1e-9);
}

TEST_CASE("truncated degree and surrogate sandwich") {
    HermitianPair pair(identity(2), real_form({{std::exp(2.0), 0}, {0, 1}}));
    // spectrum (1, 0)
    CHECK(truncated_degree(pair, 0.5).value == doctest::Approx(1.5));
    CHECK(truncated_degree(pair, -3.0).value == doctest::Approx(degree(pair)));
    CHECK(truncated_degree(pair, 7.0).value == doctest::Approx(14.0));

    Rng rng(21);
    auto rp = random_pair(5, rng);
    auto res = truncated_degree(rp, 0.1);
    Rng audit_rng(22);
    CHECK(truncation_sandwich_violation(rp, 0.1, res.surrogate, 500, audit_rng) <= 1e-9);
}

TEST_CASE("form constructor rejects bad input") {
    MatrixXcd asym(2, 2);
    asym << 1.0, 0.5, -0.5, 1.0;
    CHECK_THROWS(HermitianForm(asym, ScalarKind::real));
    MatrixXcd indef(2, 2);
    indef << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS(HermitianForm(indef, ScalarKind::real));
}
