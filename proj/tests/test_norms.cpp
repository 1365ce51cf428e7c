#include "doctest.h"

#include <cmath>

#include "okspec/norms/certificates.hpp"
#include "okspec/norms/mvee.hpp"

using namespace okspec;

namespace {

NormOracle unit_square() {
    MatrixXcd f(2, 2);
    f << 1.0, 0.0, 0.0, 1.0;
    return NormOracle::functional_family(f, ScalarKind::real);
}

NormOracle euclidean_disc() {
    return NormOracle::hermitian(HermitianForm(MatrixXcd::Identity(2, 2), ScalarKind::real));
}

NormOracle random_family(int rows, int dim, ScalarKind kind, Rng& rng) {
    while (true) {
        MatrixXcd f(rows, dim);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < dim; ++j)
                f(i, j) = kind == ScalarKind::complex
                              ? rng.cnormal()
                              : std::complex<double>(rng.normal(), 0.0);
        try {
            return NormOracle::functional_family(f, kind);
        } catch (const std::invalid_argument&) {
            continue;  // does not span, redraw
        }
    }
}

}  // namespace

TEST_CASE("max-of-functionals evaluation and degenerate family") {
    auto sq = unit_square();
    VectorXcd x(2);
    x << 0.3, -0.8;
    CHECK(sq.evaluate(x) == doctest::Approx(0.8));

    MatrixXcd single(1, 2);
    single << 1.0, 0.0;
    CHECK_THROWS(NormOracle::functional_family(single, ScalarKind::real));
}

TEST_CASE("max_combine equals pointwise max on probes") {
    Rng rng(5);
    auto a = random_family(7, 3, ScalarKind::complex, rng);
    auto b = NormOracle::scaled(random_family(5, 3, ScalarKind::complex, rng), 0.4);
    auto m = NormOracle::max_combine(a, b);
    for (int t = 0; t < 200; ++t) {
        VectorXcd x(3);
        for (int i = 0; i < 3; ++i) x(i) = rng.cnormal();
        CHECK(m.evaluate(x) == doctest::Approx(std::max(a.evaluate(x), b.evaluate(x))));
    }
}

TEST_CASE("john form of the unit square is the inscribed disc") {
    auto cert = john_form(unit_square());
    CHECK((cert.form.gram() - MatrixXcd::Identity(2, 2)).norm() < 1e-5);
    CHECK(cert.upper_factor == doctest::Approx(1.0));
    CHECK(cert.lower_factor >= 1.0 / std::sqrt(2.0) - 1e-6);
    CHECK(cert.checked_directions >= 1000);
}

TEST_CASE("john form on random families passes its audit") {
    Rng rng(71);
    for (int t = 0; t < 5; ++t) {
        auto fam = random_family(12, 3, t % 2 ? ScalarKind::real : ScalarKind::complex, rng);
        auto cert = john_form(fam);  // audits internally, throws on violation
        CHECK(cert.lower_factor >= 1.0 / std::sqrt(3.0) - 1e-6);
        SandwichCertificate copy = cert;
        Rng audit_rng(t);
        CHECK(audit_certificate(fam, copy, 1000, audit_rng) <= 1e-9);
    }
}

TEST_CASE("lowner form: circumscribed disc for the square, identity on hermitian") {
    auto cert = lowner_form(unit_square());
    CHECK((cert.form.gram() - 0.5 * MatrixXcd::Identity(2, 2)).norm() < 1e-5);
    CHECK(cert.lower_factor == doctest::Approx(1.0));
    CHECK(cert.upper_factor <= std::sqrt(2.0) + 1e-5);

    auto own = lowner_form(euclidean_disc());
    CHECK(own.lower_factor == doctest::Approx(1.0));
    CHECK(own.upper_factor == doctest::Approx(1.0));
}

TEST_CASE("mvee is deterministic") {
    Rng rng(9);
    MatrixXcd pts(20, 3);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 3; ++j) pts(i, j) = rng.cnormal();
    auto a = minimum_enclosing_ellipsoid(pts);
    auto b = minimum_enclosing_ellipsoid(pts);
    CHECK((a.h - b.h).norm() == 0.0);
    CHECK(a.slack == b.slack);
}

TEST_CASE("degree band basics") {
    auto sq = unit_square();
    auto band_same = degree_band(sq, sq);
    CHECK(band_same.band.contains(0.0));

    // scaling psi by e^c shifts both endpoints by r*c
    auto disc = euclidean_disc();
    auto b0 = degree_band(sq, disc);
    const double c = 0.37;
    auto b1 = degree_band(sq, NormOracle::scaled(disc, c));
    CHECK(b1.band.lo == doctest::Approx(b0.band.lo + 2 * c).epsilon(1e-9));
    CHECK(b1.band.hi == doctest::Approx(b0.band.hi + 2 * c).epsilon(1e-9));
}

TEST_CASE("degree band square vs disc contains ln(4/pi), Monte Carlo agrees") {
    // unit square has area 4, unit disc area pi
    const double truth = std::log(4.0 / M_PI);
    auto band = degree_band(unit_square(), euclidean_disc());
    CHECK(band.band.contains(truth));
    REQUIRE(band.has_monte_carlo);
    CHECK(std::abs(band.mc_estimate - truth) < 5.0 * band.mc_stderr + 1e-3);
}

TEST_CASE("polygon band: hermitian pair gives zero width and the exact polygon") {
    Rng rng(3);
    auto pair = random_pair(4, rng);
    auto pb = polygon_band(NormOracle::hermitian(pair.phi), NormOracle::hermitian(pair.psi));
    CHECK(pb.budget.additive == doctest::Approx(0.0));
    auto exact = polygon_of(pair);
    for (size_t i = 0; i < exact.breakpoints.size(); ++i)
        CHECK(pb.surrogate.breakpoints[i] == doctest::Approx(exact.breakpoints[i]).epsilon(1e-9));
}

TEST_CASE("polygon band monotonicity within certified slack") {
    // psi v phi >= psi pointwise, so the true polygon of (phi, psi v phi)
    // dominates; certified surrogates must respect that within their bands
    Rng rng(17);
    auto phi = random_family(9, 3, ScalarKind::complex, rng);
    auto psi = random_family(9, 3, ScalarKind::complex, rng);
    auto big = NormOracle::max_combine(psi, NormOracle::scaled(phi, 0.25));
    auto pb_small = polygon_band(phi, psi);
    auto pb_big = polygon_band(phi, big);
    for (int i = 0; i <= 3; ++i) {
        double t = (double)i;
        double hi_small = pb_small.surrogate.at(t) + pb_small.budget.additive * t;
        double lo_big = pb_big.surrogate.at(t) - pb_big.budget.additive * t;
        CHECK(lo_big <= hi_small + 1e-9);
    }

    // exact monotone case: scaling the second norm down lowers the polygon
    auto pb1 = polygon_band(phi, NormOracle::scaled(psi, -0.2));
    for (size_t i = 0; i < pb1.surrogate.breakpoints.size(); ++i)
        CHECK(pb1.surrogate.breakpoints[i] <= pb_small.surrogate.breakpoints[i] + 1e-9);
}

TEST_CASE("distance estimate") {
    auto sq = unit_square();
    auto same = distance_estimate(sq, sq);
    CHECK(same.lo == doctest::Approx(0.0));
    CHECK(same.contains(0.0));

    const double a = 0.61;
    auto scaled = distance_estimate(sq, NormOracle::scaled(sq, a));
    CHECK(scaled.lo == doctest::Approx(a).epsilon(1e-12));
    CHECK(scaled.lo <= a + 1e-12);
    CHECK(scaled.hi >= a - 1e-12);

    auto sd = distance_estimate(unit_square(), euclidean_disc());
    CHECK(sd.lo == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
    CHECK(sd.lo <= 0.5 * std::log(2.0) + 1e-12);
    CHECK(sd.hi >= 0.5 * std::log(2.0) - 1e-12);
}

TEST_CASE("truncation bound for hermitian pairs embedded as oracles") {
    Rng rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        int r = 2 + (int)rng.below(5);
        auto pair = random_pair(r, rng);
        auto mu = relative_spectrum(pair);
        auto phi_oracle = NormOracle::hermitian(pair.phi);
        auto psi_oracle = NormOracle::hermitian(pair.psi);
        for (double a : {-0.5, 0.0, 0.8}) {
            auto vee = NormOracle::max_combine(psi_oracle, NormOracle::scaled(phi_oracle, a));
            auto band = degree_band(phi_oracle, vee);
            double target = 0.0;
            for (double m : mu.slopes) target += std::max(m, a);
            double budget = 2.0 * r * std::log((double)r) + 0.5 * r * std::log(2.0) +
                            band.cert_halfwidth;
            CHECK(std::abs(band.surrogate_degree - target) <= budget);
            CHECK(band.band.contains(target));
        }
    }
}

TEST_CASE("flag additivity budget with surrogate degrees") {
    Rng rng(29);
    const int r = 5;
    auto phi = random_family(11, r, ScalarKind::complex, rng);
    auto psi = random_family(13, r, ScalarKind::complex, rng);
    auto jphi = john_form(phi), jpsi = john_form(psi);
    HermitianPair sur(jphi.form, jpsi.form);

    // random full flag; subquotient degrees from the surrogate pair are exact
    MatrixXcd basis(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) basis(i, j) = rng.cnormal();
    double total = degree(sur);
    double parts = degree(restrict_pair(sur, basis.leftCols(1)));
    for (int k = 2; k <= r; ++k) {
        auto sub = restrict_pair(sur, basis.leftCols(k));
        parts += degree(quotient_pair(sub, MatrixXcd::Identity(k, k - 1)));
    }
    // exactness of the hermitian surrogate additivity
    CHECK(parts == doctest::Approx(total).epsilon(1e-8));

    // and the oracle-level band: |deg - sum| <= r ln r once band widths join in
    auto band = degree_band(phi, psi);
    double slack = r * std::log((double)r) + 2.0 * band.cert_halfwidth;
    CHECK(std::abs(band.surrogate_degree - parts) <= slack);
}
