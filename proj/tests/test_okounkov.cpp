#include "doctest.h"

#include <cmath>

#include "okspec/okounkov/semigroup.hpp"

using namespace okspec;

namespace {

// synthetic superadditive table Phi(n, alpha) = n * g(alpha / n) for
// concave g
ValueTable table_from_g(const SemigroupSample& s, double (*g)(double)) {
    ValueTable t(s);
    for (int n = 1; n <= s.n_max(); ++n)
        for (auto& a : s.level(n)) t.set(n, a, n * g((double)a[0] / n));
    return t;
}

double g_linear(double x) { return -x; }
double g_zero(double) { return 0.0; }
double g_tent(double x) { return std::min(2.0 * x, 1.0 - x); }

// CDF of g_* Lebesgue on [0,1] via a dense grid
double oracle_cdf(double (*g)(double), double t, int grid = 200000) {
    int count = 0;
    for (int i = 0; i < grid; ++i) {
        double x = (i + 0.5) / grid;
        if (g(x) <= t) ++count;
    }
    return (double)count / grid;
}

double kolmogorov_vs_oracle(const SpectralMeasure& m, double (*g)(double)) {
    double worst = 0.0;
    for (auto& [v, w] : m.atoms) {
        worst = std::max(worst, std::abs(m.cdf(v) - oracle_cdf(g, v)));
        worst = std::max(worst, std::abs(m.cdf(v - 1e-12) - oracle_cdf(g, v - 1e-12)));
    }
    return worst;
}

}  // namespace

TEST_CASE("monomial orders are total, zero-minimal, addition-compatible") {
    for (auto kind : {OrderKind::grlex, OrderKind::grevlex, OrderKind::lex}) {
        MonomialOrder ord{kind, 2};
        Rng rng((std::uint64_t)kind + 7);
        Exponent zero{0, 0};
        for (int t = 0; t < 300; ++t) {
            Exponent a{(int)rng.below(6), (int)rng.below(6)};
            Exponent b{(int)rng.below(6), (int)rng.below(6)};
            Exponent c{(int)rng.below(4), (int)rng.below(4)};
            bool ab = ord.less(a, b), ba = ord.less(b, a);
            CHECK(!(ab && ba));
            if (!ab && !ba) CHECK(a == b);
            if (a != zero) CHECK(ord.less(zero, a));
            if (ab) {
                Exponent ac{a[0] + c[0], a[1] + c[1]}, bc{b[0] + c[0], b[1] + c[1]};
                CHECK(ord.less(ac, bc));
            }
        }
        // graded kinds refine total degree
        if (kind != OrderKind::lex) CHECK(ord.less({0, 3}, {4, 0}) == true);
    }
}

TEST_CASE("leading exponents by row reduction") {
    MonomialOrder ord{OrderKind::grlex, 1};
    std::vector<Exponent> cols{{0}, {1}, {2}};
    // span{1, z, z^2}
    std::vector<std::vector<Rational>> full{
        {Rational(1), Rational(0), Rational(0)},
        {Rational(0), Rational(1), Rational(0)},
        {Rational(0), Rational(0), Rational(1)}};
    auto g = leading_exponents(full, cols, ord);
    CHECK(g == std::vector<Exponent>{{0}, {1}, {2}});

    // span{1, z^2} with a redundant row
    std::vector<std::vector<Rational>> partial{
        {Rational(1), Rational(0), Rational(2)},
        {Rational(0), Rational(0), Rational(1)},
        {Rational(1), Rational(0), Rational(5)}};
    auto g2 = leading_exponents(partial, cols, ord);
    CHECK(g2 == std::vector<Exponent>{{0}, {2}});

    // random 5x8: pivot count equals an independent elimination rank
    Rng rng(41);
    MonomialOrder ord8{OrderKind::grlex, 1};
    std::vector<Exponent> cols8;
    for (int i = 0; i < 8; ++i) cols8.push_back({i});
    std::vector<std::vector<Rational>> m(5, std::vector<Rational>(8));
    for (auto& row : m)
        for (auto& x : row) x = Rational((long long)rng.below(7)) - Rational(3);
    auto g3 = leading_exponents(m, cols8, ord8);
    // oracle: fraction-free rank by column elimination on the transpose
    auto mm = m;
    int rank = 0;
    for (size_t col = 0; col < 8 && rank < 5; ++col) {
        size_t piv = (size_t)rank;
        while (piv < 5 && mm[piv][col].is_zero()) ++piv;
        if (piv == 5) continue;
        std::swap(mm[piv], mm[(size_t)rank]);
        for (size_t i = (size_t)rank + 1; i < 5; ++i) {
            if (mm[i][col].is_zero()) continue;
            Rational c = mm[i][col] / mm[(size_t)rank][col];
            for (size_t j = col; j < 8; ++j) mm[i][j] -= c * mm[(size_t)rank][j];
        }
        ++rank;
    }
    CHECK((int)g3.size() == rank);
}

TEST_CASE("closure audit flags a constructed violation") {
    SemigroupSample s(1, 4);
    s.set_level(1, {{0}, {1}});
    s.set_level(2, {{0}, {1}, {2}});
    s.set_level(3, {{0}, {1}, {2}, {3}});
    s.set_level(4, {{0}, {1}, {2}, {4}});  // missing 3 = 1@1 + 2@3
    auto rep = s.audit_closure();
    CHECK(!rep.pass);
    CHECK(rep.witness.find("level 4") != std::string::npos);

    CHECK(SemigroupSample::full_line(12).audit_closure().pass);
    CHECK(SemigroupSample::full_simplex(8).audit_closure().pass);
}

TEST_CASE("conditions (a)-(c)") {
    auto full = SemigroupSample::full_line(10);
    auto rep = conditions_check(full);
    CHECK(rep.a_pass);
    CHECK(rep.b_pass);
    CHECK(rep.c_pass);

    // generated by (1,0) and (1,2): index-2 sublattice of Z^2
    SemigroupSample idx2(1, 6);
    for (int n = 1; n <= 6; ++n) {
        std::vector<Exponent> level;
        for (int k = 0; k <= n; k += 2) level.push_back({k});
        idx2.set_level(n, level);
    }
    CHECK(idx2.audit_closure().pass);
    auto rep2 = conditions_check(idx2);
    CHECK(rep2.a_pass);
    CHECK(!rep2.c_pass);
    CHECK(rep2.c_index == 2);
}

TEST_CASE("delta body for the full line and plane") {
    auto line = delta_body(SemigroupSample::full_line(60), 1);
    CHECK(!line.body.degenerate);
    CHECK(line.body.volume == doctest::Approx(1.0));
    CHECK(line.count_ratios.back() == doctest::Approx(1.0).epsilon(0.02));

    auto plane = delta_body(SemigroupSample::full_simplex(30), 1);
    CHECK(plane.body.volume == doctest::Approx(0.5));

    // index-2 subsemigroup: hull against a brute-force min/max oracle
    SemigroupSample idx2(1, 40);
    for (int n = 1; n <= 40; ++n) {
        std::vector<Exponent> level;
        for (int k = 0; k <= n; k += 2) level.push_back({k});
        idx2.set_level(n, level);
    }
    auto body = delta_body(idx2, 1);
    double lo = 1e9, hi = -1e9;
    for (int n = 1; n <= 40; ++n)
        for (int k = 0; k <= n; k += 2) {
            lo = std::min(lo, (double)k / n);
            hi = std::max(hi, (double)k / n);
        }
    CHECK(body.body.volume == doctest::Approx(hi - lo));
}

TEST_CASE("filtered cdf: dirac and uniform limit laws") {
    auto s = SemigroupSample::full_line(80);
    auto t0 = table_from_g(s, g_zero);
    std::vector<double> grid;
    for (int i = -8; i <= 8; ++i) grid.push_back(i / 8.0);
    auto f = filtered_cdf(s, t0, grid, 1);
    for (auto& [t, F] : f) {
        if (t < 0.0) CHECK(F == doctest::Approx(1.0));
        if (t > 0.0) CHECK(F == doctest::Approx(0.0));
    }

    auto t1 = table_from_g(s, g_linear);
    auto f1 = filtered_cdf(s, t1, grid, 1);
    for (auto& [t, F] : f1) {
        if (t >= -1.0 && t <= 0.0) CHECK(F == doctest::Approx(std::min(1.0, -t)).epsilon(0.03));
    }
    // F is non-increasing
    for (size_t i = 0; i + 1 < f1.size(); ++i) CHECK(f1[i].second >= f1[i + 1].second - 1e-12);
}

TEST_CASE("empirical law converges to the pushforward (d=1)") {
    auto s = SemigroupSample::full_line(500);
    auto t = table_from_g(s, g_tent);
    CHECK(t.audit_superadditive(1e-9, 400000).pass);
    auto law = empirical_level_law(s, t, 500);
    CHECK(kolmogorov_vs_oracle(law, g_tent) <= 0.05);

    // theta estimate approaches sup g = max over sampled ratios
    CHECK(t.theta_estimate() == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

TEST_CASE("empirical law vs filtered cdf at n = 200") {
    auto s = SemigroupSample::full_line(200);
    auto t = table_from_g(s, g_tent);
    auto law = empirical_level_law(s, t, 200);
    // P(Z >= t) from the filtered body volumes matches the level law
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(-0.2 + 0.5 * i / 40.0 * 1.04);
    auto f = filtered_cdf(s, t, grid, 1);
    for (auto& [tt, F] : f) {
        if (tt >= t.theta_estimate() - 0.02) continue;  // one-sided at theta
        double emp = 1.0 - law.cdf(tt - 1e-12);
        CHECK(std::abs(emp - F) <= 0.05);
    }
}

TEST_CASE("Phi = 0 gives delta_0 law; linear Phi at n = 4") {
    auto s = SemigroupSample::full_line(8);
    auto t0 = table_from_g(s, g_zero);
    auto law0 = empirical_level_law(s, t0, 5);
    REQUIRE(law0.atoms.size() == 1);
    CHECK(law0.atoms[0].first == doctest::Approx(0.0));

    auto t1 = table_from_g(s, g_linear);
    auto law1 = empirical_level_law(s, t1, 4);
    REQUIRE(law1.atoms.size() == 5);
    for (int k = 0; k <= 4; ++k) {
        CHECK(law1.atoms[(size_t)k].first == doctest::Approx(-1.0 + 0.25 * k));
        CHECK(law1.atoms[(size_t)k].second == doctest::Approx(0.2));
    }
}

TEST_CASE("g function recovers the profile") {
    auto s = SemigroupSample::full_line(120);
    auto t = table_from_g(s, g_tent);
    std::vector<double> t_grid;
    for (int i = 0; i <= 96; ++i) t_grid.push_back(-0.55 + i * (1.25 / 96.0));
    std::vector<RPoint> xs;
    for (int i = 1; i < 20; ++i) xs.push_back({Rational(i, 20)});
    auto g = g_function(s, t, t_grid, xs, 1);
    for (int i = 1; i < 20; ++i) {
        REQUIRE(g[(size_t)(i - 1)].has_value());
        CHECK(*g[(size_t)(i - 1)] == doctest::Approx(g_tent(i / 20.0)).epsilon(0.08));
    }
    // zero table: G identically 0 on the interior
    auto tz = table_from_g(s, g_zero);
    auto gz = g_function(s, tz, t_grid, xs, 1);
    for (auto& v : gz) CHECK(*v == doctest::Approx(0.0).epsilon(0.03));
}

TEST_CASE("brunn-minkowski concavity of filtered volumes") {
    auto s1 = SemigroupSample::full_line(150);
    auto t1 = table_from_g(s1, g_tent);
    std::vector<double> grid;
    for (int i = 0; i < 64; ++i) grid.push_back(-0.5 + i * (0.8 / 64.0));
    CHECK(brunn_minkowski_defect(s1, t1, grid, 1) <= 0.02);

    auto s2 = SemigroupSample::full_simplex(40);
    ValueTable t2(s2);
    for (int n = 1; n <= 40; ++n)
        for (auto& a : s2.level(n))
            t2.set(n, a, -(double)(a[0] + 2 * a[1]) + 0.5 * std::min(a[0], a[1]));
    CHECK(t2.audit_superadditive(1e-9).pass);
    std::vector<double> grid2;
    for (int i = 0; i < 64; ++i) grid2.push_back(-2.4 + i * (2.2 / 64.0));
    CHECK(brunn_minkowski_defect(s2, t2, grid2, 1) <= 0.03);
}
