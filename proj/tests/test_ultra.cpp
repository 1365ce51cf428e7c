#include "doctest.h"

#include <cmath>

#include "okspec/ultra/norms.hpp"

using namespace okspec;
using namespace okspec::ultra;

namespace {

Fmat standard_basis(const Field& f, int n) { return identity_mat(f, n); }

Fvec vec_of(const Field& f, std::initializer_list<long long> xs) {
    Fvec v;
    for (long long x : xs) v.push_back(f.from_int(x));
    return v;
}

UltraNorm trivial_norm(const Field& f, int n) {
    return UltraNorm::diagonal(f, standard_basis(f, n), std::vector<Rational>((size_t)n, Rational(0)));
}

}  // namespace

TEST_CASE("field arithmetic and valuations are exact") {
    Field f = Field::padic(2);
    Fel a = f.from_rational(Rational(12));       // v = 2
    Fel b = f.from_rational(Rational(3, 8));     // v = -3
    CHECK(f.valuation(a) == Rational(2));
    CHECK(f.valuation(b) == Rational(-3));
    CHECK(f.valuation(f.mul(a, b)) == Rational(-1));
    // ultrametric: v(a+b) >= min(v(a), v(b)) with equality when they differ
    CHECK(f.valuation(f.add(a, b)) == Rational(-3));
    CHECK(f.eq(f.mul(a, f.inv(a)), f.one()));

    // random triples: |xy| = |x||y| and v(x+y) >= min
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        Fel x = f.random_probe(rng), y = f.random_probe(rng);
        CHECK(f.valuation(f.mul(x, y)) == f.valuation(x) + f.valuation(y));
        Fel s = f.add(x, y);
        if (!f.is_zero(s)) {
            Rational lo = std::min(f.valuation(x), f.valuation(y));
            CHECK(f.valuation(s) >= lo);
        }
    }
}

TEST_CASE("ramified extension valuation") {
    Field f = Field::padic(3, 2);  // pi^2 = 3
    Fel pi = f.uniformizer();
    CHECK(f.valuation(pi) == Rational(1, 2));
    CHECK(f.valuation(f.mul(pi, pi)) == Rational(1));
    CHECK(f.eq(f.mul(pi, pi), f.from_int(3)));
    Fel mixed = f.add(f.from_int(3), pi);  // v = min(1, 1/2)
    CHECK(f.valuation(mixed) == Rational(1, 2));
    CHECK(f.eq(f.mul(mixed, f.inv(mixed)), f.one()));
}

TEST_CASE("function field valuation") {
    Field f = Field::function_field();
    Fel t = f.uniformizer();
    Fel x = f.div(f.add(t, f.mul(t, t)), f.from_int(2));  // (t + t^2)/2, ord 1
    CHECK(f.valuation(x) == Rational(1));
    CHECK(f.valuation(f.inv(x)) == Rational(-1));
    Rng rng(4);
    for (int tr = 0; tr < 100; ++tr) {
        Fel a = f.random_probe(rng), b = f.random_probe(rng);
        CHECK(f.valuation(f.mul(a, b)) == f.valuation(a) + f.valuation(b));
    }
}

TEST_CASE("diagonal norm evaluation") {
    Field f = Field::padic(5);
    // ||e1|| = 5^0, ||e2|| = 5^2
    auto n = UltraNorm::diagonal(f, standard_basis(f, 2), {Rational(0), Rational(2)});
    CHECK(*n.exponent(vec_of(f, {1, 0})) == Rational(0));
    CHECK(*n.exponent(vec_of(f, {0, 1})) == Rational(2));
    CHECK(*n.exponent(vec_of(f, {5, 0})) == Rational(-1));
    CHECK(*n.exponent(vec_of(f, {1, 1})) == Rational(2));
    CHECK(!n.exponent(vec_of(f, {0, 0})).has_value());

    // ultrametric inequality on probes, exactly
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        Fvec x{f.random_probe(rng), f.random_probe(rng)};
        Fvec y{f.random_probe(rng), f.random_probe(rng)};
        Fvec s{f.add(x[0], y[0]), f.add(x[1], y[1])};
        auto ex = n.exponent(x), ey = n.exponent(y), es = n.exponent(s);
        if (ex && ey && es) CHECK(*es <= std::max(*ex, *ey));
    }
}

TEST_CASE("certified alpha: orthogonal and non-orthogonal bases") {
    Field f = Field::padic(2);
    auto triv = trivial_norm(f, 2);

    // the diagonal basis of a diagonal norm is orthogonal
    auto own = certified_alpha(triv, standard_basis(f, 2));
    CHECK(own.alpha_exponent == Rational(0));

    // b1 = (1,0), b2 = (1,1) under the trivial norm: both dual norms are 1
    Fmat b1{vec_of(f, {1, 0}), vec_of(f, {1, 1})};
    auto c1 = certified_alpha(triv, b1);
    CHECK(c1.alpha_exponent == Rational(0));

    // b1 = (1,0), b2 = (1,p): dual vectors pick up a factor p
    Fmat b2{vec_of(f, {1, 0}), vec_of(f, {1, 2})};
    auto c2 = certified_alpha(triv, b2);
    CHECK(c2.alpha_exponent == Rational(-1));  // alpha = 1/p
    CHECK(c2.alpha(f) == doctest::Approx(0.5));

    Rng rng(11);
    CHECK(alpha_certificate_violations(triv, c2, 1000, rng) == 0);

    // singular basis rejected
    Fmat sing{vec_of(f, {1, 1}), vec_of(f, {2, 2})};
    CHECK_THROWS(certified_alpha(triv, sing));
}

TEST_CASE("dual involution preserves alpha") {
    Field f = Field::padic(5);
    auto norm = UltraNorm::diagonal(f, standard_basis(f, 3),
                                    {Rational(0), Rational(1), Rational(-2)});
    Fmat basis{vec_of(f, {1, 0, 0}), vec_of(f, {1, 5, 0}), vec_of(f, {2, 1, 1})};
    auto primal = certified_alpha(norm, basis);

    // dual basis = rows of basis^{-1}; alpha of the dual basis under the
    // dual norm equals the primal alpha
    Fmat binv = inverse(f, basis);
    Fmat dual_basis(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        dual_basis[i] = Fvec(basis.size(), f.zero());
        for (size_t j = 0; j < basis.size(); ++j) dual_basis[i][j] = binv[j][i];
    }
    auto dual_cert = certified_alpha(UltraNorm::dual(norm), dual_basis);
    CHECK(dual_cert.alpha_exponent == primal.alpha_exponent);
}

TEST_CASE("eps orthogonalize: flag-compatible orthogonal basis") {
    Field f = Field::padic(2);
    auto norm = UltraNorm::max_combine(
        UltraNorm::diagonal(f, standard_basis(f, 3), {Rational(0), Rational(1), Rational(0)}),
        UltraNorm::diagonal(f, Fmat{vec_of(f, {1, 1, 0}), vec_of(f, {0, 1, 0}), vec_of(f, {0, 2, 1})},
                            {Rational(-1), Rational(0), Rational(2)}));

    std::vector<Fmat> flag{
        Fmat{vec_of(f, {1, 2, 1})},
        Fmat{vec_of(f, {1, 2, 1}), vec_of(f, {0, 1, 1})},
        standard_basis(f, 3)};
    auto cert = eps_orthogonalize(norm, flag, Rational(1, 2));
    CHECK(cert.alpha_exponent == Rational(0));
    REQUIRE(cert.basis.size() == 3);

    // compatibility: the first k vectors lie in the k-th flag step
    Fmat two_cols = flag[1];
    Fmat check_mat = two_cols;
    check_mat.push_back(cert.basis[0]);
    CHECK(rank_of(f, check_mat) == 2);
    check_mat = two_cols;
    check_mat.push_back(cert.basis[1]);
    CHECK(rank_of(f, check_mat) == 2);

    Rng rng(13);
    CHECK(alpha_certificate_violations(norm, cert, 500, rng) == 0);

    // r = 1 case
    auto n1 = trivial_norm(f, 1);
    auto c1 = eps_orthogonalize(n1, {standard_basis(f, 1)}, Rational(1, 3));
    CHECK(c1.alpha_exponent == Rational(0));
}

TEST_CASE("ultra degree: trivial, scaled, diagonal") {
    Field f = Field::padic(5);
    auto phi = UltraNorm::diagonal(f, standard_basis(f, 3),
                                   {Rational(0), Rational(0), Rational(0)});
    CHECK(degree_ultra(phi, phi).exponent == Rational(0));

    auto scaledn = UltraNorm::scale(phi, Rational(3, 1));
    CHECK(degree_ultra(phi, scaledn).exponent == Rational(9));  // r * a

    auto psi = UltraNorm::diagonal(f, standard_basis(f, 3),
                                   {Rational(2), Rational(-1), Rational(0)});
    CHECK(degree_ultra(phi, psi).exponent == Rational(1));  // 2 - 1 + 0
    CHECK(degree_ultra(phi, psi).nats == doctest::Approx(std::log(5.0)));
}

TEST_CASE("ultra slopes: common diagonal and scaled cases") {
    Field f = Field::padic(2);
    auto phi = trivial_norm(f, 3);
    auto psi = UltraNorm::diagonal(f, standard_basis(f, 3),
                                   {Rational(3), Rational(1), Rational(0)});
    auto s = slopes_ultra(phi, psi, Rational(1, 4));
    REQUIRE(s.exponents.size() == 3);
    CHECK(s.exponents[0] == Rational(3));
    CHECK(s.exponents[1] == Rational(1));
    CHECK(s.exponents[2] == Rational(0));
    CHECK(s.error_budget == 0.0);

    auto sc = slopes_ultra(phi, UltraNorm::scale(phi, Rational(-2)), Rational(1, 4));
    for (auto& e : sc.exponents) CHECK(e == Rational(-2));

    // simultaneous basis is orthogonal for both
    CHECK(certified_alpha(phi, s.simultaneous_basis).alpha_exponent == Rational(0));
    CHECK(certified_alpha(psi, s.simultaneous_basis).alpha_exponent == Rational(0));
}

TEST_CASE("ultra slopes: mismatched bases against a pattern-subspace oracle") {
    Field f = Field::padic(2);
    auto phi = trivial_norm(f, 3);
    // psi diagonal in a triangular basis with integer exponents
    Fmat cbasis{vec_of(f, {1, 0, 0}), vec_of(f, {1, 1, 0}), vec_of(f, {0, 1, 1})};
    auto psi = UltraNorm::diagonal(f, cbasis, {Rational(2), Rational(0), Rational(-1)});
    auto s = slopes_ultra(phi, psi, Rational(1, 4));

    // oracle: P~(i) = sup over subspaces spanned by subsets of either basis
    std::vector<Fvec> pool;
    for (int i = 0; i < 3; ++i) pool.push_back(standard_basis(f, 3)[(size_t)i]);
    for (int i = 0; i < 3; ++i) pool.push_back(cbasis[(size_t)i]);
    auto degree_of_span = [&](const Fmat& w) {
        return degree_ultra(UltraNorm::restriction(phi, w), UltraNorm::restriction(psi, w))
            .exponent;
    };
    for (int take = 1; take <= 3; ++take) {
        Rational best;
        bool found = false;
        // enumerate subsets of the pool of size `take`
        int n = (int)pool.size();
        for (int mask = 0; mask < (1 << n); ++mask) {
            if (__builtin_popcount((unsigned)mask) != take) continue;
            Fmat w;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) w.push_back(pool[(size_t)i]);
            if (rank_of(f, w) != take) continue;
            Rational d = degree_of_span(w);
            if (!found || d > best) { best = d; found = true; }
        }
        REQUIRE(found);
        Rational ptilde(0);
        for (int i = 0; i < take; ++i) ptilde += s.exponents[(size_t)i];
        CHECK(ptilde >= best);   // the polygon dominates every subspace
        CHECK(ptilde == best);   // and the pattern pool attains it here
    }

    // slope sum equals the degree
    Rational sum(0);
    for (auto& e : s.exponents) sum += e;
    CHECK(sum == degree_ultra(phi, psi).exponent);
}

TEST_CASE("ultra truncation is exact") {
    Field f = Field::padic(2);
    auto phi = trivial_norm(f, 3);
    auto psi = UltraNorm::diagonal(f, standard_basis(f, 3),
                                   {Rational(2), Rational(0), Rational(-1)});

    auto t0 = truncate_ultra(phi, psi, Rational(0));
    CHECK(t0.equal);
    CHECK(t0.degree_exponent == Rational(2));  // max(2,0)+max(0,0)+max(-1,0)

    auto tlow = truncate_ultra(phi, psi, Rational(-5));
    CHECK(tlow.equal);
    CHECK(tlow.degree_exponent == degree_ultra(phi, psi).exponent);

    // mismatched bases, rational a with a ramified field
    Field f2 = Field::padic(3, 2);
    auto phi2 = trivial_norm(f2, 2);
    auto psi2 = UltraNorm::diagonal(
        f2, Fmat{vec_of(f2, {1, 0}), vec_of(f2, {1, 3})}, {Rational(1), Rational(-1, 2)});
    for (auto a : {Rational(-1, 2), Rational(0), Rational(1, 2), Rational(2)}) {
        auto t = truncate_ultra(phi2, psi2, a);
        CHECK(t.equal);
    }
}

TEST_CASE("tensor alpha certificates multiply") {
    Field f = Field::padic(2);
    auto triv2 = trivial_norm(f, 2);

    Fmat b{vec_of(f, {1, 0}), vec_of(f, {1, 2})};
    auto c = certified_alpha(triv2, b);  // alpha = 1/2
    auto tens = tensor_alpha(f, c, c);
    CHECK(tens.alpha_exponent == Rational(-2));

    auto tnorm = UltraNorm::tensor(triv2, triv2);
    auto recheck = certified_alpha(tnorm, tens.basis);
    CHECK(recheck.alpha_exponent >= tens.alpha_exponent);  // certificate is sound
    Rng rng(17);
    CHECK(alpha_certificate_violations(tnorm, tens, 400, rng) == 0);

    // orthogonal x orthogonal stays orthogonal
    auto o = certified_alpha(triv2, standard_basis(f, 2));
    CHECK(tensor_alpha(f, o, o).alpha_exponent == Rational(0));
}

TEST_CASE("hadamard inequalities for the determinant norm") {
    Field f = Field::padic(3);
    auto norm = UltraNorm::diagonal(f, standard_basis(f, 3),
                                    {Rational(1), Rational(0), Rational(-1)});
    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        Fmat vecs;
        for (int j = 0; j < 3; ++j) {
            Fvec v;
            for (int i = 0; i < 3; ++i)
                v.push_back(rng.uniform() < 0.3 ? f.zero() : f.random_probe(rng));
            vecs.push_back(v);
        }
        if (rank_of(f, vecs) != 3) continue;
        Rational wedge = wedge_exponent(norm, vecs);
        Rational sum(0);
        for (auto& v : vecs) sum += *norm.exponent(v);
        CHECK(wedge <= sum);  // hadamard
        auto cert = certified_alpha(norm, vecs);
        CHECK(wedge >= cert.alpha_exponent * Rational(3) + sum);  // inverse hadamard
    }
}

TEST_CASE("degree additivity over a flag, exactly") {
    Field f = Field::padic(5);
    auto phi = UltraNorm::max_combine(
        trivial_norm(f, 3),
        UltraNorm::diagonal(f, Fmat{vec_of(f, {1, 1, 0}), vec_of(f, {0, 1, 5}), vec_of(f, {0, 0, 1})},
                            {Rational(1), Rational(0), Rational(0)}));
    auto psi = UltraNorm::diagonal(f, standard_basis(f, 3),
                                   {Rational(2), Rational(0), Rational(-1)});

    Fmat w{vec_of(f, {1, 2, 0}), vec_of(f, {0, 1, 1})};
    auto sub = degree_ultra(UltraNorm::restriction(phi, w), UltraNorm::restriction(psi, w));
    auto quot = degree_ultra(UltraNorm::quotient(phi, w), UltraNorm::quotient(psi, w));
    auto total = degree_ultra(phi, psi);
    CHECK(sub.exponent + quot.exponent == total.exponent);
}

TEST_CASE("dual norm is the operator norm on probes") {
    Field f = Field::padic(2);
    auto norm = UltraNorm::diagonal(f, Fmat{vec_of(f, {1, 1}), vec_of(f, {0, 2})},
                                    {Rational(1), Rational(0)});
    auto dualn = UltraNorm::dual(norm);
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        Fvec xi{f.random_probe(rng), f.random_probe(rng)};
        auto de = dualn.exponent(xi);
        REQUIRE(de.has_value());
        // |xi(x)| <= ||xi||_dual * ||x|| on probes, exactly
        for (int s = 0; s < 10; ++s) {
            Fvec x{f.random_probe(rng), f.random_probe(rng)};
            Fel pairing = f.add(f.mul(xi[0], x[0]), f.mul(xi[1], x[1]));
            if (f.is_zero(pairing)) continue;
            Rational lhs = -f.valuation(pairing);
            CHECK(lhs <= *de + *norm.exponent(x));
        }
    }
    // double dual returns the original ball
    auto dd = UltraNorm::dual(dualn);
    Rng rng2(29);
    for (int t = 0; t < 100; ++t) {
        Fvec x{f.random_probe(rng2), f.random_probe(rng2)};
        CHECK(*dd.exponent(x) == *norm.exponent(x));
    }
}
