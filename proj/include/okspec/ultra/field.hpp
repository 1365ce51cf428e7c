#pragma once

#include <memory>
#include <string>
#include <vector>

#include "okspec/core/rational.hpp"
#include "okspec/core/rng.hpp"

namespace okspec::ultra {

// Dense polynomial over the rationals, trailing zeros trimmed.
struct Poly {
    std::vector<Rational> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }
    static Poly constant(Rational r) {
        Poly p;
        if (!r.is_zero()) p.c = {r};
        return p;
    }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    int ord() const;  // lowest nonzero index; -1 for zero
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
bool operator==(const Poly& a, const Poly& b);
// euclidean division: a = q*b + r with deg r < deg b
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);

// field element num/den; for the p-adic backend den is always the constant 1
struct Fel {
    Poly num, den;
};

// A discretely valued field presented so that all computations are exact.
//
// padic:  Q(pi) with pi^ram = p; elements are polynomials in pi of degree
//         < ram over Q, |x| = p^{-v(x)} with v(pi) = 1/ram. ram = 1 is plain
//         Q with the p-adic valuation.
// function_field: Q(pi) with pi transcendental and v = ord_pi / ram,
//         |x| = e^{-v(x)}.
class Field {
public:
    enum class Kind { padic, function_field };

    static Field padic(long long p, int ram = 1);
    static Field function_field(int ram = 1);

    Kind kind() const { return kind_; }
    long long prime() const { return p_; }
    int ram() const { return ram_; }
    // ln of the norm base: ln(p) for p-adic, 1 for the function field
    double log_base() const;
    std::string name() const;

    Fel zero() const { return Fel{}; }
    Fel one() const { return from_rational(Rational(1)); }
    Fel from_rational(Rational r) const { return Fel{Poly::constant(r), Poly::constant(1)}; }
    Fel from_int(long long n) const { return from_rational(Rational(n)); }
    Fel uniformizer() const;
    // pi^k for integer k (negative allowed)
    Fel uniformizer_pow(long long k) const;

    bool is_zero(const Fel& a) const { return a.num.is_zero(); }
    bool eq(const Fel& a, const Fel& b) const;
    Fel add(const Fel& a, const Fel& b) const;
    Fel sub(const Fel& a, const Fel& b) const;
    Fel mul(const Fel& a, const Fel& b) const;
    Fel neg(const Fel& a) const;
    Fel inv(const Fel& a) const;
    Fel div(const Fel& a, const Fel& b) const;

    // exact valuation with v(uniformizer) = 1/ram; throws on zero
    Rational valuation(const Fel& a) const;

    // small random element with valuation in [-spread, spread]
    Fel random_probe(Rng& rng, int spread = 2) const;

    std::string str(const Fel& a) const;

private:
    Field(Kind k, long long p, int ram) : kind_(k), p_(p), ram_(ram) {}
    Fel normalize(Poly num, Poly den) const;
    Poly reduce_padic(Poly a) const;         // fold pi^ram -> p
    Poly invert_padic(const Poly& a) const;  // modulo pi^ram - p

    Kind kind_;
    long long p_;
    int ram_;
};

}  // namespace okspec::ultra
