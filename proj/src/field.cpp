#include "okspec/ultra/field.hpp"

#include <cmath>
#include <stdexcept>

namespace okspec::ultra {

int Poly::ord() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) return (int)i;
    return -1;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] += a.c[i];
        if (i < b.c.size()) r.c[i] += b.c[i];
    }
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] += a.c[i];
        if (i < b.c.size()) r.c[i] -= b.c[i];
    }
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("poly divmod: division by zero");
    Poly rem = a, quot;
    if (!a.is_zero() && a.deg() >= b.deg())
        quot.c.assign((size_t)(a.deg() - b.deg() + 1), Rational(0));
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        Rational f = rem.c.back() / b.c.back();
        int shift = rem.deg() - b.deg();
        quot.c[(size_t)shift] += f;
        for (size_t i = 0; i < b.c.size(); ++i)
            rem.c[(size_t)shift + i] -= f * b.c[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = b;
        b = r;
        if (!a.is_zero()) {
            Rational lead = a.c.back();
            for (auto& x : a.c) x = x / lead;  // keep coefficients small
        }
    }
    return a;
}

Field Field::padic(long long p, int ram) {
    if (p < 2 || ram < 1) throw std::invalid_argument("Field::padic: need p >= 2, ram >= 1");
    return Field(Kind::padic, p, ram);
}

Field Field::function_field(int ram) {
    if (ram < 1) throw std::invalid_argument("Field::function_field: need ram >= 1");
    return Field(Kind::function_field, 0, ram);
}

double Field::log_base() const {
    return kind_ == Kind::padic ? std::log((double)p_) : 1.0;
}

std::string Field::name() const {
    if (kind_ == Kind::padic)
        return "padic(p=" + std::to_string(p_) + ",ram=" + std::to_string(ram_) + ")";
    return "function_field(ram=" + std::to_string(ram_) + ")";
}

Fel Field::uniformizer() const {
    if (kind_ == Kind::padic && ram_ == 1) return from_int(p_);
    Poly t;
    t.c = {Rational(0), Rational(1)};
    return Fel{t, Poly::constant(Rational(1))};
}

Fel Field::uniformizer_pow(long long k) const {
    if (k == 0) return one();
    Fel u = uniformizer();
    Fel base = k > 0 ? u : inv(u);
    Fel r = one();
    for (long long i = 0; i < (k > 0 ? k : -k); ++i) r = mul(r, base);
    return r;
}

Poly Field::reduce_padic(Poly a) const {
    while (a.deg() >= ram_) {
        // pi^ram = p: fold the top coefficient down
        Rational top = a.c.back();
        int d = a.deg();
        a.c.pop_back();
        a.c[(size_t)(d - ram_)] += top * Rational(p_);
        a.trim();
    }
    return a;
}

Poly Field::invert_padic(const Poly& a) const {
    // extended euclid in Q[t] against m(t) = t^ram - p
    Poly m;
    m.c.assign((size_t)ram_ + 1, Rational(0));
    m.c[0] = Rational(-p_);
    m.c[(size_t)ram_] = Rational(1);

    Poly r0 = m, r1 = a, s0, s1 = Poly::constant(Rational(1));
    while (!r1.is_zero() && r1.deg() > 0) {
        auto [q, r2] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r1.is_zero()) throw std::domain_error("Fel: element is not invertible");
    Rational lead = r1.c[0];
    Poly inv = s1;
    for (auto& x : inv.c) x = x / lead;
    return reduce_padic(inv);
}

Fel Field::normalize(Poly num, Poly den) const {
    if (den.is_zero()) throw std::domain_error("Fel: zero denominator");
    if (num.is_zero()) return Fel{};
    if (kind_ == Kind::padic) {
        num = reduce_padic(std::move(num));
        den = reduce_padic(std::move(den));
        if (den.deg() > 0) {
            num = reduce_padic(num * invert_padic(den));
        } else {
            Rational d = den.c[0];
            for (auto& x : num.c) x = x / d;
        }
        return Fel{num, Poly::constant(Rational(1))};
    }
    Poly g = poly_gcd(num, den);
    if (g.deg() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    // unit normalization: lowest nonzero denominator coefficient becomes 1
    Rational unit = den.c[(size_t)den.ord()];
    for (auto& x : num.c) x = x / unit;
    for (auto& x : den.c) x = x / unit;
    return Fel{num, den};
}

bool Field::eq(const Fel& a, const Fel& b) const { return is_zero(sub(a, b)); }

Fel Field::add(const Fel& a, const Fel& b) const {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    return normalize(a.num * b.den + b.num * a.den, a.den * b.den);
}

Fel Field::sub(const Fel& a, const Fel& b) const { return add(a, neg(b)); }

Fel Field::neg(const Fel& a) const {
    Fel r = a;
    for (auto& x : r.num.c) x = -x;
    return r;
}

Fel Field::mul(const Fel& a, const Fel& b) const {
    if (a.num.is_zero() || b.num.is_zero()) return Fel{};
    return normalize(a.num * b.num, a.den * b.den);
}

Fel Field::inv(const Fel& a) const {
    if (a.num.is_zero()) throw std::domain_error("Fel: division by zero");
    if (kind_ == Kind::padic)
        return normalize(a.den * invert_padic(a.num), Poly::constant(Rational(1)));
    return normalize(a.den, a.num);
}

Fel Field::div(const Fel& a, const Fel& b) const { return mul(a, inv(b)); }

Rational Field::valuation(const Fel& a) const {
    if (a.num.is_zero()) throw std::domain_error("valuation of zero");
    if (kind_ == Kind::function_field)
        return Rational(a.num.ord() - a.den.ord(), ram_);
    // p-adic: terms have distinct valuations mod 1, so the min is attained
    bool first = true;
    Rational best;
    for (size_t k = 0; k < a.num.c.size(); ++k) {
        if (a.num.c[k].is_zero()) continue;
        Rational v = Rational(padic_valuation(a.num.c[k], p_)) + Rational((long long)k, ram_);
        if (first || v < best) { best = v; first = false; }
    }
    return best;
}

Fel Field::random_probe(Rng& rng, int spread) const {
    long long k = (long long)rng.below((std::uint64_t)(2 * spread + 1)) - spread;
    long long unit;
    if (kind_ == Kind::padic) {
        do {
            unit = 1 + (long long)rng.below(19);
        } while (unit % p_ == 0);
    } else {
        unit = 1 + (long long)rng.below(9);
    }
    Fel e = mul(from_int(unit), uniformizer_pow(k));
    if (kind_ == Kind::function_field && rng.uniform() < 0.3) {
        e = add(e, uniformizer_pow(k + 1));  // exercise polynomial paths
    }
    return e;
}

std::string Field::str(const Fel& a) const {
    if (a.num.is_zero()) return "0";
    auto poly_str = [](const Poly& p) {
        std::string s;
        for (size_t i = 0; i < p.c.size(); ++i) {
            if (p.c[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += p.c[i].str();
            if (i == 1) s += "*pi";
            if (i > 1) s += "*pi^" + std::to_string(i);
        }
        return s.empty() ? std::string("0") : s;
    };
    if (a.den.deg() == 0 && !a.den.c.empty() && a.den.c[0] == Rational(1))
        return poly_str(a.num);
    return "(" + poly_str(a.num) + ")/(" + poly_str(a.den) + ")";
}

}  // namespace okspec::ultra
