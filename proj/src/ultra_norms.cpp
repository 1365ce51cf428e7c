#include "okspec/ultra/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace okspec::ultra {

UltraNorm UltraNorm::diagonal(const Field& f, Fmat basis, std::vector<Rational> exponents) {
    if (basis.size() != exponents.size())
        throw std::invalid_argument("UltraNorm: one exponent per basis vector required");
    for (size_t i = 0; i < basis.size(); ++i) {
        Rational steps = exponents[i] * Rational(f.ram());
        if (!steps.is_integer())
            throw std::invalid_argument(
                "UltraNorm: exponent " + exponents[i].str() + " is not a multiple of 1/" +
                std::to_string(f.ram()) + "; construct the field with a larger ramification");
        Fel factor = f.uniformizer_pow(steps.num());
        for (auto& e : basis[i]) e = f.mul(e, factor);
    }
    return UltraNorm(Lattice(f, std::move(basis)));
}

UltraNorm UltraNorm::scale(const UltraNorm& child, Rational a) {
    return UltraNorm(child.ball_.scaled(a));
}

UltraNorm UltraNorm::max_combine(const UltraNorm& l, const UltraNorm& r) {
    if (l.dim() != r.dim()) throw std::invalid_argument("UltraNorm: max dimension mismatch");
    return UltraNorm(l.ball_.intersect(r.ball_));
}

UltraNorm UltraNorm::restriction(const UltraNorm& child, const Fmat& subspace) {
    return UltraNorm(child.ball_.restrict_to(subspace));
}

UltraNorm UltraNorm::quotient(const UltraNorm& child, const Fmat& subspace) {
    return UltraNorm(child.ball_.quotient_by(subspace));
}

UltraNorm UltraNorm::dual(const UltraNorm& child) { return UltraNorm(child.ball_.dual()); }

UltraNorm UltraNorm::tensor(const UltraNorm& l, const UltraNorm& r) {
    return UltraNorm(l.ball_.tensor(r.ball_));
}

double UltraNorm::value_nats(const Fvec& x) const {
    auto e = exponent(x);
    if (!e) return -std::numeric_limits<double>::infinity();
    return e->to_double() * field().log_base();
}

double AlphaCertificate::alpha(const Field& f) const {
    return std::exp(alpha_exponent.to_double() * f.log_base());
}

AlphaCertificate certified_alpha(const UltraNorm& norm, const Fmat& basis) {
    const Field& f = norm.field();
    const int r = norm.dim();
    if ((int)basis.size() != r) throw std::invalid_argument("certified_alpha: basis size");
    Fmat binv = inverse(f, basis);  // throws on singular basis
    Lattice dual_ball = norm.ball().dual();

    Rational worst(0);
    for (int i = 0; i < r; ++i) {
        // dual basis vector: i-th row of basis^{-1}
        Fvec dual_i((size_t)r, f.zero());
        for (int j = 0; j < r; ++j) dual_i[(size_t)j] = binv[(size_t)j][(size_t)i];
        auto de = dual_ball.gauge_exponent(dual_i);
        auto pe = norm.ball().gauge_exponent(basis[(size_t)i]);
        if (!de || !pe) throw std::logic_error("certified_alpha: zero basis vector");
        Rational e = *de + *pe;
        if (e > worst) worst = e;
    }
    return AlphaCertificate{basis, -worst};
}

int alpha_certificate_violations(const UltraNorm& norm, const AlphaCertificate& cert,
                                 int probes, Rng& rng) {
    const Field& f = norm.field();
    const int r = (int)cert.basis.size();
    std::vector<Rational> base_exp((size_t)r);
    for (int i = 0; i < r; ++i) {
        auto e = norm.ball().gauge_exponent(cert.basis[(size_t)i]);
        if (!e) throw std::logic_error("alpha probe: zero basis vector");
        base_exp[(size_t)i] = *e;
    }
    int bad = 0;
    for (int t = 0; t < probes; ++t) {
        Fvec lambda((size_t)r, f.zero());
        Fvec x((size_t)norm.dim(), f.zero());
        bool all_zero = true;
        Rational rhs;
        bool rhs_set = false;
        for (int i = 0; i < r; ++i) {
            if (rng.uniform() < 0.25) continue;  // sparse combinations too
            lambda[(size_t)i] = f.random_probe(rng);
            all_zero = false;
            Rational term = -f.valuation(lambda[(size_t)i]) + base_exp[(size_t)i];
            if (!rhs_set || term > rhs) { rhs = term; rhs_set = true; }
            for (int t2 = 0; t2 < norm.dim(); ++t2)
                x[(size_t)t2] = f.add(x[(size_t)t2],
                                      f.mul(lambda[(size_t)i], cert.basis[(size_t)i][(size_t)t2]));
        }
        if (all_zero) continue;
        auto lhs = norm.ball().gauge_exponent(x);
        if (!lhs) { ++bad; continue; }  // exact cancellation to zero breaks the bound
        if (*lhs < cert.alpha_exponent + rhs) ++bad;
    }
    return bad;
}

AlphaCertificate eps_orthogonalize(const UltraNorm& norm, const std::vector<Fmat>& flag,
                                   Rational eps) {
    const Field& f = norm.field();
    if (!(Rational(0) < eps && eps < Rational(1)))
        throw std::invalid_argument("eps_orthogonalize: eps must lie in (0,1)");
    if (flag.empty() || (int)flag.back().size() != norm.dim())
        throw std::invalid_argument("eps_orthogonalize: flag must be full");

    // ambient basis of ball intersect flag step, grown step by step
    Fmat current;  // ambient columns spanning the current sublattice
    for (const Fmat& step : flag) {
        Lattice sub_intrinsic = norm.ball().restrict_to(step);
        if (current.empty()) {
            current.resize(sub_intrinsic.basis().size());
            for (size_t j = 0; j < current.size(); ++j)
                current[j] = mat_vec(f, step, sub_intrinsic.basis()[j]);
            continue;
        }
        // express the previous sublattice in this step's intrinsic
        // coordinates, adapt there, and map back to ambient
        Fmat prev_intrinsic(current.size());
        for (size_t j = 0; j < current.size(); ++j)
            prev_intrinsic[j] = coords_in_span(f, step, current[j]);
        Fmat adapted = sub_intrinsic.adapted_basis(prev_intrinsic);
        Fmat ambient(adapted.size());
        for (size_t j = 0; j < adapted.size(); ++j)
            ambient[j] = mat_vec(f, step, adapted[j]);
        current = std::move(ambient);
    }
    AlphaCertificate cert = certified_alpha(norm, current);
    if (!(cert.alpha_exponent == Rational(0)))
        throw std::logic_error("eps_orthogonalize: adapted basis lost orthogonality");
    return cert;
}

UltraDegree degree_ultra(const UltraNorm& phi, const UltraNorm& psi) {
    if (phi.dim() != psi.dim()) throw std::invalid_argument("degree_ultra: dimension mismatch");
    const Field& f = phi.field();
    Fmat c = mat_mul(f, inverse(f, psi.ball().basis()), phi.ball().basis());
    Fel det = determinant(f, c);
    Rational e = -f.valuation(det);
    return UltraDegree{e, e.to_double() * f.log_base()};
}

UltraSlopes slopes_ultra(const UltraNorm& phi, const UltraNorm& psi, Rational eps) {
    if (phi.dim() != psi.dim()) throw std::invalid_argument("slopes_ultra: dimension mismatch");
    if (!(Rational(0) < eps && eps < Rational(1)))
        throw std::invalid_argument("slopes_ultra: eps must lie in (0,1)");
    const Field& f = phi.field();
    Fmat c = mat_mul(f, inverse(f, phi.ball().basis()), psi.ball().basis());
    SmithResult s = smith_dvr(f, c);
    if ((int)s.d.size() != phi.dim()) throw std::logic_error("slopes_ultra: rank drop");

    UltraSlopes out;
    out.error_budget = 0.0;
    out.log_base = f.log_base();
    out.simultaneous_basis = mat_mul(f, phi.ball().basis(), s.u);
    for (long long dk : s.d) out.exponents.push_back(Rational(dk, f.ram()));
    std::sort(out.exponents.begin(), out.exponents.end(),
              [](const Rational& a, const Rational& b) { return b < a; });
    // keep the basis in descending slope order as well
    std::reverse(out.simultaneous_basis.begin(), out.simultaneous_basis.end());
    return out;
}

std::vector<double> UltraSlopes::nats() const {
    std::vector<double> v;
    v.reserve(exponents.size());
    for (const Rational& e : exponents) v.push_back(e.to_double() * log_base);
    return v;
}

UltraTruncation truncate_ultra(const UltraNorm& phi, const UltraNorm& psi, Rational a) {
    const Field& f = phi.field();
    UltraNorm vee = UltraNorm::max_combine(psi, UltraNorm::scale(phi, a));
    UltraDegree lhs = degree_ultra(phi, vee);
    UltraSlopes slopes = slopes_ultra(phi, psi, Rational(1, 2));
    Rational rhs(0);
    for (const Rational& mu : slopes.exponents) rhs += (mu > a ? mu : a);
    return UltraTruncation{lhs.exponent, rhs, lhs.exponent == rhs,
                           lhs.exponent.to_double() * f.log_base()};
}

AlphaCertificate tensor_alpha(const Field& f, const AlphaCertificate& left,
                              const AlphaCertificate& right) {
    const int n = (int)left.basis.size();
    const int m = (int)right.basis.size();
    const int rn = n == 0 ? 0 : (int)left.basis[0].size();
    const int rm = m == 0 ? 0 : (int)right.basis[0].size();
    Fmat basis((size_t)(n * m), Fvec((size_t)(rn * rm), f.zero()));
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < m; ++j2)
            for (int i1 = 0; i1 < rn; ++i1)
                for (int i2 = 0; i2 < rm; ++i2)
                    basis[(size_t)(j1 * m + j2)][(size_t)(i1 * rm + i2)] =
                        f.mul(left.basis[(size_t)j1][(size_t)i1],
                              right.basis[(size_t)j2][(size_t)i2]);
    return AlphaCertificate{std::move(basis), left.alpha_exponent + right.alpha_exponent};
}

Rational wedge_exponent(const UltraNorm& norm, const Fmat& vectors) {
    const Field& f = norm.field();
    if ((int)vectors.size() != norm.dim())
        throw std::invalid_argument("wedge_exponent: need a full system of vectors");
    Fmat c = mat_mul(f, inverse(f, norm.ball().basis()), vectors);
    Fel det = determinant(f, c);
    if (f.is_zero(det)) throw std::invalid_argument("wedge_exponent: dependent vectors");
    return -f.valuation(det);
}

}  // namespace okspec::ultra
