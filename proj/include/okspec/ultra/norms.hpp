#pragma once

#include <optional>
#include <string>
#include <vector>

#include "okspec/ultra/lattice.hpp"

namespace okspec::ultra {

// Ultrametric norm built from diagonal leaves by scaling, pointwise max,
// restriction, quotient, dual and tensor. Every such norm takes values in
// the field's value group, so it reduces exactly to the gauge of its unit
// ball lattice; the reduction happens eagerly at construction.
class UltraNorm {
public:
    static UltraNorm diagonal(const Field& f, Fmat basis, std::vector<Rational> exponents);
    static UltraNorm scale(const UltraNorm& child, Rational a);
    static UltraNorm max_combine(const UltraNorm& l, const UltraNorm& r);
    static UltraNorm restriction(const UltraNorm& child, const Fmat& subspace);
    static UltraNorm quotient(const UltraNorm& child, const Fmat& subspace);
    static UltraNorm dual(const UltraNorm& child);
    static UltraNorm tensor(const UltraNorm& l, const UltraNorm& r);

    const Field& field() const { return ball_.field(); }
    int dim() const { return ball_.dim(); }
    const Lattice& ball() const { return ball_; }

    // exact exponent e with ||x|| = base^e; nullopt for x = 0
    std::optional<Rational> exponent(const Fvec& x) const { return ball_.gauge_exponent(x); }
    double value_nats(const Fvec& x) const;  // -inf for 0

private:
    explicit UltraNorm(Lattice ball) : ball_(std::move(ball)) {}
    Lattice ball_;
};

// basis certified alpha-orthogonal: ||sum l_i b_i|| >= alpha * max |l_i| ||b_i||
// with alpha = base^{alpha_exponent}, alpha_exponent <= 0 exact
struct AlphaCertificate {
    Fmat basis;
    Rational alpha_exponent;

    double alpha(const Field& f) const;
};

// exact alpha via dual-norm evaluation of the dual basis
AlphaCertificate certified_alpha(const UltraNorm& norm, const Fmat& basis);

// number of probe combinations violating the certificate (0 when sound)
int alpha_certificate_violations(const UltraNorm& norm, const AlphaCertificate& cert,
                                 int probes, Rng& rng);

// orthogonal basis compatible with a full flag (steps of dims 1..r given as
// ambient column matrices); the returned certificate has alpha = 1, which
// meets any eps in (0,1)
AlphaCertificate eps_orthogonalize(const UltraNorm& norm, const std::vector<Fmat>& flag,
                                   Rational eps);

struct UltraDegree {
    Rational exponent;  // degree = exponent * ln(base)
    double nats;
};

UltraDegree degree_ultra(const UltraNorm& phi, const UltraNorm& psi);

struct UltraSlopes {
    std::vector<Rational> exponents;  // descending; slope_i = exponent_i * ln(base)
    Fmat simultaneous_basis;          // orthogonal for both norms
    double error_budget = 0.0;        // 0: the construction is exact
    double log_base = 1.0;
    std::vector<double> nats() const;
};

// exact simultaneous reduction of the two ball lattices
UltraSlopes slopes_ultra(const UltraNorm& phi, const UltraNorm& psi, Rational eps);

struct UltraTruncation {
    Rational degree_exponent;  // deg(V, phi, psi v phi(a))
    Rational slope_sum;        // sum_i max(mu_i, a) as an exponent
    bool equal;
    double nats;
};

UltraTruncation truncate_ultra(const UltraNorm& phi, const UltraNorm& psi, Rational a);

// tensor certificate: alpha multiplies (exponents add)
AlphaCertificate tensor_alpha(const Field& f, const AlphaCertificate& left,
                              const AlphaCertificate& right);

// exponent of ||v_1 ^ ... ^ v_r|| under the determinant norm
Rational wedge_exponent(const UltraNorm& norm, const Fmat& vectors);

}  // namespace okspec::ultra
