#pragma once

#include <optional>
#include <vector>

#include "okspec/ultra/field.hpp"

namespace okspec::ultra {

using Fvec = std::vector<Fel>;
// column-major: mat[j] is the j-th column
using Fmat = std::vector<Fvec>;

Fmat identity_mat(const Field& f, int n);
Fvec mat_vec(const Field& f, const Fmat& a, const Fvec& x);
Fmat mat_mul(const Field& f, const Fmat& a, const Fmat& b);
Fvec solve(const Field& f, const Fmat& a, const Fvec& b);  // a square invertible
// coordinates of x in the column span of s (throws when x lies outside)
Fvec coords_in_span(const Field& f, const Fmat& s, const Fvec& x);
Fmat inverse(const Field& f, const Fmat& a);
Fel determinant(const Field& f, Fmat a);
int rank_of(const Field& f, Fmat a);

// Smith decomposition over the valuation ring: a = u * d * v with u, v
// invertible over the ring (unit-valuation determinants) and d diagonal with
// ascending uniformizer exponents d_i (entries pi^{d_i}).
struct SmithResult {
    Fmat u;                        // rows x rows
    std::vector<long long> d;      // min(rows, cols) exponents, ascending
    Fmat v;                        // cols x cols
};
SmithResult smith_dvr(const Field& f, Fmat a);

// Free module over the valuation ring, held as an invertible column basis.
// Every norm in the expression algebra is the gauge of such a lattice, so a
// lattice is the canonical reduced form of a norm.
class Lattice {
public:
    Lattice(const Field& f, Fmat basis);

    const Field& field() const { return *field_; }
    int dim() const { return (int)basis_.size(); }
    const Fmat& basis() const { return basis_; }

    // gauge exponent: ||x|| = base^{exponent}; nullopt for x = 0
    std::optional<Rational> gauge_exponent(const Fvec& x) const;

    // scale the norm by base^{a}: ball shrinks by pi^{a * ram}
    Lattice scaled(const Rational& a) const;
    Lattice intersect(const Lattice& other) const;  // ball of the max norm
    Lattice dual() const;                           // dual norm ball
    Lattice tensor(const Lattice& other) const;
    // ball of the restriction: {y in k^m : S y in lattice}
    Lattice restrict_to(const Fmat& subspace) const;
    // ball of the quotient norm: image of the ball under a coordinate
    // projection complementary to the subspace columns
    Lattice quotient_by(const Fmat& subspace) const;

    // an O-basis adapted to a sublattice: first cols span the given
    // saturated sublattice (throws if not saturated)
    Fmat adapted_basis(const Fmat& sublattice_basis) const;

private:
    const Field* field_;
    Fmat basis_;
    Fmat inv_;  // cached inverse for gauge evaluation
};

}  // namespace okspec::ultra
