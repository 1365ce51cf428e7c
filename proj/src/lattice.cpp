#include "okspec/ultra/lattice.hpp"

#include <stdexcept>

namespace okspec::ultra {

Fmat identity_mat(const Field& f, int n) {
    Fmat m((size_t)n, Fvec((size_t)n, f.zero()));
    for (int i = 0; i < n; ++i) m[(size_t)i][(size_t)i] = f.one();
    return m;
}

Fvec mat_vec(const Field& f, const Fmat& a, const Fvec& x) {
    if (a.size() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    size_t rows = a.empty() ? 0 : a[0].size();
    Fvec r(rows, f.zero());
    for (size_t j = 0; j < a.size(); ++j) {
        if (f.is_zero(x[j])) continue;
        for (size_t i = 0; i < rows; ++i) r[i] = f.add(r[i], f.mul(a[j][i], x[j]));
    }
    return r;
}

Fmat mat_mul(const Field& f, const Fmat& a, const Fmat& b) {
    Fmat r(b.size());
    for (size_t j = 0; j < b.size(); ++j) r[j] = mat_vec(f, a, b[j]);
    return r;
}

namespace {

// row-major workspace for elimination
struct Work {
    size_t rows, cols;
    std::vector<Fel> e;
    Fel& at(size_t i, size_t j) { return e[i * cols + j]; }
    const Fel& at(size_t i, size_t j) const { return e[i * cols + j]; }
};

Work to_work(const Field& f, const Fmat& a) {
    Work w;
    w.cols = a.size();
    w.rows = a.empty() ? 0 : a[0].size();
    w.e.assign(w.rows * w.cols, f.zero());
    for (size_t j = 0; j < a.size(); ++j)
        for (size_t i = 0; i < a[j].size(); ++i) w.at(i, j) = a[j][i];
    return w;
}

}  // namespace

Fvec solve(const Field& f, const Fmat& a, const Fvec& b) {
    const size_t n = a.size();
    if (n == 0 || a[0].size() != n || b.size() != n)
        throw std::invalid_argument("solve: need a square system");
    Work w = to_work(f, a);
    Fvec rhs = b;
    std::vector<size_t> perm(n);
    for (size_t j = 0; j < n; ++j) perm[j] = j;

    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && f.is_zero(w.at(piv, k))) ++piv;
        if (piv == n) throw std::domain_error("solve: singular matrix");
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(k, j));
            std::swap(rhs[piv], rhs[k]);
        }
        Fel inv_piv = f.inv(w.at(k, k));
        for (size_t i = k + 1; i < n; ++i) {
            if (f.is_zero(w.at(i, k))) continue;
            Fel c = f.mul(w.at(i, k), inv_piv);
            for (size_t j = k; j < n; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(k, j)));
            rhs[i] = f.sub(rhs[i], f.mul(c, rhs[k]));
        }
    }
    Fvec x(n, f.zero());
    for (size_t k = n; k-- > 0;) {
        Fel acc = rhs[k];
        for (size_t j = k + 1; j < n; ++j) acc = f.sub(acc, f.mul(w.at(k, j), x[j]));
        x[k] = f.div(acc, w.at(k, k));
    }
    return x;
}

Fvec coords_in_span(const Field& f, const Fmat& s, const Fvec& x) {
    const size_t m = s.size();
    const size_t r = s.empty() ? 0 : s[0].size();
    if (x.size() != r) throw std::invalid_argument("coords_in_span: shape mismatch");
    // gauss on the augmented system [s | x]
    Work w = to_work(f, s);
    Fvec rhs = x;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m && row < r; ++col) {
        size_t piv = row;
        while (piv < r && f.is_zero(w.at(piv, col))) ++piv;
        if (piv == r) throw std::invalid_argument("coords_in_span: rank-deficient span");
        if (piv != row) {
            for (size_t j = 0; j < m; ++j) std::swap(w.at(piv, j), w.at(row, j));
            std::swap(rhs[piv], rhs[row]);
        }
        Fel inv_piv = f.inv(w.at(row, col));
        for (size_t i = 0; i < r; ++i) {
            if (i == row || f.is_zero(w.at(i, col))) continue;
            Fel c = f.mul(w.at(i, col), inv_piv);
            for (size_t j = col; j < m; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(row, j)));
            rhs[i] = f.sub(rhs[i], f.mul(c, rhs[row]));
        }
        pivots.push_back(row);
        ++row;
    }
    Fvec y(m, f.zero());
    for (size_t col = 0; col < m; ++col) y[col] = f.div(rhs[col], w.at(col, col));
    for (size_t i = m; i < r; ++i)
        if (!f.is_zero(rhs[i]))
            throw std::invalid_argument("coords_in_span: vector outside the span");
    return y;
}

Fmat inverse(const Field& f, const Fmat& a) {
    const int n = (int)a.size();
    Fmat id = identity_mat(f, n);
    Fmat r(a.size());
    for (int j = 0; j < n; ++j) r[(size_t)j] = solve(f, a, id[(size_t)j]);
    return r;
}

Fel determinant(const Field& f, Fmat a) {
    const size_t n = a.size();
    if (n == 0 || a[0].size() != n) throw std::invalid_argument("determinant: not square");
    Work w = to_work(f, a);
    Fel det = f.one();
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && f.is_zero(w.at(piv, k))) ++piv;
        if (piv == n) return f.zero();
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(k, j));
            det = f.neg(det);
        }
        det = f.mul(det, w.at(k, k));
        Fel inv_piv = f.inv(w.at(k, k));
        for (size_t i = k + 1; i < n; ++i) {
            if (f.is_zero(w.at(i, k))) continue;
            Fel c = f.mul(w.at(i, k), inv_piv);
            for (size_t j = k; j < n; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(k, j)));
        }
    }
    return det;
}

int rank_of(const Field& f, Fmat a) {
    Work w = to_work(f, a);
    size_t rank = 0;
    for (size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        size_t piv = rank;
        while (piv < w.rows && f.is_zero(w.at(piv, col))) ++piv;
        if (piv == w.rows) continue;
        for (size_t j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(rank, j));
        Fel inv_piv = f.inv(w.at(rank, col));
        for (size_t i = rank + 1; i < w.rows; ++i) {
            if (f.is_zero(w.at(i, col))) continue;
            Fel c = f.mul(w.at(i, col), inv_piv);
            for (size_t j = col; j < w.cols; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(rank, j)));
        }
        ++rank;
    }
    return (int)rank;
}

SmithResult smith_dvr(const Field& f, Fmat a) {
    Work w = to_work(f, a);
    const size_t rows = w.rows, cols = w.cols;
    Fmat u = identity_mat(f, (int)rows);
    Fmat v = identity_mat(f, (int)cols);
    std::vector<long long> d;

    auto val_of = [&](size_t i, size_t j) { return f.valuation(w.at(i, j)); };

    for (size_t k = 0; k < std::min(rows, cols); ++k) {
        // global minimum-valuation pivot in the trailing block
        bool found = false;
        size_t pi = k, pj = k;
        Rational best;
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j) {
                if (f.is_zero(w.at(i, j))) continue;
                Rational vij = val_of(i, j);
                if (!found || vij < best) { found = true; best = vij; pi = i; pj = j; }
            }
        if (!found) break;

        if (pi != k) {  // swap rows pi,k of w; swap columns of u
            for (size_t j = 0; j < cols; ++j) std::swap(w.at(pi, j), w.at(k, j));
            std::swap(u[pi], u[k]);
        }
        if (pj != k) {  // swap cols pj,k of w; swap rows of v
            for (size_t i = 0; i < rows; ++i) std::swap(w.at(i, pj), w.at(i, k));
            for (size_t j = 0; j < cols; ++j) std::swap(v[j][pj], v[j][k]);
        }

        Fel inv_piv = f.inv(w.at(k, k));
        // clear the column: row_i -= c * row_k, u col_k += c * u col_i
        for (size_t i = k + 1; i < rows; ++i) {
            if (f.is_zero(w.at(i, k))) continue;
            Fel c = f.mul(w.at(i, k), inv_piv);  // valuation >= 0 by pivot choice
            for (size_t j = k; j < cols; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(k, j)));
            for (size_t t = 0; t < rows; ++t)
                u[k][t] = f.add(u[k][t], f.mul(c, u[i][t]));
        }
        // clear the row: col_j -= c * col_k, v row_k += c * v row_j
        for (size_t j = k + 1; j < cols; ++j) {
            if (f.is_zero(w.at(k, j))) continue;
            Fel c = f.mul(w.at(k, j), inv_piv);
            for (size_t i = k; i < rows; ++i)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(i, k)));
            for (size_t t = 0; t < cols; ++t)
                v[t][k] = f.add(v[t][k], f.mul(c, v[t][j]));
        }

        // normalize pivot to a pure uniformizer power, folding the unit into u
        Rational vk = f.valuation(w.at(k, k));
        Rational scaled = vk * Rational(f.ram());
        if (!scaled.is_integer())
            throw std::logic_error("smith_dvr: fractional pivot valuation");
        long long dk = scaled.num();
        Fel pure = f.uniformizer_pow(dk);
        Fel unit = f.div(w.at(k, k), pure);
        w.at(k, k) = pure;
        for (size_t t = 0; t < rows; ++t) u[k][t] = f.mul(u[k][t], unit);
        d.push_back(dk);
    }
    return SmithResult{std::move(u), std::move(d), std::move(v)};
}

Lattice::Lattice(const Field& f, Fmat basis) : field_(&f), basis_(std::move(basis)) {
    if (basis_.empty() || basis_[0].size() != basis_.size())
        throw std::invalid_argument("Lattice: basis must be square");
    inv_ = inverse(f, basis_);  // throws when singular
}

std::optional<Rational> Lattice::gauge_exponent(const Fvec& x) const {
    const Field& f = *field_;
    Fvec c = mat_vec(f, inv_, x);
    bool nonzero = false;
    Rational e;
    for (const Fel& ci : c) {
        if (f.is_zero(ci)) continue;
        Rational cand = -f.valuation(ci);
        if (!nonzero || cand > e) { e = cand; nonzero = true; }
    }
    if (!nonzero) return std::nullopt;
    return e;
}

Lattice Lattice::scaled(const Rational& a) const {
    const Field& f = *field_;
    Rational steps = a * Rational(f.ram());
    if (!steps.is_integer())
        throw std::invalid_argument(
            "Lattice: scaling exponent " + a.str() + " is not a multiple of 1/" +
            std::to_string(f.ram()) + "; construct the field with a larger ramification");
    Fel factor = f.uniformizer_pow(steps.num());
    Fmat b = basis_;
    for (auto& col : b)
        for (auto& e : col) e = f.mul(e, factor);
    return Lattice(f, std::move(b));
}

Lattice Lattice::intersect(const Lattice& other) const {
    const Field& f = *field_;
    Fmat c = mat_mul(f, inv_, other.basis_);
    SmithResult s = smith_dvr(f, c);
    if ((int)s.d.size() != dim()) throw std::logic_error("Lattice::intersect: rank drop");
    Fmat au = mat_mul(f, basis_, s.u);
    for (int i = 0; i < dim(); ++i) {
        long long e = std::max<long long>(s.d[(size_t)i], 0);
        Fel factor = f.uniformizer_pow(e);
        for (auto& x : au[(size_t)i]) x = f.mul(x, factor);
    }
    return Lattice(f, std::move(au));
}

Lattice Lattice::dual() const {
    const Field& f = *field_;
    // dual basis = transpose of the cached inverse
    const int n = dim();
    Fmat t((size_t)n, Fvec((size_t)n, f.zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[(size_t)i][(size_t)j] = inv_[(size_t)j][(size_t)i];
    return Lattice(f, std::move(t));
}

Lattice Lattice::tensor(const Lattice& other) const {
    const Field& f = *field_;
    const int n = dim(), m = other.dim();
    Fmat t((size_t)(n * m), Fvec((size_t)(n * m), f.zero()));
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < m; ++j2)
            for (int i1 = 0; i1 < n; ++i1)
                for (int i2 = 0; i2 < m; ++i2)
                    t[(size_t)(j1 * m + j2)][(size_t)(i1 * m + i2)] =
                        f.mul(basis_[(size_t)j1][(size_t)i1],
                              other.basis_[(size_t)j2][(size_t)i2]);
    return Lattice(f, std::move(t));
}

Lattice Lattice::restrict_to(const Fmat& subspace) const {
    const Field& f = *field_;
    const int m = (int)subspace.size();
    if (m == 0 || m > dim()) throw std::invalid_argument("Lattice: bad subspace");
    Fmat t = mat_mul(f, inv_, subspace);  // dim x m
    SmithResult s = smith_dvr(f, t);
    if ((int)s.d.size() != m)
        throw std::invalid_argument("Lattice: subspace matrix is rank-deficient");
    Fmat vinv = inverse(f, s.v);
    for (int i = 0; i < m; ++i) {
        Fel factor = f.uniformizer_pow(-s.d[(size_t)i]);
        for (auto& x : vinv[(size_t)i]) x = f.mul(x, factor);
    }
    return Lattice(f, std::move(vinv));
}

Lattice Lattice::quotient_by(const Fmat& subspace) const {
    const Field& f = *field_;
    const int r = dim(), m = (int)subspace.size();
    if (m <= 0 || m >= r) throw std::invalid_argument("Lattice: quotient needs a proper subspace");

    // deterministic complement: standard basis vectors at non-pivot rows
    Fmat probe = subspace;
    std::vector<bool> pivot_row((size_t)r, false);
    {
        Work w = to_work(f, probe);
        size_t rank = 0;
        for (size_t col = 0; col < w.cols; ++col) {
            size_t piv = 0;
            bool found = false;
            for (size_t i = 0; i < w.rows; ++i) {
                if (pivot_row[i]) continue;
                if (!f.is_zero(w.at(i, col))) { piv = i; found = true; break; }
            }
            if (!found) throw std::invalid_argument("Lattice: subspace rank-deficient");
            pivot_row[piv] = true;
            Fel inv_piv = f.inv(w.at(piv, col));
            for (size_t i = 0; i < w.rows; ++i) {
                if (i == piv || f.is_zero(w.at(i, col))) continue;
                Fel c = f.mul(w.at(i, col), inv_piv);
                for (size_t j = col; j < w.cols; ++j)
                    w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(piv, j)));
            }
            ++rank;
        }
    }

    Fmat full = subspace;
    std::vector<int> complement;
    for (int i = 0; i < r; ++i)
        if (!pivot_row[(size_t)i]) {
            Fvec e((size_t)r, f.zero());
            e[(size_t)i] = f.one();
            full.push_back(std::move(e));
            complement.push_back(i);
        }
    if ((int)full.size() != r) throw std::logic_error("Lattice: complement construction failed");
    Fmat q_all = inverse(f, full);
    // projection = last (r - m) rows of full^{-1}
    Fmat proj_gens(basis_.size(), Fvec((size_t)(r - m), f.zero()));
    for (size_t col = 0; col < basis_.size(); ++col)
        for (int i = 0; i < r - m; ++i) {
            Fel acc = f.zero();
            for (int t = 0; t < r; ++t)
                acc = f.add(acc, f.mul(q_all[(size_t)t][(size_t)(m + i)], basis_[col][(size_t)t]));
            proj_gens[col][(size_t)i] = acc;
        }
    SmithResult s = smith_dvr(f, proj_gens);
    if ((int)s.d.size() != r - m) throw std::logic_error("Lattice: quotient rank drop");
    Fmat basis((size_t)(r - m));
    for (int i = 0; i < r - m; ++i) {
        basis[(size_t)i] = Fvec((size_t)(r - m), f.zero());
        Fel factor = f.uniformizer_pow(s.d[(size_t)i]);
        for (int t = 0; t < r - m; ++t)
            basis[(size_t)i][(size_t)t] = f.mul(s.u[(size_t)i][(size_t)t], factor);
    }
    return Lattice(f, std::move(basis));
}

Fmat Lattice::adapted_basis(const Fmat& sublattice_basis) const {
    const Field& f = *field_;
    Fmat c = mat_mul(f, inv_, sublattice_basis);
    SmithResult s = smith_dvr(f, c);
    if (s.d.size() != sublattice_basis.size())
        throw std::invalid_argument("Lattice: sublattice basis is rank-deficient");
    for (long long dk : s.d)
        if (dk != 0)
            throw std::invalid_argument("Lattice: sublattice is not saturated in the ball");
    return mat_mul(f, basis_, s.u);
}

}  // namespace okspec::ultra
