#include "okspec/series/norms.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "okspec/core/kernels.hpp"

namespace okspec {

namespace {

MatrixXcd sample_matrix(const Backend& backend, const MetricWeight& weight,
                        const std::vector<ChartPoint>& pts) {
    MatrixXcd s((Eigen::Index)pts.size(), backend.dim());
    for (Eigen::Index q = 0; q < (Eigen::Index)pts.size(); ++q) {
        double damp = std::exp(-(double)backend.n * weight(pts[(size_t)q]));
        for (int j = 0; j < backend.dim(); ++j)
            s(q, j) = damp * backend.basis_value(j, pts[(size_t)q]);
    }
    return s;
}

VectorXd basis_sup_norms(const Backend& backend, const MetricWeight& weight, const Grid& grid) {
    MatrixXcd s = sample_matrix(backend, weight, grid.points);
    VectorXd out(backend.dim());
    for (int j = 0; j < backend.dim(); ++j) out(j) = s.col(j).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace

NormOracle sup_norm_oracle(const Backend& backend, const MetricWeight& weight, const Grid& grid,
                           std::optional<double> stability_tol) {
    if (stability_tol) {
        VectorXd coarse = basis_sup_norms(backend, weight, grid);
        VectorXd fine = basis_sup_norms(backend, weight, grid.refined());
        for (int j = 0; j < backend.dim(); ++j) {
            double rel = std::abs(fine(j) - coarse(j)) / std::max(fine(j), 1e-300);
            if (rel > *stability_tol)
                throw std::runtime_error(
                    "sup_norm_oracle: grid too coarse (basis norm moved by " +
                    std::to_string(rel) + " under refinement); densify the grid");
        }
    }
    return NormOracle::functional_family(sample_matrix(backend, weight, grid.points),
                                         ScalarKind::complex);
}

HermitianForm l2_gram(const Backend& backend, const MetricWeight& weight,
                      const QuadratureMeasure& measure, std::optional<double> stability_tol) {
    measure.validate();
    MatrixXcd s = sample_matrix(backend, weight, measure.nodes);
    VectorXd w = Eigen::Map<const VectorXd>(measure.weights.data(),
                                            (Eigen::Index)measure.weights.size());
    MatrixXcd gram = kernels::gram_matrix(s, w, default_exec());
    if (stability_tol) {
        QuadratureMeasure fine = measure.refined();
        MatrixXcd s2 = sample_matrix(backend, weight, fine.nodes);
        VectorXd w2 = Eigen::Map<const VectorXd>(fine.weights.data(),
                                                 (Eigen::Index)fine.weights.size());
        MatrixXcd gram2 = kernels::gram_matrix(s2, w2, default_exec());
        double rel = (gram2 - gram).norm() / gram2.norm();
        if (rel > *stability_tol)
            throw std::runtime_error("l2_gram: quadrature too coarse (relative change " +
                                     std::to_string(rel) + "); raise the resolution");
    }
    return HermitianForm(gram, ScalarKind::complex);  // rejects indefinite output
}

GradedSubspaces GradedSubspaces::sub_series(Variety v, const std::vector<Rational>& section_coeffs,
                                            int k, int p, int n_max, const MonomialOrder& order) {
    if (p < 1 || k > p) throw std::invalid_argument("sub_series: need 1 <= k <= p");
    bool zero = true;
    for (auto& c : section_coeffs) zero = zero && c.is_zero();
    if (zero) throw std::invalid_argument("sub_series: zero generator section");

    // polynomial coefficients as exponent -> value maps
    using PolyMap = std::map<Exponent, Rational>;
    MonomialOrder korder{order.kind, order.dim};
    auto kbasis = korder.graded_box(k);
    if (section_coeffs.size() != kbasis.size())
        throw std::invalid_argument("sub_series: generator coefficient count mismatch");
    PolyMap s;
    for (size_t i = 0; i < kbasis.size(); ++i)
        if (!section_coeffs[i].is_zero()) s[kbasis[i]] = section_coeffs[i];

    auto mul = [](const PolyMap& a, const PolyMap& b) {
        PolyMap r;
        for (auto& [ea, ca] : a)
            for (auto& [eb, cb] : b) {
                Exponent e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r[e] += ca * cb;
            }
        for (auto it = r.begin(); it != r.end();)
            it = it->second.is_zero() ? r.erase(it) : std::next(it);
        return r;
    };

    GradedSubspaces g;
    PolyMap spow{{Exponent((size_t)order.dim, 0), Rational(1)}};
    for (int t = 1; t * p <= n_max; ++t) {
        spow = mul(spow, s);
        int level = t * p;
        int free_deg = t * (p - k);
        auto level_basis = order.graded_box(level);
        std::map<Exponent, size_t> col;
        for (size_t i = 0; i < level_basis.size(); ++i) col[level_basis[i]] = i;

        std::vector<std::vector<Rational>> rows;
        for (const Exponent& m : korder.graded_box(free_deg)) {
            PolyMap mono{{m, Rational(1)}};
            PolyMap prod = mul(spow, mono);
            std::vector<Rational> row(level_basis.size(), Rational(0));
            for (auto& [e, c] : prod) row[col.at(e)] = c;
            rows.push_back(std::move(row));
        }
        g.rows[level] = std::move(rows);
    }
    return g;
}

namespace {

struct LevelRows {
    std::vector<Exponent> pivots;      // ascending in the order
    std::vector<size_t> pivot_cols;    // column of each pivot
    MatrixXcd rows;                    // reduced, unit leading coefficients
};

LevelRows reduce_level(const Backend& backend,
                       const std::vector<std::vector<Rational>>* raw_rows,
                       const MonomialOrder& order) {
    LevelRows out;
    const size_t cols = backend.basis.size();
    if (!raw_rows) {
        // full system: the monomial basis itself
        out.pivots = backend.basis;
        out.rows = MatrixXcd::Identity((Eigen::Index)cols, (Eigen::Index)cols);
        out.pivot_cols.resize(cols);
        for (size_t i = 0; i < cols; ++i) out.pivot_cols[i] = i;
        return out;
    }
    std::vector<std::vector<Rational>> rows = *raw_rows;
    std::vector<char> used(rows.size(), 0);
    std::vector<std::pair<size_t, size_t>> pivots;  // (column, row)
    for (size_t col = 0; col < cols; ++col) {
        size_t pick = rows.size();
        for (size_t i = 0; i < rows.size(); ++i)
            if (!used[i] && !rows[i][col].is_zero()) { pick = i; break; }
        if (pick == rows.size()) continue;
        used[pick] = 1;
        Rational lead = rows[pick][col];
        for (size_t j = 0; j < cols; ++j) rows[pick][j] /= lead;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == pick || rows[i][col].is_zero()) continue;
            Rational c = rows[i][col];
            for (size_t j = 0; j < cols; ++j) rows[i][j] -= c * rows[pick][j];
        }
        pivots.push_back({col, pick});
    }
    out.rows = MatrixXcd::Zero((Eigen::Index)pivots.size(), (Eigen::Index)cols);
    for (size_t i = 0; i < pivots.size(); ++i) {
        out.pivots.push_back(backend.basis[pivots[i].first]);
        out.pivot_cols.push_back(pivots[i].first);
        for (size_t j = 0; j < cols; ++j)
            out.rows((Eigen::Index)i, (Eigen::Index)j) = rows[pivots[i].second][j].to_double();
    }
    (void)order;
    return out;
}

}  // namespace

std::vector<double> quotient_log_norms(const MatrixXcd& reduced_rows, const MatrixXcd& gram) {
    const Eigen::Index m = reduced_rows.rows();
    std::vector<double> out((size_t)m);
    for (Eigen::Index i = 0; i < m; ++i) {
        VectorXcd v = reduced_rows.row(i).transpose();
        double full2 = (v.adjoint() * gram * v).value().real();
        Eigen::Index later = m - 1 - i;
        double dist2 = full2;
        if (later > 0) {
            MatrixXcd w = reduced_rows.bottomRows(later).transpose();
            MatrixXcd wg = w.adjoint() * gram;
            MatrixXcd small = wg * w;
            VectorXcd rhs = wg * v;
            Eigen::LDLT<MatrixXcd> ldlt(small);
            dist2 = full2 - (rhs.adjoint() * ldlt.solve(rhs)).value().real();
        }
        dist2 = std::max(dist2, 1e-300);
        out[(size_t)i] = -0.5 * std::log(dist2);
    }
    return out;
}

GrValues gr_quotient_values(Variety v, const MetricWeight& weight, NormKind kind,
                            const MonomialOrder& order, int n_max, const Grid& grid,
                            const QuadratureMeasure* measure, const GradedSubspaces* subspaces) {
    if (kind == NormKind::l2 && !measure)
        throw std::invalid_argument("gr_quotient_values: l2 norms need a quadrature measure");

    auto sample = std::make_shared<SemigroupSample>(v == Variety::P1 ? 1 : 2, n_max);
    struct Pending {
        int n;
        std::vector<Exponent> pivots;
        std::vector<double> values;
    };
    std::vector<Pending> pending;
    double worst_budget = 0.0;

    for (int n = 1; n <= n_max; ++n) {
        const std::vector<std::vector<Rational>>* raw = nullptr;
        if (subspaces && !subspaces->full()) {
            auto it = subspaces->rows.find(n);
            if (it == subspaces->rows.end()) {
                sample->set_level(n, {});
                continue;
            }
            raw = &it->second;
        }
        Backend backend = Backend::make(v, n, order);
        LevelRows lv = reduce_level(backend, raw, order);
        std::vector<double> values;

        if (kind == NormKind::l2) {
            HermitianForm gram = l2_gram(backend, weight, *measure);
            values = quotient_log_norms(lv.rows, gram.gram());
        } else {
            NormOracle oracle = sup_norm_oracle(backend, weight, grid);
            bool monomial_rows = true;
            for (Eigen::Index i = 0; i < lv.rows.rows() && monomial_rows; ++i)
                for (Eigen::Index j = 0; j < lv.rows.cols(); ++j)
                    if (j != (Eigen::Index)lv.pivot_cols[(size_t)i] &&
                        std::abs(lv.rows(i, j)) > 0.0) {
                        monomial_rows = false;
                        break;
                    }
            if (weight.rotation_invariant() && monomial_rows) {
                // rotation averaging: the quotient norm is the monomial's own
                // sup norm, exactly for the grid norm
                for (Eigen::Index i = 0; i < lv.rows.rows(); ++i) {
                    VectorXcd mono = lv.rows.row(i).transpose();
                    values.push_back(-std::log(oracle.evaluate(mono)));
                }
            } else {
                // grid clouds are large; a looser ellipsoid tolerance only
                // widens the recorded budget
                SandwichCertificate cert = john_form(oracle, SurrogateOptions{1e-4, 200000});
                values = quotient_log_norms(lv.rows, cert.form.gram());
                worst_budget = std::max(worst_budget, 0.5 * cert.log_ratio());
            }
        }
        sample->set_level(n, lv.pivots);
        pending.push_back({n, lv.pivots, std::move(values)});
    }

    GrValues out(sample);
    for (auto& p : pending)
        for (size_t i = 0; i < p.pivots.size(); ++i)
            out.table.set(p.n, p.pivots[i], p.values[i]);
    out.budget =
        ErrorBudget{worst_budget, worst_budget == 0.0 ? "exact quotient values"
                                                      : "john surrogate per value"};
    return out;
}

double distortion_bound(const MetricWeight& u, const MetricWeight& v, int n, const Grid& grid) {
    double worst = 0.0;
    for (const auto& p : grid.points) worst = std::max(worst, std::abs(u(p) - v(p)));
    return n * worst;
}

double submultiplicativity_defect(Variety v, const MetricWeight& weight, const Grid& grid,
                                  int n_max, const MonomialOrder& order, int samples, Rng& rng) {
    double defect = 0.0;
    for (int t = 0; t < samples; ++t) {
        int n = 1 + (int)rng.below((std::uint64_t)std::max(1, n_max / 2));
        int m = 1 + (int)rng.below((std::uint64_t)std::max(1, n_max / 2));
        Backend bn = Backend::make(v, n, order);
        Backend bm = Backend::make(v, m, order);
        Backend bnm = Backend::make(v, n + m, order);
        int j1 = (int)rng.below((std::uint64_t)bn.dim());
        int j2 = (int)rng.below((std::uint64_t)bm.dim());
        // monomials multiply by adding exponents
        Exponent prod(bn.basis[(size_t)j1].size());
        for (size_t i = 0; i < prod.size(); ++i)
            prod[i] = bn.basis[(size_t)j1][i] + bm.basis[(size_t)j2][i];
        auto pos = std::find(bnm.basis.begin(), bnm.basis.end(), prod);
        int jp = (int)(pos - bnm.basis.begin());

        auto sup_of = [&](const Backend& b, int j) {
            double best = 0.0;
            for (const auto& p : grid.points) {
                double val = std::abs(b.basis_value(j, p)) * std::exp(-(double)b.n * weight(p));
                best = std::max(best, val);
            }
            return best;
        };
        double lhs = std::log(sup_of(bnm, jp));
        double rhs = std::log(sup_of(bn, j1)) + std::log(sup_of(bm, j2));
        defect = std::max(defect, lhs - rhs);
    }
    return defect;
}

}  // namespace okspec
