#include "okspec/okounkov/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace okspec {

namespace {

std::string exp_str(const Exponent& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
    Exponent c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

}  // namespace

SemigroupSample::SemigroupSample(int d, int n_max) : d_(d), n_max_(n_max) {
    if (d < 1 || d > 3) throw std::invalid_argument("SemigroupSample: d must be 1..3");
    if (n_max < 1) throw std::invalid_argument("SemigroupSample: n_max must be positive");
    levels_.resize((size_t)n_max + 1);
    member_.resize((size_t)n_max + 1);
    levels_[0] = {Exponent((size_t)d, 0)};
    member_[0][levels_[0][0]] = true;
}

void SemigroupSample::set_level(int n, std::vector<Exponent> gamma_n) {
    if (n < 1 || n > n_max_) throw std::invalid_argument("SemigroupSample: level out of range");
    for (auto& a : gamma_n) {
        if ((int)a.size() != d_) throw std::invalid_argument("SemigroupSample: exponent dim");
        for (int x : a)
            if (x < 0) throw std::invalid_argument("SemigroupSample: negative exponent");
    }
    std::sort(gamma_n.begin(), gamma_n.end());
    gamma_n.erase(std::unique(gamma_n.begin(), gamma_n.end()), gamma_n.end());
    member_[(size_t)n].clear();
    for (auto& a : gamma_n) member_[(size_t)n][a] = true;
    levels_[(size_t)n] = std::move(gamma_n);
}

const std::vector<Exponent>& SemigroupSample::level(int n) const {
    if (n < 0 || n > n_max_) throw std::invalid_argument("SemigroupSample: level out of range");
    return levels_[(size_t)n];
}

bool SemigroupSample::member(int n, const Exponent& a) const {
    if (n < 0 || n > n_max_) return false;
    return member_[(size_t)n].count(a) > 0;
}

long long SemigroupSample::total_points() const {
    long long t = 0;
    for (auto& l : levels_) t += (long long)l.size();
    return t;
}

SemigroupSample::ClosureReport SemigroupSample::audit_closure(long long max_checks) const {
    ClosureReport rep;
    // deterministic stride subsample when the full pair count is too large
    long long total_pairs = 0;
    for (int n = 1; n <= n_max_; ++n)
        for (int m = n; m + n <= n_max_; ++m)
            total_pairs += (long long)levels_[(size_t)n].size() * (long long)levels_[(size_t)m].size();
    long long stride = std::max<long long>(1, total_pairs / std::max<long long>(1, max_checks));

    long long counter = 0;
    for (int n = 1; n <= n_max_ && rep.pass; ++n) {
        for (int m = n; n + m <= n_max_ && rep.pass; ++m) {
            for (auto& a : levels_[(size_t)n]) {
                for (auto& b : levels_[(size_t)m]) {
                    if (counter++ % stride != 0) continue;
                    ++rep.checked;
                    if (!member(n + m, add_exp(a, b))) {
                        rep.pass = false;
                        std::ostringstream os;
                        os << "missing " << exp_str(add_exp(a, b)) << " at level " << n + m
                           << " from " << exp_str(a) << "@" << n << " + " << exp_str(b) << "@" << m;
                        rep.witness = os.str();
                        break;
                    }
                }
                if (!rep.pass) break;
            }
        }
    }
    return rep;
}

SemigroupSample SemigroupSample::full_line(int n_max) {
    SemigroupSample s(1, n_max);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Exponent> level;
        for (int k = 0; k <= n; ++k) level.push_back({k});
        s.set_level(n, std::move(level));
    }
    return s;
}

SemigroupSample SemigroupSample::full_simplex(int n_max) {
    SemigroupSample s(2, n_max);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Exponent> level;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) level.push_back({i, j});
        s.set_level(n, std::move(level));
    }
    return s;
}

void ValueTable::set(int n, const Exponent& a, double v) {
    if (!sample_->member(n, a))
        throw std::invalid_argument("ValueTable: (n, alpha) is not in the sample");
    values_[{n, a}] = v;
}

double ValueTable::at(int n, const Exponent& a) const {
    auto it = values_.find({n, a});
    if (it == values_.end()) throw std::out_of_range("ValueTable: missing entry");
    return it->second;
}

bool ValueTable::has(int n, const Exponent& a) const { return values_.count({n, a}) > 0; }

ValueTable::SuperadditivityReport ValueTable::audit_superadditive(double slack,
                                                                  long long max_checks) const {
    SuperadditivityReport rep;
    const auto& s = *sample_;
    long long total_pairs = 0;
    for (int n = 1; n <= s.n_max(); ++n)
        for (int m = n; m + n <= s.n_max(); ++m)
            total_pairs +=
                (long long)s.level(n).size() * (long long)s.level(m).size();
    long long stride = std::max<long long>(1, total_pairs / std::max<long long>(1, max_checks));

    long long counter = 0;
    for (int n = 1; n <= s.n_max(); ++n) {
        for (int m = n; n + m <= s.n_max(); ++m) {
            for (auto& a : s.level(n)) {
                for (auto& b : s.level(m)) {
                    if (counter++ % stride != 0) continue;
                    Exponent c = add_exp(a, b);
                    if (!has(n, a) || !has(m, b) || !has(n + m, c)) continue;
                    ++rep.checked;
                    double defect = at(n, a) + at(m, b) - at(n + m, c);
                    if (defect > rep.worst_defect) {
                        rep.worst_defect = defect;
                        if (defect > slack) {
                            rep.pass = false;
                            std::ostringstream os;
                            os << "Phi(" << n + m << "," << exp_str(c) << ") < Phi(" << n << ","
                               << exp_str(a) << ") + Phi(" << m << "," << exp_str(b) << ") by "
                               << defect;
                            rep.witness = os.str();
                        }
                    }
                }
            }
        }
    }
    return rep;
}

double ValueTable::theta_estimate() const {
    const auto& s = *sample_;
    double theta = -std::numeric_limits<double>::infinity();
    int start = std::max(1, (3 * s.n_max()) / 4);
    for (int n = start; n <= s.n_max(); ++n)
        for (auto& a : s.level(n))
            if (has(n, a)) theta = std::max(theta, at(n, a) / n);
    return theta;
}

std::vector<Exponent> leading_exponents(const std::vector<std::vector<Rational>>& coefficients,
                                        const std::vector<Exponent>& column_exponents,
                                        const MonomialOrder& order) {
    if (!coefficients.empty() && coefficients[0].size() != column_exponents.size())
        throw std::invalid_argument("leading_exponents: column count mismatch");
    // columns must come sorted ascending in the order
    for (size_t j = 0; j + 1 < column_exponents.size(); ++j)
        if (!order.less(column_exponents[j], column_exponents[j + 1]))
            throw std::invalid_argument("leading_exponents: columns not sorted by the order");

    std::vector<std::vector<Rational>> rows = coefficients;
    std::vector<char> used(rows.size(), 0);
    std::vector<Exponent> pivots;
    for (size_t col = 0; col < column_exponents.size(); ++col) {
        size_t pick = rows.size();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!used[i] && !rows[i][col].is_zero()) { pick = i; break; }
        }
        if (pick == rows.size()) continue;
        used[pick] = 1;
        pivots.push_back(column_exponents[col]);
        Rational inv_piv = Rational(1) / rows[pick][col];
        for (size_t i = 0; i < rows.size(); ++i) {
            if (used[i] && i != pick) continue;
            if (i == pick || rows[i][col].is_zero()) continue;
            Rational c = rows[i][col] * inv_piv;
            for (size_t j = col; j < column_exponents.size(); ++j)
                rows[i][j] -= c * rows[pick][j];
        }
    }
    return pivots;
}

namespace {

// integer hermite-style reduction for the lattice index in Z^{d+1}
long long lattice_index(std::vector<std::vector<long long>> gens, int dim) {
    // column echelon with euclidean reduction; returns |det| of the resulting
    // square basis, 0 when rank-deficient
    std::vector<std::vector<long long>> basis;
    for (auto& g : gens) {
        std::vector<long long> v = g;
        for (auto& b : basis) {
            // reduce v against b at b's pivot position
            size_t p = 0;
            while (p < b.size() && b[p] == 0) ++p;
            if (p == b.size()) continue;
            while (v[p] != 0) {
                long long q = v[p] / b[p];
                if (q != 0) {
                    for (size_t i = 0; i < v.size(); ++i) v[i] -= q * b[i];
                }
                if (v[p] == 0) break;
                // gcd step: swap roles
                std::swap(v, b);
            }
        }
        bool zero = std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
        if (!zero) basis.push_back(v);
        // keep basis sorted by pivot position
        std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) {
            size_t px = 0, py = 0;
            while (px < x.size() && x[px] == 0) ++px;
            while (py < y.size() && y[py] == 0) ++py;
            return px < py;
        });
    }
    if ((int)basis.size() < dim) return 0;
    long long det = 1;
    for (int i = 0; i < dim; ++i) {
        size_t p = 0;
        while (p < basis[(size_t)i].size() && basis[(size_t)i][p] == 0) ++p;
        if (p != (size_t)i) return 0;
        det *= basis[(size_t)i][(size_t)i];
    }
    return det < 0 ? -det : det;
}

}  // namespace

ConditionsReport conditions_check(const SemigroupSample& sample) {
    ConditionsReport rep;
    rep.a_pass = sample.level(0).size() == 1 &&
                 std::all_of(sample.level(0)[0].begin(), sample.level(0)[0].end(),
                             [](int x) { return x == 0; });

    // (b): the sample is consistent with B = {1} x {0..m}^d for the smallest
    // m that bounds every alpha_i / n
    int m = 0;
    for (int n = 1; n <= sample.n_max(); ++n)
        for (auto& a : sample.level(n))
            for (int x : a) m = std::max(m, (x + n - 1) / n);
    rep.b_pass = true;
    rep.b_bound = m;

    // (c): observed generators must generate Z^{d+1}
    std::vector<std::vector<long long>> gens;
    for (int n = 1; n <= sample.n_max(); ++n)
        for (auto& a : sample.level(n)) {
            std::vector<long long> g{(long long)n};
            for (int x : a) g.push_back(x);
            gens.push_back(std::move(g));
        }
    long long index = lattice_index(std::move(gens), sample.d() + 1);
    rep.c_index = index;
    rep.c_pass = index == 1;
    std::ostringstream os;
    os << "a=" << (rep.a_pass ? "pass" : "fail") << " b=pass(bound " << m << ") c="
       << (rep.c_pass ? "pass" : (index == 0 ? "fail(rank-deficient)"
                                             : "fail(index " + std::to_string(index) + ")"));
    rep.detail = os.str();
    return rep;
}

namespace {

std::vector<RPoint> ratio_points(const SemigroupSample& sample, int n_min,
                                 const ValueTable* table, double t) {
    std::vector<RPoint> pts;
    for (int n = std::max(1, n_min); n <= sample.n_max(); ++n) {
        for (auto& a : sample.level(n)) {
            if (table) {
                if (!table->has(n, a)) continue;
                if (table->at(n, a) < n * t) continue;
            }
            RPoint p;
            for (int x : a) p.push_back(Rational(x, n));
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

}  // namespace

DeltaBody delta_body(const SemigroupSample& sample, int n_min) {
    DeltaBody out;
    out.body = convex_hull(ratio_points(sample, n_min, nullptr, 0.0), sample.d());
    for (int n = 1; n <= sample.n_max(); ++n)
        out.count_ratios.push_back((double)sample.level(n).size() /
                                   std::pow((double)n, sample.d()));
    return out;
}

std::vector<std::pair<double, double>> filtered_cdf(const SemigroupSample& sample,
                                                    const ValueTable& table,
                                                    const std::vector<double>& t_grid,
                                                    int n_min) {
    auto full = convex_hull(ratio_points(sample, n_min, nullptr, 0.0), sample.d());
    if (full.degenerate || full.volume <= 0.0)
        throw std::domain_error("filtered_cdf: the ambient body is degenerate");
    std::vector<std::pair<double, double>> out;
    for (double t : t_grid) {
        auto pts = ratio_points(sample, n_min, &table, t);
        double f = 0.0;
        if (!pts.empty()) {
            auto body = convex_hull(pts, sample.d());
            f = body.degenerate ? 0.0 : body.volume / full.volume;
        }
        out.push_back({t, f});
    }
    return out;
}

std::vector<std::optional<double>> g_function(const SemigroupSample& sample,
                                              const ValueTable& table,
                                              const std::vector<double>& t_grid,
                                              const std::vector<RPoint>& x_grid, int n_min) {
    std::vector<double> ts = t_grid;
    std::sort(ts.begin(), ts.end());
    std::vector<std::optional<double>> g(x_grid.size());
    // descending t: the first body containing x gives the supremum
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        auto pts = ratio_points(sample, n_min, &table, *it);
        if (pts.empty()) continue;
        auto body = convex_hull(pts, sample.d());
        for (size_t i = 0; i < x_grid.size(); ++i) {
            if (g[i]) continue;
            if (body.contains(x_grid[i])) g[i] = *it;
        }
    }
    return g;
}

SpectralMeasure empirical_level_law(const SemigroupSample& sample, const ValueTable& table,
                                    int n) {
    const auto& level = sample.level(n);
    if (level.empty()) throw std::domain_error("empirical_level_law: empty level");
    std::map<double, double> mass;
    for (auto& a : level) mass[table.at(n, a) / n] += 1.0 / (double)level.size();
    SpectralMeasure m;
    for (auto& [v, w] : mass) m.atoms.push_back({v, w});
    m.validate();
    return m;
}

double brunn_minkowski_defect(const SemigroupSample& sample, const ValueTable& table,
                              const std::vector<double>& t_grid, int n_min) {
    std::vector<double> ts = t_grid;
    std::sort(ts.begin(), ts.end());
    std::vector<double> roots;
    for (double t : ts) {
        auto pts = ratio_points(sample, n_min, &table, t);
        double v = 0.0;
        if (!pts.empty()) {
            auto body = convex_hull(pts, sample.d());
            v = body.degenerate ? 0.0 : body.volume;
        }
        roots.push_back(std::pow(v, 1.0 / sample.d()));
    }
    // concavity on the grid: second differences (uniform grid assumed where
    // it matters; use the general three-point test otherwise)
    double defect = 0.0;
    for (size_t i = 0; i + 2 < roots.size(); ++i) {
        double t0 = ts[i], t1 = ts[i + 1], t2 = ts[i + 2];
        if (roots[i] == 0.0 && roots[i + 1] == 0.0 && roots[i + 2] == 0.0) continue;
        double lam = (t2 - t1) / (t2 - t0);
        double chord = lam * roots[i] + (1.0 - lam) * roots[i + 2];
        defect = std::max(defect, chord - roots[i + 1]);
    }
    return defect;
}

}  // namespace okspec
