#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okspec/core/rational.hpp"
#include "okspec/core/rng.hpp"
#include "okspec/hermitian/hermitian.hpp"
#include "okspec/okounkov/hull.hpp"
#include "okspec/okounkov/order.hpp"

namespace okspec {

// Finite window onto a sub-semigroup of N^{d+1}: the sets Gamma_n for
// n <= n_max. Gamma_0 = {0} always.
class SemigroupSample {
public:
    SemigroupSample(int d, int n_max);

    int d() const { return d_; }
    int n_max() const { return n_max_; }
    void set_level(int n, std::vector<Exponent> gamma_n);
    const std::vector<Exponent>& level(int n) const;
    bool member(int n, const Exponent& a) const;
    long long total_points() const;

    // full pairwise closure audit up to max_checks pairs (deterministic
    // subsample beyond that); returns an offending triple if any
    struct ClosureReport {
        bool pass = true;
        long long checked = 0;
        std::string witness;
    };
    ClosureReport audit_closure(long long max_checks = 2000000) const;

    // d = 1 or 2 standard full samples
    static SemigroupSample full_line(int n_max);     // Gamma_n = {0..n}
    static SemigroupSample full_simplex(int n_max);  // Gamma_n = n * standard simplex

private:
    int d_, n_max_;
    std::vector<std::vector<Exponent>> levels_;
    std::vector<std::map<Exponent, bool>> member_;
};

// Superadditive value table Phi(n, alpha) on the sampled semigroup.
class ValueTable {
public:
    explicit ValueTable(const SemigroupSample& sample) : sample_(&sample) {}

    void set(int n, const Exponent& a, double v);
    double at(int n, const Exponent& a) const;
    bool has(int n, const Exponent& a) const;

    struct SuperadditivityReport {
        bool pass = true;
        long long checked = 0;
        double worst_defect = 0.0;  // positive when violated beyond slack
        std::string witness;
    };
    SuperadditivityReport audit_superadditive(double slack = 1e-9,
                                              long long max_checks = 2000000) const;

    // theta estimate: max of Phi(n,.)/n over the top quartile of levels
    double theta_estimate() const;

    const SemigroupSample& sample() const { return *sample_; }

private:
    const SemigroupSample* sample_;
    std::map<std::pair<int, Exponent>, double> values_;
};

// pivot exponents of the span of the rows, taken in monomial order
std::vector<Exponent> leading_exponents(const std::vector<std::vector<Rational>>& coefficients,
                                        const std::vector<Exponent>& column_exponents,
                                        const MonomialOrder& order);

struct ConditionsReport {
    bool a_pass = false;
    bool b_pass = false;
    int b_bound = 0;  // B consistent with {1} x {0..b_bound}^d
    bool c_pass = false;
    long long c_index = 0;  // index of the generated lattice in Z^{d+1}
    std::string detail;
    bool all() const { return a_pass && b_pass && c_pass; }
};

ConditionsReport conditions_check(const SemigroupSample& sample);

struct DeltaBody {
    ConvexBodyLowDim body;
    std::vector<double> count_ratios;  // #Gamma_n / n^d per level
};

DeltaBody delta_body(const SemigroupSample& sample, int n_min);

// F(t) = vol(Delta(Gamma_Phi^t)) / vol(Delta(Gamma)), inclusive filter
// Phi(n, alpha) >= n t
std::vector<std::pair<double, double>> filtered_cdf(const SemigroupSample& sample,
                                                    const ValueTable& table,
                                                    const std::vector<double>& t_grid,
                                                    int n_min);

// G(x) = sup { t in grid : x in Delta(Gamma_Phi^t) }; unset when x is
// outside every filtered body
std::vector<std::optional<double>> g_function(const SemigroupSample& sample,
                                              const ValueTable& table,
                                              const std::vector<double>& t_grid,
                                              const std::vector<RPoint>& x_grid, int n_min);

SpectralMeasure empirical_level_law(const SemigroupSample& sample, const ValueTable& table,
                                    int n);

// max violation of concavity of t -> vol^{1/d} on the grid (<= tol passes)
double brunn_minkowski_defect(const SemigroupSample& sample, const ValueTable& table,
                              const std::vector<double>& t_grid, int n_min);

}  // namespace okspec
