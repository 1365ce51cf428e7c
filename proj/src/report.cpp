#include "okspec/laws/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace okspec {

double truncation_budget(int rank) {
    return 2.0 * std::log((double)std::max(rank, 1)) + 0.5 * std::log(2.0);
}

namespace {

Polygon polygon_of_law(const SpectralMeasure& m) {
    // rebuild the normalized polygon from the law: sort values descending,
    // accumulate mass-weighted sums at the atom boundaries
    std::vector<std::pair<double, double>> atoms = m.atoms;  // (value, mass)
    std::sort(atoms.begin(), atoms.end(),
              [](auto& a, auto& b) { return a.first > b.first; });
    // use a fine uniform subdivision so polygons of different ranks compare
    const int steps = 256;
    Polygon p;
    p.breakpoints.resize(steps + 1);
    p.normalized.resize(steps + 1);
    p.breakpoints[0] = 0.0;
    size_t at = 0;
    double used = 0.0;
    for (int i = 1; i <= steps; ++i) {
        double target = (double)i / steps;
        double acc = p.breakpoints[(size_t)i - 1];
        double need = target - ((double)i - 1) / steps;
        while (need > 1e-15 && at < atoms.size()) {
            double avail = atoms[at].second - used;
            double take = std::min(avail, need);
            acc += take * atoms[at].first;
            used += take;
            need -= take;
            if (used >= atoms[at].second - 1e-15) { ++at; used = 0.0; }
        }
        p.breakpoints[(size_t)i] = acc;
    }
    // breakpoints carry P~(i) = rank * P(i / rank) so the shared Polygon
    // helpers normalize consistently
    for (int i = 0; i <= steps; ++i) {
        p.normalized[(size_t)i] = p.breakpoints[(size_t)i];
        p.breakpoints[(size_t)i] *= (double)steps;
    }
    return p;
}

}  // namespace

ConvergenceReport convergence_report(const std::vector<LevelLaw>& laws,
                                     const std::vector<double>& a_grid,
                                     std::optional<double> bound, double tolerance) {
    if (laws.empty()) throw std::invalid_argument("convergence_report: no laws");
    ConvergenceReport rep;
    rep.a_grid = a_grid;

    for (const auto& l : laws) {
        l.law.validate();
        if (bound) {
            for (auto& [v, w] : l.law.atoms)
                if (std::abs(v) > *bound + 1e-9)
                    throw std::domain_error(
                        "convergence_report: law at n=" + std::to_string(l.n) +
                        " exceeds the uniform bound sup_x d(phi(x), psi(x)) = " +
                        std::to_string(*bound));
        }
        rep.ns.push_back(l.n);
        rep.mean_slopes.push_back(l.law.mean());
        rep.budgets.push_back(truncation_budget(l.dim) / std::max(1, l.n));
        std::vector<double> tm;
        tm.reserve(a_grid.size());
        for (double a : a_grid) tm.push_back(truncated_mean(l.law, a));
        rep.truncated_means.push_back(std::move(tm));
        rep.polygons.push_back(polygon_of_law(l.law));
    }
    for (size_t i = 0; i + 1 < laws.size(); ++i) {
        rep.kolmogorov_steps.push_back(kolmogorov(laws[i].law, laws[i + 1].law));
        rep.polygon_steps.push_back(
            rep.polygons[i].uniform_distance_normalized(rep.polygons[i + 1]));
    }

    // Richardson in 1/n on the last doubling, per grid point
    const auto& tm_last = rep.truncated_means.back();
    std::vector<double> extrap = tm_last;
    if (laws.size() >= 2) {
        const auto& tm_prev = rep.truncated_means[laws.size() - 2];
        double n2 = (double)laws.back().n, n1 = (double)laws[laws.size() - 2].n;
        double w = n2 / (n2 - n1);
        for (size_t j = 0; j < extrap.size(); ++j)
            extrap[j] = w * tm_last[j] + (1.0 - w) * tm_prev[j];
        rep.energy_estimate =
            w * rep.mean_slopes.back() + (1.0 - w) * rep.mean_slopes[laws.size() - 2];
    } else {
        rep.energy_estimate = rep.mean_slopes.back();
    }

    // the derivative of a -> E[max(Z,a)] is the CDF; finite differences of
    // the extrapolated means reconstruct the limit law
    for (size_t j = 0; j + 1 < a_grid.size(); ++j) {
        double f = (extrap[j + 1] - extrap[j]) / (a_grid[j + 1] - a_grid[j]);
        f = std::min(1.0, std::max(0.0, f));
        if (!rep.extrapolated_cdf.points.empty())
            f = std::max(f, rep.extrapolated_cdf.points.back().second);
        rep.extrapolated_cdf.points.push_back({0.5 * (a_grid[j] + a_grid[j + 1]), f});
    }

    // Cauchy flag over the last three steps, with the A(r)/n budgets
    rep.converged = laws.size() >= 2;
    size_t first = laws.size() >= 4 ? laws.size() - 3 : 1;
    for (size_t i = first; i < laws.size(); ++i) {
        double worst = 0.0;
        for (size_t j = 0; j < a_grid.size(); ++j)
            worst = std::max(worst, std::abs(rep.truncated_means[i][j] -
                                             rep.truncated_means[i - 1][j]));
        double allowance = tolerance + rep.budgets[i] + rep.budgets[i - 1];
        if (worst > allowance) {
            rep.converged = false;
            rep.note = "truncated-mean increment " + std::to_string(worst) +
                       " above allowance " + std::to_string(allowance) + " at n=" +
                       std::to_string(laws[i].n);
        }
    }
    return rep;
}

}  // namespace okspec
