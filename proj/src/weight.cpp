#include "okspec/series/weight.hpp"

#include "okspec/core/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace okspec {

namespace {

using cd = std::complex<double>;

// homogeneous coordinates of a chart point, chart coordinate set to 1
void homogeneous(Variety v, const ChartPoint& p, cd h[3]) {
    if (v == Variety::P1) {
        if (p.chart == 0) { h[0] = 1.0; h[1] = p.x1; }
        else { h[0] = p.x1; h[1] = 1.0; }
        h[2] = 0.0;
        return;
    }
    switch (p.chart) {
        case 0: h[0] = 1.0; h[1] = p.x1; h[2] = p.x2; break;
        case 1: h[0] = p.x1; h[1] = 1.0; h[2] = p.x2; break;
        case 2: h[0] = p.x1; h[1] = p.x2; h[2] = 1.0; break;
        default: throw std::invalid_argument("weight: bad chart");
    }
}

// the same projective point expressed in another chart; returns false when
// the target chart coordinate vanishes
bool transition(Variety v, const ChartPoint& p, int target, ChartPoint& out) {
    cd h[3];
    homogeneous(v, p, h);
    cd denom = h[target];
    if (std::abs(denom) < 1e-14) return false;
    out.chart = target;
    if (v == Variety::P1) {
        out.x1 = target == 0 ? h[1] / denom : h[0] / denom;
        return true;
    }
    if (target == 0) { out.x1 = h[1] / denom; out.x2 = h[2] / denom; }
    if (target == 1) { out.x1 = h[0] / denom; out.x2 = h[2] / denom; }
    if (target == 2) { out.x1 = h[0] / denom; out.x2 = h[1] / denom; }
    return true;
}

}  // namespace

MetricWeight::MetricWeight(Variety v, std::string name, Fn u, bool rotation_invariant,
                           bool smooth)
    : variety_(v), name_(std::move(name)), u_(std::move(u)),
      rotation_invariant_(rotation_invariant), smooth_(smooth) {}

double MetricWeight::overlap_defect(int probes) const {
    // ||s||(x) must be chart-independent: u_c(x) - u_c'(x) = ln|X_c'/X_c|
    Rng rng(0xfeedULL);
    double worst = 0.0;
    const int charts = chart_count(variety_);
    for (int t = 0; t < probes; ++t) {
        ChartPoint p;
        p.chart = (int)rng.below((std::uint64_t)charts);
        double r1 = rng.uniform(0.85, 1.15), a1 = rng.uniform(0.0, 2.0 * M_PI);
        p.x1 = {r1 * std::cos(a1), r1 * std::sin(a1)};
        if (variety_ == Variety::P2) {
            double r2 = rng.uniform(0.85, 1.15), a2 = rng.uniform(0.0, 2.0 * M_PI);
            p.x2 = {r2 * std::cos(a2), r2 * std::sin(a2)};
        }
        cd h[3];
        homogeneous(variety_, p, h);
        for (int c = 0; c < charts; ++c) {
            if (c == p.chart) continue;
            ChartPoint q;
            if (!transition(variety_, p, c, q)) continue;
            cd hq[3];
            homogeneous(variety_, q, hq);
            // defect of u_p - u_q + ln|ratio of the trivializing coordinates|
            double ratio = std::log(std::abs(h[c])) - std::log(std::abs(h[p.chart]));
            double defect = std::abs(u_(p) - (u_(q) + ratio));
            worst = std::max(worst, defect);
        }
    }
    return worst;
}

MetricWeight MetricWeight::fubini_study(Variety v) {
    return MetricWeight(
        v, "fubini-study",
        [v](const ChartPoint& p) {
            double s = std::norm(p.x1) + (v == Variety::P2 ? std::norm(p.x2) : 0.0);
            return 0.5 * std::log(1.0 + s);
        },
        true, true);
}

MetricWeight MetricWeight::max_log(Variety v) {
    return MetricWeight(
        v, "max-log",
        [v](const ChartPoint& p) {
            double m = std::max(1.0, std::abs(p.x1));
            if (v == Variety::P2) m = std::max(m, std::abs(p.x2));
            return std::log(m);
        },
        true, false);
}

MetricWeight MetricWeight::shifted(const MetricWeight& base, double c) {
    auto fn = base.u_;
    return MetricWeight(base.variety_, base.name_ + "+" + std::to_string(c),
                        [fn, c](const ChartPoint& p) { return fn(p) + c; },
                        base.rotation_invariant_, base.smooth_);
}

MetricWeight MetricWeight::bump(const MetricWeight& base, std::complex<double> center,
                                double height, double radius) {
    Variety v = base.variety_;
    auto fn = base.u_;
    auto bump_term = [v, center, height, radius](const ChartPoint& p) {
        // evaluate in chart-0 coordinates; points with vanishing X0 are
        // outside the (compact) support as long as the support stays inside
        // the chart
        ChartPoint q = p;
        if (p.chart != 0) {
            if (!transition(v, p, 0, q)) return 0.0;
        }
        double d2 = std::norm(q.x1 - center) + (v == Variety::P2 ? std::norm(q.x2) : 0.0);
        double t = 1.0 - d2 / (radius * radius);
        if (t <= 0.0) return 0.0;
        return height * t * t;
    };
    return MetricWeight(v, base.name_ + "+bump",
                        [fn, bump_term](const ChartPoint& p) { return fn(p) + bump_term(p); },
                        false, true);
}

MetricWeight MetricWeight::vee(const MetricWeight& psi, const MetricWeight& phi, double a) {
    if (psi.variety_ != phi.variety_)
        throw std::invalid_argument("MetricWeight::vee: variety mismatch");
    auto up = psi.u_, uq = phi.u_;
    return MetricWeight(psi.variety_, psi.name_ + " v " + phi.name_ + "(" + std::to_string(a) + ")",
                        [up, uq, a](const ChartPoint& p) { return std::min(up(p), uq(p) - a); },
                        psi.rotation_invariant_ && phi.rotation_invariant_, false);
}

}  // namespace okspec
