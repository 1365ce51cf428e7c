#pragma once

#include <functional>
#include <string>

#include "okspec/series/backend.hpp"

namespace okspec {

// Continuous metric weight on O(1): the section norm at a chart point is
// |s_chart(x)| * exp(-n * u(x)). Chart functions must agree across chart
// transitions up to the tautological ln|coordinate| correction; the audit
// probes that consistency on overlap points.
class MetricWeight {
public:
    using Fn = std::function<double(const ChartPoint&)>;

    MetricWeight() = default;
    MetricWeight(Variety v, std::string name, Fn u, bool rotation_invariant, bool smooth);

    Variety variety() const { return variety_; }
    const std::string& name() const { return name_; }
    bool rotation_invariant() const { return rotation_invariant_; }
    bool smooth() const { return smooth_; }
    double operator()(const ChartPoint& p) const { return u_(p); }

    // largest chart-transition inconsistency over deterministic overlap probes
    double overlap_defect(int probes = 256) const;

    static MetricWeight fubini_study(Variety v);
    static MetricWeight max_log(Variety v);
    // weight shifted by a constant: scales every section norm by e^{-n c}
    static MetricWeight shifted(const MetricWeight& base, double c);
    // base plus a compact smooth bump centered in chart 0
    static MetricWeight bump(const MetricWeight& base, std::complex<double> center,
                             double height, double radius);
    // pointwise metric max(psi, e^{a} phi): the weight is min(u_psi, u_phi - a)
    static MetricWeight vee(const MetricWeight& psi, const MetricWeight& phi, double a);

private:
    Variety variety_ = Variety::P1;
    std::string name_;
    Fn u_;
    bool rotation_invariant_ = false;
    bool smooth_ = true;
};

}  // namespace okspec
