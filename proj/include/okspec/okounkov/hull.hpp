#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "okspec/core/rational.hpp"

namespace okspec {

using RPoint = std::vector<Rational>;

// Exact convex hull for d <= 3: vertex selection and containment use exact
// rational orientation predicates; the Lebesgue volume is evaluated in
// doubles over the exact vertices. d = 3 inserts points in a deterministic
// shuffled order.
struct ConvexBodyLowDim {
    int dim = 0;
    std::vector<RPoint> vertices;          // ccw for d = 2
    std::vector<std::array<int, 3>> facets;  // outward triangles, d = 3 only
    double volume = 0.0;
    bool degenerate = false;  // affine dimension below dim; volume 0

    bool contains(const RPoint& x) const;
};

ConvexBodyLowDim convex_hull(const std::vector<RPoint>& points, int dim,
                             std::uint64_t shuffle_seed = 1);

}  // namespace okspec
