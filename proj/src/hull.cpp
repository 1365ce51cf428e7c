#include "okspec/okounkov/hull.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "okspec/core/rng.hpp"

namespace okspec {

namespace {

int sign_of(const Rational& r) {
    if (r.num() > 0) return 1;
    if (r.num() < 0) return -1;
    return 0;
}

bool lex_point_less(const RPoint& a, const RPoint& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

Rational cross2(const RPoint& o, const RPoint& a, const RPoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// sign of det[b-a, c-a, d-a]: positive when d is on the normal side of (a,b,c)
int orient3d(const RPoint& a, const RPoint& b, const RPoint& c, const RPoint& d) {
    std::array<std::array<Rational, 3>, 3> m;
    for (int i = 0; i < 3; ++i) {
        m[0][(size_t)i] = b[(size_t)i] - a[(size_t)i];
        m[1][(size_t)i] = c[(size_t)i] - a[(size_t)i];
        m[2][(size_t)i] = d[(size_t)i] - a[(size_t)i];
    }
    return sign_of(det3(m));
}

ConvexBodyLowDim hull_1d(std::vector<RPoint> pts) {
    ConvexBodyLowDim body;
    body.dim = 1;
    RPoint lo = pts[0], hi = pts[0];
    for (auto& p : pts) {
        if (p[0] < lo[0]) lo = p;
        if (p[0] > hi[0]) hi = p;
    }
    body.degenerate = lo[0] == hi[0];
    body.vertices = body.degenerate ? std::vector<RPoint>{lo} : std::vector<RPoint>{lo, hi};
    body.volume = (hi[0] - lo[0]).to_double();
    return body;
}

ConvexBodyLowDim hull_2d(std::vector<RPoint> pts) {
    ConvexBodyLowDim body;
    body.dim = 2;
    std::sort(pts.begin(), pts.end(), lex_point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        body.degenerate = true;
        body.vertices = pts;
        return body;
    }
    auto build = [&](bool lower) {
        std::vector<RPoint> h;
        for (size_t idx = 0; idx < pts.size(); ++idx) {
            const RPoint& p = lower ? pts[idx] : pts[pts.size() - 1 - idx];
            while (h.size() >= 2 && sign_of(cross2(h[h.size() - 2], h.back(), p)) <= 0)
                h.pop_back();
            h.push_back(p);
        }
        return h;
    };
    auto lower = build(true), upper = build(false);
    body.vertices = lower;
    body.vertices.insert(body.vertices.end(), upper.begin() + 1, upper.end() - 1);
    if (body.vertices.size() < 3) {
        body.degenerate = true;
        return body;
    }
    // shoelace, in doubles over the exact vertices
    double area2 = 0.0;
    for (size_t i = 0; i < body.vertices.size(); ++i) {
        const RPoint& a = body.vertices[i];
        const RPoint& b = body.vertices[(i + 1) % body.vertices.size()];
        area2 += a[0].to_double() * b[1].to_double() - b[0].to_double() * a[1].to_double();
    }
    body.volume = std::abs(area2) / 2.0;
    return body;
}

}  // namespace

ConvexBodyLowDim convex_hull(const std::vector<RPoint>& points, int dim,
                             std::uint64_t shuffle_seed) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("convex_hull: dim must be 1..3");
    if (points.empty()) {
        ConvexBodyLowDim body;
        body.dim = dim;
        body.degenerate = true;
        return body;
    }
    for (auto& p : points)
        if ((int)p.size() != dim) throw std::invalid_argument("convex_hull: point dim mismatch");

    if (dim == 1) return hull_1d(points);
    if (dim == 2) return hull_2d(points);

    // dim == 3: incremental with exact predicates
    std::vector<RPoint> pts = points;
    std::sort(pts.begin(), pts.end(), lex_point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ConvexBodyLowDim body;
    body.dim = 3;
    if (pts.size() < 4) {
        body.degenerate = true;
        body.vertices = pts;
        return body;
    }
    // deterministic shuffle for the insertion order
    Rng rng(shuffle_seed);
    for (size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[rng.below(i)]);

    // initial simplex: greedy search for affine independence
    size_t i1 = 1;
    while (i1 < pts.size() && pts[i1] == pts[0]) ++i1;
    if (i1 == pts.size()) { body.degenerate = true; body.vertices = {pts[0]}; return body; }
    size_t i2 = i1 + 1;
    auto collinear = [&](size_t k) {
        std::array<std::array<Rational, 3>, 3> m;
        for (int c = 0; c < 3; ++c) {
            m[0][(size_t)c] = pts[i1][(size_t)c] - pts[0][(size_t)c];
            m[1][(size_t)c] = pts[k][(size_t)c] - pts[0][(size_t)c];
            m[2][(size_t)c] = Rational(0);
        }
        // rank of the 2x3 block: all 2x2 minors zero?
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                Rational minor = m[0][(size_t)a] * m[1][(size_t)b] - m[0][(size_t)b] * m[1][(size_t)a];
                if (sign_of(minor) != 0) return false;
            }
        return true;
    };
    while (i2 < pts.size() && collinear(i2)) ++i2;
    if (i2 == pts.size()) { body.degenerate = true; return body; }
    size_t i3 = i2 + 1;
    while (i3 < pts.size() && orient3d(pts[0], pts[i1], pts[i2], pts[i3]) == 0) ++i3;
    if (i3 == pts.size()) { body.degenerate = true; return body; }

    std::vector<size_t> order{0, i1, i2, i3};
    std::set<size_t> used(order.begin(), order.end());

    using Face = std::array<size_t, 3>;
    std::vector<Face> faces;
    auto add_face = [&](size_t a, size_t b, size_t c, size_t opposite) {
        // orient so the opposite initial vertex is on the negative side
        if (orient3d(pts[a], pts[b], pts[c], pts[opposite]) > 0) std::swap(b, c);
        faces.push_back({a, b, c});
    };
    add_face(order[0], order[1], order[2], order[3]);
    add_face(order[0], order[1], order[3], order[2]);
    add_face(order[0], order[2], order[3], order[1]);
    add_face(order[1], order[2], order[3], order[0]);

    for (size_t k = 0; k < pts.size(); ++k) {
        if (used.count(k)) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (orient3d(pts[faces[fi][0]], pts[faces[fi][1]], pts[faces[fi][2]], pts[k]) > 0) {
                visible[fi] = 1;
                any = true;
            }
        }
        if (!any) continue;
        // horizon edges: directed edges of visible faces whose reversal is not
        // an edge of another visible face
        std::map<std::pair<size_t, size_t>, int> dir_edges;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (!visible[fi]) continue;
            const Face& f = faces[fi];
            for (int e = 0; e < 3; ++e) {
                size_t a = f[(size_t)e], b = f[(size_t)((e + 1) % 3)];
                dir_edges[{a, b}] += 1;
            }
        }
        std::vector<Face> next;
        for (size_t fi = 0; fi < faces.size(); ++fi)
            if (!visible[fi]) next.push_back(faces[fi]);
        for (auto& [edge, cnt] : dir_edges) {
            auto rev = dir_edges.find({edge.second, edge.first});
            if (rev != dir_edges.end()) continue;  // interior to the visible region
            next.push_back({edge.first, edge.second, k});
        }
        faces = std::move(next);
    }

    std::set<size_t> vset;
    for (auto& f : faces)
        for (size_t v : f) vset.insert(v);
    for (size_t v : vset) body.vertices.push_back(pts[v]);

    // signed volume from a fixed origin over outward faces
    double vol = 0.0;
    const RPoint& o = pts[order[0]];
    auto dd = [&](const RPoint& p, int c) { return p[(size_t)c].to_double() - o[(size_t)c].to_double(); };
    for (auto& f : faces) {
        double m[3][3];
        for (int c = 0; c < 3; ++c) {
            m[0][c] = dd(pts[f[0]], c);
            m[1][c] = dd(pts[f[1]], c);
            m[2][c] = dd(pts[f[2]], c);
        }
        vol += m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    body.volume = std::abs(vol) / 6.0;
    body.facets.assign(faces.size(), {});
    std::vector<size_t> vlist(vset.begin(), vset.end());
    for (size_t fi = 0; fi < faces.size(); ++fi)
        for (int e = 0; e < 3; ++e) {
            size_t idx = (size_t)(std::lower_bound(vlist.begin(), vlist.end(), faces[fi][(size_t)e]) -
                                  vlist.begin());
            body.facets[fi][(size_t)e] = (int)idx;
        }
    return body;
}

bool ConvexBodyLowDim::contains(const RPoint& x) const {
    if (degenerate) {
        for (auto& v : vertices)
            if (v == x) return true;
        return false;
    }
    if (dim == 1) return vertices.front()[0] <= x[0] && x[0] <= vertices.back()[0];
    if (dim == 2) {
        for (size_t i = 0; i < vertices.size(); ++i) {
            const RPoint& a = vertices[i];
            const RPoint& b = vertices[(i + 1) % vertices.size()];
            if (sign_of(cross2(a, b, x)) < 0) return false;
        }
        return true;
    }
    for (auto& f : facets) {
        if (orient3d(vertices[(size_t)f[0]], vertices[(size_t)f[1]], vertices[(size_t)f[2]], x) > 0)
            return false;
    }
    return true;
}

}  // namespace okspec
