// Independent geometry oracles: Monte-Carlo point-in-polygon area
// estimation and a convex polygon generator. Deliberately avoids the
// shoelace path it is used to check.

#ifndef WPSGATE_TESTS_GEOM_ORACLE_HPP
#define WPSGATE_TESTS_GEOM_ORACLE_HPP

#include "wpsgate/geom/geometry.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

/// Convex polygon: n points on an ellipse at sorted angles with jittered
/// radii kept close enough to stay convex.
inline wpsgate::geom::Polygon convex_polygon(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_dist(3, 12);
    std::uniform_real_distribution<double> center(-50.0, 50.0);
    std::uniform_real_distribution<double> radius(5.0, 40.0);
    int n = n_dist(rng);
    double cx = center(rng), cy = center(rng);
    double rx = radius(rng), ry = radius(rng);

    wpsgate::geom::Polygon p;
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * M_PI * (i + 0.5) / n;
        p.ring.push_back({cx + rx * std::cos(theta), cy + ry * std::sin(theta)});
    }
    return p;
}

/// Half-plane test against every edge; works for convex rings in either
/// winding order.
inline bool inside_convex(const wpsgate::geom::Polygon& p, double x, double y) {
    int sign = 0;
    size_t n = p.ring.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = p.ring[i];
        const auto& b = p.ring[(i + 1) % n];
        double cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
        if (cross == 0) continue;
        int s = cross > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) return false;
    }
    return true;
}

/// Sample the bounding box uniformly and scale by the hit fraction.
inline double monte_carlo_area(const wpsgate::geom::Polygon& p, std::mt19937_64& rng,
                               int samples) {
    wpsgate::geom::Rect box = wpsgate::geom::bounding_box(p);
    double w = box.maxx - box.minx;
    double h = box.maxy - box.miny;
    if (w <= 0 || h <= 0) return 0;
    std::uniform_real_distribution<double> dx(box.minx, box.maxx);
    std::uniform_real_distribution<double> dy(box.miny, box.maxy);
    long hits = 0;
    for (int i = 0; i < samples; ++i) {
        if (inside_convex(p, dx(rng), dy(rng))) ++hits;
    }
    return w * h * static_cast<double>(hits) / samples;
}

} // namespace oracle

#endif
