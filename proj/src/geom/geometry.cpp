#include "wpsgate/geom/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace wpsgate::geom {

void validate(const Polygon& p) {
    if (p.ring.size() < 3)
        throw DegenerateGeometry("polygon needs at least three vertices");
    for (size_t i = 0; i < p.ring.size(); ++i) {
        const Point& a = p.ring[i];
        const Point& b = p.ring[(i + 1) % p.ring.size()];
        if (a == b) throw DegenerateGeometry("consecutive vertices coincide");
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            throw DegenerateGeometry("non-finite vertex coordinate");
    }
}

double area(const Polygon& p) {
    validate(p);
    double sum = 0;
    for (size_t i = 0; i < p.ring.size(); ++i) {
        const Point& a = p.ring[i];
        const Point& b = p.ring[(i + 1) % p.ring.size()];
        sum += a.x * b.y - b.x * a.y;
    }
    return std::abs(sum) / 2.0;
}

Rect bounding_box(const Polygon& p) {
    validate(p);
    Rect r{p.ring[0].x, p.ring[0].y, p.ring[0].x, p.ring[0].y};
    for (const Point& v : p.ring) {
        r.minx = std::min(r.minx, v.x);
        r.miny = std::min(r.miny, v.y);
        r.maxx = std::max(r.maxx, v.x);
        r.maxy = std::max(r.maxy, v.y);
    }
    return r;
}

std::optional<Rect> intersect(const Rect& a, const Rect& b) {
    Rect c{std::max(a.minx, b.minx), std::max(a.miny, b.miny),
           std::min(a.maxx, b.maxx), std::min(a.maxy, b.maxy)};
    if (c.minx > c.maxx || c.miny > c.maxy) return std::nullopt;
    return c;
}

std::string polygon_to_geojson(const Polygon& p) {
    validate(p);
    nlohmann::json ring = nlohmann::json::array();
    for (const Point& v : p.ring) ring.push_back({v.x, v.y});
    ring.push_back({p.ring.front().x, p.ring.front().y});
    nlohmann::json doc{{"type", "Polygon"}, {"coordinates", {ring}}};
    return doc.dump();
}

Polygon polygon_from_geojson(std::string_view bytes) {
    nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object())
        throw DegenerateGeometry("not a GeoJSON document");
    const auto type = doc.find("type");
    if (type == doc.end() || !type->is_string() || type->get<std::string>() != "Polygon")
        throw DegenerateGeometry("GeoJSON type is not Polygon");
    const auto coords = doc.find("coordinates");
    if (coords == doc.end() || !coords->is_array() || coords->empty() ||
        !(*coords)[0].is_array())
        throw DegenerateGeometry("GeoJSON Polygon without an exterior ring");

    Polygon p;
    for (const auto& pos : (*coords)[0]) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
            throw DegenerateGeometry("GeoJSON position is not an [x, y] pair");
        p.ring.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    if (p.ring.size() >= 2 && p.ring.front() == p.ring.back()) p.ring.pop_back();
    validate(p);
    return p;
}

} // namespace wpsgate::geom
