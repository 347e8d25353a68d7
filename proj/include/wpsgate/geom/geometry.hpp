#ifndef WPSGATE_GEOM_GEOMETRY_HPP
#define WPSGATE_GEOM_GEOMETRY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wpsgate::geom {

class DegenerateGeometry : public std::runtime_error {
public:
    explicit DegenerateGeometry(const std::string& what) : std::runtime_error(what) {}
};

struct Point {
    double x = 0, y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Simple polygon as an implicitly closed vertex ring.
struct Polygon {
    std::vector<Point> ring;

    friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct Rect {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Throws DegenerateGeometry unless the ring has at least three vertices
/// and no two consecutive vertices (including the closing pair) coincide.
void validate(const Polygon& p);

/// Shoelace area, |sum(x_i*y_{i+1} - x_{i+1}*y_i)| / 2.
double area(const Polygon& p);

Rect bounding_box(const Polygon& p);

/// Componentwise max of mins / min of maxes; nullopt when disjoint.
std::optional<Rect> intersect(const Rect& a, const Rect& b);

/// GeoJSON-subset Polygon codec (exterior ring only). The closing vertex
/// is emitted on the wire and dropped when reading.
std::string polygon_to_geojson(const Polygon& p);
Polygon polygon_from_geojson(std::string_view bytes); // throws DegenerateGeometry

} // namespace wpsgate::geom

#endif
