#include "wigner/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wigner/specfun.hpp"

namespace wigner {

namespace {

double sq(double x) { return x * x; }

double dist(PhasePoint a, PhasePoint b) { return std::hypot(a.q - b.q, a.p - b.p); }

double cross(PhasePoint o, PhasePoint a, PhasePoint b) {
    return (a.q - o.q) * (b.p - o.p) - (a.p - o.p) * (b.q - o.q);
}

// Proper or improper intersection of closed segments [a,b] and [c,d].
bool segments_intersect(PhasePoint a, PhasePoint b, PhasePoint c, PhasePoint d) {
    auto on_segment = [](PhasePoint s, PhasePoint e, PhasePoint pt) {
        return std::min(s.q, e.q) <= pt.q && pt.q <= std::max(s.q, e.q) &&
               std::min(s.p, e.p) <= pt.p && pt.p <= std::max(s.p, e.p);
    };
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(c, d, a)) return true;
    if (d2 == 0 && on_segment(c, d, b)) return true;
    if (d3 == 0 && on_segment(a, b, c)) return true;
    if (d4 == 0 && on_segment(a, b, d)) return true;
    return false;
}

void validate_polygon(const std::vector<PhasePoint>& v) {
    const size_t n = v.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (size_t i = 0; i < n; ++i) {
        if (dist(v[i], v[(i + 1) % n]) == 0.0)
            throw std::invalid_argument("polygon has a zero-length edge");
    }
    // simple-polygon test: no two non-adjacent edges may intersect
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                throw std::invalid_argument("polygon is self-intersecting");
        }
    }
}

PhasePoint parse_point(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        std::ostringstream msg;
        msg << "region field '" << what << "' must be a [q, p] pair";
        throw std::invalid_argument(msg.str());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        std::ostringstream msg;
        msg << "region field '" << key << "' missing or not a number";
        throw std::invalid_argument(msg.str());
    }
    return j[key].get<double>();
}

PhasePoint require_point(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        std::ostringstream msg;
        msg << "region field '" << key << "' is missing";
        throw std::invalid_argument(msg.str());
    }
    return parse_point(j[key], key);
}

RegionSpec region_from_json(const nlohmann::json& j);

std::vector<PhasePoint> parse_point_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
        std::ostringstream msg;
        msg << "region field '" << key << "' missing or not an array";
        throw std::invalid_argument(msg.str());
    }
    std::vector<PhasePoint> out;
    for (const auto& item : j[key]) out.push_back(parse_point(item, key));
    return out;
}

RegionSpec region_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("region JSON must be an object with a string 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    PhasePoint center{0.0, 0.0};
    if (j.contains("center")) center = parse_point(j["center"], "center");
    if (kind == "disk") return RegionSpec::make_disk(center, require_number(j, "radius"));
    if (kind == "annulus")
        return RegionSpec::make_annulus(center, require_number(j, "inner_radius"),
                                        require_number(j, "outer_radius"));
    if (kind == "rectangle")
        return RegionSpec::make_rectangle(require_point(j, "corner_min"),
                                          require_point(j, "corner_max"));
    if (kind == "polygon") return RegionSpec::make_polygon(parse_point_list(j, "vertices"));
    if (kind == "circle_contour")
        return RegionSpec::make_circle_contour(center, require_number(j, "radius"));
    if (kind == "segment_contour")
        return RegionSpec::make_segment_contour(require_point(j, "from"),
                                                require_point(j, "to"));
    if (kind == "polyline_contour")
        return RegionSpec::make_polyline_contour(parse_point_list(j, "vertices"));
    if (kind == "point") return RegionSpec::make_point(require_point(j, "location"));
    if (kind == "tensor_product") {
        if (!j.contains("factors") || !j["factors"].is_array())
            throw std::invalid_argument("tensor_product region needs a 'factors' array");
        std::vector<RegionSpec> factors;
        for (const auto& f : j["factors"]) factors.push_back(region_from_json(f));
        return RegionSpec::make_tensor_product(std::move(factors));
    }
    std::ostringstream msg;
    msg << "unknown region kind '" << kind << "'";
    throw std::invalid_argument(msg.str());
}

void point_to_json(nlohmann::ordered_json& j, const char* key, PhasePoint pt) {
    j[key] = nlohmann::ordered_json::array({pt.q, pt.p});
}

nlohmann::ordered_json region_to_json_obj(const RegionSpec& r) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(r.kind);
    switch (r.kind) {
        case RegionKind::disk:
        case RegionKind::circle_contour:
            point_to_json(j, "center", r.center);
            j["radius"] = r.radius;
            break;
        case RegionKind::annulus:
            point_to_json(j, "center", r.center);
            j["inner_radius"] = r.inner_radius;
            j["outer_radius"] = r.outer_radius;
            break;
        case RegionKind::rectangle:
            point_to_json(j, "corner_min", r.corner_min);
            point_to_json(j, "corner_max", r.corner_max);
            break;
        case RegionKind::polygon:
        case RegionKind::polyline_contour: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& v : r.vertices)
                arr.push_back(nlohmann::ordered_json::array({v.q, v.p}));
            j["vertices"] = arr;
            break;
        }
        case RegionKind::segment_contour:
            point_to_json(j, "from", r.from);
            point_to_json(j, "to", r.to);
            break;
        case RegionKind::point:
            point_to_json(j, "location", r.location);
            break;
        case RegionKind::tensor_product: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& f : r.factors) arr.push_back(region_to_json_obj(f));
            j["factors"] = arr;
            break;
        }
    }
    return j;
}

}  // namespace

std::string to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::disk: return "disk";
        case RegionKind::annulus: return "annulus";
        case RegionKind::rectangle: return "rectangle";
        case RegionKind::polygon: return "polygon";
        case RegionKind::circle_contour: return "circle_contour";
        case RegionKind::segment_contour: return "segment_contour";
        case RegionKind::polyline_contour: return "polyline_contour";
        case RegionKind::point: return "point";
        case RegionKind::tensor_product: return "tensor_product";
    }
    return "unknown";
}

int RegionSpec::dimension() const {
    switch (kind) {
        case RegionKind::disk:
        case RegionKind::annulus:
        case RegionKind::rectangle:
        case RegionKind::polygon: return 2;
        case RegionKind::circle_contour:
        case RegionKind::segment_contour:
        case RegionKind::polyline_contour: return 1;
        case RegionKind::point: return 0;
        case RegionKind::tensor_product: {
            int acc = 0;
            for (const auto& f : factors) acc += f.dimension();
            return acc;
        }
    }
    return -1;
}

void RegionSpec::validate() const {
    auto finite = [](PhasePoint pt) { return std::isfinite(pt.q) && std::isfinite(pt.p); };
    switch (kind) {
        case RegionKind::disk:
        case RegionKind::circle_contour:
            if (!finite(center)) throw std::invalid_argument("center must be finite");
            if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
            break;
        case RegionKind::annulus:
            if (!finite(center)) throw std::invalid_argument("center must be finite");
            if (!(inner_radius > 0.0)) throw std::invalid_argument("inner radius must be > 0");
            if (!(inner_radius < outer_radius))
                throw std::invalid_argument("annulus requires inner radius < outer radius");
            break;
        case RegionKind::rectangle:
            if (!finite(corner_min) || !finite(corner_max))
                throw std::invalid_argument("corners must be finite");
            if (!(corner_min.q < corner_max.q && corner_min.p < corner_max.p))
                throw std::invalid_argument("rectangle corners must satisfy min < max componentwise");
            break;
        case RegionKind::polygon:
            for (const auto& v : vertices)
                if (!finite(v)) throw std::invalid_argument("polygon vertices must be finite");
            validate_polygon(vertices);
            break;
        case RegionKind::segment_contour:
            if (!finite(from) || !finite(to))
                throw std::invalid_argument("segment endpoints must be finite");
            if (dist(from, to) == 0.0)
                throw std::invalid_argument("segment endpoints must be distinct");
            break;
        case RegionKind::polyline_contour:
            if (vertices.size() < 2)
                throw std::invalid_argument("polyline needs at least 2 vertices");
            for (const auto& v : vertices)
                if (!finite(v)) throw std::invalid_argument("polyline vertices must be finite");
            for (size_t i = 0; i + 1 < vertices.size(); ++i)
                if (dist(vertices[i], vertices[i + 1]) == 0.0)
                    throw std::invalid_argument("polyline has a zero-length edge");
            break;
        case RegionKind::point:
            if (!finite(location)) throw std::invalid_argument("point location must be finite");
            break;
        case RegionKind::tensor_product:
            if (factors.size() < 2)
                throw std::invalid_argument("tensor_product needs at least 2 factors");
            for (const auto& f : factors) {
                if (f.kind == RegionKind::tensor_product)
                    throw std::invalid_argument("tensor_product factors must be single-DOF");
                f.validate();
            }
            break;
    }
}

RegionSpec RegionSpec::make_disk(PhasePoint center, double radius) {
    RegionSpec r;
    r.kind = RegionKind::disk;
    r.center = center;
    r.radius = radius;
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_annulus(PhasePoint center, double inner, double outer) {
    RegionSpec r;
    r.kind = RegionKind::annulus;
    r.center = center;
    r.inner_radius = inner;
    r.outer_radius = outer;
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_rectangle(PhasePoint corner_min, PhasePoint corner_max) {
    RegionSpec r;
    r.kind = RegionKind::rectangle;
    r.corner_min = corner_min;
    r.corner_max = corner_max;
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_polygon(std::vector<PhasePoint> vertices) {
    RegionSpec r;
    r.kind = RegionKind::polygon;
    r.vertices = std::move(vertices);
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_circle_contour(PhasePoint center, double radius) {
    RegionSpec r;
    r.kind = RegionKind::circle_contour;
    r.center = center;
    r.radius = radius;
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_segment_contour(PhasePoint from, PhasePoint to) {
    RegionSpec r;
    r.kind = RegionKind::segment_contour;
    r.from = from;
    r.to = to;
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_polyline_contour(std::vector<PhasePoint> vertices) {
    RegionSpec r;
    r.kind = RegionKind::polyline_contour;
    r.vertices = std::move(vertices);
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_point(PhasePoint location) {
    RegionSpec r;
    r.kind = RegionKind::point;
    r.location = location;
    r.validate();
    return r;
}

RegionSpec RegionSpec::make_tensor_product(std::vector<RegionSpec> factors) {
    RegionSpec r;
    r.kind = RegionKind::tensor_product;
    r.factors = std::move(factors);
    r.validate();
    return r;
}

RegionSpec parse_region_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::ostringstream msg;
        msg << "region JSON parse error: " << e.what();
        throw std::invalid_argument(msg.str());
    }
    return region_from_json(j);
}

std::string region_to_json(const RegionSpec& region) { return region_to_json_obj(region).dump(); }

namespace {

void append_radial_ring(QuadratureDecomposition& out, PhasePoint center, double r0, double r1,
                        int resolution) {
    const QuadratureRule radial = gauss_legendre(resolution, r0, r1);
    const int nang = 4 * resolution;  // alias-free for harmonics |m-n| < 4*resolution
    const double dth = 2.0 * M_PI / nang;
    for (int i = 0; i < radial.order; ++i) {
        const double r = radial.nodes[static_cast<size_t>(i)];
        const double w = radial.weights[static_cast<size_t>(i)] * r * dth;
        for (int j = 0; j < nang; ++j) {
            const double th = j * dth;
            out.points.push_back(
                {{center.q + r * std::cos(th), center.p + r * std::sin(th)}, w});
        }
    }
}

void append_segment(QuadratureDecomposition& out, PhasePoint a, PhasePoint b, int resolution) {
    const double len = dist(a, b);
    const QuadratureRule rule = gauss_legendre(resolution, 0.0, 1.0);
    for (int i = 0; i < rule.order; ++i) {
        const double t = rule.nodes[static_cast<size_t>(i)];
        out.points.push_back({{a.q + t * (b.q - a.q), a.p + t * (b.p - a.p)},
                              rule.weights[static_cast<size_t>(i)] * len});
    }
}

}  // namespace

QuadratureDecomposition decompose(const RegionSpec& region, int resolution) {
    region.validate();
    if (region.kind == RegionKind::tensor_product)
        throw std::invalid_argument("decompose: tensor_product decomposes per factor");
    if (resolution < 4) throw std::invalid_argument("decompose: resolution must be >= 4");

    QuadratureDecomposition out;
    switch (region.kind) {
        case RegionKind::disk:
            append_radial_ring(out, region.center, 0.0, region.radius, resolution);
            out.exact_measure = M_PI * sq(region.radius);
            break;
        case RegionKind::annulus:
            append_radial_ring(out, region.center, region.inner_radius, region.outer_radius,
                               resolution);
            out.exact_measure = M_PI * (sq(region.outer_radius) - sq(region.inner_radius));
            break;
        case RegionKind::rectangle: {
            const QuadratureRule rq =
                gauss_legendre(resolution, region.corner_min.q, region.corner_max.q);
            const QuadratureRule rp =
                gauss_legendre(resolution, region.corner_min.p, region.corner_max.p);
            for (int i = 0; i < rq.order; ++i)
                for (int j = 0; j < rp.order; ++j)
                    out.points.push_back({{rq.nodes[static_cast<size_t>(i)],
                                           rp.nodes[static_cast<size_t>(j)]},
                                          rq.weights[static_cast<size_t>(i)] *
                                              rp.weights[static_cast<size_t>(j)]});
            out.exact_measure = (region.corner_max.q - region.corner_min.q) *
                                (region.corner_max.p - region.corner_min.p);
            break;
        }
        case RegionKind::polygon: {
            // centroid fan: triangle (C, A, B) mapped from the unit square by
            // P(u,v) = C + u((A-C) + v(B-A)), |J| = 2 area u
            PhasePoint cen{0.0, 0.0};
            for (const auto& v : region.vertices) {
                cen.q += v.q;
                cen.p += v.p;
            }
            cen.q /= static_cast<double>(region.vertices.size());
            cen.p /= static_cast<double>(region.vertices.size());
            const QuadratureRule unit = gauss_legendre(resolution, 0.0, 1.0);
            double total_area = 0.0;
            const size_t n = region.vertices.size();
            for (size_t e = 0; e < n; ++e) {
                const PhasePoint A = region.vertices[e];
                const PhasePoint B = region.vertices[(e + 1) % n];
                const double area2 = std::fabs(cross(cen, A, B));
                total_area += 0.5 * area2;
                for (int i = 0; i < unit.order; ++i) {
                    const double u = unit.nodes[static_cast<size_t>(i)];
                    const double wu = unit.weights[static_cast<size_t>(i)];
                    for (int j = 0; j < unit.order; ++j) {
                        const double v = unit.nodes[static_cast<size_t>(j)];
                        const double wv = unit.weights[static_cast<size_t>(j)];
                        const double qq = cen.q + u * ((A.q - cen.q) + v * (B.q - A.q));
                        const double pp = cen.p + u * ((A.p - cen.p) + v * (B.p - A.p));
                        out.points.push_back({{qq, pp}, wu * wv * area2 * u});
                    }
                }
            }
            out.exact_measure = total_area;
            break;
        }
        case RegionKind::circle_contour: {
            const int nang = 4 * resolution;
            const double w = 2.0 * M_PI * region.radius / nang;
            for (int j = 0; j < nang; ++j) {
                const double th = j * 2.0 * M_PI / nang;
                out.points.push_back({{region.center.q + region.radius * std::cos(th),
                                       region.center.p + region.radius * std::sin(th)},
                                      w});
            }
            out.exact_measure = 2.0 * M_PI * region.radius;
            break;
        }
        case RegionKind::segment_contour:
            append_segment(out, region.from, region.to, resolution);
            out.exact_measure = dist(region.from, region.to);
            break;
        case RegionKind::polyline_contour: {
            double len = 0.0;
            for (size_t i = 0; i + 1 < region.vertices.size(); ++i) {
                append_segment(out, region.vertices[i], region.vertices[i + 1], resolution);
                len += dist(region.vertices[i], region.vertices[i + 1]);
            }
            out.exact_measure = len;
            break;
        }
        case RegionKind::point:
            out.points.push_back({region.location, 1.0});
            out.exact_measure = 1.0;
            break;
        case RegionKind::tensor_product: break;  // rejected above
    }
    return out;
}

bool contains(const RegionSpec& region, PhasePoint pt) {
    if (region.dimension() != 2 || region.kind == RegionKind::tensor_product)
        throw std::invalid_argument("contains: defined for 2D regions only");
    switch (region.kind) {
        case RegionKind::disk:
            return sq(pt.q - region.center.q) + sq(pt.p - region.center.p) <= sq(region.radius);
        case RegionKind::annulus: {
            const double d2 = sq(pt.q - region.center.q) + sq(pt.p - region.center.p);
            return sq(region.inner_radius) <= d2 && d2 <= sq(region.outer_radius);
        }
        case RegionKind::rectangle:
            return region.corner_min.q <= pt.q && pt.q <= region.corner_max.q &&
                   region.corner_min.p <= pt.p && pt.p <= region.corner_max.p;
        case RegionKind::polygon: {
            const auto& v = region.vertices;
            const size_t n = v.size();
            // boundary counts as inside
            for (size_t i = 0; i < n; ++i) {
                const PhasePoint a = v[i], b = v[(i + 1) % n];
                if (cross(a, b, pt) == 0.0 && std::min(a.q, b.q) <= pt.q &&
                    pt.q <= std::max(a.q, b.q) && std::min(a.p, b.p) <= pt.p &&
                    pt.p <= std::max(a.p, b.p))
                    return true;
            }
            // crossing number with half-open edges
            bool inside = false;
            for (size_t i = 0; i < n; ++i) {
                const PhasePoint a = v[i], b = v[(i + 1) % n];
                if ((a.p > pt.p) != (b.p > pt.p)) {
                    const double xq = a.q + (pt.p - a.p) / (b.p - a.p) * (b.q - a.q);
                    if (pt.q < xq) inside = !inside;
                }
            }
            return inside;
        }
        default: return false;
    }
}

std::pair<PhasePoint, PhasePoint> bounding_box(const RegionSpec& region) {
    switch (region.kind) {
        case RegionKind::disk:
            return {{region.center.q - region.radius, region.center.p - region.radius},
                    {region.center.q + region.radius, region.center.p + region.radius}};
        case RegionKind::annulus:
            return {{region.center.q - region.outer_radius, region.center.p - region.outer_radius},
                    {region.center.q + region.outer_radius, region.center.p + region.outer_radius}};
        case RegionKind::rectangle: return {region.corner_min, region.corner_max};
        case RegionKind::polygon: {
            PhasePoint lo{region.vertices[0]}, hi{region.vertices[0]};
            for (const auto& v : region.vertices) {
                lo.q = std::min(lo.q, v.q);
                lo.p = std::min(lo.p, v.p);
                hi.q = std::max(hi.q, v.q);
                hi.p = std::max(hi.p, v.p);
            }
            return {lo, hi};
        }
        default: throw std::invalid_argument("bounding_box: defined for 2D regions only");
    }
}

double perimeter(const RegionSpec& region) {
    switch (region.kind) {
        case RegionKind::disk: return 2.0 * M_PI * region.radius;
        case RegionKind::annulus: return 2.0 * M_PI * (region.inner_radius + region.outer_radius);
        case RegionKind::rectangle:
            return 2.0 * ((region.corner_max.q - region.corner_min.q) +
                          (region.corner_max.p - region.corner_min.p));
        case RegionKind::polygon: {
            double acc = 0.0;
            const size_t n = region.vertices.size();
            for (size_t i = 0; i < n; ++i) acc += dist(region.vertices[i], region.vertices[(i + 1) % n]);
            return acc;
        }
        default: throw std::invalid_argument("perimeter: defined for 2D regions only");
    }
}

}  // namespace wigner
