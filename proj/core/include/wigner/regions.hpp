#ifndef WIGNER_REGIONS_HPP
#define WIGNER_REGIONS_HPP

#include <string>
#include <utility>
#include <vector>

#include "wigner/fock_wigner.hpp"

namespace wigner {

enum class RegionKind {
    disk,
    annulus,
    rectangle,
    polygon,
    circle_contour,
    segment_contour,
    polyline_contour,
    point,
    tensor_product,
};

std::string to_string(RegionKind kind);

// Geometric description of a 2D region, 1D contour, 0D point, or a tensor
// composite of single-DOF factors in multi-DOF phase space. Only the fields
// for the active kind are meaningful.
struct RegionSpec {
    RegionKind kind = RegionKind::disk;

    PhasePoint center{};                // disk, annulus, circle_contour
    double radius = 0.0;                // disk, circle_contour
    double inner_radius = 0.0;          // annulus
    double outer_radius = 0.0;          // annulus
    PhasePoint corner_min{};            // rectangle
    PhasePoint corner_max{};            // rectangle
    std::vector<PhasePoint> vertices;   // polygon, polyline_contour
    PhasePoint from{};                  // segment_contour
    PhasePoint to{};                    // segment_contour
    PhasePoint location{};              // point
    std::vector<RegionSpec> factors;    // tensor_product

    // 2 for areas, 1 for contours, 0 for points; tensor products sum factors.
    int dimension() const;

    // Throws std::invalid_argument naming the violated constraint: positive
    // radii with inner < outer, simple polygons (segment-pair test), distinct
    // segment endpoints, single-DOF tensor factors.
    void validate() const;

    static RegionSpec make_disk(PhasePoint center, double radius);
    static RegionSpec make_annulus(PhasePoint center, double inner, double outer);
    static RegionSpec make_rectangle(PhasePoint corner_min, PhasePoint corner_max);
    static RegionSpec make_polygon(std::vector<PhasePoint> vertices);
    static RegionSpec make_circle_contour(PhasePoint center, double radius);
    static RegionSpec make_segment_contour(PhasePoint from, PhasePoint to);
    static RegionSpec make_polyline_contour(std::vector<PhasePoint> vertices);
    static RegionSpec make_point(PhasePoint location);
    static RegionSpec make_tensor_product(std::vector<RegionSpec> factors);
};

// Tagged-JSON region format shared with the CLI, e.g.
//   {"kind":"disk","center":[0,0],"radius":1.5}
//   {"kind":"segment_contour","from":[0,-1.5],"to":[0,1.5]}
//   {"kind":"tensor_product","factors":[...]}
RegionSpec parse_region_json(const std::string& text);
std::string region_to_json(const RegionSpec& region);

// Quadrature realization of the region's measure: sum of weights equals the
// exact area or length within 1e-10.
struct QuadratureDecomposition {
    std::vector<std::pair<PhasePoint, double>> points;
    double exact_measure = 0.0;
};

// disk/annulus: Gauss-Legendre radial times trapezoid (uniform) angular;
// rectangle: Gauss-Legendre product; polygon: centroid-fan triangulation with
// per-triangle mapped square rules; contours: Gauss-Legendre along arclength
// (uniform nodes on full circles); point: one unit-weight node.
// Rejects tensor_product (decompose per factor) and resolution < 4.
QuadratureDecomposition decompose(const RegionSpec& region, int resolution);

// Exact membership for 2D regions, boundary counted inside.
// Rejects contours, points, and tensor products.
bool contains(const RegionSpec& region, PhasePoint pt);

// Axis-aligned bounding box (2D regions only): {min, max} corners.
std::pair<PhasePoint, PhasePoint> bounding_box(const RegionSpec& region);

// Boundary length of a 2D region (used for grid-mass error estimates).
double perimeter(const RegionSpec& region);

}  // namespace wigner

#endif
