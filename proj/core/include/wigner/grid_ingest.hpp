#ifndef WIGNER_GRID_INGEST_HPP
#define WIGNER_GRID_INGEST_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wigner/regions.hpp"

namespace wigner {

// Sampled Wigner function on a uniform rectangular grid. values(i, j) is the
// sample at (q_axis[i], p_axis[j]). noise_level widens the physicality bound
// |W| <= 1/pi to |W| <= 1/pi + noise_level.
struct WignerGrid {
    std::vector<double> q_axis;
    std::vector<double> p_axis;
    Eigen::MatrixXd values;
    double noise_level = 0.0;

    double spacing_q() const;
    double spacing_p() const;
};

// Loads a grid from a CSV file with columns q,p,w (optional header line),
// row-major with q outermost. Requires strictly increasing, uniformly spaced
// axes (1e-9 relative), a complete rectangle of samples, finite values, and
// physicality within the noise allowance; violations are reported with the
// offending location. A sidecar file at path + ".json" may supply
// {"noise_level": x}.
WignerGrid load_grid(const std::string& path);

struct GridMass {
    double mass = 0.0;
    double error = 0.0;
};

// Midpoint-rule mass of a 2D region: each node owns its cell, cells whose
// center lies in the region contribute w * hq * hp. The error estimate is
// perimeter x cell diagonal x max |W| over boundary cells (cells whose
// membership differs from a 4-neighbor), falling back to the global max |W|
// when the region is too small to straddle any cell boundary. Fails when the
// region's bounding box is not covered by the grid's cell extent.
GridMass grid_mass(const WignerGrid& grid, const RegionSpec& region);

enum class Verdict { consistent, inconclusive, violation };

std::string to_string(Verdict verdict);

// Compares a measured mass (with its quadrature error) against a bounds
// window: violation when the mass lies outside the window widened by the
// error on both sides, consistent when it lies inside the window itself,
// inconclusive in the surrounding error band.
Verdict consistency_verdict(double mass, double error, double lower, double upper);

}  // namespace wigner

#endif
