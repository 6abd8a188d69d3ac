#ifndef WIGNER_SPECTRA_HPP
#define WIGNER_SPECTRA_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wigner/region_ops.hpp"

namespace wigner {

// Full spectrum of a Hermitian truncated operator, eigenvalues ascending.
// Eigenvector columns are normalized with their largest-magnitude component
// made real and positive so repeated runs agree bitwise.
struct SpectrumReport {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;  // empty when with_vectors == false
    int dim = 0;
    std::string source;
};

SpectrumReport eigendecompose(const FockMatrix& op, bool with_vectors = true);

struct LadderStep {
    int dim = 0;
    double lower = 0.0;
    double upper = 0.0;
};

// Best-possible window for the region mass over all physical states, at the
// operator's truncation. lower/upper come with the extremal states when the
// endpoints are attained; contour endpoints served analytically are limits
// and carry attainable == false.
struct BoundsResult {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_attainable = false;
    bool upper_attainable = false;
    std::string lower_descriptor;
    std::string upper_descriptor;
    Eigen::VectorXcd lower_state;  // empty when the endpoint is not attained
    Eigen::VectorXcd upper_state;
    double convergence = 0.0;  // extreme-eigenvalue change on the last ladder step
    std::vector<LadderStep> ladder;
    std::string note;
};

// Computes the window via the principal-submatrix ladder of the assembled
// operator: by eigenvalue interlacing the upper endpoint is nondecreasing and
// the lower nonincreasing along the ladder, so every rung already brackets
// the final window. Fails when the last-step movement exceeds tolerance.
// Straight-line contour regions are served from the closed-form eigenvalue
// family instead (endpoints are k -> 0 limits, not attained).
// Ladder entries must be ascending and end at the operator dimension; an
// empty ladder defaults to {dim/4, dim/2, dim}.
BoundsResult bounds(const RegionOperator& op, std::vector<int> ladder = {},
                    double tolerance = 1e-4);

// Centered-disk eigenvalue: lambda_n(a) = (-1)^n integral_0^{a^2}
// L_n(2u) e^{-u} du, evaluated by adaptive Gauss-Legendre bisection to
// absolute accuracy 1e-12.
double disk_eigenvalue(int n, double a);

// Centered-circle contour eigenvalue: mu_n(a) = 2a (-1)^n L_n(2a^2) e^{-a^2}.
double circle_contour_eigenvalue(int n, double a);

// Segment-contour eigenvalue family for a segment of length L, indexed by
// wavenumber k >= 0 and branch sign: +-sin(kL)/(k pi), with the k == 0 limit
// +-L/pi (the non-attained extremes of the family).
enum class SegmentBranch { plus, minus };
double segment_eigenvalue(double length, double k, SegmentBranch branch);

// Minimum of the plus branch over k > 0 and its minimizing wavenumber.
struct SegmentMinimum {
    double value = 0.0;
    double k = 0.0;
};
SegmentMinimum segment_branch_minimum(double length);

// Index n minimizing lambda_n(a) over 0 <= n <= n_max (first index on ties).
int disk_minimizing_index(double a, int n_max);

// Window for a product region from its factor windows: extremes of the
// endpoint products over all 2^k sign choices. An endpoint is attainable only
// when every factor endpoint in its product is; ties prefer attainable
// combinations, and states are Kronecker products when all factors carry one.
BoundsResult product_bounds(const std::vector<BoundsResult>& factors);

}  // namespace wigner

#endif
