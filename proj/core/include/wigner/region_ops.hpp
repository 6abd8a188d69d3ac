#ifndef WIGNER_REGION_OPS_HPP
#define WIGNER_REGION_OPS_HPP

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "wigner/fock_wigner.hpp"
#include "wigner/regions.hpp"

namespace wigner {

// Truncated-basis operator for a phase-space region: the quadrature sum of
// phase-point kernels over the region, symmetrized to exact Hermiticity.
// assembly_residual records the pre-symmetrization Hermiticity defect
// (max |M - M^dagger| entrywise); assembly fails when it exceeds 1e-6.
struct RegionOperator {
    FockMatrix matrix;
    RegionSpec region;
    int dim = 0;
    int resolution = 0;
    double assembly_residual = 0.0;
};

// Assembles the region operator at the given truncation dimension.
// resolution controls the quadrature density of the region decomposition;
// tensor_product regions are assembled as Kronecker products of their factors
// (product dimension capped at 4096).
RegionOperator assemble_region_operator(const RegionSpec& region, int dim, int resolution = 64);

// Phase-point kernel as an operator; eigenvalues are +-1/pi in the
// untruncated limit.
RegionOperator point_operator(PhasePoint location, int dim);

// Weighted variant: the operator of integral f(q,p) K(q,p) dq dp over the
// support region. With f == 1 this reduces to assemble_region_operator.
RegionOperator quantize_symbol(const std::function<double(PhasePoint)>& f,
                               const RegionSpec& support, int dim, int resolution = 64);

// Weyl symbol of a truncated operator at one phase-space point:
// 2 pi tr(A K(q,p)). Real up to truncation noise for Hermitian A; the full
// complex value is returned so that noise stays visible to callers.
std::complex<double> operator_symbol(const FockMatrix& op, PhasePoint pt);

// Kronecker product of factor operators, with the region recorded as the
// matching tensor_product RegionSpec. Fails when the product dimension
// exceeds 4096.
RegionOperator tensor_product_operator(const std::vector<RegionOperator>& factors);

}  // namespace wigner

#endif
