#include "wigner/region_ops.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wigner {

namespace {

constexpr int kBlockSize = 64;
constexpr double kResidualLimit = 1e-6;

// Sums w_i f(pt_i) K(pt_i) with fixed-size blocks and a pairwise tree
// reduction, so the floating-point result is independent of any later
// re-chunking of the same decomposition.
Eigen::MatrixXcd accumulate_kernels(const QuadratureDecomposition& decomp, int dim,
                                    const std::function<double(PhasePoint)>* f) {
    const size_t npts = decomp.points.size();
    std::vector<Eigen::MatrixXcd> partials;
    partials.reserve(npts / kBlockSize + 1);
    for (size_t start = 0; start < npts; start += kBlockSize) {
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
        const size_t stop = std::min(npts, start + kBlockSize);
        for (size_t i = start; i < stop; ++i) {
            const auto& [pt, w] = decomp.points[i];
            const double scale = f ? w * (*f)(pt) : w;
            block.noalias() += scale * kernel_matrix(dim, pt);
        }
        partials.push_back(std::move(block));
    }
    if (partials.empty()) return Eigen::MatrixXcd::Zero(dim, dim);
    while (partials.size() > 1) {
        std::vector<Eigen::MatrixXcd> next;
        next.reserve(partials.size() / 2 + 1);
        for (size_t i = 0; i + 1 < partials.size(); i += 2)
            next.push_back(partials[i] + partials[i + 1]);
        if (partials.size() % 2 == 1) next.push_back(std::move(partials.back()));
        partials = std::move(next);
    }
    return partials[0];
}

RegionOperator finish_assembly(Eigen::MatrixXcd raw, RegionSpec region, int dim, int resolution) {
    const double residual = (raw - raw.adjoint().eval()).cwiseAbs().maxCoeff();
    if (!(residual <= kResidualLimit)) {
        std::ostringstream msg;
        msg << "region operator assembly failed: Hermiticity residual " << residual
            << " exceeds " << kResidualLimit;
        throw std::runtime_error(msg.str());
    }
    RegionOperator op;
    op.matrix.entries = 0.5 * (raw + raw.adjoint().eval());
    op.matrix.hermitian = true;
    op.region = std::move(region);
    op.dim = dim;
    op.resolution = resolution;
    op.assembly_residual = residual;
    return op;
}

}  // namespace

RegionOperator assemble_region_operator(const RegionSpec& region, int dim, int resolution) {
    if (dim < 1) throw std::invalid_argument("assemble_region_operator: dim must be >= 1");
    region.validate();
    if (region.kind == RegionKind::tensor_product) {
        std::vector<RegionOperator> factor_ops;
        factor_ops.reserve(region.factors.size());
        for (const auto& f : region.factors)
            factor_ops.push_back(assemble_region_operator(f, dim, resolution));
        return tensor_product_operator(factor_ops);
    }
    if (region.kind == RegionKind::point) return point_operator(region.location, dim);
    const QuadratureDecomposition decomp = decompose(region, resolution);
    return finish_assembly(accumulate_kernels(decomp, dim, nullptr), region, dim, resolution);
}

RegionOperator point_operator(PhasePoint location, int dim) {
    if (dim < 1) throw std::invalid_argument("point_operator: dim must be >= 1");
    return finish_assembly(kernel_matrix(dim, location), RegionSpec::make_point(location), dim, 0);
}

RegionOperator quantize_symbol(const std::function<double(PhasePoint)>& f,
                               const RegionSpec& support, int dim, int resolution) {
    if (!f) throw std::invalid_argument("quantize_symbol: symbol function is empty");
    if (dim < 1) throw std::invalid_argument("quantize_symbol: dim must be >= 1");
    support.validate();
    if (support.kind == RegionKind::tensor_product || support.kind == RegionKind::point)
        throw std::invalid_argument("quantize_symbol: support must be a quadrature region");
    const QuadratureDecomposition decomp = decompose(support, resolution);
    return finish_assembly(accumulate_kernels(decomp, dim, &f), support, dim, resolution);
}

std::complex<double> operator_symbol(const FockMatrix& op, PhasePoint pt) {
    const int dim = op.dim();
    const Eigen::MatrixXcd K = kernel_matrix(dim, pt);
    // tr(A K) = sum_{m,n} A_{mn} K_{nm}
    return 2.0 * M_PI * (op.entries.transpose().cwiseProduct(K)).sum();
}

RegionOperator tensor_product_operator(const std::vector<RegionOperator>& factors) {
    if (factors.size() < 2)
        throw std::invalid_argument("tensor_product_operator: needs at least 2 factors");
    long long product_dim = 1;
    for (const auto& f : factors) {
        product_dim *= f.dim;
        if (product_dim > 4096)
            throw std::invalid_argument(
                "tensor_product_operator: product dimension exceeds 4096");
    }
    Eigen::MatrixXcd acc = factors[0].matrix.entries;
    for (size_t k = 1; k < factors.size(); ++k) {
        const Eigen::MatrixXcd& b = factors[k].matrix.entries;
        Eigen::MatrixXcd next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (Eigen::Index j = 0; j < acc.cols(); ++j)
                next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
        acc = std::move(next);
    }
    RegionOperator op;
    op.matrix.entries = std::move(acc);
    op.matrix.hermitian = true;
    std::vector<RegionSpec> regions;
    regions.reserve(factors.size());
    int resolution = 0;
    double residual = 0.0;
    for (const auto& f : factors) {
        regions.push_back(f.region);
        resolution = std::max(resolution, f.resolution);
        residual = std::max(residual, f.assembly_residual);
    }
    op.region = RegionSpec::make_tensor_product(std::move(regions));
    op.dim = static_cast<int>(product_dim);
    op.resolution = resolution;
    op.assembly_residual = residual;
    return op;
}

}  // namespace wigner
