#include "wigner/fock_wigner.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wigner/specfun.hpp"

namespace wigner {

double FockMatrix::hermiticity_defect() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1)
        throw std::invalid_argument("density matrix must be square and non-empty");
    if (!rho.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");

    const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-12) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian: defect " << herm_defect << " exceeds 1e-12";
        throw std::invalid_argument(msg.str());
    }
    const double trace_defect = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
    if (trace_defect > 1e-12) {
        std::ostringstream msg;
        msg << "density matrix trace differs from 1 by " << trace_defect << " (tolerance 1e-12)";
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-10) {
        std::ostringstream msg;
        msg << "density matrix is not positive semidefinite: smallest eigenvalue " << min_eig
            << " below -1e-10";
        throw std::invalid_argument(msg.str());
    }
    DensityMatrix out;
    out.matrix.entries = rho;
    out.matrix.hermitian = true;
    return out;
}

namespace {

// Scaled associated-Laguerre iterate: v_j = sqrt(j! k! / (j+k)!) L_j^k(x),
// v_0 = 1. Keeps magnitudes O(1) for all Fock indices in range.
inline double scaled_laguerre_next(int j, int k, double x, double v, double vprev) {
    return (2.0 * j + 1.0 + k - x) * v / std::sqrt((j + 1.0) * (j + 1.0 + k)) -
           std::sqrt(j * (j + k) / ((j + 1.0) * (j + 1.0 + k))) * vprev;
}

}  // namespace

std::complex<double> kernel_element(int m, int n, PhasePoint pt) {
    if (m < 0 || n < 0) throw std::invalid_argument("kernel_element: indices must be >= 0");
    const bool swapped = m < n;
    if (swapped) std::swap(m, n);

    const double r2 = pt.q * pt.q + pt.p * pt.p;
    const int k = m - n;
    const std::complex<double> g(std::sqrt(2.0) * pt.q, std::sqrt(2.0) * pt.p);
    const double ag = std::abs(g);

    std::complex<double> prefactor;
    if (k == 0) {
        prefactor = std::exp(-r2);
    } else if (ag == 0.0) {
        return 0.0;  // off-diagonal kernel vanishes at the origin
    } else {
        const double logmag = k * std::log(ag) - r2 - 0.5 * std::lgamma(k + 1.0);
        prefactor = std::exp(logmag) * std::pow(g / ag, k);
    }

    const double x = 2.0 * r2;
    double vprev = 0.0, v = 1.0;
    for (int j = 0; j < n; ++j) {
        double next = scaled_laguerre_next(j, k, x, v, vprev);
        vprev = v;
        v = next;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    std::complex<double> val = sign / M_PI * prefactor * v;
    return swapped ? std::conj(val) : val;
}

std::complex<double> kernel_element_integral(int m, int n, PhasePoint pt, int order) {
    if (m < 0 || n < 0) throw std::invalid_argument("kernel_element_integral: indices must be >= 0");
    const int N = std::max(m, n) + 1;
    const double Y = std::sqrt(2.0 * N) + 6.0;
    if (order <= 0) {
        // oscillation scale: psi_N varies like sqrt(2N), e^{2ipy} like 2|p|
        order = 64 + static_cast<int>(2.0 * Y * (std::sqrt(2.0 * N) + 2.0 * std::fabs(pt.p) + 2.0));
    }
    const QuadratureRule rule = gauss_legendre(order, -Y, Y);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        const double y = rule.nodes[static_cast<size_t>(i)];
        const double f = hermite_function(m, pt.q + y) * hermite_function(n, pt.q - y);
        acc += rule.weights[static_cast<size_t>(i)] * f *
               std::exp(std::complex<double>(0.0, 2.0 * pt.p * y));
    }
    return acc / M_PI;
}

Eigen::MatrixXcd kernel_matrix(int dim, PhasePoint pt) {
    if (dim < 1) throw std::invalid_argument("kernel_matrix: dim must be >= 1");
    Eigen::MatrixXcd K(dim, dim);
    K.setZero();

    const double r2 = pt.q * pt.q + pt.p * pt.p;
    const double x = 2.0 * r2;
    const std::complex<double> g(std::sqrt(2.0) * pt.q, std::sqrt(2.0) * pt.p);
    const double ag = std::abs(g);

    for (int k = 0; k < dim; ++k) {
        std::complex<double> prefactor;
        if (k == 0) {
            prefactor = std::exp(-r2);
        } else if (ag == 0.0) {
            break;  // all off-diagonals vanish at the origin
        } else {
            const double logmag = k * std::log(ag) - r2 - 0.5 * std::lgamma(k + 1.0);
            prefactor = std::exp(logmag) * std::pow(g / ag, k);
        }
        double vprev = 0.0, v = 1.0;
        for (int j = 0; j + k < dim; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            const std::complex<double> val = sign / M_PI * prefactor * v;
            K(j + k, j) = val;
            K(j, j + k) = std::conj(val);
            double next = scaled_laguerre_next(j, k, x, v, vprev);
            vprev = v;
            v = next;
        }
    }
    return K;
}

double wigner_function(const DensityMatrix& rho, PhasePoint pt) {
    const Eigen::MatrixXcd K = kernel_matrix(rho.dim(), pt);
    // sum_{m,n} rho_nm K_mn = tr(rho K)
    const std::complex<double> w = (rho.matrix.entries.transpose().cwiseProduct(K)).sum();
    if (std::fabs(w.imag()) > 1e-8) {
        std::ostringstream msg;
        msg << "wigner_function: imaginary residue " << w.imag()
            << " exceeds 1e-8 (non-Hermitian input?)";
        throw std::runtime_error(msg.str());
    }
    return w.real();
}

CoherentState coherent_state(std::complex<double> alpha, int dim) {
    if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
    Eigen::VectorXcd amps(dim);
    std::complex<double> c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        amps(n) = c;
        c *= alpha / std::sqrt(n + 1.0);
    }
    CoherentState out;
    out.pre_truncation_norm = amps.squaredNorm();
    out.truncation_warning = out.pre_truncation_norm < 0.999;
    amps /= std::sqrt(out.pre_truncation_norm);
    out.rho.matrix.entries = amps * amps.adjoint();
    out.rho.matrix.hermitian = true;
    return out;
}

DensityMatrix number_state(int n, int dim) {
    if (n < 0 || n >= dim) throw std::invalid_argument("number_state: requires 0 <= n < dim");
    DensityMatrix out;
    out.matrix.entries = Eigen::MatrixXcd::Zero(dim, dim);
    out.matrix.entries(n, n) = 1.0;
    out.matrix.hermitian = true;
    return out;
}

}  // namespace wigner
