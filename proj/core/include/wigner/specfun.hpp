#ifndef WIGNER_SPECFUN_HPP
#define WIGNER_SPECFUN_HPP

#include <vector>

namespace wigner {

// Gauss-type quadrature rule on [a, b]. Integrates polynomials up to degree
// 2*order - 1 exactly; all weights positive.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
    double a = 0.0;
    double b = 0.0;

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (int i = 0; i < order; ++i) acc += weights[static_cast<size_t>(i)] * f(nodes[static_cast<size_t>(i)]);
        return acc;
    }
};

// Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence
//   (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.
// alpha = 0 gives the plain Laguerre polynomials. Total function.
double laguerre(int n, double alpha, double x);

// L^2-normalized harmonic-oscillator eigenfunction
//   psi_n(x) = pi^{-1/4} / sqrt(2^n n!) H_n(x) e^{-x^2/2},
// computed by the recurrence on the normalized functions
//   psi_{n+1} = x sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1}
// with dynamic rescaling, so no overflow occurs for n <= 512.
double hermite_function(int n, double x);

// All psi_n(x) for n = 0..nmax in one recurrence pass.
std::vector<double> hermite_function_all(int nmax, double x);

// Gauss-Legendre rule with `order` nodes mapped to [a, b]. Nodes by Newton
// iteration on the Legendre recurrence, tolerance 1e-14. Rejects a >= b.
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace wigner

#endif
