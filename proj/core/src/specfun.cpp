#include "wigner/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace wigner {

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int j = 1; j < n; ++j) {
        double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// Shared recurrence core: v holds psi_n scaled by 2^(-shift) to keep the
// iterate in range even where psi_0 = pi^{-1/4} e^{-x^2/2} underflows.
struct HermiteIter {
    double vprev = 0.0;
    double v = 1.0;     // psi_0 up to the scale factor
    long shift = 0;     // psi_n = v * 2^shift + base scale
    double log_base;    // ln(psi_0)

    explicit HermiteIter(double x) : log_base(-0.5 * x * x - 0.25 * std::log(M_PI)) {}

    void step(int n, double x) {
        double next = x * std::sqrt(2.0 / (n + 1.0)) * v - std::sqrt(n / (n + 1.0)) * vprev;
        vprev = v;
        v = next;
        double m = std::fabs(v) > std::fabs(vprev) ? std::fabs(v) : std::fabs(vprev);
        if (m > 0x1p+512) {
            v *= 0x1p-512;
            vprev *= 0x1p-512;
            shift += 512;
        } else if (m > 0.0 && m < 0x1p-512) {
            v *= 0x1p+512;
            vprev *= 0x1p+512;
            shift -= 512;
        }
    }

    double value() const {
        // exp(log_base + shift*ln2) can underflow to 0; that is the honest
        // double-precision value of psi_n there.
        return v * std::exp(log_base + static_cast<double>(shift) * M_LN2);
    }
};

}  // namespace

double hermite_function(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_function: n must be >= 0");
    HermiteIter it(x);
    for (int j = 0; j < n; ++j) it.step(j, x);
    return it.value();
}

std::vector<double> hermite_function_all(int nmax, double x) {
    if (nmax < 0) throw std::invalid_argument("hermite_function_all: nmax must be >= 0");
    std::vector<double> out(static_cast<size_t>(nmax) + 1);
    HermiteIter it(x);
    out[0] = it.value();
    for (int j = 0; j < nmax; ++j) {
        it.step(j, x);
        out[static_cast<size_t>(j) + 1] = it.value();
    }
    return out;
}

QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: requires a < b");

    QuadratureRule rule;
    rule.order = order;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));

    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_order.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 1; j < order; ++j) {
                double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-14) {
                // one polishing pass after convergence
                p0 = 1.0;
                p1 = x;
                for (int j = 1; j < order; ++j) {
                    double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                dp = order * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const double mid = 0.5 * (a + b);
        const double hw = 0.5 * (b - a);
        // exploit root symmetry: x is in (0, 1]; mirror to fill both ends
        rule.nodes[static_cast<size_t>(i)] = mid - hw * x;
        rule.nodes[static_cast<size_t>(order - 1 - i)] = mid + hw * x;
        rule.weights[static_cast<size_t>(i)] = hw * w;
        rule.weights[static_cast<size_t>(order - 1 - i)] = hw * w;
    }
    if (order % 2 == 1) rule.nodes[static_cast<size_t>(order / 2)] = 0.5 * (a + b);
    return rule;
}

}  // namespace wigner
