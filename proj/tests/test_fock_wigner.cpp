#include <doctest.h>

#include <cmath>
#include <complex>

#include "wigner/fock_wigner.hpp"
#include "wigner/regions.hpp"

using namespace wigner;
using std::complex;

TEST_SUITE("fock_wigner") {

TEST_CASE("kernel closed form matches the defining-integral oracle") {
    const PhasePoint pts[] = {{0.0, 0.0}, {0.3, -0.7}, {1.2, 0.5}, {-2.0, 1.4}};
    const int pairs[][2] = {{0, 0}, {1, 0}, {3, 1}, {7, 2}, {10, 10}, {12, 5}};
    for (const auto& pt : pts) {
        for (const auto& mn : pairs) {
            const complex<double> closed = kernel_element(mn[0], mn[1], pt);
            const complex<double> oracle = kernel_element_integral(mn[0], mn[1], pt);
            CHECK(std::abs(closed - oracle) <= 1e-10);
        }
    }
}

TEST_CASE("kernel is Hermitian in its indices") {
    const PhasePoint pt{0.9, -1.1};
    for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 6; ++n)
            CHECK(std::abs(kernel_element(m, n, pt) - std::conj(kernel_element(n, m, pt))) <=
                  1e-15);
}

TEST_CASE("kernel matrix agrees with elementwise evaluation") {
    const PhasePoint pt{0.4, 0.8};
    const Eigen::MatrixXcd K = kernel_matrix(12, pt);
    for (int m = 0; m < 12; ++m)
        for (int n = 0; n < 12; ++n)
            CHECK(std::abs(K(m, n) - kernel_element(m, n, pt)) <= 1e-13);
    CHECK((K - K.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("known Wigner values: vacuum, one-quantum state, coherent peak") {
    const DensityMatrix vac = number_state(0, 8);
    CHECK(wigner_function(vac, {0.0, 0.0}) == doctest::Approx(M_1_PI).epsilon(1e-14));
    // W_0(q,p) = e^{-q^2-p^2}/pi
    CHECK(wigner_function(vac, {1.0, -0.5}) ==
          doctest::Approx(std::exp(-1.25) * M_1_PI).epsilon(1e-13));

    const DensityMatrix one = number_state(1, 8);
    CHECK(wigner_function(one, {0.0, 0.0}) == doctest::Approx(-M_1_PI).epsilon(1e-14));

    // coherent |alpha=1> peaks at (sqrt(2), 0) with value 1/pi
    const CoherentState coh = coherent_state({1.0, 0.0}, 32);
    CHECK_FALSE(coh.truncation_warning);
    CHECK(wigner_function(coh.rho, {std::sqrt(2.0), 0.0}) ==
          doctest::Approx(M_1_PI).epsilon(1e-12));
}

TEST_CASE("Wigner function integrates to 1 over a large disk") {
    const CoherentState coh = coherent_state({1.0, 0.0}, 32);
    const QuadratureDecomposition decomp =
        decompose(RegionSpec::make_disk({0.0, 0.0}, 6.0), 96);
    double mass = 0.0;
    for (const auto& [pt, w] : decomp.points) mass += w * wigner_function(coh.rho, pt);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("density matrix construction validates and reports defects") {
    SUBCASE("accepts a valid mixture") {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
        rho(0, 0) = 0.7;
        rho(1, 1) = 0.3;
        rho(0, 1) = rho(1, 0) = 0.2;  // still PSD: eigs 0.2, 0.8
        const DensityMatrix dm = DensityMatrix::from_matrix(rho);
        CHECK(dm.dim() == 4);
        CHECK(dm.matrix.hermitian);
    }
    SUBCASE("rejects non-Hermitian input") {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
        rho(0, 1) = {0.0, 0.5};
        CHECK_THROWS_WITH_AS(DensityMatrix::from_matrix(rho),
                             doctest::Contains("not Hermitian"), std::invalid_argument);
    }
    SUBCASE("rejects wrong trace") {
        const Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(3, 3);
        CHECK_THROWS_WITH_AS(DensityMatrix::from_matrix(rho), doctest::Contains("trace"),
                             std::invalid_argument);
    }
    SUBCASE("rejects indefinite matrices") {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
        rho(0, 0) = 1.5;
        rho(1, 1) = -0.5;
        CHECK_THROWS_WITH_AS(DensityMatrix::from_matrix(rho),
                             doctest::Contains("positive semidefinite"), std::invalid_argument);
    }
}

TEST_CASE("coherent state truncation accounting") {
    const CoherentState tight = coherent_state({2.0, 0.0}, 4);
    CHECK(tight.truncation_warning);
    CHECK(tight.pre_truncation_norm < 0.999);
    // renormalized regardless
    CHECK(tight.rho.matrix.entries.trace().real() == doctest::Approx(1.0).epsilon(1e-14));

    const CoherentState wide = coherent_state({1.0, 0.0}, 32);
    CHECK(wide.pre_truncation_norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("number state bounds checking") {
    CHECK_THROWS_AS(number_state(8, 8), std::invalid_argument);
    CHECK_THROWS_AS(number_state(-1, 8), std::invalid_argument);
    const DensityMatrix n3 = number_state(3, 6);
    CHECK(n3.matrix.entries(3, 3).real() == doctest::Approx(1.0));
}

}  // TEST_SUITE
