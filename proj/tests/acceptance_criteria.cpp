// Acceptance gate: every shipped guarantee is re-verified here against
// independent closed-form oracles, at pinned tolerances, printing one
// PASS/FAIL line per criterion. The exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wigner/fock_wigner.hpp"
#include "wigner/grid_ingest.hpp"
#include "wigner/region_ops.hpp"
#include "wigner/regions.hpp"
#include "wigner/spectra.hpp"

using namespace wigner;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d  %s  [%s]\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Eigen::VectorXd submatrix_eigenvalues(const FockMatrix& m, int dim) {
    FockMatrix sub;
    sub.entries = m.entries.topLeftCorner(dim, dim);
    sub.hermitian = true;
    return eigendecompose(sub, false).eigenvalues;
}

// deterministic uniforms/gaussians: fixed bit recipe, no library distributions
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::complex<double> gaussian(std::mt19937_64& rng) {
    const double u1 = uniform01(rng), u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

DensityMatrix random_state(std::mt19937_64& rng, int dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = gaussian(rng);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_matrix(rho);
}

std::vector<RegionOperator> g_disk_ops;  // shared between criteria 1 and 2
const std::vector<double> g_disk_radii = {0.5, 1.0, 2.0, 3.0};

void criterion_1_disk_spectrum() {
    const auto start = std::chrono::steady_clock::now();
    double worst_offdiag = 0.0, worst_diag = 0.0;
    for (double a : g_disk_radii) {
        const RegionOperator op = assemble_region_operator(RegionSpec::make_disk({0, 0}, a),
                                                           64, 64);
        const Eigen::MatrixXcd& m = op.matrix.entries;
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                if (i != j) worst_offdiag = std::max(worst_offdiag, std::abs(m(i, j)));
        for (int n = 0; n <= 54; ++n)
            worst_diag =
                std::max(worst_diag, std::fabs(m(n, n).real() - disk_eigenvalue(n, a)));
        g_disk_ops.push_back(op);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = worst_offdiag <= 1e-8 && worst_diag <= 1e-8 && seconds < 30.0;
    report(1, "disk operators diagonal, diagonal matches the closed-form spectrum", pass,
           "max offdiag " + num(worst_offdiag) + ", max diag error " + num(worst_diag) +
               " for n<=54, " + num(seconds) + " s (limits 1e-8, 1e-8, 30 s)");
}

void criterion_2_vacuum_maximal() {
    bool argmax_ok = true;
    int worst_argmax = 0;
    for (double a : g_disk_radii) {
        int argmax = 0;
        double best = -kInf;
        for (int n = 0; n < 64; ++n) {
            const double lam = disk_eigenvalue(n, a);
            if (lam > best) {
                best = lam;
                argmax = n;
            }
        }
        if (argmax != 0) {
            argmax_ok = false;
            worst_argmax = argmax;
        }
    }
    double min1 = kInf;
    for (int n = 0; n < 64; ++n) min1 = std::min(min1, disk_eigenvalue(n, 1.0));
    const double target = 1.0 - 3.0 / M_E;
    const double err = std::fabs(min1 - target);
    const bool pass = argmax_ok && err <= 1e-9;
    report(2, "vacuum eigenvalue maximal on every disk; minimum at a=1 is 1-3/e", pass,
           std::string("argmax n ") + (argmax_ok ? "= 0 for all radii" :
                                                   ("!= 0 (got " + num(worst_argmax) + ")")) +
               ", |min - (1-3/e)| = " + num(err) + " (limit 1e-9)");
}

void criterion_3_normalization_limit() {
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 0; n <= 10; ++n) {
        const double dev = std::fabs(disk_eigenvalue(n, 6.0) - 1.0);
        if (dev > worst) {
            worst = dev;
            worst_n = n;
        }
    }
    const bool pass = worst <= 1e-8;
    report(3, "disk eigenvalues at a=6 reach 1 within 1e-8 for n<=10", pass,
           "max |lambda_n(6)-1| = " + num(worst) + " at n=" + std::to_string(worst_n) +
               " (limit 1e-8); the tail is L_n(72)e^{-36}, which exceeds 1e-8 from n=6 on");
}

void criterion_4_circle_contour() {
    const double h = 1e-4;
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
        for (int n = 0; n <= 10; ++n) {
            const double fd = (disk_eigenvalue(n, a + h) - disk_eigenvalue(n, a - h)) / (2 * h);
            worst = std::max(worst, std::fabs(circle_contour_eigenvalue(n, a) - fd));
        }
    }
    const bool pass = worst <= 1e-6;
    report(4, "circle-contour eigenvalues equal the radial derivative of the disk spectrum",
           pass, "max |mu_n(a) - central difference| = " + num(worst) + " (limit 1e-6)");
}

void criterion_5_point_operator() {
    const RegionOperator op = point_operator({0, 0}, 16);
    const Eigen::VectorXd eigs = eigendecompose(op.matrix, false).eigenvalues;
    double worst_eig = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double target = (i < 8 ? -1.0 : 1.0) * M_1_PI;
        worst_eig = std::max(worst_eig, std::fabs(eigs(i) - target));
    }

    std::mt19937_64 rng(0x57494e47u);
    double worst_w = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = random_state(rng, 32);
        const PhasePoint pt{6.0 * uniform01(rng) - 3.0, 6.0 * uniform01(rng) - 3.0};
        worst_w = std::max(worst_w, std::fabs(wigner_function(rho, pt)));
    }
    const bool pass = worst_eig <= 1e-10 && worst_w <= M_1_PI + 1e-9;
    report(5, "point operator spectrum is +-1/pi (x8); |W| <= 1/pi on random states", pass,
           "max eigenvalue deviation " + num(worst_eig) + " (limit 1e-10), max |W| = " +
               num(worst_w) + " vs 1/pi = " + num(M_1_PI));
}

void criterion_6_segment_window() {
    const RegionOperator op = assemble_region_operator(
        RegionSpec::make_segment_contour({-1.5, 0}, {1.5, 0}), 256, 128);
    const double band = 3.0 * M_1_PI;
    bool in_band = true;
    double clearance = 0.0;
    std::vector<double> maxima;
    for (int dim : {64, 128, 256}) {
        const Eigen::VectorXd eigs = submatrix_eigenvalues(op.matrix, dim);
        clearance = std::max({clearance, eigs(eigs.size() - 1) - band, -band - eigs(0)});
        if (eigs(0) < -band - 1e-6 || eigs(eigs.size() - 1) > band + 1e-6) in_band = false;
        maxima.push_back(eigs(eigs.size() - 1));
    }
    const bool monotone = maxima[0] < maxima[1] && maxima[1] < maxima[2];
    const bool reaches = maxima[2] >= 0.95 * band;
    report(6, "segment spectrum confined to (-L/pi, L/pi); maximum grows toward L/pi",
           in_band && monotone && reaches,
           "worst excursion beyond the band " + num(clearance) + " (limit 1e-6), maxima " +
               num(maxima[0]) +
               " < " + num(maxima[1]) + " < " + num(maxima[2]) + ", target >= " +
               num(0.95 * band));
}

void criterion_7_trace_identity() {
    std::vector<PhasePoint> pentagon;
    for (int k = 0; k < 5; ++k) {
        const double th = M_PI / 2 + 2 * M_PI * k / 5;
        pentagon.push_back({std::cos(th), std::sin(th)});
    }
    const std::vector<RegionSpec> regions = {
        RegionSpec::make_disk({0, 0}, 1.0),
        RegionSpec::make_rectangle({-1, -0.5}, {1, 0.5}),
        RegionSpec::make_polygon(pentagon),
    };
    std::mt19937_64 rng(0x5452414345u);
    std::vector<DensityMatrix> states;
    for (int i = 0; i < 100; ++i) states.push_back(random_state(rng, 32));

    double worst_gap = 0.0, worst_margin = -kInf;
    for (const RegionSpec& region : regions) {
        const RegionOperator coarse = assemble_region_operator(region, 32, 64);
        const RegionOperator fine = assemble_region_operator(region, 32, 128);
        const BoundsResult window = bounds(coarse, {16, 32}, kInf);
        for (const DensityMatrix& rho : states) {
            const double v = (rho.matrix.entries * coarse.matrix.entries).trace().real();
            const double vf = (rho.matrix.entries * fine.matrix.entries).trace().real();
            worst_gap = std::max(worst_gap, std::fabs(v - vf));
            worst_margin = std::max(worst_margin,
                                    std::max(window.lower - v, v - window.upper));
        }
    }
    const bool pass = worst_gap <= 1e-6 && worst_margin <= 1e-9;
    report(7, "operator trace reproduces the quadrature region mass and sits in the window",
           pass, "max |trace - fine quadrature| = " + num(worst_gap) +
                     " (limit 1e-6), worst window excursion " + num(worst_margin) +
                     " (limit 1e-9)");
}

void criterion_8_trace_value() {
    const RegionOperator& op = g_disk_ops[2];  // a = 2, dim 64
    const double trace = op.matrix.entries.trace().real();
    const double err = std::fabs(trace - 2.0);
    const bool pass = err <= 1e-6;
    report(8, "disk operator trace equals a^2/2 at a=2", pass,
           "trace - 2 = " + num(trace - 2.0) +
               " (limit 1e-6); the partial sums of lambda_n(2) oscillate with an O(1/N) "
               "envelope (N=16: -0.0193, N=32: +0.0095, N=64: -0.0028), so dim 64 cannot "
               "reach 1e-6");
}

void criterion_9_interlacing() {
    std::vector<PhasePoint> pentagon;
    for (int k = 0; k < 5; ++k) {
        const double th = M_PI / 2 + 2 * M_PI * k / 5;
        pentagon.push_back({std::cos(th), std::sin(th)});
    }
    const std::vector<RegionSpec> regions = {
        RegionSpec::make_disk({0, 0}, 1.0),
        RegionSpec::make_disk({1, 0}, 2.0),
        RegionSpec::make_annulus({0, 0}, 1.0, 2.0),
        RegionSpec::make_rectangle({-1, -0.5}, {1, 0.5}),
        RegionSpec::make_polygon(pentagon),
        RegionSpec::make_circle_contour({0, 0}, 1.0),
        RegionSpec::make_segment_contour({-1.5, 0}, {1.5, 0}),
        RegionSpec::make_polyline_contour({{-1, 0}, {0, 0}, {0, 1}}),
        RegionSpec::make_point({0.5, -0.5}),
    };
    double worst = -kInf;
    for (const RegionSpec& region : regions) {
        const RegionOperator op = assemble_region_operator(region, 64, 64);
        const BoundsResult w = bounds(op, {16, 32, 64}, kInf);
        for (size_t i = 1; i < w.ladder.size(); ++i) {
            worst = std::max(worst, w.ladder[i - 1].upper - w.ladder[i].upper);
            worst = std::max(worst, w.ladder[i].lower - w.ladder[i - 1].lower);
        }
    }
    const bool pass = worst <= 1e-12;
    report(9, "truncation ladder monotone: upper bounds never fall, lower bounds never rise",
           pass, "worst monotonicity violation " + num(worst) +
                     " over 9 region kinds, dims 16->32->64 (limit 1e-12)");
}

void criterion_10_composites() {
    const RegionOperator disk =
        assemble_region_operator(RegionSpec::make_disk({0, 0}, 1.0), 32, 64);
    const RegionOperator seg = assemble_region_operator(
        RegionSpec::make_segment_contour({-1.5, 0}, {1.5, 0}), 32, 64);
    const RegionOperator prod = tensor_product_operator({disk, seg});

    const Eigen::VectorXd spectrum = eigendecompose(prod.matrix, false).eigenvalues;
    const Eigen::VectorXd da = eigendecompose(disk.matrix, false).eigenvalues;
    const Eigen::VectorXd db = eigendecompose(seg.matrix, false).eigenvalues;
    std::vector<double> products;
    products.reserve(static_cast<size_t>(da.size()) * static_cast<size_t>(db.size()));
    for (int i = 0; i < da.size(); ++i)
        for (int j = 0; j < db.size(); ++j) products.push_back(da(i) * db(j));
    std::sort(products.begin(), products.end());
    double worst_spec = 0.0;
    for (int i = 0; i < spectrum.size(); ++i)
        worst_spec = std::max(worst_spec, std::fabs(spectrum(i) - products[i]));

    const BoundsResult wa = bounds(disk, {16, 32}, kInf);
    const BoundsResult wb = bounds(seg, {16, 32}, kInf);
    const BoundsResult cyl = product_bounds({wa, wb});
    double lo = kInf, hi = -kInf;
    for (double x : {wa.lower, wa.upper})
        for (double y : {wb.lower, wb.upper}) {
            lo = std::min(lo, x * y);
            hi = std::max(hi, x * y);
        }
    const double worst_win = std::max(std::fabs(cyl.lower - lo), std::fabs(cyl.upper - hi));
    const bool pass = worst_spec <= 1e-10 && worst_win <= 1e-12;
    report(10, "tensor spectra multiply; cylinder window equals endpoint products", pass,
           "max spectrum mismatch " + num(worst_spec) +
               " (limit 1e-10), window mismatch " + num(worst_win) + " (limit 1e-12)");
}

void write_grid(const fs::path& path, const DensityMatrix& rho, double scale) {
    std::ofstream out(path, std::ios::trunc);
    out << "q,p,w\n";
    char buf[128];
    for (int i = 0; i < 201; ++i) {
        const double q = -6.0 + 12.0 * i / 200;
        for (int j = 0; j < 201; ++j) {
            const double p = -6.0 + 12.0 * j / 200;
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", q, p,
                          scale * wigner_function(rho, {q, p}));
            out << buf;
        }
    }
}

void criterion_11_ingestion() {
    const fs::path dir =
        fs::temp_directory_path() / ("wigner_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const RegionSpec disk = RegionSpec::make_disk({0, 0}, 1.0);
    const BoundsResult window =
        bounds(assemble_region_operator(disk, 64, 64), {32, 64}, kInf);

    struct Case {
        const char* label;
        fs::path path;
        Verdict expected;
    };
    std::vector<Case> cases;
    const DensityMatrix vac = number_state(0, 8);

    write_grid(dir / "vacuum.csv", vac, 1.0);
    cases.push_back({"vacuum", dir / "vacuum.csv", Verdict::consistent});
    write_grid(dir / "one.csv", number_state(1, 8), 1.0);
    cases.push_back({"one-quantum", dir / "one.csv", Verdict::consistent});
    write_grid(dir / "coherent.csv", coherent_state(1.0, 32).rho, 1.0);
    cases.push_back({"coherent", dir / "coherent.csv", Verdict::consistent});
    write_grid(dir / "scaled.csv", vac, 1.3);
    {
        // 1.3x the vacuum peaks above 1/pi; a declared noise allowance lets it load
        std::ofstream sidecar(dir / "scaled.csv.json", std::ios::trunc);
        sidecar << "{\"noise_level\":0.1}\n";
    }
    cases.push_back({"scaled", dir / "scaled.csv", Verdict::violation});

    bool pass = true;
    std::string detail;
    for (const Case& c : cases) {
        const WignerGrid grid = load_grid(c.path.string());
        const GridMass gm = grid_mass(grid, disk);
        const Verdict got = consistency_verdict(gm.mass, gm.error, window.lower, window.upper);
        if (got != c.expected) pass = false;
        if (!detail.empty()) detail += ", ";
        detail += std::string(c.label) + "=" + to_string(got) +
                  (got == c.expected ? "" : " (wanted " + to_string(c.expected) + ")");
        if (std::string(c.label) == "vacuum" && got != c.expected)
            detail += ": midpoint mass " + num(gm.mass) + " exceeds the upper bound " +
                      num(window.upper) + " because the vacuum attains it exactly, and the " +
                      "overshoot stays inside the quadrature error band " + num(gm.error) +
                      ", so the verdict is inconclusive at every grid resolution";
    }
    report(11, "sampled-grid verdicts: ideal states consistent, scaled grid a violation",
           pass, detail);
}

}  // namespace

int main() {
    std::printf("acceptance criteria for the region-mass window library\n");
    criterion_1_disk_spectrum();
    criterion_2_vacuum_maximal();
    criterion_3_normalization_limit();
    criterion_4_circle_contour();
    criterion_5_point_operator();
    criterion_6_segment_window();
    criterion_7_trace_identity();
    criterion_8_trace_value();
    criterion_9_interlacing();
    criterion_10_composites();
    criterion_11_ingestion();
    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
