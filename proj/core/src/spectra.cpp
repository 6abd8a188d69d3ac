#include "wigner/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "wigner/specfun.hpp"

namespace wigner {

namespace {

void apply_sign_convention(Eigen::MatrixXcd& vectors) {
    for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
        Eigen::Index imax = 0;
        vectors.col(col).cwiseAbs().maxCoeff(&imax);
        const std::complex<double> lead = vectors(imax, col);
        const double mag = std::abs(lead);
        if (mag > 0.0) vectors.col(col) *= std::conj(lead) / mag;
    }
}

double adaptive_gl(const std::function<double(double)>& f, double lo, double hi, double tol,
                   int depth) {
    auto panel = [&f](double a, double b) {
        const QuadratureRule rule = gauss_legendre(20, a, b);
        double acc = 0.0;
        for (int i = 0; i < rule.order; ++i)
            acc += rule.weights[static_cast<size_t>(i)] * f(rule.nodes[static_cast<size_t>(i)]);
        return acc;
    };
    const double mid = 0.5 * (lo + hi);
    const double whole = panel(lo, hi);
    const double halves = panel(lo, mid) + panel(mid, hi);
    if (std::fabs(halves - whole) <= tol || depth >= 30) return halves;
    return adaptive_gl(f, lo, mid, 0.5 * tol, depth + 1) +
           adaptive_gl(f, mid, hi, 0.5 * tol, depth + 1);
}

}  // namespace

SpectrumReport eigendecompose(const FockMatrix& op, bool with_vectors) {
    if (!op.entries.allFinite())
        throw std::invalid_argument("eigendecompose: operator has non-finite entries");
    if (op.hermiticity_defect() > 1e-10)
        throw std::invalid_argument("eigendecompose: operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        op.entries, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed to converge");
    SpectrumReport report;
    report.eigenvalues = solver.eigenvalues();
    report.dim = op.dim();
    report.source = "dense self-adjoint eigensolver on the truncated basis";
    if (with_vectors) {
        report.eigenvectors = solver.eigenvectors();
        apply_sign_convention(report.eigenvectors);
    }
    return report;
}

BoundsResult bounds(const RegionOperator& op, std::vector<int> ladder, double tolerance) {
    if (op.region.kind == RegionKind::segment_contour) {
        const double length = std::hypot(op.region.to.q - op.region.from.q,
                                         op.region.to.p - op.region.from.p);
        BoundsResult result;
        result.lower = -length / M_PI;
        result.upper = length / M_PI;
        result.lower_attainable = false;
        result.upper_attainable = false;
        result.lower_descriptor =
            "k -> 0 limit of the minus-branch segment eigenvalue family (infimum, not attained)";
        result.upper_descriptor =
            "k -> 0 limit of the plus-branch segment eigenvalue family (supremum, not attained)";
        result.convergence = 0.0;
        result.note =
            "segment window served from the closed-form eigenvalue family +-sin(kL)/(k pi); "
            "the endpoints +-L/pi are limits and are not attained by any state";
        return result;
    }

    if (op.dim < 2) throw std::invalid_argument("bounds: operator dimension must be >= 2");
    if (ladder.empty()) {
        ladder = {std::max(1, op.dim / 4), std::max(1, op.dim / 2), op.dim};
        ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    }
    if (ladder.size() < 2) throw std::invalid_argument("bounds: ladder needs at least 2 rungs");
    for (size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i] < 1 || ladder[i] > op.dim)
            throw std::invalid_argument("bounds: ladder dimensions must lie in [1, dim]");
        if (i > 0 && ladder[i] <= ladder[i - 1])
            throw std::invalid_argument("bounds: ladder dimensions must be strictly ascending");
    }
    if (ladder.back() != op.dim)
        throw std::invalid_argument("bounds: ladder must end at the operator dimension");

    BoundsResult result;
    SpectrumReport final_report;
    for (size_t i = 0; i < ladder.size(); ++i) {
        const int d = ladder[i];
        LadderStep step;
        step.dim = d;
        if (d == op.dim) {
            final_report = eigendecompose(op.matrix, true);
            step.lower = final_report.eigenvalues(0);
            step.upper = final_report.eigenvalues(d - 1);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
                op.matrix.entries.topLeftCorner(d, d), Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("bounds: eigensolver failed on a ladder rung");
            step.lower = solver.eigenvalues()(0);
            step.upper = solver.eigenvalues()(d - 1);
        }
        result.ladder.push_back(step);
    }

    const LadderStep& last = result.ladder.back();
    const LadderStep& prev = result.ladder[result.ladder.size() - 2];
    result.convergence =
        std::max(std::fabs(last.lower - prev.lower), std::fabs(last.upper - prev.upper));
    if (!(result.convergence <= tolerance)) {
        std::ostringstream msg;
        msg << "bounds did not converge: last ladder step moved " << result.convergence
            << ", tolerance " << tolerance;
        throw std::runtime_error(msg.str());
    }

    result.lower = last.lower;
    result.upper = last.upper;
    result.lower_attainable = true;
    result.upper_attainable = true;
    result.lower_state = final_report.eigenvectors.col(0);
    result.upper_state = final_report.eigenvectors.col(op.dim - 1);
    {
        std::ostringstream lo, hi;
        lo << "minimal eigenvector of the truncated region operator (dim " << op.dim << ")";
        hi << "maximal eigenvector of the truncated region operator (dim " << op.dim << ")";
        result.lower_descriptor = lo.str();
        result.upper_descriptor = hi.str();
    }
    if (op.region.dimension() == 2) {
        // region mass of a physical state always admits the trivial window
        result.lower = std::min(result.lower, 1.0);
        result.upper = std::max(result.upper, 0.0);
    }
    return result;
}

double disk_eigenvalue(int n, double a) {
    if (n < 0) throw std::invalid_argument("disk_eigenvalue: n must be >= 0");
    if (!(a > 0.0)) throw std::invalid_argument("disk_eigenvalue: radius must be > 0");
    const std::function<double(double)> f = [n](double u) {
        return laguerre(n, 0.0, 2.0 * u) * std::exp(-u);
    };
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * adaptive_gl(f, 0.0, a * a, 1e-12, 0);
}

double circle_contour_eigenvalue(int n, double a) {
    if (n < 0) throw std::invalid_argument("circle_contour_eigenvalue: n must be >= 0");
    if (!(a > 0.0)) throw std::invalid_argument("circle_contour_eigenvalue: radius must be > 0");
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * a * sign * laguerre(n, 0.0, 2.0 * a * a) * std::exp(-a * a);
}

double segment_eigenvalue(double length, double k, SegmentBranch branch) {
    if (!(length > 0.0)) throw std::invalid_argument("segment_eigenvalue: length must be > 0");
    if (k < 0.0) throw std::invalid_argument("segment_eigenvalue: k must be >= 0");
    const double sign = (branch == SegmentBranch::plus) ? 1.0 : -1.0;
    if (k == 0.0) return sign * length / M_PI;
    return sign * std::sin(k * length) / (k * M_PI);
}

SegmentMinimum segment_branch_minimum(double length) {
    if (!(length > 0.0))
        throw std::invalid_argument("segment_branch_minimum: length must be > 0");
    // minimize sin(x)/x: stationary point x cos x = sin x in (pi, 3 pi / 2)
    double x = 4.5;
    for (int i = 0; i < 60; ++i) {
        const double g = x * std::cos(x) - std::sin(x);
        const double dg = -x * std::sin(x);
        const double step = g / dg;
        x -= step;
        if (std::fabs(step) < 1e-15) break;
    }
    SegmentMinimum result;
    result.k = x / length;
    result.value = length * std::sin(x) / (x * M_PI);
    return result;
}

int disk_minimizing_index(double a, int n_max) {
    if (n_max < 0) throw std::invalid_argument("disk_minimizing_index: n_max must be >= 0");
    int best = 0;
    double best_value = disk_eigenvalue(0, a);
    for (int n = 1; n <= n_max; ++n) {
        const double value = disk_eigenvalue(n, a);
        if (value < best_value) {
            best_value = value;
            best = n;
        }
    }
    return best;
}

namespace {

Eigen::VectorXcd kron_vector(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

struct EndpointChoice {
    double value = 1.0;
    bool attainable = true;
    bool has_states = true;
};

}  // namespace

BoundsResult product_bounds(const std::vector<BoundsResult>& factors) {
    const size_t k = factors.size();
    if (k < 2) throw std::invalid_argument("product_bounds: needs at least 2 factors");
    if (k > 16) throw std::invalid_argument("product_bounds: too many factors");

    BoundsResult result;
    bool have_min = false, have_max = false;
    unsigned min_mask = 0, max_mask = 0;
    EndpointChoice min_choice, max_choice;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        EndpointChoice choice;
        for (size_t i = 0; i < k; ++i) {
            const bool take_upper = (mask >> i) & 1u;
            const BoundsResult& f = factors[i];
            choice.value *= take_upper ? f.upper : f.lower;
            choice.attainable = choice.attainable &&
                                (take_upper ? f.upper_attainable : f.lower_attainable);
            const Eigen::VectorXcd& state = take_upper ? f.upper_state : f.lower_state;
            choice.has_states = choice.has_states && state.size() > 0;
        }
        const bool better_min =
            !have_min || choice.value < min_choice.value ||
            (choice.value == min_choice.value && choice.attainable && !min_choice.attainable);
        if (better_min) {
            min_choice = choice;
            min_mask = mask;
            have_min = true;
        }
        const bool better_max =
            !have_max || choice.value > max_choice.value ||
            (choice.value == max_choice.value && choice.attainable && !max_choice.attainable);
        if (better_max) {
            max_choice = choice;
            max_mask = mask;
            have_max = true;
        }
    }

    auto describe = [&factors, k](unsigned mask) {
        std::ostringstream out;
        out << "product of factor endpoints (";
        for (size_t i = 0; i < k; ++i) {
            out << (((mask >> i) & 1u) ? "upper" : "lower");
            if (i + 1 < k) out << ", ";
        }
        out << ")";
        (void)factors;
        return out.str();
    };
    auto build_state = [&factors, k](unsigned mask, bool available) {
        Eigen::VectorXcd state;
        if (!available) return state;
        state = ((mask >> 0) & 1u) ? factors[0].upper_state : factors[0].lower_state;
        for (size_t i = 1; i < k; ++i)
            state = kron_vector(state,
                                ((mask >> i) & 1u) ? factors[i].upper_state : factors[i].lower_state);
        return state;
    };

    result.lower = min_choice.value;
    result.upper = max_choice.value;
    result.lower_attainable = min_choice.attainable;
    result.upper_attainable = max_choice.attainable;
    result.lower_descriptor = describe(min_mask);
    result.upper_descriptor = describe(max_mask);
    result.lower_state = build_state(min_mask, min_choice.attainable && min_choice.has_states);
    result.upper_state = build_state(max_mask, max_choice.attainable && max_choice.has_states);
    for (const auto& f : factors) result.convergence = std::max(result.convergence, f.convergence);
    result.note = "window from endpoint-product enumeration over the factor windows";
    return result;
}

}  // namespace wigner
