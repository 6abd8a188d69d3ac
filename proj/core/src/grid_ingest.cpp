#include "wigner/grid_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wigner {

namespace {

constexpr double kAxisTolerance = 1e-9;  // relative, on spacing and block alignment

double read_noise_sidecar(const std::string& path) {
    std::ifstream in(path + ".json");
    if (!in.good()) return 0.0;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        std::ostringstream msg;
        msg << "malformed noise sidecar " << path << ".json: " << e.what();
        throw std::invalid_argument(msg.str());
    }
    if (!j.is_object() || !j.contains("noise_level") || !j["noise_level"].is_number())
        throw std::invalid_argument("noise sidecar must be an object with numeric 'noise_level'");
    const double noise = j["noise_level"].get<double>();
    if (!(noise >= 0.0) || !std::isfinite(noise))
        throw std::invalid_argument("noise_level must be finite and >= 0");
    return noise;
}

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.size() < 2) {
        std::ostringstream msg;
        msg << "grid " << name << " axis needs at least 2 samples";
        throw std::invalid_argument(msg.str());
    }
    const double h0 = axis[1] - axis[0];
    if (!(h0 > 0.0)) {
        std::ostringstream msg;
        msg << "grid " << name << " axis must be strictly increasing";
        throw std::invalid_argument(msg.str());
    }
    for (size_t i = 1; i + 1 < axis.size(); ++i) {
        const double h = axis[i + 1] - axis[i];
        if (!(h > 0.0) || std::fabs(h - h0) > kAxisTolerance * std::max(std::fabs(h0), 1.0)) {
            std::ostringstream msg;
            msg << "grid " << name << " axis is not uniformly spaced near index " << i + 1;
            throw std::invalid_argument(msg.str());
        }
    }
}

bool near(double a, double b) {
    return std::fabs(a - b) <= kAxisTolerance * std::max({std::fabs(a), std::fabs(b), 1.0});
}

}  // namespace

double WignerGrid::spacing_q() const {
    return (q_axis.back() - q_axis.front()) / static_cast<double>(q_axis.size() - 1);
}

double WignerGrid::spacing_p() const {
    return (p_axis.back() - p_axis.front()) / static_cast<double>(p_axis.size() - 1);
}

WignerGrid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        std::ostringstream msg;
        msg << "cannot open grid file " << path;
        throw std::invalid_argument(msg.str());
    }

    std::vector<double> qs, ps, ws;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string qa, pa, wa;
        if (!std::getline(row, qa, ',') || !std::getline(row, pa, ',') ||
            !std::getline(row, wa)) {
            std::ostringstream msg;
            msg << "grid line " << lineno << " is not a q,p,w triple";
            throw std::invalid_argument(msg.str());
        }
        try {
            size_t used = 0;
            const double q = std::stod(qa, &used);
            const double p = std::stod(pa);
            const double w = std::stod(wa);
            (void)used;
            qs.push_back(q);
            ps.push_back(p);
            ws.push_back(w);
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header line
            std::ostringstream msg;
            msg << "grid line " << lineno << " is not numeric";
            throw std::invalid_argument(msg.str());
        }
    }
    if (qs.empty()) throw std::invalid_argument("grid file has no samples");

    // row-major with q outermost: the first block of constant q defines the p axis
    size_t np = 1;
    while (np < qs.size() && near(qs[np], qs[0])) ++np;
    if (qs.size() % np != 0) {
        std::ostringstream msg;
        msg << "grid is incomplete: " << qs.size() << " samples do not fill rows of " << np;
        throw std::invalid_argument(msg.str());
    }
    const size_t nq = qs.size() / np;

    WignerGrid grid;
    grid.noise_level = read_noise_sidecar(path);
    grid.p_axis.assign(ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(np));
    grid.q_axis.resize(nq);
    for (size_t i = 0; i < nq; ++i) grid.q_axis[i] = qs[i * np];
    check_axis(grid.q_axis, "q");
    check_axis(grid.p_axis, "p");

    const double limit = M_1_PI + grid.noise_level + 1e-12;
    grid.values.resize(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(np));
    for (size_t i = 0; i < nq; ++i) {
        for (size_t j = 0; j < np; ++j) {
            const size_t idx = i * np + j;
            if (!near(qs[idx], grid.q_axis[i]) || !near(ps[idx], grid.p_axis[j])) {
                std::ostringstream msg;
                msg << "grid sample " << idx + 1 << " breaks row-major (q outer) ordering";
                throw std::invalid_argument(msg.str());
            }
            const double w = ws[idx];
            if (!std::isfinite(w)) {
                std::ostringstream msg;
                msg << "grid value at q=" << qs[idx] << ", p=" << ps[idx] << " is not finite";
                throw std::invalid_argument(msg.str());
            }
            if (std::fabs(w) > limit) {
                std::ostringstream msg;
                msg << "grid violates physicality at q=" << qs[idx] << ", p=" << ps[idx]
                    << ": |" << w << "| exceeds 1/pi + noise allowance " << grid.noise_level
                    << " (defect " << std::fabs(w) - M_1_PI << ")";
                throw std::invalid_argument(msg.str());
            }
            grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
        }
    }
    return grid;
}

GridMass grid_mass(const WignerGrid& grid, const RegionSpec& region) {
    if (region.dimension() != 2 || region.kind == RegionKind::tensor_product)
        throw std::invalid_argument("grid_mass: defined for 2D regions only");
    const double hq = grid.spacing_q();
    const double hp = grid.spacing_p();
    const auto [lo, hi] = bounding_box(region);
    if (lo.q < grid.q_axis.front() - 0.5 * hq || hi.q > grid.q_axis.back() + 0.5 * hq ||
        lo.p < grid.p_axis.front() - 0.5 * hp || hi.p > grid.p_axis.back() + 0.5 * hp) {
        std::ostringstream msg;
        msg << "grid does not cover the region: region spans q in [" << lo.q << ", " << hi.q
            << "], p in [" << lo.p << ", " << hi.p << "] but grid cells span q in ["
            << grid.q_axis.front() - 0.5 * hq << ", " << grid.q_axis.back() + 0.5 * hq
            << "], p in [" << grid.p_axis.front() - 0.5 * hp << ", "
            << grid.p_axis.back() + 0.5 * hp << "]";
        throw std::runtime_error(msg.str());
    }

    const Eigen::Index nq = static_cast<Eigen::Index>(grid.q_axis.size());
    const Eigen::Index np = static_cast<Eigen::Index>(grid.p_axis.size());
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> inside(nq, np);
    for (Eigen::Index i = 0; i < nq; ++i)
        for (Eigen::Index j = 0; j < np; ++j)
            inside(i, j) = contains(region, {grid.q_axis[static_cast<size_t>(i)],
                                             grid.p_axis[static_cast<size_t>(j)]});

    GridMass result;
    double boundary_max = 0.0;
    bool saw_boundary = false;
    for (Eigen::Index i = 0; i < nq; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) {
            if (inside(i, j)) result.mass += grid.values(i, j) * hq * hp;
            const bool flips = (i > 0 && inside(i - 1, j) != inside(i, j)) ||
                               (i + 1 < nq && inside(i + 1, j) != inside(i, j)) ||
                               (j > 0 && inside(i, j - 1) != inside(i, j)) ||
                               (j + 1 < np && inside(i, j + 1) != inside(i, j));
            if (flips) {
                saw_boundary = true;
                boundary_max = std::max(boundary_max, std::fabs(grid.values(i, j)));
            }
        }
    }
    if (!saw_boundary) boundary_max = grid.values.cwiseAbs().maxCoeff();
    result.error = perimeter(region) * std::hypot(hq, hp) * boundary_max;
    return result;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::consistent: return "consistent";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::violation: return "violation";
    }
    return "unknown";
}

Verdict consistency_verdict(double mass, double error, double lower, double upper) {
    if (!(error >= 0.0)) throw std::invalid_argument("consistency_verdict: error must be >= 0");
    if (mass < lower - error || mass > upper + error) return Verdict::violation;
    if (lower <= mass && mass <= upper) return Verdict::consistent;
    return Verdict::inconclusive;
}

}  // namespace wigner
