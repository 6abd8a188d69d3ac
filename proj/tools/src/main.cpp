// wigner-bounds: best-possible windows for Wigner-function region masses in a
// truncated number basis, plus closed-form tables, state verification, and
// sampled-grid consistency checks.
//
// Exit codes: 0 success, 2 bounds did not converge, 1 malformed input or any
// other failure. Reports are JSON with all floating-point numbers printed at
// 12 significant digits; reruns on the same input are byte-identical (timing
// metadata is opt-in because it is not reproducible).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigner/grid_ingest.hpp"
#include "wigner/region_ops.hpp"
#include "wigner/spectra.hpp"

namespace {

using namespace wigner;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string fmt_point(PhasePoint pt) { return "[" + fmt12(pt.q) + "," + fmt12(pt.p) + "]"; }

void emit_region(std::ostream& out, const RegionSpec& r) {
    out << "{\"kind\":" << quoted(to_string(r.kind));
    switch (r.kind) {
        case RegionKind::disk:
        case RegionKind::circle_contour:
            out << ",\"center\":" << fmt_point(r.center) << ",\"radius\":" << fmt12(r.radius);
            break;
        case RegionKind::annulus:
            out << ",\"center\":" << fmt_point(r.center)
                << ",\"inner_radius\":" << fmt12(r.inner_radius)
                << ",\"outer_radius\":" << fmt12(r.outer_radius);
            break;
        case RegionKind::rectangle:
            out << ",\"corner_min\":" << fmt_point(r.corner_min)
                << ",\"corner_max\":" << fmt_point(r.corner_max);
            break;
        case RegionKind::polygon:
        case RegionKind::polyline_contour: {
            out << ",\"vertices\":[";
            for (size_t i = 0; i < r.vertices.size(); ++i)
                out << (i ? "," : "") << fmt_point(r.vertices[i]);
            out << "]";
            break;
        }
        case RegionKind::segment_contour:
            out << ",\"from\":" << fmt_point(r.from) << ",\"to\":" << fmt_point(r.to);
            break;
        case RegionKind::point:
            out << ",\"location\":" << fmt_point(r.location);
            break;
        case RegionKind::tensor_product: {
            out << ",\"factors\":[";
            for (size_t i = 0; i < r.factors.size(); ++i) {
                if (i) out << ",";
                emit_region(out, r.factors[i]);
            }
            out << "]";
            break;
        }
    }
    out << "}";
}

void emit_window(std::ostream& out, const BoundsResult& w) {
    out << "{\"lower\":" << fmt12(w.lower) << ",\"upper\":" << fmt12(w.upper)
        << ",\"lower_attainable\":" << (w.lower_attainable ? "true" : "false")
        << ",\"upper_attainable\":" << (w.upper_attainable ? "true" : "false")
        << ",\"lower_descriptor\":" << quoted(w.lower_descriptor)
        << ",\"upper_descriptor\":" << quoted(w.upper_descriptor)
        << ",\"convergence\":" << fmt12(w.convergence);
    if (!w.ladder.empty()) {
        out << ",\"ladder\":[";
        for (size_t i = 0; i < w.ladder.size(); ++i) {
            const LadderStep& s = w.ladder[i];
            out << (i ? "," : "") << "{\"dim\":" << s.dim << ",\"lower\":" << fmt12(s.lower)
                << ",\"upper\":" << fmt12(s.upper) << "}";
        }
        out << "]";
    }
    if (!w.note.empty()) out << ",\"note\":" << quoted(w.note);
    out << "}";
}

void emit_state(std::ostream& out, const Eigen::VectorXcd& v) {
    out << "[";
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << "[" << fmt12(v(i).real()) << "," << fmt12(v(i).imag()) << "]";
    out << "]";
}

// Analytic cross-check for region kinds with closed-form spectra. Disk and
// circle spectra are translation covariant, so off-center regions reuse the
// centered formulas.
bool emit_analytic(std::ostream& out, const RegionSpec& r, int dim) {
    switch (r.kind) {
        case RegionKind::disk: {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            int min_index = 0;
            for (int n = 0; n < dim; ++n) {
                const double v = disk_eigenvalue(n, r.radius);
                if (v < lo) {
                    lo = v;
                    min_index = n;
                }
                hi = std::max(hi, v);
            }
            out << "{\"formula\":\"lambda_n(a) = (-1)^n int_0^{a^2} L_n(2u) e^{-u} du\""
                << ",\"n_max\":" << dim - 1 << ",\"lower\":" << fmt12(lo)
                << ",\"upper\":" << fmt12(hi) << ",\"minimizing_index\":" << min_index << "}";
            return true;
        }
        case RegionKind::circle_contour: {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (int n = 0; n < dim; ++n) {
                const double v = circle_contour_eigenvalue(n, r.radius);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            out << "{\"formula\":\"mu_n(a) = 2 a (-1)^n L_n(2 a^2) e^{-a^2}\""
                << ",\"n_max\":" << dim - 1 << ",\"lower\":" << fmt12(lo)
                << ",\"upper\":" << fmt12(hi) << "}";
            return true;
        }
        case RegionKind::segment_contour: {
            const double length = std::hypot(r.to.q - r.from.q, r.to.p - r.from.p);
            out << "{\"formula\":\"+-sin(k L)/(k pi) over k >= 0\""
                << ",\"length\":" << fmt12(length) << ",\"lower\":" << fmt12(-length / M_PI)
                << ",\"upper\":" << fmt12(length / M_PI) << ",\"attained\":false}";
            return true;
        }
        case RegionKind::point:
            out << "{\"formula\":\"eigenvalues +-1/pi in the untruncated limit\""
                << ",\"lower\":" << fmt12(-M_1_PI) << ",\"upper\":" << fmt12(M_1_PI) << "}";
            return true;
        default: return false;
    }
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    const std::string tmp = out_path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        if (!f.good()) throw std::runtime_error("cannot write output file " + tmp);
    }
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
        throw std::runtime_error("cannot move output into place at " + out_path);
}

RegionSpec load_region(const std::string& arg) {
    std::string text = arg;
    if (arg.empty()) throw std::invalid_argument("empty region argument");
    if (arg[0] != '{') {
        std::ifstream in(arg);
        if (!in.good()) throw std::invalid_argument("cannot open region file " + arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return parse_region_json(text);
}

DensityMatrix load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::invalid_argument("cannot open state file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("state JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() ||
        !j.contains("rho") || !j["rho"].is_array())
        throw std::invalid_argument("state JSON must carry integer 'dim' and matrix 'rho'");
    const int dim = j["dim"].get<int>();
    if (dim < 1 || j["rho"].size() != static_cast<size_t>(dim))
        throw std::invalid_argument("state 'rho' must be a dim x dim matrix of [re,im] pairs");
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto& row = j["rho"][static_cast<size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<size_t>(dim))
            throw std::invalid_argument("state 'rho' must be a dim x dim matrix of [re,im] pairs");
        for (int k = 0; k < dim; ++k) {
            const auto& cell = row[static_cast<size_t>(k)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw std::invalid_argument("state 'rho' entries must be [re,im] pairs");
            m(i, k) = {cell[0].get<double>(), cell[1].get<double>()};
        }
    }
    return DensityMatrix::from_matrix(m);
}

std::vector<int> parse_dims(const std::string& arg) {
    std::vector<int> dims;
    std::istringstream in(arg);
    std::string item;
    while (std::getline(in, item, ':')) {
        try {
            size_t used = 0;
            const int d = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument("trailing characters");
            dims.push_back(d);
        } catch (const std::exception&) {
            throw std::invalid_argument("dims must be colon-separated integers, got '" + arg +
                                        "'");
        }
    }
    if (dims.size() < 2)
        throw std::invalid_argument("dims needs at least 2 ladder entries, e.g. 16:32:64");
    return dims;
}

// Window plus the pieces the subcommands report. Tensor regions get one
// window per factor and the endpoint-product composite.
struct WindowComputation {
    RegionOperator op;
    BoundsResult window;
    std::vector<BoundsResult> factor_windows;
    double assembly_ms = 0.0;
    double solve_ms = 0.0;
};

WindowComputation compute_window(const RegionSpec& region, const std::vector<int>& dims,
                                 int resolution) {
    const double inf = std::numeric_limits<double>::infinity();
    WindowComputation result;
    const auto t0 = std::chrono::steady_clock::now();
    if (region.kind == RegionKind::tensor_product) {
        std::vector<RegionOperator> factor_ops;
        for (const auto& f : region.factors)
            factor_ops.push_back(assemble_region_operator(f, dims.back(), resolution));
        result.op = tensor_product_operator(factor_ops);
        const auto t1 = std::chrono::steady_clock::now();
        for (const auto& f : factor_ops) result.factor_windows.push_back(bounds(f, dims, inf));
        result.window = product_bounds(result.factor_windows);
        const auto t2 = std::chrono::steady_clock::now();
        result.assembly_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        return result;
    }
    result.op = assemble_region_operator(region, dims.back(), resolution);
    const auto t1 = std::chrono::steady_clock::now();
    result.window = bounds(result.op, dims, inf);
    const auto t2 = std::chrono::steady_clock::now();
    result.assembly_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    return result;
}

// Exit code 2 when any window moved more than the tolerance on its last
// ladder step.
bool check_convergence(const WindowComputation& result, double tolerance) {
    double worst = result.window.convergence;
    for (const auto& f : result.factor_windows) worst = std::max(worst, f.convergence);
    if (worst <= tolerance) return true;
    std::cerr << "bounds did not converge: last ladder step moved " << fmt12(worst)
              << ", tolerance " << fmt12(tolerance) << "\n";
    return false;
}

struct CommonArgs {
    std::string region;
    std::string dims = "16:32:64";
    int resolution = 64;
    double tolerance = 1e-4;
    std::string out;
};

int cmd_bounds(const CommonArgs& args, bool timing) {
    const RegionSpec region = load_region(args.region);
    const std::vector<int> dims = parse_dims(args.dims);
    const WindowComputation result = compute_window(region, dims, args.resolution);
    if (!check_convergence(result, args.tolerance)) return 2;

    std::ostringstream out;
    out << "{\"region\":";
    emit_region(out, region);
    out << ",\"dims\":[";
    for (size_t i = 0; i < dims.size(); ++i) out << (i ? "," : "") << dims[i];
    out << "],\"resolution\":" << args.resolution << ",\"tolerance\":" << fmt12(args.tolerance)
        << ",\"assembly_residual\":" << fmt12(result.op.assembly_residual);
    if (!result.factor_windows.empty()) {
        out << ",\"factors\":[";
        for (size_t i = 0; i < result.factor_windows.size(); ++i) {
            if (i) out << ",";
            emit_window(out, result.factor_windows[i]);
        }
        out << "],\"product\":";
        emit_window(out, result.window);
    } else {
        out << ",\"bounds\":";
        emit_window(out, result.window);
    }
    {
        std::ostringstream analytic;
        if (emit_analytic(analytic, region, dims.back())) out << ",\"analytic\":" << analytic.str();
    }
    if (timing)
        out << ",\"timing\":{\"assembly_ms\":" << fmt12(result.assembly_ms)
            << ",\"solve_ms\":" << fmt12(result.solve_ms) << "}";
    out << "}\n";
    write_output(args.out, out.str());
    return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& state_path) {
    const RegionSpec region = load_region(args.region);
    const std::vector<int> dims = parse_dims(args.dims);
    const DensityMatrix rho = load_state(state_path);
    const WindowComputation result = compute_window(region, dims, args.resolution);
    if (!check_convergence(result, args.tolerance)) return 2;
    if (rho.dim() != result.op.dim) {
        std::ostringstream msg;
        msg << "state dimension " << rho.dim() << " does not match operator dimension "
            << result.op.dim;
        throw std::invalid_argument(msg.str());
    }

    const double value = (rho.matrix.entries * result.op.matrix.entries).trace().real();
    const BoundsResult& w = result.window;
    const bool within = w.lower <= value && value <= w.upper;
    const bool extremal =
        std::fabs(value - w.lower) <= 1e-9 || std::fabs(value - w.upper) <= 1e-9;

    std::ostringstream out;
    out << "{\"region\":";
    emit_region(out, region);
    out << ",\"dim\":" << result.op.dim << ",\"value\":" << fmt12(value)
        << ",\"within_bounds\":" << (within ? "true" : "false")
        << ",\"extremal\":" << (extremal ? "true" : "false") << ",\"bounds\":";
    emit_window(out, w);
    if (w.lower_state.size() > 0) {
        out << ",\"lower_state\":";
        emit_state(out, w.lower_state);
    }
    if (w.upper_state.size() > 0) {
        out << ",\"upper_state\":";
        emit_state(out, w.upper_state);
    }
    out << "}\n";
    write_output(args.out, out.str());
    return 0;
}

int cmd_ingest(const CommonArgs& args, const std::string& grid_path) {
    const RegionSpec region = load_region(args.region);
    const std::vector<int> dims = parse_dims(args.dims);
    const WignerGrid grid = load_grid(grid_path);
    const GridMass measured = grid_mass(grid, region);
    const WindowComputation result = compute_window(region, dims, args.resolution);
    if (!check_convergence(result, args.tolerance)) return 2;
    const Verdict verdict =
        consistency_verdict(measured.mass, measured.error, result.window.lower,
                            result.window.upper);

    std::ostringstream out;
    out << "{\"region\":";
    emit_region(out, region);
    out << ",\"grid\":{\"path\":" << quoted(grid_path)
        << ",\"nq\":" << grid.q_axis.size() << ",\"np\":" << grid.p_axis.size()
        << ",\"noise_level\":" << fmt12(grid.noise_level) << "}"
        << ",\"mass\":" << fmt12(measured.mass) << ",\"error\":" << fmt12(measured.error)
        << ",\"bounds\":";
    emit_window(out, result.window);
    out << ",\"verdict\":" << quoted(to_string(verdict)) << "}\n";
    write_output(args.out, out.str());
    return 0;
}

int cmd_tabulate(const std::string& kind, double radius, double length, int n_max,
                 const std::string& values, const std::string& branch, const std::string& out_path) {
    std::ostringstream out;
    if (kind == "disk" || kind == "circle") {
        if (!(radius > 0.0)) throw std::invalid_argument("tabulate: radius must be > 0");
        if (n_max < 0) throw std::invalid_argument("tabulate: n-max must be >= 0");
        if (kind == "disk") {
            out << "n,(-1)^n int_0^{a^2} L_n(2u) e^{-u} du at a=" << fmt12(radius) << "\n";
            for (int n = 0; n <= n_max; ++n)
                out << n << "," << fmt12(disk_eigenvalue(n, radius)) << "\n";
        } else {
            out << "n,2 a (-1)^n L_n(2 a^2) e^{-a^2} at a=" << fmt12(radius) << "\n";
            for (int n = 0; n <= n_max; ++n)
                out << n << "," << fmt12(circle_contour_eigenvalue(n, radius)) << "\n";
        }
    } else if (kind == "segment") {
        if (!(length > 0.0)) throw std::invalid_argument("tabulate: length must be > 0");
        if (values.empty())
            throw std::invalid_argument("tabulate segment: --values k1:k2:... is required");
        SegmentBranch br;
        if (branch == "plus")
            br = SegmentBranch::plus;
        else if (branch == "minus")
            br = SegmentBranch::minus;
        else
            throw std::invalid_argument("tabulate: branch must be plus or minus");
        out << "k," << (br == SegmentBranch::plus ? "" : "-") << "sin(k L)/(k pi) at L="
            << fmt12(length) << "\n";
        std::istringstream in(values);
        std::string item;
        while (std::getline(in, item, ':')) {
            double k = 0.0;
            try {
                k = std::stod(item);
            } catch (const std::exception&) {
                throw std::invalid_argument("tabulate: values must be colon-separated numbers");
            }
            out << fmt12(k) << "," << fmt12(segment_eigenvalue(length, k, br)) << "\n";
        }
    } else {
        throw std::invalid_argument("tabulate: kind must be disk, circle, or segment");
    }
    write_output(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windows for Wigner-function region masses in a truncated number basis"};
    app.set_version_flag("--version", "1.0.0");
    app.require_subcommand(1);

    CommonArgs args;
    bool timing = false;
    std::string state_path, grid_path;
    std::string tab_kind, tab_values, tab_out, tab_branch = "plus";
    double tab_radius = 1.0, tab_length = 1.0;
    int tab_n_max = 10;

    auto add_common = [&args](CLI::App* cmd, bool with_region) {
        if (with_region)
            cmd->add_option("--region", args.region,
                            "region as a JSON file path or inline JSON object")
                ->required();
        cmd->add_option("--dims", args.dims,
                        "truncation ladder as colon-separated ascending dimensions");
        cmd->add_option("--resolution", args.resolution, "quadrature resolution per region");
        cmd->add_option("--tolerance", args.tolerance,
                        "largest admissible last-step movement of either endpoint");
        cmd->add_option("--out", args.out, "output path (atomic replace); stdout when absent");
    };

    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "window for the region mass over all physical states");
    add_common(bounds_cmd, true);
    bounds_cmd->add_flag("--timing", timing, "include wall-clock timing (not reproducible)");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "place a density matrix's region mass inside the window");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--state", state_path, "density matrix JSON {dim, rho}")->required();

    CLI::App* ingest_cmd =
        app.add_subcommand("ingest", "verdict for a sampled Wigner grid against the window");
    add_common(ingest_cmd, true);
    ingest_cmd->add_option("--grid", grid_path, "CSV grid with columns q,p,w")->required();

    CLI::App* tab_cmd = app.add_subcommand("tabulate", "closed-form eigenvalue tables as CSV");
    tab_cmd->add_option("kind", tab_kind, "disk, circle, or segment")->required();
    tab_cmd->add_option("--radius", tab_radius, "disk or circle radius");
    tab_cmd->add_option("--length", tab_length, "segment length");
    tab_cmd->add_option("--n-max", tab_n_max, "largest index n to tabulate");
    tab_cmd->add_option("--values", tab_values, "colon-separated wavenumbers (segment)");
    tab_cmd->add_option("--branch", tab_branch, "plus or minus (segment)");
    tab_cmd->add_option("--out", tab_out, "output path (atomic replace); stdout when absent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (bounds_cmd->parsed()) return cmd_bounds(args, timing);
        if (verify_cmd->parsed()) return cmd_verify(args, state_path);
        if (ingest_cmd->parsed()) return cmd_ingest(args, grid_path);
        if (tab_cmd->parsed())
            return cmd_tabulate(tab_kind, tab_radius, tab_length, tab_n_max, tab_values,
                                tab_branch, tab_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
