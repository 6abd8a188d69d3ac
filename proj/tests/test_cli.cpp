#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        const fs::path d =
            fs::temp_directory_path() / ("wigner_cli_tests_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Run the CLI with the given argument string; capture exit code and streams.
struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(WIGNER_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    out << content;
    REQUIRE(out.good());
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

double json_number(const std::string& text, const std::string& key) {
    const std::string tag = "\"" + key + "\":";
    const size_t pos = text.find(tag);
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + tag.size(), nullptr);
}

fs::path unit_disk_region() {
    const fs::path path = scratch_dir() / "disk1.json";
    write_file(path, "{\"kind\":\"disk\",\"center\":[0,0],\"radius\":1}");
    return path;
}

fs::path vacuum_state(int dim, double top_left) {
    const fs::path path = scratch_dir() / ("state_" + std::to_string(dim) + "_" +
                                           std::to_string(top_left) + ".json");
    std::ostringstream s;
    s << "{\"dim\":" << dim << ",\"rho\":[";
    for (int i = 0; i < dim; ++i) {
        s << (i ? ",[" : "[");
        for (int j = 0; j < dim; ++j) {
            const double re = (i == 0 && j == 0) ? top_left : 0.0;
            s << (j ? "," : "") << "[" << re << ",0]";
        }
        s << "]";
    }
    s << "]}";
    write_file(path, s.str());
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bounds reproduces the frozen unit-disk window, byte-stable") {
    const fs::path region = unit_disk_region();
    const fs::path out1 = scratch_dir() / "disk_bounds_1.json";
    const fs::path out2 = scratch_dir() / "disk_bounds_2.json";
    const RunResult r1 = run_cli("bounds --region " + region.string() +
                                 " --dims 16:32:64 --out " + out1.string());
    CHECK(r1.code == 0);
    const std::string text = read_file(out1);
    CHECK(contains(text, "\"lower\":-0.103638323514"));
    CHECK(contains(text, "\"upper\":0.632120558829"));
    CHECK(contains(text, "\"analytic\""));
    CHECK(contains(text, "\"assembly_residual\""));
    CHECK_FALSE(contains(text, "\"timing\""));

    const RunResult r2 = run_cli("bounds --region " + region.string() +
                                 " --dims 16:32:64 --out " + out2.string());
    CHECK(r2.code == 0);
    CHECK(read_file(out2) == text);

    const RunResult timed = run_cli("bounds --region " + region.string() +
                                    " --dims 16:32 --timing");
    CHECK(timed.code == 0);
    CHECK(contains(timed.out, "\"timing\""));
}

TEST_CASE("bounds accepts inline region JSON on stdout") {
    const RunResult r = run_cli(
        "bounds --region '{\"kind\":\"disk\",\"center\":[0,0],\"radius\":1}' --dims 16:32");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("{\"region\":{\"kind\":\"disk\"", 0) == 0);
}

TEST_CASE("malformed inputs exit 1 with an error line") {
    const fs::path bad = scratch_dir() / "bad_region.json";
    write_file(bad, "not json");
    RunResult r = run_cli("bounds --region " + bad.string());
    CHECK(r.code == 1);
    CHECK(contains(r.err, "error:"));

    r = run_cli("bounds --region " + scratch_dir().string() + "/absent_region.json");
    CHECK(r.code == 1);
    CHECK(contains(r.err, "error:"));

    // a dims ladder needs at least two rungs
    r = run_cli("bounds --region " + unit_disk_region().string() + " --dims 16");
    CHECK(r.code == 1);

    r = run_cli("");  // missing subcommand
    CHECK(r.code != 0);
}

TEST_CASE("unconverged ladders exit 2") {
    const RunResult r = run_cli(
        "bounds --region '{\"kind\":\"disk\",\"center\":[0,0],\"radius\":3}'"
        " --dims 4:8 --resolution 32 --tolerance 1e-12");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "did not converge"));
}

TEST_CASE("tabulate emits frozen closed-form tables") {
    const fs::path out = scratch_dir() / "disk_table.csv";
    const RunResult r =
        run_cli("tabulate disk --radius 1 --n-max 2 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(read_file(out) ==
          "n,(-1)^n int_0^{a^2} L_n(2u) e^{-u} du at a=1\n"
          "0,0.632120558829\n"
          "1,-0.103638323514\n"
          "2,-0.103638323514\n");

    const RunResult seg =
        run_cli("tabulate segment --length 3 --values 0:1.49780315264 --branch plus");
    CHECK(seg.code == 0);
    CHECK(contains(seg.out, "k,sin(k L)/(k pi) at L=3\n"));
    CHECK(contains(seg.out, "0,0.954929658551\n"));
    CHECK(contains(seg.out, "1.49780315264,-0.207442834414\n"));

    const RunResult circ = run_cli("tabulate circle --radius 1 --n-max 1");
    CHECK(circ.code == 0);
    CHECK(contains(circ.out, "0,0.735758882343\n"));
    CHECK(contains(circ.out, "1,0.735758882343\n"));

    CHECK(run_cli("tabulate segment --length 3 --values 1 --branch sideways").code == 1);
    CHECK(run_cli("tabulate sphere --radius 1").code == 1);
}

TEST_CASE("verify places the vacuum on the upper endpoint") {
    const fs::path state = vacuum_state(16, 1.0);
    const RunResult r = run_cli("verify --region " + unit_disk_region().string() +
                                " --state " + state.string() + " --dims 8:16");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"within_bounds\":true"));
    CHECK(contains(r.out, "\"extremal\":true"));
    CHECK(json_number(r.out, "value") == doctest::Approx(0.632120558829).epsilon(1e-9));

    const RunResult bad = run_cli("verify --region " + unit_disk_region().string() +
                                  " --state " + vacuum_state(16, 2.0).string() +
                                  " --dims 8:16");
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "trace"));

    // state dimension must match the final ladder rung
    const RunResult mismatched = run_cli("verify --region " + unit_disk_region().string() +
                                         " --state " + state.string() + " --dims 16:32");
    CHECK(mismatched.code == 1);
    CHECK(contains(mismatched.err, "dimension"));
}

TEST_CASE("ingest reaches a consistent verdict for the one-quantum grid") {
    const fs::path grid = scratch_dir() / "fock1.csv";
    {
        std::ostringstream s;
        s << "q,p,w\n";
        char buf[128];
        for (int i = 0; i < 201; ++i) {
            const double q = -6.0 + 12.0 * i / 200;
            for (int j = 0; j < 201; ++j) {
                const double p = -6.0 + 12.0 * j / 200;
                const double r2 = q * q + p * p;
                std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", q, p,
                              (2.0 * r2 - 1.0) * std::exp(-r2) * M_1_PI);
                s << buf;
            }
        }
        write_file(grid, s.str());
    }
    const RunResult r = run_cli("ingest --region " + unit_disk_region().string() +
                                " --grid " + grid.string() + " --dims 16:32");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"verdict\":\"consistent\""));
    CHECK(json_number(r.out, "mass") == doctest::Approx(-0.101858854383).epsilon(1e-9));
    CHECK(json_number(r.out, "noise_level") == 0.0);

    // a grid that does not cover the region is rejected
    const fs::path small = scratch_dir() / "small.csv";
    write_file(small, "q,p,w\n-0.4,-0.4,0\n-0.4,0.4,0\n0.4,-0.4,0\n0.4,0.4,0\n");
    const RunResult narrow = run_cli("ingest --region " + unit_disk_region().string() +
                                     " --grid " + small.string() + " --dims 8:16");
    CHECK(narrow.code == 1);
    CHECK(contains(narrow.err, "does not cover"));
}

TEST_CASE("version flag and temp-file hygiene") {
    const RunResult r = run_cli("--version");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "1.0.0"));
    for (const auto& entry : fs::directory_iterator(scratch_dir()))
        CHECK(entry.path().extension() != ".tmp");
}

}  // TEST_SUITE
