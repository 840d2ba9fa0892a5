// End-to-end tests of the command-line surface: exit codes, CSV shape,
// determinism, and the documented classification outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "spinphase/config.hpp"
#include "spinphase/dynamics.hpp"

namespace fs = std::filesystem;
using namespace spinphase;

namespace {

const fs::path kDir = fs::path("cli_test_work");

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args) {
    const fs::path log = kDir / "last_run.log";
    const std::string cmd =
        std::string(SPINPHASE_BIN) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::ostringstream buf;
    buf << in.rdbuf();
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, buf.str()};
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int column_index(const std::vector<std::string>& header, const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

struct DirSetup {
    DirSetup() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
};
const DirSetup g_setup;

} // namespace

TEST_CASE("simulate: ket01 scenario row count and final concurrence") {
    write_file(kDir / "ket01.cfg", "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\n"
                                   "J = 0.2\ninitial_state = ket01\nt_final = 2\n"
                                   "steps = 1024\ndegeneracy_policy = skip\n");
    const fs::path out = kDir / "ket01.csv";
    const RunResult r =
        run("simulate --config " + (kDir / "ket01.cfg").string() + " --out " + out.string());
    REQUIRE(r.exit_code == 0);

    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 1026); // header + 1025 grid points
    const int conc = column_index(rows[0], "concurrence");
    const int tcol = column_index(rows[0], "t");
    REQUIRE(conc >= 0);
    const double final_c = std::stod(rows.back()[conc]);
    CHECK(std::stod(rows.back()[tcol]) == 2.0);
    CHECK(std::fabs(final_c - std::fabs(std::sin(4 * 0.2 * 2.0))) < 1e-6);
}

TEST_CASE("simulate: singlet scenario keeps gamma_ab at zero") {
    write_file(kDir / "singlet.cfg", "B = 1\ntheta = 0.7\nomega = 0.4\nJ = 0.3\n"
                                     "initial_state = singlet\nt_final = 4\nsteps = 512\n"
                                     "degeneracy_policy = skip\n");
    const fs::path out = kDir / "singlet.csv";
    const RunResult r =
        run("simulate --config " + (kDir / "singlet.cfg").string() + " --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto rows = read_csv(out);
    const int wrapped = column_index(rows[0], "gamma_ab_wrapped");
    for (size_t i = 1; i < rows.size(); ++i) {
        const double g = std::stod(rows[i][wrapped]);
        CHECK(std::fabs(std::remainder(g, 2 * M_PI)) < 1e-8);
    }
}

TEST_CASE("simulate: always-separable custom amplitudes stay separable") {
    // Materialize the coefficient family (0, 1/sqrt2, -1/2, 1/2) in the mode
    // basis of the scenario parameters.
    const ModelParams p{1.0, M_PI / 3, 0.5, 0.2};
    const ModeCoefficients c{
        {0.0, Complex(1 / std::sqrt(2.0)), Complex(-0.5), Complex(0.5)}};
    const PureState4 psi0 = normalized(propagate_analytic(p, c, 0.0));
    std::ostringstream cfg;
    cfg << "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\nJ = 0.2\n"
        << "initial_state = custom\namplitudes =";
    for (int k = 0; k < 4; ++k)
        cfg << " " << fmt17(psi0.f[k].real()) << "," << fmt17(psi0.f[k].imag());
    cfg << "\nt_final = 3\nsteps = 256\ndegeneracy_policy = skip\n";
    write_file(kDir / "custom.cfg", cfg.str());

    const fs::path out = kDir / "custom.csv";
    const RunResult r =
        run("simulate --config " + (kDir / "custom.cfg").string() + " --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto rows = read_csv(out);
    const int conc = column_index(rows[0], "concurrence");
    for (size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][conc]) < 1e-8);
}

TEST_CASE("simulate: byte-identical output on identical config") {
    const fs::path out1 = kDir / "det1.csv";
    const fs::path out2 = kDir / "det2.csv";
    const std::string cfg = (kDir / "ket01.cfg").string();
    REQUIRE(run("simulate --config " + cfg + " --out " + out1.string()).exit_code == 0);
    REQUIRE(run("simulate --config " + cfg + " --out " + out2.string()).exit_code == 0);
    CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("simulate: interior degeneracy under the error policy exits with 3") {
    write_file(kDir / "deg.cfg", "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\nJ = 0.5\n"
                                 "initial_state = ket01\nt_final = 3\nsteps = 512\n"
                                 "degeneracy_policy = error\n");
    const RunResult r = run("simulate --config " + (kDir / "deg.cfg").string() + " --out " +
                            (kDir / "deg.csv").string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("degenerate") != std::string::npos);
}

TEST_CASE("simulate: invalid config exits with 2 and a diagnostic") {
    write_file(kDir / "bad.cfg", "B = 1\nbogus = 7\n");
    const RunResult r = run("simulate --config " + (kDir / "bad.cfg").string() + " --out " +
                            (kDir / "bad.csv").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 2") != std::string::npos);
}

TEST_CASE("verify: filter runs only the concurrence checks") {
    const RunResult r = run("verify --only concurrence");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("concurrence_closed_form") != std::string::npos);
    CHECK(r.output.find("concurrence_separability_condition") != std::string::npos);
    CHECK(r.output.find("concurrence_recurrence_additivity") != std::string::npos);
    CHECK(r.output.find("propagator_agreement") == std::string::npos);
    CHECK(r.output.find("3 checks, all passed") != std::string::npos);
}

TEST_CASE("verify: injected exchange-sign fault fails the propagator check") {
    const RunResult r = run("verify --only propagator_agreement --inject-fault exchange-sign");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("sweep: J axis shows the additivity residual growing from zero") {
    write_file(kDir / "sweepbase.cfg", "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\n"
                                       "J = 0\ninitial_state = ket01\nt_final = 1\n"
                                       "steps = 2048\ndegeneracy_policy = skip\n");
    const fs::path out = kDir / "sweep_j.csv";
    const RunResult r = run("sweep --config " + (kDir / "sweepbase.cfg").string() +
                            " --axis J --min 0 --max 1 --count 5 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 6);
    const int res = column_index(rows[0], "additivity_residual");
    CHECK(std::stod(rows[1][res]) < 1e-6); // J = 0
    double max_res = 0.0;
    for (size_t i = 2; i < rows.size(); ++i) max_res = std::max(max_res, std::stod(rows[i][res]));
    CHECK(max_res > 1e-3);
}

TEST_CASE("sweep: theta axis at omega = 0 reports eta = theta") {
    write_file(kDir / "sweeptheta.cfg", "B = 1\ntheta = 0\nomega = 0\nJ = 0.2\n"
                                        "initial_state = ket00\nt_final = 1\nsteps = 256\n"
                                        "degeneracy_policy = skip\n");
    const fs::path out = kDir / "sweep_theta.csv";
    const RunResult r = run("sweep --config " + (kDir / "sweeptheta.cfg").string() +
                            " --axis theta --min 0 --max 3.141592653589793 --count 7 --out " +
                            out.string());
    REQUIRE(r.exit_code == 0);
    const auto rows = read_csv(out);
    const int eta = column_index(rows[0], "eta");
    const int value = column_index(rows[0], "value");
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(std::fabs(std::stod(rows[i][eta]) - std::stod(rows[i][value])) < 1e-9);
}

TEST_CASE("sweep: omega axis with B = 0 and ket00 keeps all phases at zero") {
    write_file(kDir / "sweepomega.cfg", "B = 0\ntheta = 0.5\nomega = 0\nJ = 0.4\n"
                                        "initial_state = ket00\nt_final = 2\nsteps = 512\n"
                                        "degeneracy_policy = skip\n");
    const fs::path out = kDir / "sweep_omega.csv";
    const RunResult r = run("sweep --config " + (kDir / "sweepomega.cfg").string() +
                            " --axis omega --min -1 --max 1 --count 5 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto rows = read_csv(out);
    for (const char* col : {"gamma_ab_wrapped", "gamma_a", "gamma_b"}) {
        const int idx = column_index(rows[0], col);
        for (size_t i = 1; i < rows.size(); ++i)
            CHECK(std::fabs(std::remainder(std::stod(rows[i][idx]), 2 * M_PI)) < 1e-8);
    }
}

TEST_CASE("separability: classification of the three reference states") {
    write_file(kDir / "sep00.cfg", "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\nJ = 0.5\n"
                                   "initial_state = ket00\nt_final = 2\nsteps = 256\n");
    RunResult r = run("separability --config " + (kDir / "sep00.cfg").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("always_separable: true") != std::string::npos);

    write_file(kDir / "sep01.cfg", "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\nJ = 0.5\n"
                                   "initial_state = ket01\nt_final = 2\nsteps = 256\n");
    r = run("separability --config " + (kDir / "sep01.cfg").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("always_separable: false") != std::string::npos);
    CHECK(r.output.find("cyclic_separable: true") != std::string::npos);
    CHECK(r.output.find("recurrence_period: " + fmt17(M_PI / 2)) != std::string::npos);

    write_file(kDir / "sepsing.cfg", "B = 1\ntheta = 1.0471975511965976\nomega = 0.5\nJ = 0.5\n"
                                     "initial_state = singlet\nt_final = 2\nsteps = 256\n");
    r = run("separability --config " + (kDir / "sepsing.cfg").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("always_separable: false") != std::string::npos);
    CHECK(r.output.find("cyclic_separable: false") != std::string::npos);

    // alpha = 0: classification unavailable, numeric-domain exit code.
    write_file(kDir / "sepres.cfg", "B = 1\ntheta = 0\nomega = 2\nJ = 0.5\n"
                                    "initial_state = ket01\nt_final = 2\nsteps = 256\n");
    r = run("separability --config " + (kDir / "sepres.cfg").string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("classification unavailable") != std::string::npos);
}

TEST_CASE("separability: optional concurrence CSV") {
    const fs::path out = kDir / "sep01.csv";
    const RunResult r = run("separability --config " + (kDir / "sep01.cfg").string() +
                            " --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 258); // header + steps + 1 samples
    CHECK(rows[0][0] == "t");
    CHECK(rows[0][1] == "concurrence");
}

TEST_CASE("separability: tolerance override and gauge flag") {
    // A huge separability tolerance accepts any coefficient vector.
    RunResult r = run("separability --config " + (kDir / "sep01.cfg").string() +
                      " --tol separability=10");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("always_separable: true") != std::string::npos);

    r = run("separability --config " + (kDir / "sep01.cfg").string() + " --gauge psi3-pi");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("gauge: psi3-pi") != std::string::npos);
    CHECK(r.output.find("|c2^2 - 2 c3 c4|") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("sweep --axis Q --min 0 --max 1 --count 3").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("simulate --config does_not_exist.cfg").exit_code == 2);
}
