#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pairbec-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI binary with the given arguments, capturing exit code and both
// streams through files inside the temp dir.
RunResult run_cli(const TempDir& dir, const std::string& args) {
    const fs::path out_file = dir.path / "stdout.txt";
    const fs::path err_file = dir.path / "stderr.txt";
    const std::string cmd = std::string(PAIRBEC_CLI_PATH) + " " + args + " >" +
                            out_file.string() + " 2>" + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream is(line);
    std::string field;
    while (std::getline(is, field, ',')) fields.push_back(field);
    return fields;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("spectrum1d writes CSV and JSONL files with the closed-form levels") {
    TempDir dir;
    const fs::path csv = dir.path / "s.csv";
    const RunResult r = run_cli(
        dir, "spectrum1d --alpha 0 --d 1 --k 3 --out " + csv.string());
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.empty());  // table goes to the file, not stdout

    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "alpha,d,n,eps_dirichlet,eps_neumann");
    const double pi = std::acos(-1.0);
    for (int n = 0; n < 3; ++n) {
        const auto f = csv_fields(lines[n + 1]);
        REQUIRE(f.size() == 5);
        CHECK(std::stod(f[0]) == 0.0);
        CHECK(std::stod(f[1]) == 1.0);
        CHECK(std::stod(f[2]) == static_cast<double>(n));
        // alpha = 0 closed forms: 2 (n + 1/2)^2 pi^2 and 2 n^2 pi^2
        CHECK(std::stod(f[3]) ==
              doctest::Approx(2.0 * (n + 0.5) * (n + 0.5) * pi * pi)
                  .epsilon(1e-12));
        CHECK(std::stod(f[4]) ==
              doctest::Approx(2.0 * n * n * pi * pi).epsilon(1e-12));
    }

    const fs::path jsonl = dir.path / "s.jsonl";
    REQUIRE(fs::exists(jsonl));
    const auto jlines = lines_of(slurp(jsonl));
    REQUIRE(jlines.size() == 3);
    CHECK(contains(jlines[0], "\"alpha\":0"));
    CHECK(contains(jlines[0], "\"n\":0"));
    CHECK(contains(jlines[0], "\"eps_dirichlet\":"));
}

TEST_CASE("without an output path the table is printed to stdout") {
    TempDir dir;
    const RunResult r = run_cli(dir, "spectrum1d --alpha 0 --d 1 --k 1");
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "alpha,d,n,eps_dirichlet,eps_neumann");
    CHECK(contains(lines[1], "4.93480220054467"));
}

TEST_CASE("help exits cleanly and lists the subcommands") {
    TempDir dir;
    const RunResult r = run_cli(dir, "--help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "spectrum1d"));
    CHECK(contains(r.out, "condensate"));
    CHECK(contains(r.out, "trace-probe"));
}

TEST_CASE("invalid input exits with code 2") {
    TempDir dir;
    SUBCASE("missing subcommand") {
        CHECK(run_cli(dir, "").code == 2);
    }
    SUBCASE("unknown subcommand") {
        CHECK(run_cli(dir, "frobnicate").code == 2);
    }
    SUBCASE("mesh subdivision below the minimum") {
        const RunResult r = run_cli(dir, "spectrum1d --m 1");
        CHECK(r.code == 2);
        CHECK(contains(r.err, "error:"));
    }
    SUBCASE("negative coupling") {
        CHECK(run_cli(dir, "spectrum1d --alpha -1").code == 2);
    }
    SUBCASE("unknown config key") {
        const fs::path cfg = dir.path / "bad.cfg";
        std::ofstream(cfg) << "frobnicate = 1\n";
        const RunResult r =
            run_cli(dir, "--config " + cfg.string() + " spectrum1d");
        CHECK(r.code == 2);
        CHECK(contains(r.err, "unknown config key 'frobnicate'"));
    }
    SUBCASE("missing config file") {
        const RunResult r = run_cli(
            dir, "--config " + (dir.path / "absent.cfg").string() +
                     " spectrum1d");
        CHECK(r.code == 2);
    }
}

TEST_CASE("an exhausted eigensolver budget exits with code 3") {
    TempDir dir;
    const RunResult r =
        run_cli(dir, "trace-probe --alpha 1 --L 4 --m 4 --k 3 "
                     "--max-iterations 1");
    CHECK(r.code == 3);
    CHECK(contains(r.err, "error:"));
    CHECK(contains(r.err, "iteration budget"));
}

TEST_CASE("a failed verification still writes the table and exits with 4") {
    TempDir dir;
    const fs::path csv = dir.path / "counts.csv";
    // At alpha = 5 on the m = 4 mesh the L = 1.2 box squeezes the bound state
    // above the essential spectrum (count 0) while L = 20 keeps it bound
    // (count 1), so the constancy check genuinely fails.
    const RunResult r = run_cli(
        dir, "count-vs-L --alpha 5 --L 1.2,20 --m 4 --k 4 --out " +
                 csv.string());
    CHECK(r.code == 4);
    CHECK(contains(r.err, "check failed:"));
    CHECK(contains(r.err, "varies with L"));

    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "alpha,d,L,m,threshold,count");
    const auto small_box = csv_fields(lines[1]);
    const auto large_box = csv_fields(lines[2]);
    REQUIRE(small_box.size() == 6);
    REQUIRE(large_box.size() == 6);
    CHECK(std::stod(small_box[2]) == 1.2);
    CHECK(small_box[5] == "0");
    CHECK(std::stod(large_box[2]) == 20.0);
    CHECK(large_box[5] == "1");
    CHECK(fs::exists(dir.path / "counts.jsonl"));
}

TEST_CASE("mesh dumps are written before the experiment runs") {
    TempDir dir;
    SUBCASE("single box size writes to the exact path") {
        const fs::path mesh = dir.path / "mesh.txt";
        const RunResult r = run_cli(
            dir, "spectrum1d --alpha 0 --k 1 --L 2 --m 2 --dump-mesh " +
                     mesh.string() + " --out " + (dir.path / "s.csv").string());
        CHECK(r.code == 0);
        REQUIRE(fs::exists(mesh));
        const auto lines = lines_of(slurp(mesh));
        REQUIRE(!lines.empty());
        CHECK(contains(lines[0], "# strip-mesh"));
    }
    SUBCASE("several box sizes get a suffix per box") {
        const fs::path mesh = dir.path / "mm.txt";
        const RunResult r = run_cli(
            dir, "spectrum1d --alpha 0 --k 1 --L 2,3 --m 2 --dump-mesh " +
                     mesh.string() + " --out " + (dir.path / "s.csv").string());
        CHECK(r.code == 0);
        CHECK(!fs::exists(mesh));
        CHECK(fs::exists(dir.path / "mm.txt_L2"));
        CHECK(fs::exists(dir.path / "mm.txt_L3"));
    }
}

TEST_CASE("config files drive the run and command-line flags override them") {
    TempDir dir;
    const fs::path cfg = dir.path / "run.cfg";
    const fs::path csv = dir.path / "cfg.csv";
    std::ofstream(cfg) << "# comment line\n"
                          "d = 1\n"
                          "alpha = 0\n"
                          "k = 2\n"
                          "out = " +
                              csv.string() + "\n";
    const RunResult file_only =
        run_cli(dir, "--config " + cfg.string() + " spectrum1d");
    CHECK(file_only.code == 0);
    CHECK(lines_of(slurp(csv)).size() == 3);  // header + two levels

    const RunResult overridden =
        run_cli(dir, "--config " + cfg.string() + " spectrum1d --k 1");
    CHECK(overridden.code == 0);
    CHECK(lines_of(slurp(csv)).size() == 2);  // override wins over the file
}
