#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "pairbec/config.hpp"
#include "pairbec/errors.hpp"
#include "pairbec/table.hpp"

using namespace pairbec;

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
               ("pairbec-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("numbers are printed with 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(-0.25) == "-0.25");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    // round trip: parsing the printed form recovers the double exactly
    const double v = 3.0 / 7.0;
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("table shape is validated") {
    CHECK_THROWS_AS(Table({}), InputError);
    Table t({"a", "b"});
    CHECK_THROWS_AS(t.add_row({1.0}), InputError);
    t.add_row({1.0, std::string("x")});
    CHECK(t.row_count() == 1);
}

TEST_CASE("csv output with quoting") {
    Table t({"alpha", "label"});
    t.add_row({0.5, std::string("plain")});
    t.add_row({std::numeric_limits<double>::infinity(),
               std::string("a,b \"quoted\"")});
    t.add_row({static_cast<long long>(7), std::string("n")});
    std::ostringstream os;
    t.write_csv(os);
    CHECK(os.str() ==
          "alpha,label\n"
          "0.5,plain\n"
          "inf,\"a,b \"\"quoted\"\"\"\n"
          "7,n\n");
}

TEST_CASE("json lines output") {
    Table t({"alpha", "n", "name"});
    t.add_row({0.5, static_cast<long long>(3), std::string("x\"y")});
    t.add_row({std::numeric_limits<double>::infinity(),
               static_cast<long long>(-1), std::string("z")});
    std::ostringstream os;
    t.write_jsonl(os);
    CHECK(os.str() ==
          "{\"alpha\":0.5,\"n\":3,\"name\":\"x\\\"y\"}\n"
          "{\"alpha\":\"inf\",\"n\":-1,\"name\":\"z\"}\n");
}

TEST_CASE("file output writes the jsonl twin") {
    TempDir tmp;
    Table t({"a"});
    t.add_row({1.25});
    const fs::path csv = tmp.path / "result.csv";
    t.write_files(csv.string());
    CHECK(slurp(csv) == "a\n1.25\n");
    CHECK(slurp(tmp.path / "result.jsonl") == "{\"a\":1.25}\n");

    const fs::path bare = tmp.path / "plain";
    t.write_files(bare.string());
    CHECK(fs::exists(tmp.path / "plain"));
    CHECK(fs::exists(tmp.path / "plain.jsonl"));
}

TEST_CASE("config keys parse into typed fields") {
    RunConfig c;
    apply_config_key(c, "d", "2.5");
    apply_config_key(c, "alpha", "1,0,inf,1");
    apply_config_key(c, "L", "10, 5");
    apply_config_key(c, "m", "6");
    apply_config_key(c, "beta", "0.7");
    apply_config_key(c, "rho", "0.2");
    apply_config_key(c, "k", "12");
    apply_config_key(c, "tol", "1e-9");
    apply_config_key(c, "out", " results.csv ");
    apply_config_key(c, "seed", "99");
    apply_config_key(c, "threads", "2");
    apply_config_key(c, "node-budget", "5000");
    apply_config_key(c, "max-iterations", "77");
    finalize_config(c);

    CHECK(c.d == 2.5);
    REQUIRE(c.alpha.size() == 3);  // sorted, deduplicated
    CHECK(c.alpha[0] == 0.0);
    CHECK(c.alpha[1] == 1.0);
    CHECK(std::isinf(c.alpha[2]));
    CHECK(c.L == std::vector<double>{5.0, 10.0});
    CHECK(c.m == 6);
    CHECK(c.beta == 0.7);
    CHECK(c.k == 12);
    CHECK(c.tol == 1e-9);
    CHECK(c.out == "results.csv");
    CHECK(c.seed == 99);
    CHECK(c.threads == 2);
    CHECK(c.node_budget == 5000);
    CHECK(c.max_iterations == 77);
    // explicit keys are recorded (used for sweep defaults)
    bool saw_alpha = false;
    for (const auto& k : c.provided_keys) saw_alpha |= (k == "alpha");
    CHECK(saw_alpha);
}

TEST_CASE("unknown and malformed keys are rejected") {
    RunConfig c;
    CHECK_THROWS_WITH_AS(apply_config_key(c, "frobnicate", "1"),
                         doctest::Contains("unknown config key 'frobnicate'"),
                         InputError);
    CHECK_THROWS_AS(apply_config_key(c, "d", "abc"), InputError);
    CHECK_THROWS_AS(apply_config_key(c, "d", ""), InputError);
    CHECK_THROWS_AS(apply_config_key(c, "d", "nan"), InputError);
    CHECK_THROWS_AS(apply_config_key(c, "m", "2.5"), InputError);
    CHECK_THROWS_AS(apply_config_key(c, "node-budget", "0"), InputError);
}

TEST_CASE("config validation catches inconsistent values") {
    auto broken = [](auto mutate) {
        RunConfig c;
        mutate(c);
        CHECK_THROWS_AS(finalize_config(c), InputError);
    };
    broken([](RunConfig& c) { c.d = 0.0; });
    broken([](RunConfig& c) { c.d = 25.0; });  // default L = 20 <= d
    broken([](RunConfig& c) { c.alpha = {-1.0}; });
    broken([](RunConfig& c) { c.alpha.clear(); });
    broken([](RunConfig& c) { c.L = {std::numeric_limits<double>::infinity()}; });
    broken([](RunConfig& c) { c.m = 1; });
    broken([](RunConfig& c) { c.beta = 0.0; });
    broken([](RunConfig& c) { c.rho = {0.0}; });
    broken([](RunConfig& c) { c.k = 0; });
    broken([](RunConfig& c) { c.tol = 0.0; });
    broken([](RunConfig& c) { c.threads = -1; });
    broken([](RunConfig& c) { c.max_iterations = 0; });
}

TEST_CASE("config files support comments and report line numbers") {
    TempDir tmp;
    const fs::path good = tmp.path / "good.cfg";
    {
        std::ofstream out(good);
        out << "# full sweep\n"
            << "\n"
            << "alpha = 0, 1   # list\n"
            << "L=25,30\n"
            << "  m = 4\n";
    }
    RunConfig c = parse_config_file(good.string());
    finalize_config(c);
    CHECK(c.alpha == std::vector<double>{0.0, 1.0});
    CHECK(c.L == std::vector<double>{25.0, 30.0});
    CHECK(c.m == 4);

    const fs::path bad = tmp.path / "bad.cfg";
    {
        std::ofstream out(bad);
        out << "alpha = 1\n"
            << "no equals sign here\n";
    }
    CHECK_THROWS_WITH_AS(parse_config_file(bad.string()),
                         doctest::Contains("line 2"), InputError);
    CHECK_THROWS_AS(parse_config_file((tmp.path / "missing.cfg").string()),
                    InputError);
}
