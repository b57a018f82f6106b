#include "teig/tensor_io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace teig;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const char* cli_bin()
{
    return std::getenv("TEIG_CLI_BIN");
}

struct TempDir {
    TempDir()
    {
        path = std::filesystem::temp_directory_path()
            / ("teig_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    std::filesystem::path path;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

CliResult run_cli(const TempDir& dir, const std::string& args)
{
    const std::string out_path = dir.file("stdout.txt");
    const std::string err_path = dir.file("stderr.txt");
    const std::string cmd =
        std::string(cli_bin()) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    return res;
}

} // namespace

TEST_SUITE_BEGIN("cli");

// The suite needs the built binary; TEIG_CLI_BIN is set by ctest.
#define REQUIRE_CLI()                                                                             \
    if (!cli_bin()) {                                                                             \
        MESSAGE("TEIG_CLI_BIN not set; skipping");                                                \
        return;                                                                                   \
    }

TEST_CASE("gen writes the expected number of values")
{
    REQUIRE_CLI();
    TempDir dir;
    const std::string tns = dir.file("a.tns");
    const CliResult res = run_cli(dir, "gen --example 1 --n 4 --out " + tns);
    CHECK(res.exit_code == 0);
    const SymmetricTensor t = read_tensor(tns);
    CHECK(t.order() == 4);
    CHECK(t.dim() == 4);
    CHECK(t.size() == 256);
}

TEST_CASE("gen is byte-deterministic for a fixed seed")
{
    REQUIRE_CLI();
    TempDir dir;
    const std::string a = dir.file("a.tns");
    const std::string b = dir.file("b.tns");
    CHECK(run_cli(dir, "gen --example 2 --n 3 --seed 7 --out " + a).exit_code == 0);
    CHECK(run_cli(dir, "gen --example 2 --n 3 --seed 7 --out " + b).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("gen rejects a size override for the fixed-size family")
{
    REQUIRE_CLI();
    TempDir dir;
    const CliResult res = run_cli(dir, "gen --example 5 --n 9 --out " + dir.file("x.tns"));
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("fixed n = 3") != std::string::npos);
}

TEST_CASE("eig finds the largest eigenvalue of the diagonal family")
{
    REQUIRE_CLI();
    TempDir dir;
    const std::string tns = dir.file("e7.tns");
    REQUIRE(run_cli(dir, "gen --example 7 --n 8 --out " + tns).exit_code == 0);
    const CliResult res = run_cli(dir, "eig --tensor " + tns
                                  + " --b zid --objective f2 --starts 6 --seed 3 --report "
                                  + dir.file("report.json"));
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("best lambda") != std::string::npos);
    CHECK(res.out.find("8.00000") != std::string::npos); // 80 in scientific notation
    CHECK(std::filesystem::exists(dir.file("report.json")));
}

TEST_CASE("psd classifies the zero tensor as semidefinite")
{
    REQUIRE_CLI();
    TempDir dir;
    const std::string tns = dir.file("zero.tns");
    write_tensor(tns, SymmetricTensor::zeros(4, 3));
    const CliResult res = run_cli(dir, "psd --tensor " + tns
                                  + " --b zid --trials 10 --seed 5 --json " + dir.file("v.json"));
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("positive semidefinite") != std::string::npos);
    const std::string json = slurp(dir.file("v.json"));
    CHECK(json.find("\"decision\"") != std::string::npos);
}

TEST_CASE("non-symmetric tensor files are rejected")
{
    REQUIRE_CLI();
    TempDir dir;
    const std::string tns = dir.file("asym.tns");
    std::vector<double> raw(16, 0.0);
    raw[1] = 1.0;
    write_tensor(tns, SymmetricTensor(4, 2, raw, false));
    const CliResult res = run_cli(dir, "psd --tensor " + tns + " --trials 2");
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("not symmetric") != std::string::npos);
}

TEST_CASE("bench rejects unknown suites with the suite list")
{
    REQUIRE_CLI();
    TempDir dir;
    const CliResult res = run_cli(dir, "bench --suite table9 --out " + dir.file("out"));
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("table1") != std::string::npos);
}

TEST_CASE("timing lines are prefixed for filtering")
{
    REQUIRE_CLI();
    TempDir dir;
    const std::string tns = dir.file("e1.tns");
    REQUIRE(run_cli(dir, "gen --example 1 --n 3 --out " + tns).exit_code == 0);
    const CliResult res =
        run_cli(dir, "eig --tensor " + tns + " --b zid --objective f1 --starts 2 --seed 1");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("time:") != std::string::npos);
}

TEST_SUITE_END();
