#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "slapmap/cli.hpp"

using namespace slapmap;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "slapmap");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("slapmap_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter;
    std::string str() const { return path.string(); }
};
int TempDir::counter = 0;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::string s((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
    return s;
}

}  // namespace

TEST_CASE("argument errors exit with code 1") {
    CHECK(run({}) == 1);
    CHECK(run({"regular"}) == 1);
    CHECK(run({"regular", "two"}) == 1);
    CHECK(run({"nonergodic", "1"}) == 1);
    CHECK(run({"analyze", "/nonexistent/file.json"}) == 1);
    CHECK(run({"regular", "5", "--format", "xml"}) == 1);
}

TEST_CASE("regular pentagon matches its prediction") {
    TempDir dir;
    CHECK(run({"regular", "5", "--bins", "800", "--out", dir.str()}) == 0);
    std::string report = slurp(dir.path / "regular.json");
    CHECK(report.find("\"match\": true") != std::string::npos);
}

TEST_CASE("even d is reported as an involution without analysis") {
    TempDir dir;
    CHECK(run({"regular", "6", "--out", dir.str()}) == 0);
    std::string report = slurp(dir.path / "regular.json");
    CHECK(report.find("involution") != std::string::npos);
}

TEST_CASE("global options parse after the subcommand") {
    TempDir dir;
    CHECK(run({"regular", "5", "--bins", "600", "--out", dir.str()}) == 0);
}

TEST_CASE("analyze classifies parallel facing sides as non-expanding") {
    TempDir dir;
    fs::create_directories(dir.path);
    fs::path file = dir.path / "square.json";
    std::ofstream(file) << R"({"vertices": [[0,0],[1,0],[1,1],[0,1]]})";
    CHECK(run({"analyze", file.string()}) == 3);
}

TEST_CASE("analyze writes a report and densities for a valid polygon") {
    TempDir dir;
    fs::create_directories(dir.path);
    fs::path file = dir.path / "tri.json";
    std::ofstream(file) << R"({"vertices": [[0,0],[1,0],[0.5,0.866025403784439]]})";
    CHECK(run({"analyze", file.string(), "--bins", "800", "--out", dir.str()}) == 0);
    std::string report = slurp(dir.path / "analyze.json");
    CHECK(report.find("\"components\"") != std::string::npos);
    CHECK(fs::exists(dir.path / "analyze_density_0.csv"));
}

TEST_CASE("csv format emits the tabular report") {
    TempDir dir;
    CHECK(run({"triangle", "0.5", "0.7", "--bins", "800", "--format", "csv",
               "--out", dir.str()}) == 0);
    std::string csv = slurp(dir.path / "triangle.csv");
    CHECK(csv.find("component,period,support_lo,support_hi") == 0);
}

TEST_CASE("kite solve reports the verified orbit") {
    TempDir dir;
    CHECK(run({"kite", "solve", "--out", dir.str()}) == 0);
    std::string report = slurp(dir.path / "kite_solve.json");
    CHECK(report.find("\"orbit_verified\": true") != std::string::npos);
}

TEST_CASE("nonergodic runs verify the component structure") {
    TempDir dir;
    CHECK(run({"nonergodic", "2", "--bins", "1500", "--out", dir.str()}) == 0);
    std::string report = slurp(dir.path / "nonergodic.json");
    CHECK(report.find("\"apex_angle\"") != std::string::npos);
}

TEST_CASE("reports are byte identical across runs") {
    TempDir a, b;
    REQUIRE(run({"regular", "7", "--bins", "700", "--out", a.str()}) == 0);
    REQUIRE(run({"regular", "7", "--bins", "700", "--out", b.str()}) == 0);
    CHECK(slurp(a.path / "regular.json") == slurp(b.path / "regular.json"));
}
