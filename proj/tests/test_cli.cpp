#include "doctest.h"
#include "ttw/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ttw;
using doctest::Approx;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result lab(std::vector<std::string> args)
{
    args.insert(args.begin(), "ttw_lab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("spectrum rows")
{
    auto r = lab({"spectrum", "--k", "1", "--a", "1", "--b", "1", "--N-max", "1", "--n-max", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["rows"][0]["E"].get<double>() == Approx(6));
    CHECK(j["rows"][0]["tau"].get<double>() == Approx(1.5));
    CHECK(j["rows"][0]["q"].get<double>() == Approx(-1.5));

    r = lab({"spectrum"});
    const auto d = nlohmann::json::parse(r.out);
    for (const auto& row : d["rows"])
        if (row["N"] == 0 && row["n"] == 1) {
            CHECK(row["qhat_plus"].get<double>() == Approx(11));
            CHECK(row["qhat_minus"].get<double>() == Approx(-10));
        }
    CHECK(nlohmann::json::parse(d.dump()) == d);

    r = lab({"spectrum", "--format", "csv"});
    CHECK(r.out.rfind("N,n,E,tau,q,qhat_plus,qhat_minus\n", 0) == 0);
}

TEST_CASE("config file and overrides")
{
    const auto path = temp_file("ttw_cfg.json", R"({"k": 1, "a": 1, "b": 1, "N_max": 2, "n_max": 2,
                                                    "tolerances": {"relations": 1e-6}})");
    auto r = lab({"spectrum", "--config", path, "--b", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["b"].get<double>() == Approx(2));
    CHECK(j["config"]["N_max"] == 2);
    CHECK(j["config"]["quad_radial"] == 16);
    CHECK(j["config"]["tolerances"]["relations"].get<double>() == Approx(1e-6));

    const auto bad = temp_file("ttw_bad.json", R"({"k": 1, "kappa": 2})");
    r = lab({"spectrum", "--config", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("kappa") != std::string::npos);

    const auto bad_tol = temp_file("ttw_bad_tol.json", R"({"tolerances": {"relations": -1}})");
    CHECK(lab({"spectrum", "--config", bad_tol}).code == 2);
    CHECK(lab({"spectrum", "--config", "/nonexistent/cfg.json"}).code == 2);
    CHECK(lab({"spectrum", "--a", "0.5"}).code == 2);
    CHECK(lab({"spectrum", "--quad-radial", "4"}).code == 2);
    CHECK(lab({"frobnicate"}).code == 2);
}

TEST_CASE("verify both sets")
{
    const auto r = lab({"verify", "--set", "both", "--N-max", "3", "--n-max", "2"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["passed"] == true);
    REQUIRE(j["relations"].size() == 2);
    CHECK(j["relations"][0]["generator_set"] == "standard");
    CHECK(j["relations"][1]["generator_set"] == "chiral");
}

TEST_CASE("verify is deterministic")
{
    const auto a = lab({"verify", "--set", "chiral", "--N-max", "2", "--n-max", "1"});
    const auto b = lab({"verify", "--set", "chiral", "--N-max", "2", "--n-max", "1"});
    CHECK(a.out == b.out);
}

TEST_CASE("swapped jacobi parameters fail verification")
{
    const auto r = lab({"verify", "--set", "standard", "--N-max", "2", "--n-max", "2", "--debug-swap-jacobi"});
    CHECK(r.code == 1);
    CHECK(r.err.find("angular_eigencheck") != std::string::npos);
    CHECK(r.err.find("spectrum") != std::string::npos);
}

TEST_CASE("basis dump")
{
    auto r = lab({"basis-dump", "--sector", "zero_fermion", "--n", "1", "--N", "1", "--grid", "30"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "r,phi,c0,c1,c2,c3");
    int rows = 0;
    while (std::getline(in, line)) {
        double v[6];
        char comma;
        std::istringstream ls(line);
        ls >> v[0];
        for (int i = 1; i < 6; ++i) ls >> comma >> v[i];
        CHECK(v[3] == 0);
        CHECK(v[4] == 0);
        CHECK(v[5] == 0);
        ++rows;
    }
    CHECK(rows == 900);

    const auto two = cli::basis_dump(ModelParams{}, {Sector::two_fermion, 2, 1}, 40);
    for (const auto& row : two.rows) CHECK(std::abs(row[2]) + std::abs(row[3]) + std::abs(row[4]) == 0);

    CHECK(lab({"basis-dump", "--sector", "two_fermion", "--n", "0", "--N", "1"}).code == 2);
    CHECK(lab({"basis-dump", "--sector", "bogus", "--n", "1", "--N", "1"}).code == 2);
}

TEST_CASE("basis dump norm on a 400x400 grid")
{
    for (Sector s : {Sector::zero_fermion, Sector::one_fermion_minus, Sector::one_fermion_plus,
                     Sector::two_fermion}) {
        const auto d = cli::basis_dump(ModelParams{}, {s, 1, 2}, 400);
        CHECK(d.trapezoid_norm == Approx(1).epsilon(0.01));
    }
    const auto d = cli::basis_dump(ModelParams{0.5, 1.5, 1.5, 1.0}, {Sector::zero_fermion, 0, 0}, 400);
    CHECK(d.trapezoid_norm == Approx(1).epsilon(0.01));
}

TEST_CASE("casimir and irreps commands")
{
    auto r = lab({"irreps", "--N-max", "2", "--n-max", "1"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["irreps"].size() == 2);
    CHECK(j["irreps"][1]["blocks"].size() == 3);
    r = lab({"casimir", "--N-max", "2", "--n-max", "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("chiral,1,") != std::string::npos);
}

TEST_CASE("output file")
{
    const auto path = (std::filesystem::temp_directory_path() / "ttw_spectrum.json").string();
    std::remove(path.c_str());
    REQUIRE(lab({"spectrum", "--out", path}).code == 0);
    std::ifstream f(path);
    CHECK(nlohmann::json::parse(f)["command"] == "spectrum");
}
