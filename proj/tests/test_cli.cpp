#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "diskdet/cli.hpp"

using namespace diskdet::cli;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("diskdet_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("zeros as csv")
{
    const auto r = call({"zeros", "--nu", "0", "--count", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("nu,l,zero\n0,1,2.404825557695773", 0) == 0);
    CHECK(r.out.find("0,2,5.5200781102863") != std::string::npos);
    CHECK(r.out.find("0,3,8.653727912911") != std::string::npos);
}

TEST_CASE("index from kappa")
{
    const auto r = call({"index", "--kappa", "2.5"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["index"] == json::array({3, 3, 3}));
}

TEST_CASE("det on the free disk")
{
    const auto path = write_temp("free.json", R"({"radius": 1, "profile": {"type": "polynomial", "coefficients": [0]}})");
    const auto r = call({"det", "--config", path});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["total_re"] == 0.0);
    CHECK(j["total_im"] == 0.0);
    CHECK(j["index"] == json::array({0, 0, 0}));
    CHECK(r.out.find("\"kappa\"") < r.out.find("\"total_re\""));
}

TEST_CASE("det output is deterministic and carries the phase")
{
    const auto path = write_temp("gauss.json", R"({"radius": 1, "profile": {"type": "polynomial", "coefficients": [0, -0.5]}})");
    const auto a = call({"det", "--config", path});
    const auto b = call({"det", "--config", path});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(std::abs(j["total_im"].get<double>() + std::numbers::pi / 2.0) <= 1e-10);
    CHECK(j["k"] == 0);
}

TEST_CASE("output path from config and flag")
{
    const auto out = (std::filesystem::temp_directory_path() / "diskdet_test_out.json").string();
    std::filesystem::remove(out);
    const auto path = write_temp(
        "with_out.json",
        R"({"radius": 1, "profile": {"type": "polynomial", "coefficients": [0]}, "output_path": ")" + out + "\"}");
    const auto r = call({"det", "--config", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(out));
    const auto flag_out = (std::filesystem::temp_directory_path() / "diskdet_test_flag.txt").string();
    CHECK(call({"-o", flag_out, "eta", "--kappa", "0.5"}).code == 0);
    CHECK(std::filesystem::exists(flag_out));
}

TEST_CASE("malformed config names the field")
{
    auto path = write_temp("bad1.json", R"({"profile": {"type": "polynomial", "coefficients": [0]}})");
    auto r = call({"det", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("radius") != std::string::npos);

    path = write_temp("bad2.json", R"({"radius": 1, "profile": {"type": "polynomial", "coefficients": [0, "x"]}})");
    r = call({"det", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("profile.coefficients[1]") != std::string::npos);

    path = write_temp("bad3.json", R"({"radius": 2, "profile": {"type": "tabulated", "r": [0, 1, 1.5], "phi": [0, 0, 0]}})");
    r = call({"det", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("profile.r") != std::string::npos);

    path = write_temp("bad4.json", "{not json");
    CHECK(call({"det", "--config", path}).code == 1);
    CHECK(call({"det", "--config", "/nonexistent/x.json"}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
}

TEST_CASE("exit codes for domain and convergence errors")
{
    const auto path = write_temp("neg.json", R"({"radius": 1, "profile": {"type": "polynomial", "coefficients": [0, 0.75]}})");
    const auto r = call({"det", "--config", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("chirality") != std::string::npos);
    CHECK(call({"zeros", "--nu", "-1", "--count", "2"}).code == 2);

    const auto strict = write_temp(
        "strict.json",
        R"({"radius": 1, "profile": {"type": "polynomial", "coefficients": [0, -1]}, "tolerances": {"zeta_tail": 1e-30}})");
    CHECK(call({"det", "--config", strict}).code == 3);
}

TEST_CASE("DISKDET_TOL overrides the default tolerance")
{
    ::setenv("DISKDET_TOL", "1e-30", 1);
    CHECK(call({"zeta", "--nu", "1"}).code == 3);
    ::setenv("DISKDET_TOL", "garbage", 1);
    CHECK(call({"zeta", "--nu", "1"}).code == 1);
    ::unsetenv("DISKDET_TOL");
    const auto r = call({"zeta", "--nu", "1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["fprime0"].get<double>() == doctest::Approx(-0.11289567633285681).epsilon(1e-8));
}

TEST_CASE("config round trip")
{
    const std::string text =
        R"({"radius": 2, "profile": {"type": "tabulated", "r": [0, 0.5, 2], "phi": [0, 0.1, -1.5]},
            "tolerances": {"quadrature": 1e-11, "zeta_tail": 1e-10}, "output_path": "out.json"})";
    const auto c = parse_config(text);
    CHECK(c.type == RunConfig::ProfileType::tabulated);
    CHECK(c.output_path == "out.json");
    const auto once = serialize_config(c);
    const auto twice = serialize_config(parse_config(once));
    CHECK(once == twice);
    const auto poly = serialize_config(parse_config(R"({"radius": 0.1, "profile": {"type": "polynomial", "coefficients": [0.3, -1e-7]}})"));
    CHECK(serialize_config(parse_config(poly)) == poly);
}

TEST_CASE("eta and zeta subcommands")
{
    auto j = json::parse(call({"eta", "--kappa", "0.25", "--numeric"}).out);
    CHECK(j["eta0"] == -0.5);
    CHECK(std::abs(j["eta0_numeric"].get<double>() + 0.5) <= 1e-6);
    j = json::parse(call({"zeta", "--nu", "0.5"}).out);
    CHECK(j["f0"] == -0.5);
}

TEST_CASE("spectrum and oracle subcommands")
{
    auto j = json::parse(call({"spectrum", "--n", "0", "--k", "-1", "--count", "2"}).out);
    CHECK(j["bc_type"] == "upper-dirichlet");
    CHECK(j["eigenvalues"][2].get<double>() == doctest::Approx(2.404825557695773));
    const auto csv = call({"oracle", "--n", "0", "1", "--k", "0", "--grid", "400", "--count", "2", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("n,l,exact,fd,rel_err\n0,1,3.83170597020751", 0) == 0);
    int lines = 0;
    for (char c : csv.out) lines += c == '\n';
    CHECK(lines == 5);
    j = json::parse(call({"oracle", "--n", "2", "--k", "1", "--grid", "300"}).out);
    CHECK(j[0]["bc_type"] == "upper-dirichlet");
    CHECK(j[0]["max_rel_error"].get<double>() < 1e-3);
    CHECK(call({"oracle", "--grid", "100"}).code == 2);
}

TEST_CASE("symbol subcommand")
{
    auto j = json::parse(call({"symbol", "--dim", "4", "--xi", "0", "0", "1"}).out);
    CHECK(j["rank"] == 2);
    CHECK(j["trace"].get<double>() == doctest::Approx(2.0));
    CHECK(j["idempotence_error"].get<double>() <= 1e-15);
    j = json::parse(call({"symbol", "--dim", "4", "--xi", "1", "0", "0", "--chiral", "--beta", "1", "1"}).out);
    CHECK(j["rank"] == 1);
    CHECK(j["ellipticity"]["local_chiral"] == "not_elliptic");
    CHECK(j["ellipticity"]["rank_b_qch"] == 0);
    j = json::parse(call({"symbol", "--dim", "2", "--xi", "-1", "--beta", "1", "2"}).out);
    CHECK(j["ellipticity"]["local_full"] == "elliptic");
    CHECK(j["ellipticity"]["aps_full"] == "elliptic");
    CHECK(j["ellipticity"]["local_chiral"] == "nonconstant_rank");
    CHECK(call({"symbol", "--dim", "2", "--xi", "1", "1"}).code == 2);
}
