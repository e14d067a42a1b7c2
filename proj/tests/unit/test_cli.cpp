#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "rsl/profile_io.hpp"

using rsl::Json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = rsl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "rsl_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

const fs::path& bryant_profile() {
    static const fs::path path = [] {
        const auto p = scratch() / "bryant.json";
        const auto r = run({"construct", "--n", "3", "--rho", "0", "--normalize", "--jobs", "1", "--output", p.string()});
        REQUIRE(r.code == 0);
        return p;
    }();
    return path;
}

Json error_record(const Result& r) { return Json::parse(r.err.substr(0, r.err.find('\n'))); }

}  // namespace

TEST_CASE("construct writes a profile") {
    const auto prof = rsl::read_profile(bryant_profile());
    CHECK(prof.params.n == 3);
    CHECK(prof.normalization == rsl::Normalization::R_at_origin_one);
    const auto r = run({"construct", "--n", "3", "--rho", "-1", "--eps-ladder", "1e-3,1e-4,1e-5,1e-6", "--jobs", "1"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["schema"] == "rho-soliton-profile/1");
}

TEST_CASE("exit codes") {
    SUBCASE("non-existence regime") {
        const auto r = run({"construct", "--n", "3", "--rho", "0.3"});
        CHECK(r.code == rsl::cli::exit_rejected);
        CHECK(error_record(r)["error"] == "nonexistence_regime");
        CHECK(error_record(r)["exit_code"] == 2);
    }
    SUBCASE("Schouten value") {
        const auto r = run({"phase-portrait", "--n", "3", "--rho", "0.25"});
        CHECK(r.code == rsl::cli::exit_rejected);
        CHECK(error_record(r)["error"] == "schouten_singular");
    }
    SUBCASE("bad dimension") {
        const auto r = run({"construct", "--n", "2", "--rho", "0"});
        CHECK(r.code == rsl::cli::exit_rejected);
        CHECK(error_record(r)["error"] == "invalid_parameters");
    }
    SUBCASE("usage") {
        CHECK(run({}).code == rsl::cli::exit_rejected);
        CHECK(run({"construct", "--n", "3"}).code == rsl::cli::exit_rejected);
        CHECK(run({"construct", "--n", "3", "--rho", "0", "--bogus"}).code == rsl::cli::exit_rejected);
    }
    SUBCASE("no convergence") {
        const auto r = run({"construct", "--n", "3", "--rho", "0", "--eps-ladder", "1e-1,5e-2,2e-2", "--tol", "1e-9",
                            "--jobs", "1"});
        CHECK(r.code == rsl::cli::exit_not_converged);
        CHECK(error_record(r)["error"] == "not_converged");
    }
    SUBCASE("failed check") {
        const auto r = run({"verify", "--profile", bryant_profile().string(), "--tol", "1e-12"});
        CHECK(r.code == rsl::cli::exit_check_failed);
        CHECK(r.err.find("worst offender") != std::string::npos);
    }
    SUBCASE("help") {
        const auto r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("construct") != std::string::npos);
    }
}

TEST_CASE("verify and asymptotics reports") {
    const auto v = run({"verify", "--profile", bryant_profile().string()});
    REQUIRE(v.code == 0);
    const auto rep = Json::parse(v.out);
    CHECK(rep["passed"] == true);
    CHECK(rep["checks"].size() == 7);
    for (const auto& c : rep["checks"]) CHECK(c["status"] == "pass");

    const auto a = run({"asymptotics", "--profile", bryant_profile().string()});
    REQUIRE(a.code == 0);
    const auto asym = Json::parse(a.out);
    CHECK(asym["pass"] == true);
    CHECK(asym["exponents"][0]["predicted"] == "0.5");
    CHECK(asym["limits"].contains("y_over_t"));
}

TEST_CASE("phase portrait CSV") {
    const auto r = run({"phase-portrait", "--n", "3", "--rho", "0", "--grid", "5"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "kind,x,y,dx,dy,F");
    std::size_t grid = 0, nullcline = 0;
    while (std::getline(in, line)) {
        if (line.rfind("grid,", 0) == 0) ++grid;
        if (line.rfind("nullcline,", 0) == 0) ++nullcline;
    }
    CHECK(grid == 25);
    CHECK(nullcline > 0);
}

TEST_CASE("classification commands") {
    const auto c = run({"classify", "cylinders", "--n", "4", "--rho", "0.2", "--lambda", "1"});
    REQUIRE(c.code == 0);
    const auto cyl = Json::parse(c.out)["cylinders"];
    REQUIRE(cyl.size() == 1);
    CHECK(cyl[0]["omega0_sq"] == "0.79999999999999982");

    const auto f = run({"classify", "families", "--samples", "20"});
    REQUIRE(f.code == 0);
    const auto fam = Json::parse(f.out)["families"];
    REQUIRE(fam.size() == 6);
    CHECK(fam[1]["family"] == "rho_einstein");
    CHECK(fam[1]["verdict"] == "nondegenerate");
    CHECK(fam[3]["nd3"].is_null());
}

TEST_CASE("config files supply defaults and flags win") {
    const auto cfg = scratch() / "portrait.json";
    rsl::write_text(cfg, R"({"n": 3, "rho": 0.5, "grid": 3, "x-range": [0, 1]})");
    const auto from_file = run({"phase-portrait", "--config", cfg.string()});
    REQUIRE(from_file.code == 0);
    // Header, 3 x 3 grid, one nullcline row for the single negative y.
    CHECK(std::count(from_file.out.begin(), from_file.out.end(), '\n') == 1 + 9 + 1);
    const auto overridden = run({"phase-portrait", "--config", cfg.string(), "--grid", "2"});
    REQUIRE(overridden.code == 0);
    CHECK(overridden.out.find("grid,0,") != std::string::npos);
    CHECK(std::count(overridden.out.begin(), overridden.out.end(), '\n') < 1 + 9);

    rsl::write_text(cfg, "[1, 2]");
    CHECK(run({"phase-portrait", "--config", cfg.string()}).code == rsl::cli::exit_rejected);
}

TEST_CASE("identical invocations give identical bytes") {
    const std::vector<std::string> args{"classify", "families", "--samples", "50"};
    CHECK(run(args).out == run(args).out);
    const auto a = scratch() / "a.json", b = scratch() / "b.json";
    for (const auto& p : {a, b})
        REQUIRE(run({"construct", "--n", "3", "--rho", "0.5", "--jobs", "2", "--output", p.string()}).code == 0);
    CHECK(rsl::read_text(a) == rsl::read_text(b));
}
