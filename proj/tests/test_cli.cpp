#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace csl::cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cslcheck_test_" + name);
}

}  // namespace

TEST_CASE("scalar expressions", "[cli]") {
    CHECK(parse_scalar("1.5") == 1.5);
    CHECK(parse_scalar("-0.25") == -0.25);
    CHECK(parse_scalar("sqrt(6)/3") == std::sqrt(6.0) / 3);
    CHECK(parse_scalar("2*sqrt(0.5)") == 2 * std::sqrt(0.5));
    CHECK(parse_scalar(" 1/3 ") == 1.0 / 3);
    CHECK(parse_scalar("sqrt(3/4)") == std::sqrt(0.75));
    CHECK(parse_scalar("1e-3") == 1e-3);
    CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("sqrt(-1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("0.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
}

TEST_CASE("parameter lists and partner radii", "[cli]") {
    const auto p = parse_params("r1=0.6, r3 = sqrt(0.5)");
    CHECK(p.at("r1") == 0.6);
    CHECK(p.at("r3") == std::sqrt(0.5));
    CHECK(parse_params("").empty());
    CHECK_THROWS_AS(parse_params("r1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("r1=0.5,r1=0.6"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("=0.5"), std::invalid_argument);

    csl::FamilySpec spec{csl::FamilyKind::calabi_torus, 2, {{"r1", 0.6}, {"r4", 0.8}}};
    const auto d = with_derived_params(spec);
    CHECK(std::abs(d.params.at("r2") - 0.8) < 1e-15);
    CHECK(std::abs(d.params.at("r3") - 0.6) < 1e-15);

    csl::FamilySpec full{csl::FamilyKind::calabi_product, 3, {{"r1", 0.6}, {"r2", 0.7}}};
    CHECK(with_derived_params(full).params.at("r2") == 0.7);  // explicit values are never overwritten

    csl::FamilySpec tg{csl::FamilyKind::totally_geodesic, 3, {}};
    CHECK(with_derived_params(tg).params.empty());
}

TEST_CASE("sweep definitions", "[cli]") {
    const SweepSpec s = parse_sweep("r1=0.5:0.9:5");
    CHECK(s.name == "r1");
    CHECK(s.lo == 0.5);
    CHECK(s.hi == 0.9);
    CHECK(s.count == 5);
    const SweepSpec r = parse_sweep("r1=0.9:0.5:3");
    CHECK(r.lo == 0.5);
    CHECK(r.hi == 0.9);
    CHECK_THROWS_AS(parse_sweep("r1=0.5:0.9:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("r1=0.5:0.9"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("r1=0.5:0.9:two"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("0.5:0.9:3"), std::invalid_argument);
}

TEST_CASE("nine significant digit rounding", "[cli]") {
    CHECK(round9(0.1234567891234) == 0.123456789);
    CHECK(round9(-3.71527777777) == -3.71527778);
    CHECK(round9(0.0) == 0.0);
    CHECK(round9(round9(M_PI)) == round9(M_PI));
}

TEST_CASE("verify reports the Calabi product equality case", "[cli]") {
    const Run r = run({"verify", "--family", "calabi-product", "--n", "3", "--params", "r1=0.8", "--grid", "4"});
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    // key order in the text is fixed: family, params, n, ...
    CHECK(r.out.find("\"family\"") < r.out.find("\"params\""));
    CHECK(r.out.find("\"params\"") < r.out.find("\"n\""));
    for (const char* k : {"family", "params", "n", "checks", "thresholds", "oracle_diff", "passed", "seed", "summary"})
        CHECK(rep.contains(k));
    CHECK(rep["family"] == "calabi_product");
    CHECK(rep["params"]["r2"].get<double>() == Catch::Approx(0.6));
    CHECK(rep["passed"] == true);
    CHECK(rep["summary"]["equality_basic"] == true);
    CHECK(std::abs(rep["summary"]["margin_main"].get<double>() + 0.395062) < 1e-6);
    for (const auto& c : rep["checks"]) CHECK(c["passed"] == true);
    bool has_basic = false;
    for (const auto& t : rep["thresholds"])
        if (t["name"] == "basic") {
            has_basic = true;
            CHECK(t["hypothesis_holds"] == true);
        }
    CHECK(has_basic);
    CHECK(rep["oracle_diff"]["passed"] == true);
}

TEST_CASE("verify output is byte-for-byte reproducible", "[cli]") {
    const std::vector<std::string> args{"verify", "--family", "calabi-torus", "--params", "r1=0.6,r3=sqrt(0.5)",
                                        "--grid", "6", "--seed", "17"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out)["seed"] == 17);
}

TEST_CASE("verify covers every family kind", "[cli]") {
    for (const std::vector<std::string>& extra :
         {std::vector<std::string>{"--family", "totally-geodesic", "--n", "3"},
          std::vector<std::string>{"--family", "clifford-torus", "--n", "3"},
          std::vector<std::string>{"--family", "clifford-torus", "--n", "1"},
          std::vector<std::string>{"--family", "calabi-torus", "--params", "r1=sqrt(6)/3,r3=sqrt(0.5)"}}) {
        std::vector<std::string> args{"verify", "--grid", "5"};
        args.insert(args.end(), extra.begin(), extra.end());
        const Run r = run(args);
        INFO(r.err);
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["passed"] == true);
    }
    const json minimal = json::parse(
        run({"verify", "--family", "calabi-torus", "--params", "r1=sqrt(6)/3,r3=sqrt(0.5)", "--grid", "4"}).out);
    CHECK(minimal["summary"]["minimal"] == true);
    CHECK(minimal["oracle_diff"]["passed"] == true);
    const json cliff = json::parse(run({"verify", "--family", "clifford-torus", "--n", "3", "--grid", "3"}).out);
    CHECK(cliff["oracle_diff"].is_null());
}

TEST_CASE("exit codes", "[cli][errors]") {
    const Run bad = run({"verify", "--family", "calabi-torus", "--params", "r1=0.6,r2=0.7,r3=0.6,r4=0.8"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("r1^2 + r2^2 = 1") != std::string::npos);

    CHECK(run({"verify", "--family", "veronese"}).code == 2);
    CHECK(run({"verify", "--family", "calabi-product", "--n", "3"}).code == 2);  // missing r1
    CHECK(run({"verify", "--family", "calabi-product", "--n", "3", "--params", "r1=0.8", "--grid", "1"}).code == 2);
    CHECK(run({"verify", "--family", "calabi-product", "--n", "3", "--params", "r1=0.8", "--bogus"}).code == 2);
    CHECK(run({"verify", "--family", "totally-geodesic", "--fd-step", "-1"}).code == 2);
    CHECK(run({"verify", "--family", "totally-geodesic", "--format", "xml"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    const Run strict = run({"verify", "--family", "calabi-torus", "--params", "r1=0.6,r3=0.6", "--grid", "3",
                            "--tol-ad", "1e-30"});
    CHECK(strict.code == 1);
    CHECK(strict.err.find("check failure") != std::string::npos);
    CHECK(strict.err.find("frame_orthonormality") != std::string::npos);
    CHECK(json::parse(strict.out)["passed"] == false);
}

TEST_CASE("scan produces a CSV sweep", "[cli]") {
    const Run r = run({"scan", "--family", "calabi-product", "--n", "3", "--sweep", "r1=0.5:0.95:4", "--grid", "3"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "param,normB2,normH2,threshold_basic,margin_basic,threshold_main,margin_main,kappa,equality_flag");
    CHECK(lines[1].rfind("0.5,", 0) == 0);
    CHECK(lines[3].rfind("0.8,3.71527778,0.840277778,", 0) == 0);
    CHECK(lines[3].back() == '1');
    CHECK(lines[4].rfind("0.95,", 0) == 0);
    CHECK(lines[4].back() == '0');

    CHECK(run({"scan", "--family", "calabi-product", "--n", "3", "--sweep", "r1=0.5:0.95:1"}).code == 2);
    CHECK(run({"scan", "--family", "calabi-product", "--n", "3", "--sweep", "r1=0.5:1.0:3"}).code == 2);
    CHECK(run({"scan", "--family", "calabi-product", "--n", "3"}).code == 2);
    CHECK(run({"scan", "--family", "calabi-product", "--n", "3", "--sweep", "r7=0.5:0.9:3"}).code == 2);

    const Run torus = run({"scan", "--family", "calabi-torus", "--params", "r1=0.6,r2=0.8,r3=0.6,r4=0.8",
                           "--sweep", "r3=0.2:0.9:3", "--grid", "3"});
    REQUIRE(torus.code == 0);
    CHECK(torus.out.find("nan,nan") != std::string::npos);  // no n >= 3 threshold on surfaces
}

TEST_CASE("thresholds table", "[cli]") {
    const Run r = run({"thresholds", "--n", "3", "--hsq", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("basic    3.33333333") != std::string::npos);
    CHECK(r.out.find("main     2.66666667") != std::string::npos);
    CHECK(r.out.find("tg       2\n") != std::string::npos);
    CHECK(r.out.find("simons   1.71428571") != std::string::npos);  // p = n + 1 = 4: 3/(2 - 1/4)
    const Run p1 = run({"thresholds", "--n", "3", "--hsq", "0", "--codim", "1"});
    CHECK(p1.out.find("simons   3\n") != std::string::npos);
    const Run two = run({"thresholds", "--n", "2", "--hsq", "1"});
    CHECK(two.code == 0);
    CHECK(two.out.find("basic    3\n") != std::string::npos);
    CHECK(two.out.find("main ") == std::string::npos);
    CHECK(run({"thresholds", "--n", "1", "--hsq", "0"}).code == 2);
    CHECK(run({"thresholds", "--n", "3", "--hsq", "-1"}).code == 2);
    CHECK(run({"thresholds", "--n", "3"}).code == 2);
}

TEST_CASE("config files and output paths", "[cli]") {
    const auto cfg = temp_path("config.toml");
    {
        std::ofstream f(cfg);
        f << "[verify]\nfamily = \"calabi-product\"\nn = 3\nparams = \"r1=0.8\"\ngrid = 3\n";
    }
    const Run from_file = run({"--config", cfg.string(), "verify"});
    REQUIRE(from_file.code == 0);
    CHECK(json::parse(from_file.out)["grid"] == 3);

    const Run overridden = run({"--config", cfg.string(), "verify", "--params", "r1=0.5", "--grid", "2"});
    REQUIRE(overridden.code == 0);
    const json rep = json::parse(overridden.out);
    CHECK(rep["grid"] == 2);
    CHECK(rep["params"]["r1"] == 0.5);

    const auto out = temp_path("report.json");
    const Run to_file = run({"verify", "--family", "totally-geodesic", "--n", "2", "--grid", "3", "--out", out.string()});
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    std::ifstream in(out);
    const json saved = json::parse(in);
    CHECK(saved["family"] == "totally_geodesic");

    CHECK(run({"verify", "--family", "totally-geodesic", "--out", "/nonexistent_dir/x.json"}).code == 2);
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}
