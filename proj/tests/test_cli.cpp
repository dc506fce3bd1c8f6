#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ggt/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    int code = ggt::cli::run(std::move(args), out, err);
    if (out_text) *out_text = out.str() + err.str();
    return code;
}

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("ggt_cli_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("ball command writes the sphere table") {
    fs::path dir = temp_dir("ball");
    int code = run_cli({"ball", "--group", "f2", "--radius", "3", "--out", dir.string()});
    CHECK(code == 0);
    CHECK(slurp(dir / "ball_f2_r3.csv") ==
          "n,b_n,B_n\n0,1,1\n1,4,5\n2,12,17\n3,36,53\n");
}

TEST_CASE("radius-zero ball is the identity alone") {
    fs::path dir = temp_dir("ball0");
    int code = run_cli({"ball", "--group", "z2", "--radius", "0", "--out", dir.string()});
    CHECK(code == 0);
    CHECK(slurp(dir / "ball_z2_r0.csv") == "n,b_n,B_n\n0,1,1\n");
}

TEST_CASE("ball with element dump") {
    fs::path dir = temp_dir("dump");
    int code = run_cli({"ball", "--group", "z2", "--radius", "1", "--out", dir.string(),
                        "--dump-elements"});
    CHECK(code == 0);
    CHECK(slurp(dir / "ball_z2_r1_elements.txt") == "\na\nA\nb\nB\n");
}

TEST_CASE("growth command reports the bracket") {
    fs::path dir = temp_dir("growth");
    std::string text;
    int code = run_cli(
        {"growth", "--group", "z", "--radius", "20", "--out", dir.string()}, &text);
    CHECK(code == 0);
    CHECK(text.find("hi_certified=") != std::string::npos);
    std::string csv = slurp(dir / "growth_z_r20.csv");
    CHECK(csv.rfind("n,b_n,B_n,upper_n,ratio_n\n", 0) == 0);
}

TEST_CASE("floyd bracket command") {
    fs::path dir = temp_dir("floyd");
    std::string text;
    int code = run_cli({"floyd", "--group", "f2", "--radius", "6", "--u", "",
                        "--v", "aba", "--out", dir.string()},
                       &text);
    CHECK(code == 0);
    CHECK(slurp(dir / "floyd_bracket_f2.csv").find("1.7") != std::string::npos);
}

TEST_CASE("floyd separation command") {
    fs::path dir = temp_dir("sep");
    std::string text;
    int code = run_cli({"floyd", "--group", "f2", "--radius", "6", "--rays", "a,b,ab",
                        "--depth", "2", "--threshold", "1.0", "--out", dir.string()},
                       &text);
    CHECK(code == 0);
    CHECK(text.find("separated") != std::string::npos);
}

TEST_CASE("axis and contract commands") {
    fs::path dir = temp_dir("axis");
    CHECK(run_cli({"axis", "--group", "f2", "--element", "ab", "--radius", "5", "--out",
                   dir.string()}) == 0);
    CHECK(slurp(dir / "axis_f2_ab.csv").rfind("element\n", 0) == 0);

    CHECK(run_cli({"contract", "--group", "f2", "--element", "ab", "--radius", "6", "--samples",
                   "50", "--seed", "0", "--translate", "bb", "--u-grid", "0,1",
                   "--out", dir.string()}) == 0);
    std::string csv = slurp(dir / "contract_f2_ab.csv");
    CHECK(csv.rfind("mu,eps_observed,samples\n", 0) == 0);
    std::string verdict = slurp(dir / "contract_f2_ab_verdict.json");
    CHECK(verdict.find("\"bounded_projection\": 0") != std::string::npos);
    std::string inter = slurp(dir / "contract_f2_ab_intersection.csv");
    CHECK(inter.find("0,empty,0") != std::string::npos);
    CHECK(inter.find("1,1,2") != std::string::npos);  // {1, b}: diameter 1
}

TEST_CASE("usage and config errors exit with 2") {
    std::string text;
    CHECK(run_cli({"no-such-command"}, &text) == 2);
    CHECK(run_cli({"ball", "--radius", "3"}, &text) == 2);  // no group
    CHECK(run_cli({"ball", "--group", "nope", "--radius", "3"}, &text) == 2);
    CHECK(run_cli({"tightness"}, &text) == 2);
}

TEST_CASE("groups load from presentation files") {
    const char* config_dir = std::getenv("GGT_CONFIG_DIR");
    REQUIRE(config_dir != nullptr);
    fs::path dir = temp_dir("fromfile");
    fs::path cfg = dir / "file_group.json";
    {
        std::ofstream out(cfg);
        out << "{\"source\": {\"file\": \""
            << (fs::path(config_dir) / "groups" / "z2z3.json").string() << "\"}}";
    }
    std::string text;
    int code = run_cli({"ball", "--config", cfg.string(), "--radius", "4", "--out",
                        dir.string()},
                       &text);
    CHECK(code == 0);
    // same spheres as the built-in preset
    fs::path preset_dir = temp_dir("preset_z2z3");
    REQUIRE(run_cli({"ball", "--group", "z2z3", "--radius", "4", "--out",
                     preset_dir.string()}) == 0);
    std::string file_csv = slurp(dir / "ball_z2z3-from-file_r4.csv");
    std::string preset_csv = slurp(preset_dir / "ball_z2z3_r4.csv");
    CHECK(file_csv.substr(file_csv.find('\n')) ==
          preset_csv.substr(preset_csv.find('\n')));
}

TEST_CASE("quotient-check and tightness run from a config") {
    const char* config_dir = std::getenv("GGT_CONFIG_DIR");
    REQUIRE(config_dir != nullptr);
    fs::path config = fs::path(config_dir) / "exp_f2_z2.json";
    REQUIRE(fs::exists(config));

    fs::path dir = temp_dir("quot");
    std::string text;
    int code = run_cli({"quotient-check", "--config", config.string(), "--dbar-max", "3",
                        "--radius", "6", "--out", dir.string()},
                       &text);
    CHECK(code == 0);
    CHECK(text.find("0 mismatches") != std::string::npos);

    // a small override config keeps the end-to-end run fast and lets us
    // compare bytes across worker counts
    fs::path small = dir / "small.json";
    {
        std::ofstream out(small);
        out << R"({
  "name": "small",
  "source": {"preset": "f2"},
  "target": {"preset": "z2"},
  "gen_map": {"a": "a", "b": "b"},
  "h": "abAB",
  "rep_radius": 5,
  "orth_radius": 3,
  "k_max": 2,
  "n_start": 1,
  "n_max": 4,
  "net_L": 2,
  "s_grid": [0.3, 0.5],
  "source_growth_radius": 6,
  "target_growth_radius": 8
})";
    }
    fs::path out1 = dir / "w1";
    fs::path out4 = dir / "w4";
    int c1 = run_cli({"tightness", "--config", small.string(), "--out", out1.string(),
                      "--workers", "1"},
                     &text);
    int c4 = run_cli({"tightness", "--config", small.string(), "--out", out4.string(),
                      "--workers", "4"},
                     &text);
    CHECK(c1 == c4);
    CHECK(slurp(out1 / "small_report.json") == slurp(out4 / "small_report.json"));
    CHECK(slurp(out1 / "small_certificates.csv") == slurp(out4 / "small_certificates.csv"));
    CHECK(slurp(out1 / "small_report.json").find("\"certified\"") != std::string::npos);

    // an experiment that cannot certify (hopeless exponents) exits with 1
    fs::path hopeless = dir / "hopeless.json";
    {
        std::ofstream out(hopeless);
        out << R"({
  "name": "hopeless",
  "source": {"preset": "f2"},
  "target": {"preset": "z2"},
  "gen_map": {"a": "a", "b": "b"},
  "h": "abAB",
  "rep_radius": 4,
  "orth_radius": 2,
  "k_max": 2,
  "n_max": 1,
  "net_L": 2,
  "s_grid": [5.0],
  "source_growth_radius": 6,
  "target_growth_radius": 6
})";
    }
    fs::path outh = dir / "hopeless_out";
    CHECK(run_cli({"tightness", "--config", hopeless.string(), "--out", outh.string()},
                  &text) == 1);
}
