#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "twisted");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = twisted::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh(const std::string& name) {
  const auto dir = fs::path("cli_out") / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories("cli_out");
  const auto p = fs::path("cli_out") / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("figure1 writes its curves and is deterministic") {
    const auto a = fresh("fig1_a"), b = fresh("fig1_b");
    REQUIRE(invoke({"figure1", "--out", a.string()}).code == 0);
    REQUIRE(invoke({"figure1", "--out", b.string()}).code == 0);
    for (const char* name : {"figure1_general_w0_0.5wm.csv", "figure1_general_w0_1wm.csv",
                             "figure1_general_w0_2wm.csv", "figure1_free_w0_0.5wm.csv"}) {
      CAPTURE(name);
      REQUIRE(fs::exists(a / name));
      CHECK(line_count(a / name) == 401);
      CHECK(slurp(a / name) == slurp(b / name));
    }
    std::ifstream in(a / "figure1_general_w0_1wm.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "z_over_zm,w_over_wm");
    CHECK(fs::exists(a / "effective_config.json"));
  }

  TEST_CASE("figure2 panels") {
    const auto dir = fresh("fig2");
    REQUIRE(invoke({"figure2", "--out", dir.string()}).code == 0);
    std::ifstream in(dir / "figure2.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "r_nm,r_over_wm,a_z0_density_per_nm,a_zm_density_per_nm,b_density_per_nm,c_density_per_nm");
    CHECK(line_count(dir / "figure2.csv") == 801);
  }

  TEST_CASE("parse and configuration errors exit with 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"figure3"}).code == 2);
    CHECK(invoke({"figure1", "--bogus"}).code == 2);
    CHECK(invoke({"figure1", "--spin", "x"}).code == 2);
    CHECK(invoke({"observables", "--B-tesla", "-1", "--out", fresh("neg").string()}).code == 2);
    CHECK(invoke({"observables", "--kinetic-keV", "0", "--out", fresh("zero").string()}).code == 2);
    CHECK(invoke({"figure1", "--B-tesla", "0", "--out", fresh("nofield").string()}).code == 2);
    const auto cfg = write_config("unknown_key.json", R"({"B_tesla": 1, "colour": "red"})");
    const auto r = invoke({"figure1", "--config", cfg.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("colour") != std::string::npos);
    CHECK(invoke({"figure1", "--config", "cli_out/missing.json"}).code == 2);
    CHECK(invoke({"propagate", "--grid-points", "64", "--out", fresh("coarse").string()}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
  }

  TEST_CASE("unwritable output is an I/O error") {
    fs::create_directories("cli_out");
    std::ofstream("cli_out/plain_file") << "x";
    CHECK(invoke({"figure1", "--out", "cli_out/plain_file/sub"}).code == 1);
  }

  TEST_CASE("failed validation exits with 3") {
    const auto dir = fresh("verify_coarse");
    const auto r = invoke({"verify", "--grid-points", "2048", "--out", dir.string()});
    CHECK(r.code == 3);
    const auto j = load_json(dir / "verify.json");
    CHECK(j["pass"] == false);
    CHECK(j["suite"] == "field");
  }

  TEST_CASE("free-space verify runs the reduced suite") {
    const auto dir = fresh("verify_free");
    const auto r = invoke({"verify", "--B-tesla", "0", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto j = load_json(dir / "verify.json");
    CHECK(j["suite"] == "free_space");
    CHECK(j["pass"] == true);
    CHECK(j["geometry"]["w_m_m"].is_null());
    CHECK(j["sensitivity_probe"]["detected"] == true);
  }

  TEST_CASE("observables report") {
    const auto dir = fresh("obs");
    REQUIRE(invoke({"observables", "--spin", "-", "--out", dir.string()}).code == 0);
    const auto j = load_json(dir / "observables.json");
    CHECK(j["s_z"] == -0.5);
    CHECK(j["n"] == 1);
    CHECK(j["ell"] == 2);
    // l + 2 s_z = 1 for spin down: 1 + x^2 + 2x/5.
    CHECK(j["lambda_over_lambda_free"].get<double>() > 1.0);
    CHECK(j["lambda_over_lambda_free"].get<double>() < 1.0002);
    CHECK(j.contains("period_m"));
    CHECK(j.contains("landau_comparison"));

    const auto free = fresh("obs_free");
    REQUIRE(invoke({"observables", "--B-tesla", "0", "--out", free.string()}).code == 0);
    const auto f = load_json(free / "observables.json");
    CHECK(f["lambda_over_lambda_free"] == 1.0);
    CHECK_FALSE(f.contains("period_m"));
  }

  TEST_CASE("penetrate writes both signs") {
    const auto dir = fresh("pen");
    const auto cfg = write_config("pen.json", R"({"periods": 1, "samples_per_period": 16, "ell": 3})");
    REQUIRE(invoke({"penetrate", "--config", cfg.string(), "--out", dir.string()}).code == 0);
    CHECK(line_count(dir / "penetrate_ell_p3.csv") == 18);
    CHECK(line_count(dir / "penetrate_ell_m3.csv") == 18);
    const auto j = load_json(dir / "penetrate.json");
    CHECK(j["positive"]["ell"] == 3);
    CHECK(j["negative"]["ell"] == -3);
    CHECK(j["positive"]["completeness"].get<double>() >= 0.999);
    CHECK(j["asymmetry"]["oam_sum_positive_everywhere"] == true);
    CHECK(j["r2_periodicity_max_rel"].get<double>() < 1e-6);
  }

  TEST_CASE("short propagation with snapshots") {
    const auto dir = fresh("prop");
    const auto cfg = write_config(
        "prop.json", R"({"z_end_over_zm": 0.05, "snapshots": 2, "dz_over_zm": 5e-4, "grid_points": 2048})");
    REQUIRE(invoke({"propagate", "--config", cfg.string(), "--out", dir.string()}).code == 0);
    CHECK(line_count(dir / "propagate_snapshots.csv") == 1 + 3 * 2048);
    CHECK(line_count(dir / "wavefunction_final.csv") == 1 + 2048);
    const auto side = load_json(dir / "wavefunction_final.json");
    CHECK(side["ell"] == 2);
    const auto j = load_json(dir / "propagate.json");
    CHECK(j["norm_drift"].get<double>() < 1e-10);
    CHECK(j["l2_vs_closed_form"].get<double>() < 1e-3);
    const auto echo = load_json(dir / "effective_config.json");
    CHECK(echo["grid_points"] == 2048);
  }
}
