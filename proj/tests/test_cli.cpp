#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  fs::path tmp = fs::temp_directory_path() / "soundcone-cli-out.txt";
  std::string cmd =
      std::string(SOUNDCONE_CLI_PATH) + " " + args + " > " + tmp.string() +
      " 2>&1";
  int raw = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets list names all five") {
  auto r = run_cli("presets list");
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"lemma1-path4", "freeboson-line", "premise-2site", "lightcone-cycle6",
        "negative-removal"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("presets show emits a parseable resolved config") {
  auto r = run_cli("presets show lemma1-path4");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j.at("graph") == "path:4");
  CHECK(j.at("time").at("dt") == 0.05);

  CHECK(run_cli("presets show nope").exit_code == 1);
}

TEST_CASE("bound verb computes the velocity bound") {
  auto r = run_cli("bound --graph path:2 --tau 1.0 --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  double chi = j.at("chi").get<double>();
  CHECK(std::abs(chi * std::log(chi) - chi - 1) < 1e-10);
  CHECK(j.at("v").get<double>() ==
        doctest::Approx(chi * 0.5 + 1.0).epsilon(1e-10));

  CHECK(run_cli("bound --graph path:2 --tau -1").exit_code == 1);
  CHECK(run_cli("bound --graph blob:9 --tau 1").exit_code == 1);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("run").exit_code == 1);
  CHECK(run_cli("run --config /no/such/file.json").exit_code == 1);
}

TEST_CASE("run writes artifacts and is byte-deterministic") {
  fs::path dir = fs::temp_directory_path() / "soundcone-cli-run";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path cfg = dir / "cfg.json";
  {
    std::ofstream out(cfg);
    out << R"({"graph": "path:3", "model": {"tau": 1.0, "U": 0.0},
               "state": {"type": "ground", "sectors": [0, 0]},
               "channel": {"type": "add_boson", "region": [0]},
               "time": {"t_max": 0.5, "dt": 0.1},
               "checks": ["positivity", "dominance"]})";
  }
  auto a = run_cli("run --config " + cfg.string() + " --out " +
                   (dir / "a").string());
  auto b = run_cli("run --config " + cfg.string() + " --out " +
                   (dir / "b").string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  for (const char* f :
       {"trajectory.csv", "report.json", "config.resolved.json"}) {
    CAPTURE(f);
    std::string fa = slurp(dir / "a" / f);
    CHECK_FALSE(fa.empty());
    CHECK(fa == slurp(dir / "b" / f));
  }

  std::ifstream csv(dir / "a" / "trajectory.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,site,x,gamma,envelope,leakage");

  auto rep = nlohmann::ordered_json::parse(slurp(dir / "a" / "report.json"));
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("positivity").at("pass") == true);
}

TEST_CASE("run accepts preset names in place of a config path") {
  fs::path dir = fs::temp_directory_path() / "soundcone-cli-preset";
  fs::remove_all(dir);
  auto r = run_cli("run --config premise-2site --out " + dir.string() +
                   " --json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j.at("premise").at("pass") == true);
}
