#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
  const char* env = std::getenv("MONOLAB_BIN");
  REQUIRE(env != nullptr);
  return env;
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("monolab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("verify clifford writes a passing report and manifest") {
  TempDir tmp;
  const fs::path out = tmp.path / "v";
  REQUIRE(run("verify clifford --out " + out.string()) == 0);
  const json report = json::parse(slurp(out / "report.json"));
  REQUIRE(report.at("passed").get<bool>());
  const json manifest = json::parse(slurp(out / "manifest.json"));
  REQUIRE(manifest.at("passed").get<bool>());
  REQUIRE(manifest.at("version").get<std::string>().find("monolab") == 0);
  REQUIRE(manifest.contains("wall_time_seconds"));
}

TEST_CASE("unknown suite and malformed inputs exit with the usage code") {
  TempDir tmp;
  REQUIRE(run("verify bogus --out " + (tmp.path / "x").string()) == 2);
  REQUIRE(run("") == 2);
  // wrong flux count for a 4-d lattice
  REQUIRE(run("solve --flux 1,2 --out " + (tmp.path / "y").string()) == 2);
  // malformed topology JSON
  const fs::path bad = tmp.path / "bad.json";
  std::ofstream(bad) << "{ nope";
  REQUIRE(run("topology " + bad.string() + " --out " + (tmp.path / "z").string()) == 2);
  REQUIRE(run("topology " + (tmp.path / "missing.json").string()) == 2);
}

TEST_CASE("solve runs are reproducible and write all artifacts") {
  TempDir tmp;
  const std::string common = "solve --size 5,5,5,5 --kappa 1 --seed 9 --max-iters 600 --tol 1e-9 --out ";
  const fs::path s1 = tmp.path / "s1";
  const fs::path s2 = tmp.path / "s2";
  REQUIRE(run(common + s1.string()) == 0);
  REQUIRE(run(common + s2.string()) == 0);
  for (const char* f : {"trace.csv", "report.json", "manifest.json", "snapshot_a.mlab", "snapshot_psi.mlab"})
    REQUIRE(fs::exists(s1 / f));
  REQUIRE(slurp(s1 / "trace.csv") == slurp(s2 / "trace.csv"));
  const json report = json::parse(slurp(s1 / "report.json"));
  REQUIRE(report.at("converged").get<bool>());
  REQUIRE(report.at("psi_sup").get<double>() < 1e-6);
}

TEST_CASE("dry runs validate without computing") {
  TempDir tmp;
  const fs::path out = tmp.path / "dry";
  REQUIRE(run("solve --dry-run --size 8,8,8,8 --out " + out.string()) == 0);
  const json manifest = json::parse(slurp(out / "manifest.json"));
  REQUIRE(manifest.at("dry_run").get<bool>());
  REQUIRE_FALSE(fs::exists(out / "trace.csv"));
}

TEST_CASE("topology command emits the expected tables") {
  TempDir tmp;
  const fs::path in = tmp.path / "k3.json";
  std::ofstream(in) << R"({"chi": 24, "sigma": -16, "b2plus": 3,
                           "connected_sum_query": [1, 1],
                           "gromov": {"c1K_dot_A": -3, "A_sq": 1}})";
  const fs::path out = tmp.path / "t";
  REQUIRE(run("topology " + in.string() + " --out " + out.string()) == 0);

  const std::string dims = slurp(out / "dimensions.csv");
  REQUIRE(dims.find(",0,4,4,signed_count") != std::string::npos);

  const std::string thom = slurp(out / "thom.csv");
  int rows = 0;
  std::stringstream ss(thom);
  std::string line;
  std::getline(ss, line);  // header
  long long expect_d = 1;
  while (std::getline(ss, line)) {
    ++rows;
    const auto comma = line.find(',');
    REQUIRE(std::stoll(line.substr(0, comma)) == expect_d);
    const auto comma2 = line.find(',', comma + 1);
    REQUIRE(std::stoll(line.substr(comma + 1, comma2 - comma - 1)) ==
            (expect_d - 1) * (expect_d - 2) / 2);
    ++expect_d;
  }
  REQUIRE(rows == 10);

  const json summary = json::parse(slurp(out / "summary.json"));
  REQUIRE(summary.at("connected_sum").get<std::string>() == "vanishes");
  REQUIRE(summary.at("gromov_dimension").get<long long>() == 4);
}

TEST_CASE("flags win over the config file") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "run.cfg";
  std::ofstream(cfg) << "[solve]\nkappa = 2.0\nsize = 5,5,5,5\nmax-iters = 50\n";
  const fs::path out = tmp.path / "c";
  REQUIRE(run("solve --config " + cfg.string() + " --kappa 1.0 --tol 1e-3 --out " + out.string()) == 0);
  const json manifest = json::parse(slurp(out / "manifest.json"));
  REQUIRE(manifest.at("config").at("kappa").get<double>() == 1.0);
  REQUIRE(manifest.at("config").at("sizes") == json::array({5, 5, 5, 5}));
}
