#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dmsym/cli.hpp"

using namespace dmsym;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dmsym");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::string> lines(const std::string& s) { return split(s, '\n'); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dmsym_test_" + name);
}

}  // namespace

TEST_CASE("default trajectory matches the golden file") {
  const Run r = cli({"traj"});
  REQUIRE(r.code == 0);
  const std::string golden = slurp(DMSYM_TEST_DATA "/traj_default.csv");
  REQUIRE_FALSE(golden.empty());
  CHECK(r.out == golden);
}

TEST_CASE("golden rows agree with the closed form written out") {
  const auto rows = lines(slurp(DMSYM_TEST_DATA "/traj_default.csv"));
  REQUIRE(rows.size() > 3);
  CHECK(rows[0] == "t,x,y,z,picture,param,valid");
  // 301 time steps on [0, 150], two pictures each, plus the header.
  CHECK(rows.size() == 1 + 2 * 301 + 1);
  CHECK(rows[1] == "0,0.40000000000000002,0.5,0.5,schrodinger,,1");
  for (const auto& row : rows) {
    const auto f = split(row, ',');
    if (f.size() != 7 || f[0] != "20") continue;
    const double x = std::stod(f[1]);
    const double y = std::stod(f[2]);
    const double z = std::stod(f[3]);
    const double e1 = std::exp(-1.0);
    const double xi = 0.4 * e1;
    const double yi = 0.5 * e1;
    if (f[4] == "interaction") {
      CHECK(std::abs(x - xi) < 1e-15);
      CHECK(std::abs(y - yi) < 1e-15);
    } else {
      // rotation by omega0 t = 20 about z
      CHECK(std::abs(x - (std::cos(20.0) * xi - std::sin(20.0) * yi)) < 1e-14);
      CHECK(std::abs(y - (std::sin(20.0) * xi + std::cos(20.0) * yi)) < 1e-14);
    }
    CHECK(std::abs(z - (1.5 * std::exp(-2.0) - 1.0)) < 1e-15);
    CHECK(f[6] == "1");
  }
}

TEST_CASE("trajectory output is deterministic") {
  const std::vector<std::string> args = {"traj", "--oracle", "--t-max", "10", "--format", "json"};
  const Run a = cli(args);
  const Run b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 42);
  for (const auto& row : doc) CHECK(row["deviation"].get<double>() < 1e-9);
}

TEST_CASE("single picture and custom start") {
  const Run r = cli({"traj", "--picture", "interaction", "--x0", "0", "--y0", "0", "--z0", "1", "--t-max", "1"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 1 + 3 + 1);
  CHECK(rows[1] == "0,0,0,1,interaction,,1");
}

TEST_CASE("--out writes the file") {
  const auto path = temp_file("traj.csv");
  const Run r = cli({"traj", "--t-max", "2", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path.string()) == cli({"traj", "--t-max", "2"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({"traj", "--dt", "0"}).code == 1);
  CHECK(cli({"traj", "--x0", "1", "--y0", "1"}).code == 1);
  CHECK(cli({"traj", "--b", "0.3"}).code == 1);
  CHECK(cli({"traj", "--b", "1", "--temperature", "2"}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"cp", "--transform", "Q9"}).code == 1);
  const Run r = cli({"traj", "--dt", "-1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("help exits 0") { CHECK(cli({"--help"}).code == 0); }

TEST_CASE("temperature sets b") {
  const Run t = cli({"traj", "--temperature", "0.5", "--t-max", "1"});
  const double b = 0.5 / std::tanh(1.0);
  const Run direct = cli({"traj", "--b", format_double(b), "--t-max", "1"});
  REQUIRE(t.code == 0);
  CHECK(t.out == direct.out);
}

TEST_CASE("cp verdicts") {
  const json d = json::parse(cli({"cp", "--transform", "D3", "--param", "0.2"}).out);
  CHECK(d["fa"] == "NotCP");
  CHECK(d["choi"] == "NotCP");
  const json r = json::parse(cli({"cp", "--transform", "iR2", "--param", "1.3"}).out);
  CHECK(r["fa"] == "CP");
  CHECK(r["choi"] == "CP");
  const json p = json::parse(cli({"cp", "--transform", "P12", "--param", "0.1"}).out);
  CHECK(p["fa"] == "NotApplicable");
  CHECK(p["choi"] == "NotCP");
}

TEST_CASE("symmetry verdicts") {
  const json t = json::parse(cli({"symmetry", "--transform", "P12", "--param", "0.25"}).out);
  CHECK(t["kind"] == "FormInvariant");
  CHECK(t["b_prime"].get<double>() == doctest::Approx(1.0));
  CHECK(t["gamma_prime"].get<double>() == doctest::Approx(0.05));
  const json bad = json::parse(cli({"symmetry", "--transform", "P12", "--param", "-0.5"}).out);
  CHECK(bad["kind"] == "NotASymmetry");
  const json h = json::parse(cli({"symmetry", "--transform", "H12", "--param", "0.4", "--picture", "interaction"}).out);
  CHECK(h["kind"] == "Exact");
  const json ph = json::parse(cli({"symmetry", "--channel", "ph", "--transform", "P12", "--param", "0.4"}).out);
  CHECK(ph["kind"] == "Exact");
}

TEST_CASE("channel file round trips through extract") {
  const auto path = temp_file("ph.json");
  REQUIRE(cli({"channel", "--channel", "ph", "--gamma", "0.1", "--out", path.string()}).code == 0);
  const Run r = cli({"extract", path.string()});
  REQUIRE(r.code == 0);
  const json c = json::parse(r.out);
  CHECK(c.dump().find("alpha33") != std::string::npos);
  CHECK(slurp(path.string()).find("-0.0") == std::string::npos);
  std::filesystem::remove(path);

  const Superoperator k = read_matrix_json(cli({"channel", "--gamma", "0.2", "--b", "1.5"}).out);
  CHECK(k.n() == 2);
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(read_matrix_json("not json"), UsageError);
  CHECK_THROWS_AS(read_matrix_json("[[1,2],[3,4]]"), UsageError);
  CHECK_THROWS_AS(read_matrix_json("[]"), UsageError);
  const auto path = temp_file("bad.json");
  std::ofstream(path) << "[[1, 2, 3]]";
  CHECK(cli({"extract", path.string()}).code == 1);
  std::filesystem::remove(path);
  CHECK(cli({"extract", "/nonexistent/file.json"}).code == 1);
}

TEST_CASE("family sweep") {
  const Run r = cli({"sweep", "--transform", "P12", "--grid", "0.1,0.25", "--t-max", "1"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 6 + 1);
  // z shifted by 2 zeta from the reference start
  CHECK(split(rows[1], ',')[3] == "0.69999999999999996");
  CHECK(split(rows[1], ',')[6] == "1");
  CHECK(split(rows[4], ',')[6] == "0");
  CHECK(cli({"sweep", "--t-max", "1"}).code == 1);
}

TEST_CASE("verify subcommand") {
  const Run r = cli({"verify"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.dump().find("\"pass\":false") == std::string::npos);
}

TEST_CASE("tensors") {
  const Run r = cli({"tensors", "--n", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.57735026918962") != std::string::npos);
  CHECK(cli({"tensors", "--n", "1"}).code == 1);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
}
