#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "packlab/io_render.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = packlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(PACKLAB_FIXTURES) + "/" + name; }

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "packlab_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const std::string& csv) {
  return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen examples") {
  auto r = run({"gen", "--root-default", "--max-curv", "3"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 5);
  CHECK(r.err.starts_with("manifest: "));
  r = run({"gen", "--root-default", "--max-curv", "2"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 3);
  CHECK(r.out.find("\n3,") == std::string::npos);
  r = run({"gen", "--root", "-1,2,2,3", "--max-curv", "3.7"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 5);
  CHECK(run({"gen", "--root", "1,1,1,1", "--max-curv", "10"}).code == 2);
  CHECK(run({"gen", "--root", "0,0,1,1", "--max-curv", "10"}).code == 2);
  CHECK(run({"gen", "--max-curv", "10"}).code == 2);
  CHECK(run({"gen", "--root-default", "--max-curv", "1e38"}).code != 0);
}

TEST_CASE("fit examples") {
  std::string series = "t,n\n";
  for (double t : packlab::geometric_grid(100.0, 6400.0)) {
    series += packlab::format_real(t) + "," + std::to_string(static_cast<long long>(std::llround(t * t))) + "\n";
  }
  const std::string path = write_scratch("square.csv", series);
  auto r = run({"fit", "--in", path, "--tmin", "100", "--tmax", "6400"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["exponent"].get<double>() - 2.0) < 1e-4);
  CHECK(run({"fit", "--in", path, "--tmin", "10", "--tmax", "6400"}).code == 2);
  CHECK(run({"fit", "--in", path, "--tmin", "100", "--tmax", "1e6"}).code == 2);
  CHECK(run({"fit", "--in", write_scratch("junk.csv", "hello\n")}).code == 2);
  CHECK(run({"fit", "--in", (scratch() / "missing.csv").string()}).code == 2);
}

TEST_CASE("dim on the cyclic group") {
  auto r = run({"dim", "--group", fixture("cyclic.json"), "--T", "30", "--L-max", "100", "--depth", "6"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["critical_exponent"]["value"].get<double>()) < 0.05);
  CHECK(j["box_dimension"]["value"].get<double>() == 0.0);
}

TEST_CASE("exit codes for group input") {
  CHECK(run({"dim", "--group", write_scratch("bad.json", "{\"generators\": 3}")}).code == 2);
  const std::string para =
      "{\"generators\": [{\"name\": \"p\", \"matrix\": [[1,0],[1,0],[0,0],[1,0]]}]}";
  CHECK(run({"dim", "--group", write_scratch("para.json", para), "--depth", "4"}).code == 4);
  CHECK(run({"dim", "--group", fixture("schottky_fuchsian.json"), "--T", "12", "--L-max", "2"}).code == 5);
  CHECK(run({"cr-test", "--pair", fixture("pair_conjugate.json")}).code == 2);
  CHECK(run({"joint", "--pair", fixture("pair_duplicated.json"), "--T", "20", "--L-max", "2"}).code == 5);
  CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("cr-test and joint reports") {
  auto r = run({"cr-test", "--pair", fixture("pair_duplicated.json"), "--seed", "1", "--samples", "300"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["violating_fraction"].get<double>() == 0.0);
  r = run({"joint", "--pair", fixture("pair_nonconjugate.json"), "--T", "24"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["below_bound"].get<bool>());
}

TEST_CASE("manifest next to the output") {
  const std::string out = (scratch() / "gen.csv").string();
  auto r = run({"gen", "--root-default", "--max-curv", "50", "--out", out, "--threads", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto m = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(m["subcommand"] == "gen");
  CHECK(m["threads"] == 2);
  CHECK(m["flags"].contains("--max-curv"));
  CHECK_FALSE(m["flags"].contains("--threads"));

  const std::string in = out;
  r = run({"sieve", "--in", in, "--max", "50", "--manifest", (scratch() / "s.json").string()});
  REQUIRE(r.code == 0);
  const auto s = nlohmann::json::parse(slurp((scratch() / "s.json").string()));
  REQUIRE(s["inputs"].size() == 1);
  CHECK(s["inputs"][0]["fnv1a64"] == packlab::cli::content_hash(slurp(in)));
}

TEST_CASE("outputs do not depend on thread count") {
  const std::string csv = run({"gen", "--root-default", "--max-curv", "2000"}).out;
  const std::string csv_path = write_scratch("g2000.csv", csv);
  const std::vector<std::vector<std::string>> commands = {
      {"gen", "--root-default", "--max-curv", "2000"},
      {"fit", "--in", csv_path},
      {"sieve", "--in", csv_path, "--max", "2000"},
      {"dim", "--group", fixture("schottky_loxodromic.json"), "--depth", "7", "--T", "12"},
      {"cr-test", "--pair", fixture("pair_nonconjugate.json"), "--seed", "5", "--samples", "200"},
      {"joint", "--pair", fixture("pair_conjugate.json"), "--T", "20"},
      {"render", "--in", csv_path},
      {"render", "--in", fixture("schottky_fuchsian.json"), "--depth", "6"},
  };
  for (const auto& cmd : commands) {
    auto one = cmd;
    one.insert(one.end(), {"--threads", "1"});
    auto four = cmd;
    four.insert(four.end(), {"--threads", "4"});
    const auto a = run(one);
    const auto b = run(four);
    CHECK_MESSAGE(a.code == 0, cmd[0]);
    CHECK_MESSAGE(a.out == b.out, cmd[0]);
  }
}

TEST_CASE("content hash") {
  CHECK(packlab::cli::content_hash("") == "cbf29ce484222325");
  CHECK(packlab::cli::content_hash("a") == "af63dc4c8601ec8c");
}

}  // TEST_SUITE
