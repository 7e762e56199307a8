#include "unirenorm/cli.hpp"

#include "unirenorm/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace unirenorm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "renorm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "unirenorm_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve the basilica") {
  const Result r = cli({"solve", "--degree", "2", "--word", "2:LC"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  set_precision_bits(256);
  CHECK(parse_decimal(j["c"].get<std::string>()) == -1);
  CHECK(j["germ"]["stack"].empty());
  const Result csv = cli({"solve", "--word", "2:LC", "--format", "csv"});
  CHECK(csv.out == "c\n-1.000000000000000000000000000000000000000e+00\n");
}

TEST_CASE("usage errors exit 2 with usage text") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"solve"},
           {"solve", "--word", "2:LC", "--frobnicate"},
           {"solve", "--word", "2:LC", "--format", "xml"},
           {"solve", "--word", "2:LC", "--degree", "3"},
           {"solve", "--word", "nonsense"},
           {"nest"},
           {"renormalize", "--param", "abc"},
       }) {
    const Result r = cli(args);
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.out.empty());
  }
}

TEST_CASE("domain errors exit 1") {
  const Result r = cli({"nest", "--degree", "2", "--param", "-1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("Appendix-A scope requires period > 2") != std::string::npos);
  CHECK(cli({"renormalize", "--param", "-0.5"}).code == 1);
  CHECK(cli({"solve", "--word", "3:LLC"}).code == 2);
  CHECK(cli({"solve", "--word", "2:LC|2:LC", "--degree", "2", "--precision-bits", "64"}).code == 0);
}

TEST_CASE("renormalize output re-parses") {
  const fs::path dir = scratch();
  const std::string germ = (dir / "germ.json").string();
  REQUIRE(cli({"renormalize", "--param", "-1.3107026413368328835635707974121807785019316276258825529941257", "--out", germ}).code == 0);
  const Json j = Json::parse(read_file(germ));
  CHECK(j["pre_renorm"]["p"] == 2);
  CHECK(j["combinatorics"] == "2:LC");
  write_atomic(germ, j["germ"].dump());
  const Result again = cli({"renormalize", "--germ", germ, "--as", "2:LC"});
  CHECK(again.code == 0);
  CHECK(cli({"renormalize", "--germ", germ, "--param", "-1"}).code == 2);
  write_atomic(germ, Json::parse(again.out)["germ"].dump());
  CHECK(cli({"renormalize", "--germ", germ}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("identical commands give identical files") {
  const fs::path dir = scratch();
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  REQUIRE(cli({"nest", "--param", "-1.77", "--out", a}).code == 0);
  REQUIRE(cli({"nest", "--param", "-1.77", "--out", b}).code == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a + ".summary.json") == read_file(b + ".summary.json"));
  CHECK(fs::exists(a + ".meta.json"));
  const std::string csv = read_file(a);
  CHECK(csv.rfind("level,a_n,v_n,lambda_n,central,j_index,cascade_id,cascade_type\n", 0) == 0);
  const Json summary = Json::parse(read_file(a + ".summary.json"));
  CHECK(summary["sjk_ok"] == true);
  CHECK(summary["Iprime0_ok"] == true);
  CHECK(summary["renorm_period"] == 3);
  fs::remove_all(dir);
}

TEST_CASE("precision: flag over config over environment") {
  const fs::path dir = scratch();
  const std::string cfg = (dir / "run.cfg").string();
  const std::string out = (dir / "o.json").string();
  auto bits = [&]() { return Json::parse(read_file(out + ".meta.json"))["precision_bits"].get<int>(); };
  ::setenv("RENORM_PRECISION_BITS", "160", 1);
  REQUIRE(cli({"solve", "--word", "2:LC", "--out", out}).code == 0);
  CHECK(bits() == 160);
  write_atomic(cfg, "precision_bits = 192\nrho = 0.25\n");
  REQUIRE(cli({"solve", "--word", "2:LC", "--out", out, "--config", cfg}).code == 0);
  CHECK(bits() == 192);
  REQUIRE(cli({"solve", "--word", "2:LC", "--out", out, "--config", cfg, "--precision-bits", "128"}).code == 0);
  CHECK(bits() == 128);
  ::setenv("RENORM_PRECISION_BITS", "lots", 1);
  CHECK(cli({"solve", "--word", "2:LC"}).code == 2);
  ::unsetenv("RENORM_PRECISION_BITS");
  REQUIRE(cli({"solve", "--word", "2:LC", "--out", out}).code == 0);
  CHECK(bits() == 256);
  write_atomic(cfg, "colour = blue\n");
  CHECK(cli({"solve", "--word", "2:LC", "--config", cfg}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("feigenbaum CSV") {
  const Result r = cli({"feigenbaum", "--degree", "2", "--levels", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,c_n,delta_n\n1,", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("horseshoe report") {
  const Result r = cli({"horseshoe", "--word", "2:LC|2:LC|2:LC|2:LC;2:LC|2:LC|2:LC", "--shadow-min", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["word"] == "2:LC|2:LC|2:LC|2:LC;2:LC|2:LC|2:LC");
  CHECK(j["realized_germ"]["stack"].size() == 4);
  CHECK(j["equivariance_defect"].is_string());
  CHECK(j["shadow_gaps"].size() == 2);
  CHECK(j["contraction"]["distances"].size() == 3);
  CHECK(j["contraction"]["fitted_rate"].is_string());
}

TEST_CASE("cascades and contract") {
  const Result c = cli({"cascades", "--param", "-1.77"});
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["runs"].is_array());
  const Result k = cli({"contract", "--depth", "8", "--steps", "3", "--format", "csv"});
  REQUIRE(k.code == 0);
  CHECK(k.out.rfind("n,d_n\n0,", 0) == 0);
  CHECK(cli({"contract", "--depth", "3", "--steps", "3"}).code == 2);
}
