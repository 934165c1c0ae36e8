#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "vrsim/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

// VRSIM_CLI_PATH is injected by the build with the tool's location.
const std::string kCli = VRSIM_CLI_PATH;

int run_cmd(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string tiny_run_flags() {
  return " --synthetic --videos 2 --users-per-video 2 --t-tot 30 --kcross 2"
         " --epochs 1 --predictor lr --order 1 --window 4 --k-vr 2";
}

}  // namespace

TEST_CASE("a small run exits cleanly and writes its report") {
  fs::path dir = fresh_dir("vrsim_cli_run");
  fs::path log = dir / "stdout.txt";
  int rc = run_cmd("\"" + kCli + "\"" + tiny_run_flags() + " --out \"" +
                   (dir / "out").string() + "\" > \"" + log.string() + "\"");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "report.txt"));
  CHECK(fs::exists(dir / "out" / "per_slot_error.csv"));

  std::string out = slurp(log);
  CHECK(out.find("offline_error_deg2 = ") != std::string::npos);
  CHECK(out.find("online_error_deg2 = ") != std::string::npos);
  CHECK(out.find("report written to ") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("usage errors exit with the configuration status") {
  CHECK(run_cmd("\"" + kCli + "\" --frobnicate 2>/dev/null") == 2);
  CHECK(run_cmd("\"" + kCli + "\" --predictor potato 2>/dev/null") == 2);
  CHECK(run_cmd("\"" + kCli + "\" --scheme maybe 2>/dev/null") == 2);
  CHECK(run_cmd("\"" + kCli +
                "\" --data x.csv --synthetic 2>/dev/null") == 2);
  // Domain validation also lands on the same status.
  CHECK(run_cmd("\"" + kCli + "\"" + tiny_run_flags() +
                " --epochs 0 --out /tmp/vrsim_cli_nowhere 2>/dev/null") == 2);
}

TEST_CASE("data errors exit with the data status") {
  CHECK(run_cmd("\"" + kCli +
                "\" --data /nonexistent/nowhere.csv 2>/dev/null") == 3);

  fs::path dir = fresh_dir("vrsim_cli_bad_data");
  fs::path bad = dir / "bad.csv";
  std::ofstream(bad) << "video_id,user_id,slot,x_deg,y_deg,z_deg\n0,0,0,1,worm,3\n";
  CHECK(run_cmd("\"" + kCli + "\" --data \"" + bad.string() +
                "\" 2>/dev/null") == 3);
  fs::remove_all(dir);
}

TEST_CASE("the synth subcommand writes a dataset the run path accepts") {
  fs::path dir = fresh_dir("vrsim_cli_synth");
  fs::path csv = dir / "traces.csv";
  int rc = run_cmd("\"" + kCli +
                   "\" synth --videos 2 --users-per-video 4 --t-tot 30"
                   " --seed 3 --out \"" + csv.string() + "\" >/dev/null");
  REQUIRE(rc == 0);
  REQUIRE(fs::exists(csv));

  vrsim::Dataset ds = vrsim::parse_traces(csv);
  CHECK(ds.traces.size() == 8);
  CHECK(ds.traces.front().length() == 30);

  rc = run_cmd("\"" + kCli + "\" --data \"" + csv.string() +
               "\" --kcross 2 --epochs 1 --predictor lr --order 1 --window 4"
               " --k-vr 2 --out \"" + (dir / "out").string() + "\" >/dev/null");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "report.txt"));
  fs::remove_all(dir);
}

TEST_CASE("environment variables back every flag, and flags win") {
  fs::path dir = fresh_dir("vrsim_cli_env");
  int rc = run_cmd("env VRSIM_SEED=7 \"" + kCli + "\"" + tiny_run_flags() +
                   " --out \"" + (dir / "a").string() + "\" >/dev/null");
  REQUIRE(rc == 0);
  CHECK(slurp(dir / "a" / "report.txt").find("seed = 7") != std::string::npos);

  rc = run_cmd("env VRSIM_SEED=7 \"" + kCli + "\"" + tiny_run_flags() +
               " --seed 9 --out \"" + (dir / "b").string() + "\" >/dev/null");
  REQUIRE(rc == 0);
  CHECK(slurp(dir / "b" / "report.txt").find("seed = 9") != std::string::npos);

  // An enum-valued flag through the environment.
  rc = run_cmd("env VRSIM_SCHEME=genie \"" + kCli + "\"" + tiny_run_flags() +
               " --out \"" + (dir / "c").string() + "\" >/dev/null");
  REQUIRE(rc == 0);
  std::string rep = slurp(dir / "c" / "report.txt");
  CHECK(rep.find("scheme = genie") != std::string::npos);
  CHECK(rep.find("delivered_fraction = 1") != std::string::npos);
  fs::remove_all(dir);
}
