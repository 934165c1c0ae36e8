#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "vrsim/errors.hpp"
#include "vrsim/synth.hpp"
#include "vrsim/trace_io.hpp"

using namespace vrsim;

namespace {

const char* kHeader = "video_id,user_id,slot,x_deg,y_deg,z_deg";

std::string lines(std::initializer_list<std::string> rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r;
    out += '\n';
  }
  return out;
}

bool same_samples(const Dataset& a, const Dataset& b) {
  if (a.traces.size() != b.traces.size()) return false;
  for (std::size_t i = 0; i < a.traces.size(); ++i) {
    const Trace& x = a.traces[i];
    const Trace& y = b.traces[i];
    if (x.video_id != y.video_id || x.user_id != y.user_id) return false;
    if (x.samples.size() != y.samples.size()) return false;
    for (std::size_t s = 0; s < x.samples.size(); ++s) {
      const auto& p = x.samples[s];
      const auto& q = y.samples[s];
      if (p.slot != q.slot || p.x_deg != q.x_deg || p.y_deg != q.y_deg ||
          p.z_deg != q.z_deg)
        return false;
    }
  }
  return true;
}

std::string error_of(const std::string& csv) {
  try {
    traces_from_csv(csv, "t.csv");
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("csv round trip is bitwise faithful and canonical") {
  SynthConfig cfg;
  cfg.n_videos = 3;
  cfg.users_per_video = 2;
  cfg.t_tot = 40;
  Dataset ds = synth_traces(cfg, 77);

  std::string csv = traces_to_csv(ds);
  Dataset back = traces_from_csv(csv, "mem");
  CHECK(same_samples(ds, back));

  // Re-serializing the parsed dataset reproduces the bytes exactly.
  CHECK(traces_to_csv(back) == csv);
}

TEST_CASE("rows may arrive in any order") {
  std::string shuffled = lines({kHeader,
                                "1,0,1,0,-20,0",
                                "0,0,0,1.5,10,0",
                                "1,0,0,0,-10,0",
                                "0,0,1,2.5,20,0"});
  Dataset ds = traces_from_csv(shuffled, "mem");
  REQUIRE(ds.traces.size() == 2);
  CHECK(ds.traces[0].video_id == 0);
  CHECK(ds.traces[0].samples[0].x_deg == 1.5);
  CHECK(ds.traces[0].samples[1].y_deg == 20.0);
  CHECK(ds.traces[1].video_id == 1);
  CHECK(ds.traces[1].samples[0].y_deg == -10.0);
}

TEST_CASE("windows line endings are tolerated") {
  std::string crlf = std::string(kHeader) + "\r\n0,0,0,1,2,3\r\n0,0,1,4,5,6\r\n";
  Dataset ds = traces_from_csv(crlf, "mem");
  REQUIRE(ds.traces.size() == 1);
  CHECK(ds.traces[0].samples[1].z_deg == 6.0);
}

TEST_CASE("malformed csv is rejected with the offending line") {
  SUBCASE("wrong header") {
    std::string e = error_of(lines({"video,user,slot,x,y,z", "0,0,0,1,2,3"}));
    CHECK(e.find("t.csv:1") != std::string::npos);
    CHECK(e.find("header") != std::string::npos);
  }
  SUBCASE("five fields") {
    std::string e = error_of(lines({kHeader, "0,0,0,1,2"}));
    CHECK(e.find("t.csv:2") != std::string::npos);
    CHECK(e.find("6 comma-separated fields") != std::string::npos);
  }
  SUBCASE("seven fields") {
    std::string e = error_of(lines({kHeader, "0,0,0,1,2,3,4"}));
    CHECK(e.find("t.csv:2") != std::string::npos);
  }
  SUBCASE("unparsable number") {
    std::string e = error_of(lines({kHeader, "0,0,0,1,worm,3"}));
    CHECK(e.find("t.csv:2") != std::string::npos);
    CHECK(e.find("y_deg") != std::string::npos);
    CHECK(e.find("worm") != std::string::npos);
  }
  SUBCASE("angle out of range") {
    std::string e = error_of(lines({kHeader, "0,0,0,1,2,3", "0,0,1,1,-180,3"}));
    CHECK(e.find("t.csv:3") != std::string::npos);
    CHECK(e.find("y_deg") != std::string::npos);
    CHECK(error_of(lines({kHeader, "0,0,0,180.5,2,3"})).find("x_deg") !=
          std::string::npos);
  }
  SUBCASE("negative slot") {
    std::string e = error_of(lines({kHeader, "0,0,-1,1,2,3"}));
    CHECK(e.find("t.csv:2") != std::string::npos);
    CHECK(e.find("slot") != std::string::npos);
  }
  SUBCASE("slot gap") {
    CHECK_THROWS_AS(
        traces_from_csv(lines({kHeader, "0,0,0,1,2,3", "0,0,2,1,2,3"}), "mem"),
        DataError);
  }
  SUBCASE("missing slot zero") {
    CHECK_THROWS_AS(traces_from_csv(lines({kHeader, "0,0,1,1,2,3"}), "mem"),
                    DataError);
  }
  SUBCASE("duplicate slot") {
    CHECK_THROWS_AS(
        traces_from_csv(lines({kHeader, "0,0,0,1,2,3", "0,0,0,4,5,6"}), "mem"),
        DataError);
  }
  SUBCASE("empty input") {
    std::string e = error_of("");
    CHECK(e.find("empty") != std::string::npos);
  }
}

TEST_CASE("file save and load round trip") {
  SynthConfig cfg;
  cfg.n_videos = 2;
  cfg.users_per_video = 2;
  cfg.t_tot = 25;
  Dataset ds = synth_traces(cfg, 9);

  auto path = std::filesystem::temp_directory_path() / "vrsim_io_test.csv";
  write_traces(ds, path);
  Dataset back = parse_traces(path);
  CHECK(same_samples(ds, back));
  std::filesystem::remove(path);

  CHECK_THROWS_AS(parse_traces("/nonexistent/nowhere.csv"), DataError);
}
