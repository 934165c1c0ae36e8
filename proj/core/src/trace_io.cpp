#include "vrsim/trace_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "vrsim/angles.hpp"
#include "vrsim/errors.hpp"
#include "vrsim/serialize.hpp"

namespace vrsim {

namespace {

constexpr std::string_view kHeader = "video_id,user_id,slot,x_deg,y_deg,z_deg";

[[noreturn]] void fail(std::string_view origin, int line,
                       const std::string& msg) {
  throw DataError(std::string(origin) + ":" + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_field(std::string_view s, std::string_view origin, int line,
              const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    fail(origin, line, std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string traces_to_csv(const Dataset& ds) {
  std::vector<const Trace*> ordered;
  ordered.reserve(ds.traces.size());
  for (const auto& t : ds.traces) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(), [](const Trace* a, const Trace* b) {
    return std::pair(a->video_id, a->user_id) < std::pair(b->video_id, b->user_id);
  });

  std::ostringstream os;
  os << kHeader << '\n';
  for (const Trace* t : ordered) {
    for (const auto& s : t->samples) {
      os << t->video_id << ',' << t->user_id << ',' << s.slot << ','
         << format_double(s.x_deg) << ',' << format_double(s.y_deg) << ','
         << format_double(s.z_deg) << '\n';
    }
  }
  return os.str();
}

Dataset traces_from_csv(std::string_view text, std::string_view origin) {
  std::map<std::pair<int, int>, std::vector<ViewpointSample>> groups;

  std::size_t pos = 0;
  int lineno = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kHeader)
        fail(origin, lineno, "expected header '" + std::string(kHeader) + "'");
      saw_header = true;
      continue;
    }

    std::array<std::string_view, 6> cols;
    std::size_t start = 0;
    for (int c = 0; c < 6; ++c) {
      std::size_t comma = line.find(',', start);
      bool last = c == 5;
      if (last != (comma == std::string_view::npos))
        fail(origin, lineno, "expected 6 comma-separated fields");
      cols[static_cast<std::size_t>(c)] =
          line.substr(start, (last ? line.size() : comma) - start);
      start = comma + 1;
    }

    ViewpointSample s;
    int vid = parse_field<int>(cols[0], origin, lineno, "video_id");
    int uid = parse_field<int>(cols[1], origin, lineno, "user_id");
    s.slot = parse_field<int>(cols[2], origin, lineno, "slot");
    s.x_deg = parse_field<double>(cols[3], origin, lineno, "x_deg");
    s.y_deg = parse_field<double>(cols[4], origin, lineno, "y_deg");
    s.z_deg = parse_field<double>(cols[5], origin, lineno, "z_deg");
    for (Axis a : kAllAxes) {
      if (!angle_in_range(s.axis(a)))
        fail(origin, lineno,
             std::string("angle off (-180, 180] in column ") + axis_name(a) +
                 "_deg");
    }
    if (s.slot < 0) fail(origin, lineno, "negative slot");
    groups[{vid, uid}].push_back(s);
  }
  if (!saw_header) throw DataError(std::string(origin) + ": empty file");

  Dataset ds;
  for (auto& [key, samples] : groups) {
    std::sort(samples.begin(), samples.end(),
              [](const ViewpointSample& a, const ViewpointSample& b) {
                return a.slot < b.slot;
              });
    Trace t;
    t.video_id = key.first;
    t.user_id = key.second;
    t.samples = std::move(samples);
    ds.traces.push_back(std::move(t));
  }
  validate_dataset(ds);  // contiguity, ranges, duplicates
  return ds;
}

void write_traces(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << traces_to_csv(ds);
  if (!out) throw DataError("write failed on " + path.string());
}

Dataset parse_traces(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return traces_from_csv(buf.str(), path.string());
}

}  // namespace vrsim
