#include "vrsim/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "vrsim/errors.hpp"

namespace vrsim {

namespace {

constexpr std::string_view kMagic = "vrsim-model v1";

class LineReader {
 public:
  LineReader(std::string_view text, std::string_view origin)
      : text_(text), origin_(origin) {}

  std::string_view next() {
    while (true) {
      if (pos_ >= text_.size()) fail("unexpected end of file");
      std::size_t eol = text_.find('\n', pos_);
      if (eol == std::string_view::npos) eol = text_.size();
      std::string_view line = text_.substr(pos_, eol - pos_);
      pos_ = eol + 1;
      ++lineno_;
      if (!line.empty()) return line;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError(std::string(origin_) + ":" + std::to_string(lineno_) +
                    ": " + msg);
  }

 private:
  std::string_view text_;
  std::string_view origin_;
  std::size_t pos_ = 0;
  int lineno_ = 0;
};

// Splits "key v1 v2 ..." and checks the key.
std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_long(std::string_view s, const LineReader& rd) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    rd.fail("bad integer '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s, const LineReader& rd) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    rd.fail("bad number '" + std::string(s) + "'");
  return v;
}

// Expects a "key value..." line with the given key and field count.
std::vector<std::string_view> expect(LineReader& rd, std::string_view key,
                                     std::size_t values) {
  auto f = fields(rd.next());
  if (f.empty() || f[0] != key || f.size() != values + 1)
    rd.fail("expected '" + std::string(key) + "' with " +
            std::to_string(values) + " value(s)");
  return {f.begin() + 1, f.end()};
}

void put_kv(std::ostringstream& os, std::string_view key, double v) {
  os << key << ' ' << format_double(v) << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string model_to_string(const PredictorModel& model) {
  std::ostringstream os;
  os << kMagic << '\n';
  os << "kind " << predictor_name(kind_of(model)) << '\n';
  if (const auto* lr = std::get_if<LrModel>(&model)) {
    os << "input " << lr->input_len << '\n';
    os << "order " << lr->order << '\n';
    put_kv(os, "learning_rate", lr->learning_rate);
  } else if (const auto* mlp = std::get_if<MlpModel>(&model)) {
    os << "dims " << mlp->input_len();
    for (const auto& w : mlp->weights) os << ' ' << w.rows();
    os << '\n';
    put_kv(os, "learning_rate", mlp->learning_rate);
  } else {
    const auto& rnn = std::get<RnnModel>(model);
    os << "hidden " << rnn.hidden << '\n';
    os << "input_width " << rnn.input_width << '\n';
    put_kv(os, "grad_clip", rnn.grad_clip);
    put_kv(os, "learning_rate", rnn.learning_rate);
  }
  Eigen::VectorXd p = pack_params(model);
  os << "params " << p.size() << '\n';
  for (Eigen::Index i = 0; i < p.size(); ++i) os << format_double(p[i]) << '\n';
  return os.str();
}

PredictorModel model_from_string(std::string_view text,
                                 std::string_view origin) {
  LineReader rd(text, origin);
  if (rd.next() != kMagic) rd.fail("not a vrsim model file");
  auto kindf = expect(rd, "kind", 1);

  PredictorModel model;
  if (kindf[0] == "lr") {
    long input = parse_long(expect(rd, "input", 1)[0], rd);
    if (input < 1) rd.fail("bad input length");
    long order = parse_long(expect(rd, "order", 1)[0], rd);
    if (order < 1) rd.fail("bad order");
    double lr = parse_double(expect(rd, "learning_rate", 1)[0], rd);
    model = make_lr(static_cast<int>(input), static_cast<int>(order), lr);
  } else if (kindf[0] == "nn") {
    auto dimf = fields(rd.next());
    if (dimf.size() < 3 || dimf[0] != "dims") rd.fail("expected 'dims'");
    std::vector<int> dims;
    for (std::size_t i = 1; i < dimf.size(); ++i) {
      long d = parse_long(dimf[i], rd);
      if (d < 1) rd.fail("bad layer size");
      dims.push_back(static_cast<int>(d));
    }
    if (dims.back() != 1) rd.fail("output layer must have one unit");
    double lr = parse_double(expect(rd, "learning_rate", 1)[0], rd);
    Rng dummy(0);
    model = make_mlp(dims.front(),
                     {dims.begin() + 1, dims.end() - 1}, lr, dummy);
  } else if (kindf[0] == "lstm" || kindf[0] == "gru") {
    long hidden = parse_long(expect(rd, "hidden", 1)[0], rd);
    if (hidden < 1) rd.fail("bad hidden size");
    long width = parse_long(expect(rd, "input_width", 1)[0], rd);
    if (width < 1) rd.fail("bad input width");
    double clip = parse_double(expect(rd, "grad_clip", 1)[0], rd);
    double lr = parse_double(expect(rd, "learning_rate", 1)[0], rd);
    Rng dummy(0);
    model = make_rnn(kindf[0] == "lstm" ? CellKind::Lstm : CellKind::Gru,
                     static_cast<int>(width), static_cast<int>(hidden), lr,
                     clip, dummy);
  } else {
    rd.fail("unknown kind '" + std::string(kindf[0]) + "'");
  }

  long n = parse_long(expect(rd, "params", 1)[0], rd);
  Eigen::VectorXd p(pack_params(model).size());
  if (n != p.size()) rd.fail("parameter count does not match shape");
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p[i] = parse_double(fields(rd.next())[0], rd);
  return with_params(model, p);
}

void save_model(const PredictorModel& model,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << model_to_string(model);
  if (!out) throw DataError("write failed on " + path.string());
}

PredictorModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_string(buf.str(), path.string());
}

}  // namespace vrsim
