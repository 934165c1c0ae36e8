#include <stdexcept>
#include <vector>

#include "predictor_detail.hpp"

namespace vrsim::detail {

namespace {

Eigen::ArrayXd sigmoid(const Eigen::VectorXd& a) {
  return 1.0 / (1.0 + (-a.array()).exp());
}

int n_gates(CellKind cell) { return cell == CellKind::Lstm ? 4 : 3; }

struct RnnTape {
  int steps = 0;
  std::vector<Eigen::VectorXd> x;              // per step
  std::vector<Eigen::VectorXd> h;              // h[0] is the zero initial state
  std::vector<Eigen::VectorXd> c;              // LSTM cell states, c[0] zero
  std::vector<std::vector<Eigen::ArrayXd>> g;  // gate activations per step
  double out_pre = 0.0;
  double out = 0.0;
};

RnnTape rnn_forward(const RnnModel& m, std::span<const double> input) {
  if (input.empty() ||
      static_cast<int>(input.size()) % m.input_width != 0)
    throw std::invalid_argument("rnn forward: feature length not a multiple of input width");
  RnnTape tape;
  tape.steps = static_cast<int>(input.size()) / m.input_width;
  tape.h.emplace_back(Eigen::VectorXd::Zero(m.hidden));
  if (m.cell == CellKind::Lstm) tape.c.emplace_back(Eigen::VectorXd::Zero(m.hidden));

  for (int t = 0; t < tape.steps; ++t) {
    Eigen::VectorXd xt = Eigen::Map<const Eigen::VectorXd>(
        input.data() + static_cast<std::ptrdiff_t>(t) * m.input_width, m.input_width);
    const Eigen::VectorXd& hp = tape.h.back();
    std::vector<Eigen::ArrayXd> gates;

    if (m.cell == CellKind::Lstm) {
      Eigen::ArrayXd i = sigmoid(m.wx[0] * xt + m.wh[0] * hp + m.bias[0]);
      Eigen::ArrayXd f = sigmoid(m.wx[1] * xt + m.wh[1] * hp + m.bias[1]);
      Eigen::ArrayXd o = sigmoid(m.wx[2] * xt + m.wh[2] * hp + m.bias[2]);
      Eigen::ArrayXd cand = (m.wx[3] * xt + m.wh[3] * hp + m.bias[3]).array().tanh();
      Eigen::ArrayXd cn = f * tape.c.back().array() + i * cand;
      tape.c.emplace_back(cn.matrix());
      tape.h.emplace_back((o * cn.tanh()).matrix());
      gates = {std::move(i), std::move(f), std::move(o), std::move(cand)};
    } else {
      Eigen::ArrayXd z = sigmoid(m.wx[0] * xt + m.wh[0] * hp + m.bias[0]);
      Eigen::ArrayXd r = sigmoid(m.wx[1] * xt + m.wh[1] * hp + m.bias[1]);
      Eigen::ArrayXd cand =
          (m.wx[2] * xt + m.wh[2] * (r.matrix().cwiseProduct(hp)) + m.bias[2])
              .array()
              .tanh();
      // Update gate keeps the previous state; z == 1 freezes h.
      Eigen::ArrayXd hn = z * hp.array() + (1.0 - z) * cand;
      tape.h.emplace_back(hn.matrix());
      gates = {std::move(z), std::move(r), std::move(cand)};
    }
    tape.g.push_back(std::move(gates));
    tape.x.push_back(std::move(xt));
  }

  tape.out_pre = m.w_out.dot(tape.h.back()) + m.b_out;
  tape.out = relu(tape.out_pre);
  return tape;
}

struct GradLayout {
  Eigen::Index per_gate_wx, per_gate_wh, per_gate_b, gate_block;
  Eigen::Index out_offset, total;
};

GradLayout layout_of(const RnnModel& m) {
  GradLayout lo{};
  lo.per_gate_wx = m.wx[0].size();
  lo.per_gate_wh = m.wh[0].size();
  lo.per_gate_b = m.bias[0].size();
  lo.gate_block = lo.per_gate_wx + lo.per_gate_wh + lo.per_gate_b;
  lo.out_offset = lo.gate_block * n_gates(m.cell);
  lo.total = lo.out_offset + m.w_out.size() + 1;
  return lo;
}

void write_row_major(Eigen::VectorXd& dst, Eigen::Index at,
                     const Eigen::MatrixXd& src) {
  for (Eigen::Index r = 0; r < src.rows(); ++r)
    for (Eigen::Index c = 0; c < src.cols(); ++c)
      dst[at + r * src.cols() + c] = src(r, c);
}

}  // namespace

double rnn_predict(const RnnModel& m, std::span<const double> input) {
  return rnn_forward(m, input).out;
}

Eigen::VectorXd rnn_gradient(const RnnModel& m, std::span<const double> input,
                             double target) {
  RnnTape tape = rnn_forward(m, input);
  const int G = n_gates(m.cell);
  const GradLayout lo = layout_of(m);

  std::vector<Eigen::MatrixXd> dwx(static_cast<std::size_t>(G)),
      dwh(static_cast<std::size_t>(G));
  std::vector<Eigen::VectorXd> db(static_cast<std::size_t>(G));
  for (int g = 0; g < G; ++g) {
    dwx[static_cast<std::size_t>(g)] = Eigen::MatrixXd::Zero(m.hidden, m.input_width);
    dwh[static_cast<std::size_t>(g)] = Eigen::MatrixXd::Zero(m.hidden, m.hidden);
    db[static_cast<std::size_t>(g)] = Eigen::VectorXd::Zero(m.hidden);
  }

  double dout = 2.0 * (tape.out - target) * relu_grad(tape.out_pre);
  Eigen::VectorXd dh = dout * m.w_out;
  Eigen::ArrayXd dc = Eigen::ArrayXd::Zero(m.hidden);

  for (int t = tape.steps - 1; t >= 0; --t) {
    const auto ti = static_cast<std::size_t>(t);
    const Eigen::VectorXd& hp = tape.h[ti];

    if (m.cell == CellKind::Lstm) {
      const Eigen::ArrayXd& i = tape.g[ti][0];
      const Eigen::ArrayXd& f = tape.g[ti][1];
      const Eigen::ArrayXd& o = tape.g[ti][2];
      const Eigen::ArrayXd& cand = tape.g[ti][3];
      Eigen::ArrayXd tc = tape.c[ti + 1].array().tanh();

      Eigen::VectorXd da_o = (dh.array() * tc * o * (1.0 - o)).matrix();
      dc += dh.array() * o * (1.0 - tc.square());
      Eigen::VectorXd da_f =
          (dc * tape.c[ti].array() * f * (1.0 - f)).matrix();
      Eigen::VectorXd da_i = (dc * cand * i * (1.0 - i)).matrix();
      Eigen::VectorXd da_c = (dc * i * (1.0 - cand.square())).matrix();

      const Eigen::VectorXd* das[4] = {&da_i, &da_f, &da_o, &da_c};
      for (int g = 0; g < 4; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        dwx[gi].noalias() += *das[g] * tape.x[ti].transpose();
        dwh[gi].noalias() += *das[g] * hp.transpose();
        db[gi] += *das[g];
      }
      dh = m.wh[0].transpose() * da_i + m.wh[1].transpose() * da_f +
           m.wh[2].transpose() * da_o + m.wh[3].transpose() * da_c;
      dc *= f;
    } else {
      const Eigen::ArrayXd& z = tape.g[ti][0];
      const Eigen::ArrayXd& r = tape.g[ti][1];
      const Eigen::ArrayXd& cand = tape.g[ti][2];

      Eigen::VectorXd da_z =
          (dh.array() * (hp.array() - cand) * z * (1.0 - z)).matrix();
      Eigen::VectorXd da_h =
          (dh.array() * (1.0 - z) * (1.0 - cand.square())).matrix();
      Eigen::VectorXd through_cand = m.wh[2].transpose() * da_h;
      Eigen::VectorXd da_r =
          (through_cand.array() * hp.array() * r * (1.0 - r)).matrix();

      dwx[0].noalias() += da_z * tape.x[ti].transpose();
      dwh[0].noalias() += da_z * hp.transpose();
      db[0] += da_z;
      dwx[1].noalias() += da_r * tape.x[ti].transpose();
      dwh[1].noalias() += da_r * hp.transpose();
      db[1] += da_r;
      dwx[2].noalias() += da_h * tape.x[ti].transpose();
      dwh[2].noalias() += da_h * (r * hp.array()).matrix().transpose();
      db[2] += da_h;

      dh = (dh.array() * z + through_cand.array() * r).matrix() +
           m.wh[0].transpose() * da_z + m.wh[1].transpose() * da_r;
    }
  }

  Eigen::VectorXd grad(lo.total);
  for (int g = 0; g < G; ++g) {
    const auto gi = static_cast<std::size_t>(g);
    Eigen::Index at = lo.gate_block * g;
    write_row_major(grad, at, dwx[gi]);
    write_row_major(grad, at + lo.per_gate_wx, dwh[gi]);
    grad.segment(at + lo.per_gate_wx + lo.per_gate_wh, lo.per_gate_b) = db[gi];
  }
  grad.segment(lo.out_offset, m.w_out.size()) = dout * tape.h.back();
  grad[lo.total - 1] = dout;
  return grad;
}

int rnn_param_count(const RnnModel& m) {
  return static_cast<int>(layout_of(m).total);
}

}  // namespace vrsim::detail
