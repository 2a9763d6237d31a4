// src/network.cpp

// Copyright 2026 The flatsla Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "flatsla/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "flatsla/base.hpp"

namespace flatsla {

namespace {

constexpr std::string_view kFormatTag = "flatsla-network";
constexpr int kFormatVersion = 1;

}  // namespace

namespace detail {

BpttWindow::BpttWindow(const NetworkSpec& spec, int depth)
    : spec_(spec), depth_(spec.recurrent ? static_cast<std::size_t>(std::max(depth, 1)) : 1) {
  records_.resize(depth_);
  for (auto& r : records_) {
    r.context.assign(spec_.context(), Network::kInitialContext);
    r.hidden.assign(spec_.hidden, 0.0);
  }
  output_.assign(spec_.output, 0.0);
  delta_out_.assign(spec_.output, 0.0);
  delta_.assign(spec_.hidden, 0.0);
  next_delta_.assign(spec_.hidden, 0.0);
  start_context_.assign(spec_.context(), Network::kInitialContext);
}

void BpttWindow::Reset() {
  std::fill(start_context_.begin(), start_context_.end(), Network::kInitialContext);
  count_ = 0;
}

void BpttWindow::Reset(std::span<const double> context) {
  std::copy(context.begin(), context.end(), start_context_.begin());
  count_ = 0;
}

void BpttWindow::Forward(const Network& net, const double* input) {
  const std::size_t slot = (head_ + 1) % depth_;
  Record& rec = records_[slot];
  if (spec_.recurrent) {
    const std::vector<double>& prev = count_ == 0 ? start_context_ : records_[head_].hidden;
    std::copy(prev.begin(), prev.end(), rec.context.begin());
  }
  rec.input = input;
  net.Forward(std::span<const double>(input, spec_.input), rec.context, rec.hidden, output_);
  head_ = slot;
  count_ = std::min(count_ + 1, depth_);
}

double BpttWindow::Accumulate(const Network& net, const double* target, std::vector<double>& g1,
                              std::vector<double>& g2) {
  const std::size_t nin = spec_.input, nh = spec_.hidden, nout = spec_.output;
  const std::size_t nctx = spec_.context();
  const std::size_t cols = net.w1_cols(), hcols = net.w2_cols();
  const auto w1 = net.w1();
  const auto w2 = net.w2();
  const Record& newest = records_[head_];

  double sse = 0.0;
  for (std::size_t o = 0; o < nout; ++o) {
    const double err = output_[o] - target[o];
    sse += err * err;
    delta_out_[o] = err * output_[o] * (1.0 - output_[o]);
    double* row = g2.data() + o * hcols;
    for (std::size_t h = 0; h < nh; ++h) row[h] += delta_out_[o] * newest.hidden[h];
    row[nh] += delta_out_[o];
  }
  for (std::size_t h = 0; h < nh; ++h) {
    double back = 0.0;
    for (std::size_t o = 0; o < nout; ++o) back += delta_out_[o] * w2[o * hcols + h];
    delta_[h] = back * newest.hidden[h] * (1.0 - newest.hidden[h]);
  }
  for (std::size_t back_step = 0; back_step < count_; ++back_step) {
    const Record& rec = records_[(head_ + depth_ - back_step) % depth_];
    for (std::size_t h = 0; h < nh; ++h) {
      const double d = delta_[h];
      if (d == 0.0) continue;
      double* row = g1.data() + h * cols;
      for (std::size_t i = 0; i < nin; ++i) row[i] += d * rec.input[i];
      for (std::size_t c = 0; c < nctx; ++c) row[nin + c] += d * rec.context[c];
      row[cols - 1] += d;
    }
    if (back_step + 1 == count_) break;
    // The context of this step is the hidden activation of the step before.
    for (std::size_t c = 0; c < nctx; ++c) {
      double back = 0.0;
      for (std::size_t h = 0; h < nh; ++h) back += delta_[h] * w1[h * cols + nin + c];
      next_delta_[c] = back * rec.context[c] * (1.0 - rec.context[c]);
    }
    std::swap(delta_, next_delta_);
  }
  return sse;
}

}  // namespace detail

using detail::BpttWindow;

void NetworkSpec::Validate() const {
  if (input < 1 || hidden < 1 || output < 1) {
    Fail("network sizes must be >= 1 (input ", input, ", hidden ", hidden, ", output ", output, ")");
  }
}

void TrainConfig::Validate() const {
  if (bptt_steps < 1) Fail("bptt_steps must be >= 1, got ", bptt_steps);
  if (epochs < 1) Fail("epochs must be >= 1, got ", epochs);
  if (!(learning_rate > 0.0)) Fail("learning rate must be > 0, got ", learning_rate);
}

Network::Network(const NetworkSpec& spec, ZeroTag) : spec_(spec) {
  spec_.Validate();
  w1_.assign(spec_.hidden * w1_cols(), 0.0);
  w2_.assign(spec_.output * w2_cols(), 0.0);
}

Network::Network(const NetworkSpec& spec) : Network(spec, ZeroTag{}) {
  Rng rng(spec.seed);
  for (double& w : w1_) w = rng.Uniform(-kInitRange, kInitRange);
  for (double& w : w2_) w = rng.Uniform(-kInitRange, kInitRange);
}

Network Network::Zeros(const NetworkSpec& spec) { return Network(spec, ZeroTag{}); }

SequenceState Network::InitialState() const {
  return SequenceState{std::vector<double>(spec_.context(), kInitialContext)};
}

void Network::CheckInput(std::span<const double> input, const SequenceState& state) const {
  if (input.size() != spec_.input) {
    Fail(info_.name, ": expected input of size ", spec_.input, ", got ", input.size());
  }
  if (spec_.recurrent && state.context.size() != spec_.hidden) {
    Fail(info_.name, ": expected context of size ", spec_.hidden, ", got ", state.context.size());
  }
}

namespace {

// Net input with every term clamped so that huge finite inputs saturate the
// unit instead of overflowing into inf - inf.
constexpr double kMaxTerm = 1e300, kScale = 1e-8;

double ClampedNet(const double* row, std::span<const double> a, std::span<const double> b) {
  auto term = [](double w, double x) { return std::clamp(w * x, -kMaxTerm, kMaxTerm) * kScale; };
  double net = term(row[a.size() + b.size()], 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) net += term(row[i], a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) net += term(row[a.size() + i], b[i]);
  return net / kScale;
}

}  // namespace

void Network::Forward(std::span<const double> input, std::span<const double> context,
                      std::span<double> hidden, std::span<double> output) const {
  const std::size_t cols = w1_cols();
  const std::size_t nin = spec_.input;
  const std::size_t nctx = spec_.context();
  for (std::size_t h = 0; h < spec_.hidden; ++h) {
    const double* row = w1_.data() + h * cols;
    double net = row[cols - 1];
    for (std::size_t i = 0; i < nin; ++i) net += row[i] * input[i];
    for (std::size_t c = 0; c < nctx; ++c) net += row[nin + c] * context[c];
    if (!std::isfinite(net)) net = ClampedNet(row, input, context);
    hidden[h] = Logistic(net);
  }
  const std::size_t hcols = w2_cols();
  for (std::size_t o = 0; o < spec_.output; ++o) {
    const double* row = w2_.data() + o * hcols;
    double net = row[hcols - 1];
    for (std::size_t h = 0; h < spec_.hidden; ++h) net += row[h] * hidden[h];
    if (!std::isfinite(net)) net = ClampedNet(row, hidden, {});
    output[o] = Logistic(net);
  }
}

std::vector<double> Network::Forward(std::span<const double> input, SequenceState& state) const {
  CheckInput(input, state);
  std::vector<double> hidden(spec_.hidden);
  std::vector<double> output(spec_.output);
  Forward(input, state.context, hidden, output);
  if (spec_.recurrent) state.context = std::move(hidden);
  return output;
}

Gradients Network::Backprop(std::span<const double> input, const SequenceState& state,
                            std::span<const double> target) const {
  CheckInput(input, state);
  if (target.size() != spec_.output) {
    Fail(info_.name, ": expected target of size ", spec_.output, ", got ", target.size());
  }
  Gradients g{std::vector<double>(w1_.size(), 0.0), std::vector<double>(w2_.size(), 0.0)};
  BpttWindow window(spec_, 1);
  window.Reset(state.context);
  window.Forward(*this, input.data());
  window.Accumulate(*this, target.data(), g.w1, g.w2);
  return g;
}

double Network::Loss(std::span<const double> input, const SequenceState& state,
                     std::span<const double> target) const {
  SequenceState copy = state;
  auto out = Forward(input, copy);
  double e = 0.0;
  for (std::size_t o = 0; o < out.size(); ++o) e += 0.5 * (out[o] - target[o]) * (out[o] - target[o]);
  return e;
}

std::string Network::Save() const {
  std::ostringstream os;
  os << kFormatTag << " " << kFormatVersion << "\n";
  os << "name " << info_.name << "\n";
  os << "input " << spec_.input << "\n";
  os << "hidden " << spec_.hidden << "\n";
  os << "output " << spec_.output << "\n";
  os << "recurrent " << (spec_.recurrent ? 1 : 0) << "\n";
  os << "seed " << spec_.seed << "\n";
  os << "input-tagset " << info_.input_tagset << "\n";
  os << "output-tagset " << info_.output_tagset << "\n";
  char buf[40];
  auto dump = [&](const char* tag, const std::vector<double>& w, std::size_t rows, std::size_t cols) {
    os << tag << " " << rows << " " << cols << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", w[r * cols + c]);
        os << (c ? " " : "") << buf;
      }
      os << "\n";
    }
  };
  dump("w1", w1_, spec_.hidden, w1_cols());
  dump("w2", w2_, spec_.output, w2_cols());
  os << "end\n";
  return os.str();
}

Network Network::Load(std::string_view text, const NetworkSpec* expected) {
  std::istringstream in{std::string(text)};
  auto expect_key = [&](std::string_view key) {
    std::string k;
    if (!(in >> k)) Fail("model file truncated before '", std::string(key), "'");
    if (k != key) Fail("model file: expected '", std::string(key), "', found '", k, "'");
  };
  auto read_size = [&](std::string_view key) -> std::size_t {
    expect_key(key);
    long long v;
    if (!(in >> v) || v < 0) Fail("model file: bad value for '", std::string(key), "'");
    return static_cast<std::size_t>(v);
  };
  auto read_word = [&](std::string_view key) {
    expect_key(key);
    std::string v;
    if (!(in >> v)) Fail("model file truncated at '", std::string(key), "'");
    return v;
  };

  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != kFormatTag) Fail("not a flatsla model file");
  if (version != kFormatVersion) Fail("unsupported model format version ", version);
  NetworkInfo info;
  info.name = read_word("name");
  NetworkSpec spec;
  spec.input = read_size("input");
  spec.hidden = read_size("hidden");
  spec.output = read_size("output");
  spec.recurrent = read_size("recurrent") != 0;
  spec.seed = static_cast<std::uint64_t>(std::stoull(read_word("seed")));
  info.input_tagset = read_word("input-tagset");
  info.output_tagset = read_word("output-tagset");
  spec.Validate();
  if (expected && !expected->SameShape(spec)) {
    Fail("model '", info.name, "' shape mismatch: file has ", spec.input, "-", spec.hidden, "-",
         spec.output, (spec.recurrent ? " recurrent" : " feedforward"), ", expected ",
         expected->input, "-", expected->hidden, "-", expected->output,
         (expected->recurrent ? " recurrent" : " feedforward"));
  }

  Network net(spec, ZeroTag{});
  net.info_ = info;
  auto read_matrix = [&](const char* key, std::vector<double>& w, std::size_t rows, std::size_t cols) {
    expect_key(key);
    std::size_t r, c;
    if (!(in >> r >> c)) Fail("model file truncated at '", key, "' header");
    if (r != rows || c != cols) {
      Fail("model file: ", key, " is ", r, "x", c, " but the header implies ", rows, "x", cols);
    }
    std::string tok;
    for (std::size_t i = 0; i < rows * cols; ++i) {
      if (!(in >> tok)) Fail("model file truncated inside '", key, "'");
      w[i] = ParseDouble(tok, "weight");
    }
  };
  read_matrix("w1", net.w1_, spec.hidden, net.w1_cols());
  read_matrix("w2", net.w2_, spec.output, net.w2_cols());
  expect_key("end");
  return net;
}

void Network::SaveFile(const std::string& path) const {
  std::ofstream out(path);
  if (!out) Fail("cannot write model file ", path);
  out << Save();
  if (!out) Fail("failed writing model file ", path);
}

Network Network::LoadFile(const std::string& path, const NetworkSpec* expected) {
  std::ifstream in(path);
  if (!in) Fail("cannot open model file ", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Load(ss.str(), expected);
}

TrainResult Train(const NetworkSpec& spec, const std::vector<PatternSequence>& data,
                  const TrainConfig& cfg, NetworkInfo info) {
  spec.Validate();
  cfg.Validate();
  std::size_t total = 0;
  for (const auto& seq : data) {
    for (const auto& p : seq) {
      if (p.input.size() != spec.input || p.target.size() != spec.output) {
        Fail(info.name, ": training pattern has sizes ", p.input.size(), "/", p.target.size(),
             ", network expects ", spec.input, "/", spec.output);
      }
      ++total;
    }
  }
  if (total == 0) Fail(info.name, ": empty training data");

  Network net(spec);
  net.set_info(std::move(info));
  std::vector<double> g1(net.w1().size(), 0.0), g2(net.w2().size(), 0.0);
  BpttWindow window(spec, cfg.bptt_steps);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed);
  std::vector<double> epoch_mse;
  epoch_mse.reserve(static_cast<std::size_t>(cfg.epochs));
  const double lr = cfg.learning_rate;

  auto apply = [lr](std::span<double> w, std::vector<double>& g) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] -= lr * g[i];
      g[i] = 0.0;
    }
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.shuffle) rng.Shuffle(order);
    double sse = 0.0;
    for (std::size_t s : order) {
      window.Reset();
      for (const auto& p : data[s]) {
        window.Forward(net, p.input.data());
        sse += window.Accumulate(net, p.target.data(), g1, g2);
        apply(net.mutable_w1(), g1);
        apply(net.mutable_w2(), g2);
      }
    }
    epoch_mse.push_back(sse / static_cast<double>(total * spec.output));
  }
  return TrainResult{std::move(net), std::move(epoch_mse)};
}

Gradients SequenceGradients(const Network& net, const PatternSequence& seq, int bptt_steps) {
  Gradients g{std::vector<double>(net.w1().size(), 0.0), std::vector<double>(net.w2().size(), 0.0)};
  BpttWindow window(net.spec(), bptt_steps);
  window.Reset();
  for (const auto& p : seq) {
    if (p.input.size() != net.spec().input || p.target.size() != net.spec().output) {
      Fail(net.info().name, ": pattern size mismatch in gradient computation");
    }
    window.Forward(net, p.input.data());
    window.Accumulate(net, p.target.data(), g.w1, g.w2);
  }
  return g;
}

double SequenceLoss(const Network& net, const PatternSequence& seq) {
  SequenceState state = net.InitialState();
  double e = 0.0;
  for (const auto& p : seq) {
    auto out = net.Forward(p.input, state);
    for (std::size_t o = 0; o < out.size(); ++o) e += 0.5 * (out[o] - p.target[o]) * (out[o] - p.target[o]);
  }
  return e;
}

double GradientCheck(const NetworkSpec& spec, int samples, std::uint64_t seed) {
  constexpr double kStep = 1e-5;
  constexpr double kFloor = 1e-6;
  const int steps = spec.recurrent ? 3 : 1;
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Network net = Network::Zeros(spec);
    for (double& w : net.mutable_w1()) w = rng.Uniform(-1.0, 1.0);
    for (double& w : net.mutable_w2()) w = rng.Uniform(-1.0, 1.0);
    PatternSequence seq(static_cast<std::size_t>(steps));
    for (auto& p : seq) {
      p.input.resize(spec.input);
      p.target.resize(spec.output);
      for (double& v : p.input) v = rng.Uniform();
      for (double& v : p.target) v = rng.Uniform();
    }
    const Gradients g = SequenceGradients(net, seq, steps);
    auto check = [&](std::span<double> weights, const std::vector<double>& analytic) {
      for (std::size_t i = 0; i < weights.size(); ++i) {
        const double saved = weights[i];
        weights[i] = saved + kStep;
        const double up = SequenceLoss(net, seq);
        weights[i] = saved - kStep;
        const double down = SequenceLoss(net, seq);
        weights[i] = saved;
        const double numeric = (up - down) / (2.0 * kStep);
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), kFloor});
        worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
      }
    };
    check(net.mutable_w1(), g.w1);
    check(net.mutable_w2(), g.w2);
  }
  return worst;
}

double ArgmaxAccuracy(const Network& net, const std::vector<PatternSequence>& data) {
  std::size_t correct = 0, total = 0;
  for (const auto& seq : data) {
    SequenceState state = net.InitialState();
    for (const auto& p : seq) {
      auto out = net.Forward(p.input, state);
      auto best = std::max_element(out.begin(), out.end()) - out.begin();
      auto want = std::max_element(p.target.begin(), p.target.end()) - p.target.begin();
      correct += best == want;
      ++total;
    }
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace flatsla
