// tests/network_test.cpp

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


#include <gtest/gtest.h>

#include <cfloat>
#include <cmath>
#include <map>

#include "flatsla/base.hpp"
#include "flatsla/network.hpp"

namespace flatsla {
namespace {

NetworkSpec Spec(std::size_t in, std::size_t hid, std::size_t out, bool rec, std::uint64_t seed = 1) {
  return NetworkSpec{in, hid, out, rec, seed};
}

std::vector<double> RandomVec(Rng& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(lo, hi);
  return v;
}

// Plain matrix arithmetic over the documented layout.
std::vector<double> HandForward(const Network& net, const std::vector<double>& in, std::vector<double>& ctx) {
  const NetworkSpec& s = net.spec();
  std::vector<double> x = in;
  x.insert(x.end(), ctx.begin(), ctx.end());
  x.push_back(1.0);
  std::vector<double> h(s.hidden), o(s.output);
  for (std::size_t j = 0; j < s.hidden; ++j) {
    double a = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) a += net.w1()[j * x.size() + i] * x[i];
    h[j] = 1.0 / (1.0 + std::exp(-a));
  }
  for (std::size_t k = 0; k < s.output; ++k) {
    double a = net.w2()[k * (s.hidden + 1) + s.hidden];
    for (std::size_t j = 0; j < s.hidden; ++j) a += net.w2()[k * (s.hidden + 1) + j] * h[j];
    o[k] = 1.0 / (1.0 + std::exp(-a));
  }
  if (s.recurrent) ctx = h;
  return o;
}

TEST(Network, ZeroWeightsGiveHalf) {
  for (bool rec : {false, true}) {
    const Network net = Network::Zeros(Spec(5, 3, 4, rec));
    SequenceState st = net.InitialState();
    for (double y : net.Forward(std::vector<double>{1, -2, 3, 0.5, 9}, st)) EXPECT_EQ(y, 0.5);
  }
}

TEST(Network, WeightShapesAndInitRange) {
  const Network net(Spec(4, 3, 2, true, 9));
  EXPECT_EQ(net.w1().size(), 3u * (4 + 3 + 1));
  EXPECT_EQ(net.w2().size(), 2u * (3 + 1));
  for (double w : net.w1()) EXPECT_LE(std::abs(w), Network::kInitRange);
  for (double w : net.w2()) EXPECT_LE(std::abs(w), Network::kInitRange);
}

TEST(Network, RecurrentMatchesHandArithmetic) {
  Network net(Spec(2, 2, 2, true, 17));
  // Larger weights so the context effect is clearly visible.
  Rng rng(5);
  for (double& w : net.mutable_w1()) w = rng.Uniform(-2, 2);
  for (double& w : net.mutable_w2()) w = rng.Uniform(-2, 2);
  SequenceState st = net.InitialState();
  std::vector<double> ctx(2, Network::kInitialContext);
  EXPECT_EQ(st.context, ctx);
  const std::vector<double> in = {1.0, 0.0};
  const auto y1 = net.Forward(in, st);
  const auto h1 = HandForward(net, in, ctx);
  EXPECT_EQ(st.context.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(st.context[i], ctx[i], 1e-15);
  const auto y2 = net.Forward(in, st);
  const auto h2 = HandForward(net, in, ctx);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(y1[k], h1[k], 1e-15);
    EXPECT_NEAR(y2[k], h2[k], 1e-15);
  }
  EXPECT_NE(y1, y2);
}

TEST(Network, FeedforwardIgnoresState) {
  const Network net(Spec(3, 4, 2, false, 3));
  SequenceState a, b;
  b.context = {0.1, 0.2, 0.3};
  const std::vector<double> in = {0.2, 0.9, 0.4};
  EXPECT_EQ(net.Forward(in, a), net.Forward(in, b));
  EXPECT_EQ(b.context, (std::vector<double>{0.1, 0.2, 0.3}));
}

TEST(Network, DimensionMismatchNamesSizes) {
  const Network net(Spec(3, 4, 2, true, 3));
  SequenceState st = net.InitialState();
  try {
    net.Forward(std::vector<double>{1, 2}, st);
    FAIL();
  } catch (const Error& e) {
    const std::string m = e.what();
    EXPECT_NE(m.find('3'), std::string::npos) << m;
    EXPECT_NE(m.find('2'), std::string::npos) << m;
  }
  SequenceState bad;
  bad.context = {0.5};
  EXPECT_THROW(net.Forward(std::vector<double>{1, 2, 3}, bad), Error);
}

TEST(Network, SpecValidation) {
  EXPECT_THROW(Network(Spec(0, 1, 1, false)), Error);
  EXPECT_THROW(Network(Spec(1, 0, 1, false)), Error);
  EXPECT_THROW(Network(Spec(1, 1, 0, false)), Error);
}

TEST(Network, OutputsFiniteAndInUnitInterval) {
  Network net(Spec(4, 5, 3, true, 8));
  Rng rng(11);
  for (double& w : net.mutable_w1()) w = rng.Uniform(-50, 50);
  const std::vector<double> extremes = {0.0, 1.0, -1.0, 1e6, -1e6, 1e300, -1e300, DBL_MAX, -DBL_MAX, DBL_MIN};
  SequenceState st = net.InitialState();
  for (int t = 0; t < 200; ++t) {
    std::vector<double> in(4);
    for (double& x : in) x = rng.Pick(extremes);
    for (double y : net.Forward(in, st)) {
      EXPECT_TRUE(std::isfinite(y));
      EXPECT_GE(y, 0.0);
      EXPECT_LE(y, 1.0);
    }
    for (double c : st.context) EXPECT_TRUE(std::isfinite(c));
  }
}

TEST(GradientCheck, FeedforwardAndRecurrentSpecs) {
  Rng rng(2024);
  int checked = 0;
  for (int i = 0; i < 24; ++i) {
    const NetworkSpec s = Spec(1 + rng.Below(6), 1 + rng.Below(6), 1 + rng.Below(5), i % 2 == 1, rng.NextU64());
    const double err = GradientCheck(s, 3, rng.NextU64());
    EXPECT_LT(err, 1e-4) << s.input << "-" << s.hidden << "-" << s.output << " rec=" << s.recurrent;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(GradientCheck, Deterministic) {
  const NetworkSpec s = Spec(3, 4, 2, true, 5);
  EXPECT_EQ(GradientCheck(s, 4, 77), GradientCheck(s, 4, 77));
}

TEST(Backprop, BiasGradientAtSymmetricPoint) {
  for (bool rec : {false, true}) {
    const Network net = Network::Zeros(Spec(3, 2, 3, rec));
    const std::vector<double> in(3, 0.0), target = {1.0, 0.0, 0.25};
    const Gradients g = net.Backprop(in, net.InitialState(), target);
    for (std::size_t k = 0; k < 3; ++k) {
      const double out = 0.5;
      EXPECT_EQ(g.w2[k * 3 + 2], (out - target[k]) * out * (1 - out));
    }
  }
}

// Exact gradient of the summed loss by central differences.
TEST(Backprop, SequenceGradientsMatchFiniteDifferences) {
  Rng rng(99);
  Network net(Spec(3, 4, 2, true, 4));
  for (double& w : net.mutable_w1()) w = rng.Uniform(-1, 1);
  for (double& w : net.mutable_w2()) w = rng.Uniform(-1, 1);
  PatternSequence seq;
  for (int t = 0; t < 5; ++t) seq.push_back({RandomVec(rng, 3), RandomVec(rng, 2)});
  const Gradients g = SequenceGradients(net, seq, 5);
  const double eps = 1e-5;
  auto check = [&](std::span<double> w, const std::vector<double>& grad) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double keep = w[i];
      w[i] = keep + eps;
      const double up = SequenceLoss(net, seq);
      w[i] = keep - eps;
      const double down = SequenceLoss(net, seq);
      w[i] = keep;
      const double fd = (up - down) / (2 * eps);
      EXPECT_NEAR(grad[i], fd, 1e-7 + 1e-5 * std::abs(fd));
    }
  };
  check(net.mutable_w1(), g.w1);
  check(net.mutable_w2(), g.w2);
}

TEST(Train, XorFeedforward) {
  const std::vector<std::pair<std::vector<double>, double>> cases = {
      {{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 0}};
  std::vector<PatternSequence> data;
  for (const auto& [x, y] : cases) data.push_back({{x, {y}}});
  TrainConfig cfg;
  cfg.epochs = 3000;
  cfg.learning_rate = 0.5;
  cfg.seed = 1;
  // Small initial weights can stall XOR on a plateau for some seeds, so
  // several initializations are tried; the first that solves it is enough.
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 5 && !solved; ++seed) {
    const Network net = Train(Spec(2, 4, 1, false, seed), data, cfg).network;
    bool all = true;
    for (const auto& [x, y] : cases) {
      SequenceState st;
      const double out = net.Forward(x, st)[0];
      all = all && ((out > 0.5) == (y > 0.5));
    }
    solved += all;
  }
  EXPECT_EQ(solved, 1);
}

TEST(Train, ConstantPatternConverges) {
  const std::vector<PatternSequence> data = {{{{0.3, 0.7}, {0.8, 0.1}}}};
  TrainConfig cfg;
  cfg.epochs = 3000;
  cfg.learning_rate = 0.5;
  const Network net = Train(Spec(2, 3, 2, false), data, cfg).network;
  SequenceState st;
  const auto y = net.Forward(std::vector<double>{0.3, 0.7}, st);
  EXPECT_NEAR(y[0], 0.8, 0.05);
  EXPECT_NEAR(y[1], 0.1, 0.05);
}

TEST(Train, EmptyDataAndBadConfig) {
  TrainConfig cfg;
  EXPECT_THROW(Train(Spec(2, 2, 2, false), {}, cfg), Error);
  const std::vector<PatternSequence> data = {{{{0.0, 1.0}, {1.0, 0.0}}}};
  TrainConfig zero = cfg;
  zero.epochs = 0;
  EXPECT_THROW(Train(Spec(2, 2, 2, false), data, zero), Error);
  TrainConfig neg = cfg;
  neg.learning_rate = 0.0;
  EXPECT_THROW(Train(Spec(2, 2, 2, false), data, neg), Error);
  const std::vector<PatternSequence> wrong = {{{{0.0}, {1.0, 0.0}}}};
  EXPECT_THROW(Train(Spec(2, 2, 2, false), wrong, cfg), Error);
}

std::vector<PatternSequence> SeparableToy() {
  Rng rng(4);
  std::vector<PatternSequence> data;
  for (int i = 0; i < 40; ++i) {
    const double a = rng.Uniform(), b = rng.Uniform();
    const bool pos = a + b > 1.0;
    data.push_back({{{a, b}, pos ? std::vector<double>{1, 0} : std::vector<double>{0, 1}}});
  }
  return data;
}

TEST(Train, MseNonIncreasingOverHundredEpochWindows) {
  TrainConfig cfg;
  cfg.epochs = 1000;
  cfg.learning_rate = 0.1;
  const auto res = Train(Spec(2, 4, 2, false, 3), SeparableToy(), cfg);
  ASSERT_EQ(res.epoch_mse.size(), 1000u);
  for (std::size_t e = 100; e < res.epoch_mse.size(); ++e) {
    EXPECT_LE(res.epoch_mse[e], res.epoch_mse[e - 100]) << e;
  }
  EXPECT_EQ(ArgmaxAccuracy(res.network, SeparableToy()) >= 0.9, true);
}

TEST(Train, Reproducible) {
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.seed = 12;
  const auto a = Train(Spec(2, 4, 2, true, 3), SeparableToy(), cfg);
  const auto b = Train(Spec(2, 4, 2, true, 3), SeparableToy(), cfg);
  EXPECT_TRUE(std::equal(a.network.w1().begin(), a.network.w1().end(), b.network.w1().begin()));
  EXPECT_TRUE(std::equal(a.network.w2().begin(), a.network.w2().end(), b.network.w2().begin()));
  EXPECT_EQ(a.epoch_mse, b.epoch_mse);
}

// x_t -> target x_{t-3}; the first three steps have no defined target.
struct DelayData {
  std::vector<PatternSequence> seqs;
  std::vector<std::vector<int>> symbols;
};

DelayData MakeDelay(std::uint64_t seed, int n, int len) {
  Rng rng(seed);
  DelayData d;
  for (int s = 0; s < n; ++s) {
    std::vector<int> x(len);
    for (int& v : x) v = static_cast<int>(rng.Below(2));
    PatternSequence seq;
    for (int t = 0; t < len; ++t) {
      std::vector<double> in = {x[t] == 0 ? 1.0 : 0.0, x[t] == 1 ? 1.0 : 0.0};
      std::vector<double> target = {0.5, 0.5};
      if (t >= 3) target = {x[t - 3] == 0 ? 1.0 : 0.0, x[t - 3] == 1 ? 1.0 : 0.0};
      seq.push_back({in, target});
    }
    d.seqs.push_back(std::move(seq));
    d.symbols.push_back(std::move(x));
  }
  return d;
}

double DelayAccuracy(const Network& net, const DelayData& d) {
  std::size_t ok = 0, n = 0;
  for (std::size_t s = 0; s < d.seqs.size(); ++s) {
    SequenceState st = net.InitialState();
    for (std::size_t t = 0; t < d.seqs[s].size(); ++t) {
      const auto y = net.Forward(d.seqs[s][t].input, st);
      if (t < 3) continue;
      ok += static_cast<std::size_t>(y[1] > y[0]) == static_cast<std::size_t>(d.symbols[s][t - 3]);
      ++n;
    }
  }
  return static_cast<double>(ok) / static_cast<double>(n);
}

// Best accuracy of any function of the current symbol alone.
double MemorylessBound(const DelayData& d) {
  std::map<std::pair<int, int>, std::size_t> counts;
  std::size_t n = 0;
  for (const auto& x : d.symbols) {
    for (std::size_t t = 3; t < x.size(); ++t) {
      ++counts[{x[t], x[t - 3]}];
      ++n;
    }
  }
  std::size_t best = 0;
  for (int cur = 0; cur < 2; ++cur) best += std::max(counts[{cur, 0}], counts[{cur, 1}]);
  return static_cast<double>(best) / static_cast<double>(n);
}

TEST(Train, SrnLearnsThreeStepDelay) {
  const DelayData train = MakeDelay(1, 80, 20), test = MakeDelay(2, 60, 20);
  TrainConfig cfg;
  cfg.epochs = 2000;
  cfg.learning_rate = 0.3;
  cfg.bptt_steps = 4;
  cfg.seed = 3;
  const Network srn = Train(Spec(2, 10, 2, true, 5), train.seqs, cfg).network;
  const Network ff = Train(Spec(2, 10, 2, false, 5), train.seqs, cfg).network;
  const double srn_acc = DelayAccuracy(srn, test), ff_acc = DelayAccuracy(ff, test);
  const double bound = MemorylessBound(test);
  EXPECT_GE(srn_acc, 0.95);
  EXPECT_LE(ff_acc, bound + 1e-12);
  EXPECT_GE(srn_acc - ff_acc, 0.3);
}

TEST(Serialization, RoundTripBitIdentical) {
  Network net(Spec(4, 5, 3, true, 21));
  Rng rng(1);
  for (double& w : net.mutable_w1()) w = rng.Uniform(-3, 3);
  net.set_info({"bas-syn-dis", "basic-syntactic", "basic-syntactic"});
  const Network back = Network::Load(net.Save());
  EXPECT_EQ(back.info().name, "bas-syn-dis");
  SequenceState a = net.InitialState(), b = back.InitialState();
  for (int i = 0; i < 100; ++i) {
    const auto x = RandomVec(rng, 4, -2, 2);
    EXPECT_EQ(net.Forward(x, a), back.Forward(x, b));
  }
}

TEST(Serialization, TruncatedFileFails) {
  const std::string text = Network(Spec(3, 3, 2, false, 2)).Save();
  for (std::size_t cut : {std::size_t{0}, text.size() / 3, text.size() / 2, text.size() - 5}) {
    EXPECT_THROW(Network::Load(text.substr(0, cut)), Error) << cut;
  }
  EXPECT_THROW(Network::Load("not a model\n"), Error);
}

TEST(Serialization, ShapeMismatchNamed) {
  const std::string text = Network(Spec(3, 3, 2, false, 2)).Save();
  const NetworkSpec other = Spec(3, 3, 4, false);
  try {
    Network::Load(text, &other);
    FAIL();
  } catch (const Error& e) {
    const std::string m = e.what();
    EXPECT_NE(m.find("3-3-2"), std::string::npos) << m;
    EXPECT_NE(m.find("3-3-4"), std::string::npos) << m;
  }
}

}  // namespace
}  // namespace flatsla
