// include/flatsla/network.hpp

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

#ifndef FLATSLA_NETWORK_HPP_
#define FLATSLA_NETWORK_HPP_

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatsla {

struct NetworkSpec {
  std::size_t input = 1;
  std::size_t hidden = 1;
  std::size_t output = 1;
  bool recurrent = false;  // adds a context layer of `hidden` units
  std::uint64_t seed = 0;  // weight initialization

  std::size_t context() const { return recurrent ? hidden : 0; }
  void Validate() const;
  bool SameShape(const NetworkSpec& o) const {
    return input == o.input && hidden == o.hidden && output == o.output && recurrent == o.recurrent;
  }
};

/// Context layer of an Elman network: the copied previous hidden activation.
/// Empty for feedforward networks.
struct SequenceState {
  std::vector<double> context;
  bool operator==(const SequenceState&) const = default;
};

/// Optional descriptive header stored with a model file.
struct NetworkInfo {
  std::string name = "network";
  std::string input_tagset = "-";
  std::string output_tagset = "-";
};

/// Gradients of the half sum of squared errors, laid out like the weights.
struct Gradients {
  std::vector<double> w1;
  std::vector<double> w2;
};

/// Two-layer logistic network, optionally with an Elman context layer.
///
/// The input-to-hidden matrix has hidden rows and input + context + 1
/// columns (inputs, then context units, then bias). The hidden-to-output
/// matrix has output rows and hidden + 1 columns. Both are row-major.
class Network {
 public:
  static constexpr double kInitialContext = 0.5;
  static constexpr double kInitRange = 0.1;

  /// Uniform weights in [-kInitRange, kInitRange] drawn from spec.seed.
  explicit Network(const NetworkSpec& spec);
  static Network Zeros(const NetworkSpec& spec);

  const NetworkSpec& spec() const { return spec_; }
  const NetworkInfo& info() const { return info_; }
  void set_info(NetworkInfo info) { info_ = std::move(info); }

  std::span<const double> w1() const { return w1_; }
  std::span<const double> w2() const { return w2_; }
  std::span<double> mutable_w1() { return w1_; }
  std::span<double> mutable_w2() { return w2_; }
  std::size_t w1_cols() const { return spec_.input + spec_.context() + 1; }
  std::size_t w2_cols() const { return spec_.hidden + 1; }

  SequenceState InitialState() const;

  /// One time step. For recurrent networks the state's context becomes the
  /// hidden activation just computed; feedforward networks leave it alone.
  std::vector<double> Forward(std::span<const double> input, SequenceState& state) const;

  /// Allocation-free variant; `hidden` receives the hidden activation.
  void Forward(std::span<const double> input, std::span<const double> context,
               std::span<double> hidden, std::span<double> output) const;

  /// Backprop for one step with the context held constant.
  Gradients Backprop(std::span<const double> input, const SequenceState& state,
                     std::span<const double> target) const;

  /// Half sum of squared errors for one step (state is not advanced).
  double Loss(std::span<const double> input, const SequenceState& state,
              std::span<const double> target) const;

  /// Versioned text format with weights at 17 significant digits.
  std::string Save() const;
  /// Parses a model. When `expected` is given, its shape must match.
  static Network Load(std::string_view text, const NetworkSpec* expected = nullptr);
  void SaveFile(const std::string& path) const;
  static Network LoadFile(const std::string& path, const NetworkSpec* expected = nullptr);

 private:
  struct ZeroTag {};
  Network(const NetworkSpec& spec, ZeroTag);
  void CheckInput(std::span<const double> input, const SequenceState& state) const;

  NetworkSpec spec_;
  NetworkInfo info_;
  std::vector<double> w1_;
  std::vector<double> w2_;
};

using NetworkPtr = std::shared_ptr<const Network>;

namespace detail {

/// Activations of the most recent steps of one sequence, used to propagate
/// errors back through the context layer.
class BpttWindow {
 public:
  BpttWindow(const NetworkSpec& spec, int depth);
  void Reset();
  void Reset(std::span<const double> context);
  /// Runs one step and records it. `input` must outlive the window entry.
  void Forward(const Network& net, const double* input);
  /// Adds the gradient of the newest step's half squared error into g1/g2;
  /// returns that step's (unhalved) sum of squared errors.
  double Accumulate(const Network& net, const double* target, std::vector<double>& g1,
                    std::vector<double>& g2);
  std::span<const double> output() const { return output_; }

 private:
  struct Record {
    const double* input = nullptr;
    std::vector<double> context;
    std::vector<double> hidden;
  };
  NetworkSpec spec_;
  std::size_t depth_;
  std::vector<Record> records_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  std::vector<double> start_context_;
  std::vector<double> output_, delta_out_, delta_, next_delta_;
};

}  // namespace detail

struct Pattern {
  std::vector<double> input;
  std::vector<double> target;
};
using PatternSequence = std::vector<Pattern>;

struct TrainConfig {
  int epochs = 3000;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;  // only used to shuffle sequence order
  bool shuffle = true;
  /// Steps the error of each pattern is propagated back through the context
  /// layer. 1 treats the context as a constant input (classic Elman).
  int bptt_steps = 4;
  void Validate() const;
};

struct TrainResult {
  Network network;
  std::vector<double> epoch_mse;  // mean squared error per output unit, per epoch
};

/// Online generalized delta rule. The context is reset at the start of each
/// sequence and copied forward within it. Shuffling permutes whole sequences.
TrainResult Train(const NetworkSpec& spec, const std::vector<PatternSequence>& data,
                  const TrainConfig& cfg, NetworkInfo info = {});

/// Sum over the steps of one sequence of each step's error gradient, each
/// propagated back through at most `bptt_steps` steps. With bptt_steps at
/// least the sequence length this is the exact gradient of the summed loss.
Gradients SequenceGradients(const Network& net, const PatternSequence& seq, int bptt_steps);

/// Summed half squared error over one sequence from the initial state.
double SequenceLoss(const Network& net, const PatternSequence& seq);

/// Worst relative error between backprop and central finite differences
/// (step 1e-5) over `samples` random networks, inputs and targets. Recurrent
/// specs are checked on three-step sequences through the context layer.
/// The denominator is floored at 1e-6 so vanishing gradients do not dominate.
double GradientCheck(const NetworkSpec& spec, int samples, std::uint64_t seed);

/// Argmax accuracy over sequences, resetting the state per sequence.
double ArgmaxAccuracy(const Network& net, const std::vector<PatternSequence>& data);

inline double Logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// The two-unit plausible/improbable reading: unit1 * (1 - unit2).
inline double IntegrateTwoUnits(double unit1, double unit2) { return unit1 * (1.0 - unit2); }

}  // namespace flatsla

#endif  // FLATSLA_NETWORK_HPP_
