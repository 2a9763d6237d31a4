// include/flatsla/ngram.hpp

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


#ifndef FLATSLA_NGRAM_HPP_
#define FLATSLA_NGRAM_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "flatsla/network.hpp"

namespace flatsla {

using CategorySequence = std::vector<std::size_t>;

/// Additive-alpha n-gram over categories 0..C-1. Contexts are padded with a
/// boundary symbol (index C) at sequence starts; an unseen context backs off
/// to the next shorter one, down to the unigram.
class NgramModel {
 public:
  static constexpr int kMaxOrder = 5;

  static NgramModel Fit(const std::vector<CategorySequence>& data, int order, std::size_t categories,
                        double alpha = 0.1);

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  std::size_t categories() const { return categories_; }

  /// Distribution of the next category given the preceding ones (oldest
  /// first); only the last order-1 are used, missing ones are boundaries.
  std::vector<double> Predict(std::span<const std::size_t> history) const;

  /// Raw next-category counts after the exact context, or nullptr.
  const std::vector<double>* Counts(const std::vector<std::size_t>& context) const;

 private:
  int order_ = 1;
  double alpha_ = 0.1;
  std::size_t categories_ = 0;
  // Index m holds contexts of length m.
  std::vector<std::map<std::vector<std::size_t>, std::vector<double>>> counts_;
};

/// Anything that reads a category sequence left to right and predicts the
/// next category after each one.
class NextCategoryPredictor {
 public:
  virtual ~NextCategoryPredictor() = default;
  virtual void Reset() = 0;
  /// Consumes the current category; returns scores for the next one.
  virtual std::vector<double> Next(std::size_t current) = 0;
  virtual std::size_t categories() const = 0;
};

class NgramPredictor : public NextCategoryPredictor {
 public:
  explicit NgramPredictor(const NgramModel& model) : model_(&model) {}
  void Reset() override { history_.clear(); }
  std::vector<double> Next(std::size_t current) override;
  std::size_t categories() const override { return model_->categories(); }

 private:
  const NgramModel* model_;
  std::vector<std::size_t> history_;
};

/// One-hot input, raw output activations as scores.
class SrnPredictor : public NextCategoryPredictor {
 public:
  explicit SrnPredictor(const Network& net);
  void Reset() override { state_ = net_->InitialState(); }
  std::vector<double> Next(std::size_t current) override;
  std::size_t categories() const override { return net_->spec().output; }

 private:
  const Network* net_;
  SequenceState state_;
};

/// Fraction of predicted positions (every position after the first) whose
/// true category survives excluding the k lowest-scored categories. Among
/// equal scores the higher index is excluded first, so k = C-1 keeps the
/// lowest-index argmax.
double ExclusionAccuracy(NextCategoryPredictor& predictor, const std::vector<CategorySequence>& test, std::size_t k);

/// ExclusionAccuracy for k = 0..C-1 in one pass.
std::vector<double> ExclusionCurve(NextCategoryPredictor& predictor, const std::vector<CategorySequence>& test);

/// Sequences where x_t = f(x_{t-lag}) with probability `fidelity`, otherwise
/// uniform; f is a seeded permutation and the first `lag` symbols are uniform.
struct LagTaskConfig {
  std::size_t categories = 13;
  std::size_t lag = 3;
  double fidelity = 0.9;
  std::size_t length = 30;
  std::size_t train_sequences = 60;
  std::size_t test_sequences = 200;
  std::uint64_t seed = 42;
  void Validate() const;
};

struct LagTask {
  LagTaskConfig cfg;
  std::vector<std::size_t> mapping;  // f
  std::vector<CategorySequence> train;
  std::vector<CategorySequence> test;

  /// P(x_t = next | x_{t-lag} = source).
  double Conditional(std::size_t source, std::size_t next) const;
};

LagTask MakeLagTask(const LagTaskConfig& cfg);

/// One-hot next-symbol training sequences for an SRN.
std::vector<PatternSequence> ToPatterns(const std::vector<CategorySequence>& data, std::size_t categories);

/// (predictor, k, accuracy) rows.
struct CurveRow {
  std::string predictor;
  std::size_t k = 0;
  double accuracy = 0.0;
};
std::string CurvesToCsv(const std::vector<CurveRow>& rows);

}  // namespace flatsla

#endif  // FLATSLA_NGRAM_HPP_
