// src/ngram.cpp

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


#include "flatsla/ngram.hpp"

#include <algorithm>
#include <numeric>

#include "flatsla/base.hpp"

namespace flatsla {

NgramModel NgramModel::Fit(const std::vector<CategorySequence>& data, int order, std::size_t categories,
                           double alpha) {
  if (order < 1 || order > kMaxOrder) Fail("n-gram order ", order, " outside [1, ", kMaxOrder, "]");
  if (categories == 0) Fail("n-gram model needs at least one category");
  if (!(alpha >= 0.0)) Fail("smoothing constant ", alpha, " must be non-negative");
  NgramModel m;
  m.order_ = order;
  m.alpha_ = alpha;
  m.categories_ = categories;
  m.counts_.resize(static_cast<std::size_t>(order));
  const std::size_t bos = categories;
  for (const auto& seq : data) {
    std::vector<std::size_t> padded(static_cast<std::size_t>(order - 1), bos);
    for (std::size_t c : seq) {
      if (c >= categories) Fail("category ", c, " outside [0, ", categories, ")");
      padded.push_back(c);
    }
    for (std::size_t i = static_cast<std::size_t>(order - 1); i < padded.size(); ++i) {
      for (std::size_t len = 0; len < static_cast<std::size_t>(order); ++len) {
        std::vector<std::size_t> ctx(padded.begin() + static_cast<std::ptrdiff_t>(i - len),
                                     padded.begin() + static_cast<std::ptrdiff_t>(i));
        auto& row = m.counts_[len][ctx];
        if (row.empty()) row.assign(categories, 0.0);
        row[padded[i]] += 1.0;
      }
    }
  }
  return m;
}

const std::vector<double>* NgramModel::Counts(const std::vector<std::size_t>& context) const {
  if (context.size() >= counts_.size()) return nullptr;
  auto it = counts_[context.size()].find(context);
  return it == counts_[context.size()].end() ? nullptr : &it->second;
}

std::vector<double> NgramModel::Predict(std::span<const std::size_t> history) const {
  const std::size_t want = static_cast<std::size_t>(order_ - 1);
  std::vector<std::size_t> ctx(want, categories_);
  const std::size_t have = std::min(want, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(have), history.end(),
            ctx.end() - static_cast<std::ptrdiff_t>(have));
  const double c = static_cast<double>(categories_);
  for (std::size_t len = want + 1; len-- > 0;) {
    std::vector<std::size_t> sub(ctx.end() - static_cast<std::ptrdiff_t>(len), ctx.end());
    const std::vector<double>* row = Counts(sub);
    if (!row) continue;
    const double total = std::accumulate(row->begin(), row->end(), 0.0);
    if (total + alpha_ * c <= 0.0) continue;
    std::vector<double> p(categories_);
    for (std::size_t j = 0; j < categories_; ++j) p[j] = ((*row)[j] + alpha_) / (total + alpha_ * c);
    return p;
  }
  return std::vector<double>(categories_, 1.0 / c);
}

std::vector<double> NgramPredictor::Next(std::size_t current) {
  history_.push_back(current);
  if (history_.size() > static_cast<std::size_t>(NgramModel::kMaxOrder)) history_.erase(history_.begin());
  return model_->Predict(history_);
}

SrnPredictor::SrnPredictor(const Network& net) : net_(&net), state_(net.InitialState()) {
  if (net.spec().input != net.spec().output) Fail("next-category network must have input size == output size");
}

std::vector<double> SrnPredictor::Next(std::size_t current) {
  std::vector<double> in(net_->spec().input, 0.0);
  in.at(current) = 1.0;
  return net_->Forward(in, state_);
}

namespace {

// Position of `t` in the exclusion order: lower score first, and among equal
// scores the higher index first.
std::size_t ExclusionRank(const std::vector<double>& p, std::size_t t) {
  std::size_t r = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < p[t] || (p[j] == p[t] && j > t)) ++r;
  }
  return r;
}

}  // namespace

std::vector<double> ExclusionCurve(NextCategoryPredictor& predictor, const std::vector<CategorySequence>& test) {
  const std::size_t c = predictor.categories();
  std::vector<double> survive(c, 0.0);
  std::size_t positions = 0;
  for (const auto& seq : test) {
    predictor.Reset();
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      const auto p = predictor.Next(seq[i]);
      if (p.size() != c) Fail("predictor returned ", p.size(), " scores for ", c, " categories");
      const std::size_t rank = ExclusionRank(p, seq[i + 1]);
      // Survives every k <= rank.
      for (std::size_t k = 0; k <= rank && k < c; ++k) survive[k] += 1.0;
      ++positions;
    }
  }
  if (positions == 0) Fail("no predicted positions in the test data");
  for (double& s : survive) s /= static_cast<double>(positions);
  return survive;
}

double ExclusionAccuracy(NextCategoryPredictor& predictor, const std::vector<CategorySequence>& test, std::size_t k) {
  if (k >= predictor.categories()) Fail("k = ", k, " outside [0, ", predictor.categories() - 1, "]");
  return ExclusionCurve(predictor, test)[k];
}

void LagTaskConfig::Validate() const {
  if (categories < 2) Fail("lag task needs at least two categories");
  if (lag < 1) Fail("lag must be at least 1");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) Fail("fidelity ", fidelity, " outside [0, 1]");
  if (length <= lag) Fail("sequence length ", length, " must exceed the lag ", lag);
}

double LagTask::Conditional(std::size_t source, std::size_t next) const {
  const double noise = (1.0 - cfg.fidelity) / static_cast<double>(cfg.categories);
  return noise + (mapping[source] == next ? cfg.fidelity : 0.0);
}

LagTask MakeLagTask(const LagTaskConfig& cfg) {
  cfg.Validate();
  LagTask task;
  task.cfg = cfg;
  Rng map_rng(DeriveSeed(cfg.seed, 1));
  task.mapping.resize(cfg.categories);
  std::iota(task.mapping.begin(), task.mapping.end(), 0);
  map_rng.Shuffle(task.mapping);
  auto sample = [&](Rng& rng, std::size_t count) {
    std::vector<CategorySequence> out;
    for (std::size_t s = 0; s < count; ++s) {
      CategorySequence seq;
      for (std::size_t t = 0; t < cfg.length; ++t) {
        if (t >= cfg.lag && rng.Bernoulli(cfg.fidelity)) {
          seq.push_back(task.mapping[seq[t - cfg.lag]]);
        } else {
          seq.push_back(rng.Below(cfg.categories));
        }
      }
      out.push_back(std::move(seq));
    }
    return out;
  };
  Rng train_rng(DeriveSeed(cfg.seed, 2));
  Rng test_rng(DeriveSeed(cfg.seed, 3));
  task.train = sample(train_rng, cfg.train_sequences);
  task.test = sample(test_rng, cfg.test_sequences);
  return task;
}

std::vector<PatternSequence> ToPatterns(const std::vector<CategorySequence>& data, std::size_t categories) {
  std::vector<PatternSequence> out;
  for (const auto& seq : data) {
    PatternSequence ps;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      Pattern p{std::vector<double>(categories, 0.0), std::vector<double>(categories, 0.0)};
      p.input.at(seq[i]) = 1.0;
      p.target.at(seq[i + 1]) = 1.0;
      ps.push_back(std::move(p));
    }
    if (!ps.empty()) out.push_back(std::move(ps));
  }
  return out;
}

std::string CurvesToCsv(const std::vector<CurveRow>& rows) {
  std::string out = "predictor,k,accuracy\n";
  for (const auto& r : rows) out += r.predictor + "," + std::to_string(r.k) + "," + FormatFixed(r.accuracy, 6) + "\n";
  return out;
}

}  // namespace flatsla
