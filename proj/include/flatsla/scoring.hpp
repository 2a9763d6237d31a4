// include/flatsla/scoring.hpp

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


#ifndef FLATSLA_SCORING_HPP_
#define FLATSLA_SCORING_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "flatsla/models.hpp"
#include "flatsla/network.hpp"
#include "flatsla/tagset.hpp"

namespace flatsla {

/// BAS-SYN-PRE and BAS-SEM-PRE with their sequence states.
class PredictorBundle {
 public:
  explicit PredictorBundle(const ModelSet& models);
  void Reset();

  /// Feeds the current word's category; returns the prediction for the next word.
  CategoryVector PredictNextSyn(const CategoryVector& current);
  CategoryVector PredictNextSem(const CategoryVector& current);

 private:
  TagsetBundle tags_;
  const Network* syn_;
  const Network* sem_;
  SequenceState syn_state_, sem_state_;
};

/// prediction[argmax(disambiguated)].
double AgreementPlausibility(const CategoryVector& prediction, const CategoryVector& disambiguated);

/// (prod_i a_i * s_i * m_i)^(1/n), evaluated in the log domain.
double Combine(std::span<const double> acoustic, std::span<const double> syntactic,
               std::span<const double> semantic);
/// Same quantity by plain multiplication; underflows on long inputs.
double CombineDirect(std::span<const double> acoustic, std::span<const double> syntactic,
                     std::span<const double> semantic);

/// O(1) running form of Combine: sum of log(a * s * m) and the word count.
struct RunningScore {
  double log_sum = 0.0;
  std::size_t words = 0;

  void Add(double acoustic, double syntactic, double semantic);
  double combined() const {
    return words == 0 ? 0.0 : std::exp(log_sum / static_cast<double>(words));
  }
};

/// Per-word plausibility lists of one sequence plus their combination.
struct SequenceScore {
  std::vector<double> acoustic;
  std::vector<double> syntactic;
  std::vector<double> semantic;
  double combined = 0.0;
};

/// Appends one word's three plausibilities and recomputes the combination.
SequenceScore ExtendScore(const SequenceScore& score, double acoustic, double syntactic, double semantic);

}  // namespace flatsla

#endif  // FLATSLA_SCORING_HPP_
