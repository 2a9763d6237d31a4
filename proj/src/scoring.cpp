// src/scoring.cpp

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


#include "flatsla/scoring.hpp"

#include "flatsla/base.hpp"

namespace flatsla {

namespace {

void CheckLists(std::span<const double> a, std::span<const double> s, std::span<const double> m) {
  if (a.empty()) Fail("cannot combine empty plausibility lists");
  if (a.size() != s.size() || a.size() != m.size()) {
    Fail("plausibility lists differ in length (", a.size(), ", ", s.size(), ", ", m.size(), ")");
  }
  for (auto list : {a, s, m}) {
    for (double v : list) {
      if (!(v >= 0.0 && v <= 1.0)) Fail("plausibility ", v, " outside [0, 1]");
    }
  }
}

double WordLog(double a, double s, double m) { return std::log(a) + std::log(s) + std::log(m); }

}  // namespace

PredictorBundle::PredictorBundle(const ModelSet& models)
    : tags_(models.tags), syn_(&models.net(NetId::kBasSynPre)), sem_(&models.net(NetId::kBasSemPre)) {
  Reset();
}

void PredictorBundle::Reset() {
  syn_state_ = syn_->InitialState();
  sem_state_ = sem_->InitialState();
}

CategoryVector PredictorBundle::PredictNextSyn(const CategoryVector& current) {
  if (current.size() != syn_->spec().input) {
    Fail("bas-syn-pre: expected a category vector of size ", syn_->spec().input, ", got ", current.size());
  }
  return CategoryVector(tags_.basic_syn, syn_->Forward(current.values(), syn_state_));
}

CategoryVector PredictorBundle::PredictNextSem(const CategoryVector& current) {
  if (current.size() != sem_->spec().input) {
    Fail("bas-sem-pre: expected a category vector of size ", sem_->spec().input, ", got ", current.size());
  }
  return CategoryVector(tags_.basic_sem, sem_->Forward(current.values(), sem_state_));
}

double AgreementPlausibility(const CategoryVector& prediction, const CategoryVector& disambiguated) {
  if (prediction.size() != disambiguated.size()) {
    Fail("prediction over ", prediction.size(), " categories compared with a vector of ", disambiguated.size());
  }
  return prediction[disambiguated.Argmax()];
}

double Combine(std::span<const double> acoustic, std::span<const double> syntactic,
               std::span<const double> semantic) {
  CheckLists(acoustic, syntactic, semantic);
  double sum = 0.0;
  for (std::size_t i = 0; i < acoustic.size(); ++i) sum += WordLog(acoustic[i], syntactic[i], semantic[i]);
  return std::exp(sum / static_cast<double>(acoustic.size()));
}

double CombineDirect(std::span<const double> acoustic, std::span<const double> syntactic,
                     std::span<const double> semantic) {
  CheckLists(acoustic, syntactic, semantic);
  double prod = 1.0;
  for (std::size_t i = 0; i < acoustic.size(); ++i) prod *= acoustic[i] * syntactic[i] * semantic[i];
  return std::pow(prod, 1.0 / static_cast<double>(acoustic.size()));
}

void RunningScore::Add(double acoustic, double syntactic, double semantic) {
  log_sum += WordLog(acoustic, syntactic, semantic);
  ++words;
}

SequenceScore ExtendScore(const SequenceScore& score, double acoustic, double syntactic, double semantic) {
  SequenceScore out = score;
  out.acoustic.push_back(acoustic);
  out.syntactic.push_back(syntactic);
  out.semantic.push_back(semantic);
  out.combined = Combine(out.acoustic, out.syntactic, out.semantic);
  return out;
}

}  // namespace flatsla
