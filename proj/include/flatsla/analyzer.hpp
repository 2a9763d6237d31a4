// include/flatsla/analyzer.hpp

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


#ifndef FLATSLA_ANALYZER_HPP_
#define FLATSLA_ANALYZER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatsla/correction.hpp"
#include "flatsla/models.hpp"
#include "flatsla/scoring.hpp"
#include "flatsla/taggers.hpp"

namespace flatsla {

/// Which language knowledge enters the sequence score. A disabled source
/// contributes 1.0 per word.
struct ScoringOptions {
  bool use_syntax = true;
  bool use_semantics = true;
};

/// Left-to-right analysis state of one hypothesis sequence: taggers,
/// predictors and the pending predictions for the next word. Copy to branch.
class IncrementalAnalyzer {
 public:
  IncrementalAnalyzer(const ModelSet& models, ScoringOptions opt = {});

  struct Step {
    TokenAnalysis token;
    double syntactic = 1.0;  // agreement with the previous word's prediction
    double semantic = 1.0;
  };

  /// Tags the word, scores it against the pending predictions (1.0 for the
  /// first word) and advances the predictors. Pauses and interjections score
  /// 1.0 and leave the predictors untouched.
  Step Next(std::string_view word);

  std::size_t position() const { return position_; }

 private:
  const ModelSet* models_;
  ScoringOptions opt_;
  TaggerBundle taggers_;
  PredictorBundle predictors_;
  std::optional<CategoryVector> next_syn_, next_sem_;
  std::size_t position_ = 0;
};

/// Tagged, scored and corrected word sequence.
struct AnalyzedSequence {
  std::vector<TokenAnalysis> tokens;
  std::vector<RepairDecision> repairs;
  SequenceScore score;
};

/// Analyzes a plain word sequence; acoustic values default to 1.
AnalyzedSequence AnalyzeWords(const ModelSet& models, const std::vector<std::string>& words,
                              const CorrectionConfig& correction = {}, ScoringOptions opt = {},
                              const std::vector<double>* acoustic = nullptr);

}  // namespace flatsla

#endif  // FLATSLA_ANALYZER_HPP_
