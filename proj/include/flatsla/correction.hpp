// include/flatsla/correction.hpp

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


#ifndef FLATSLA_CORRECTION_HPP_
#define FLATSLA_CORRECTION_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "flatsla/lexicon.hpp"
#include "flatsla/models.hpp"
#include "flatsla/network.hpp"
#include "flatsla/taggers.hpp"

namespace flatsla {

enum class RepairKind { kPause, kInterjection, kWordRepair, kPhraseRepair };
std::string_view RepairKindName(RepairKind k);

struct RepairDecision {
  RepairKind kind = RepairKind::kPause;
  std::vector<std::size_t> span;  // token indices marked deleted, never empty
  double confidence = 1.0;
};

/// Symbolic occurrence test on the lexicon flags.
std::optional<RepairDecision> DetectPauseInterjection(std::size_t index, std::string_view word,
                                                      const Lexicon& lexicon);

/// 1 iff the normalized strings are equal.
double LexWordEq(std::string_view a, std::string_view b);

/// Runs a two-output equality network on the concatenation of v1 and v2 and
/// integrates the outputs as unit1 * (1 - unit2).
double CategoryEq(const CategoryVector& v1, const CategoryVector& v2, const Network& net);

/// WORD-ERROR combiner on (lexical, syntactic, semantic) equality.
double WordError(double lex, double syn, double sem, const Network& combiner);

/// Inputs of the PHRASE-ERROR combiner for two adjacent phrases: lexical
/// equality of the first words and the mean abstract syntactic and semantic
/// equality of positionally aligned words (unmatched positions count 0).
struct PhraseFeatures {
  double lex_start = 0.0;
  double syn = 0.0;
  double sem = 0.0;
};
PhraseFeatures ComparePhrases(const Phrase& earlier, const Phrase& later, const std::vector<TokenAnalysis>& tokens,
                              const Network& abs_syn_eq, const Network& abs_sem_eq);
double PhraseError(const PhraseFeatures& f, const Network& combiner);

struct CorrectionConfig {
  double boundary_threshold = 0.5;
  double word_threshold = 0.5;
  double phrase_threshold = 0.5;
  void Validate() const;
};

/// The correction part: pauses and interjections, then word repairs between
/// consecutive remaining tokens, then phrase repairs between adjacent phrases.
/// The earlier occurrence is always the one marked deleted.
class Corrector {
 public:
  Corrector(const ModelSet& models, CorrectionConfig cfg = {});
  std::vector<RepairDecision> Apply(std::vector<TokenAnalysis>& tokens) const;
  const CorrectionConfig& config() const { return cfg_; }

 private:
  const ModelSet* models_;
  CorrectionConfig cfg_;
};

/// Lowest-index argmax as a one-hot vector; the form the downstream
/// networks were trained on.
CategoryVector Binarize(const CategoryVector& v);

}  // namespace flatsla

#endif  // FLATSLA_CORRECTION_HPP_
