// include/flatsla/taggers.hpp

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


#ifndef FLATSLA_TAGGERS_HPP_
#define FLATSLA_TAGGERS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "flatsla/lexicon.hpp"
#include "flatsla/models.hpp"
#include "flatsla/network.hpp"
#include "flatsla/tagset.hpp"

namespace flatsla {

/// Flat analysis of one token: four preference vectors, phrase-start
/// strength and the deletion mark set by the correction part.
struct TokenAnalysis {
  std::string word;
  CategoryVector syn_basic;
  CategoryVector syn_abstract;
  CategoryVector sem_basic;
  CategoryVector sem_abstract;
  double boundary = 0.0;
  bool deleted = false;
  bool known = true;  // word was found in the lexicon
};

/// A phrase over the non-deleted tokens it contains (indices in order).
struct Phrase {
  std::vector<std::size_t> tokens;
  std::size_t syn_label = 0;  // argmax abstract syntactic category of the first token
  std::size_t sem_label = 0;  // argmax abstract semantic category of the last token

  std::size_t first() const { return tokens.front(); }
  std::size_t last() const { return tokens.back(); }
};

/// The five categorization networks with one sequence state each. Copying a
/// bundle branches the states; the networks are shared and must outlive it.
class TaggerBundle {
 public:
  explicit TaggerBundle(const ModelSet& models);

  void Reset();

  CategoryVector DisambiguateSyn(const CategoryVector& ambiguous);
  CategoryVector DisambiguateSem(const CategoryVector& ambiguous);
  CategoryVector AbstractSyn(const CategoryVector& disambiguated_syn);
  CategoryVector AbstractSem(const CategoryVector& disambiguated_sem);
  /// unit1 * (1 - unit2) of the two-output phrase-start network.
  double PhraseStart(const CategoryVector& disambiguated_syn);

  /// Lexicon lookup followed by all five networks, in that order.
  TokenAnalysis Tag(std::string_view word, const Lexicon& lexicon);

 private:
  struct Slot {
    const Network* net = nullptr;
    SequenceState state;
  };
  std::vector<double> Run(Slot& slot, const CategoryVector& in);

  TagsetBundle tags_;
  Slot syn_dis_, sem_dis_, abs_syn_, abs_sem_, phrase_;
};

/// Opens a phrase at the first non-deleted token and wherever boundary >=
/// threshold; deleted tokens belong to no phrase.
std::vector<Phrase> AssemblePhrases(const std::vector<TokenAnalysis>& tokens, double threshold);

}  // namespace flatsla

#endif  // FLATSLA_TAGGERS_HPP_
