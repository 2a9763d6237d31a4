// src/correction.cpp

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


#include "flatsla/correction.hpp"

#include <algorithm>

#include "flatsla/base.hpp"

namespace flatsla {

std::string_view RepairKindName(RepairKind k) {
  switch (k) {
    case RepairKind::kPause: return "pause";
    case RepairKind::kInterjection: return "interjection";
    case RepairKind::kWordRepair: return "word-repair";
    case RepairKind::kPhraseRepair: return "phrase-repair";
  }
  return "unknown";
}

std::optional<RepairDecision> DetectPauseInterjection(std::size_t index, std::string_view word,
                                                      const Lexicon& lexicon) {
  const LexiconEntry* e = lexicon.Find(word);
  if (!e) return std::nullopt;
  if (e->is_pause) return RepairDecision{RepairKind::kPause, {index}, 1.0};
  if (e->is_interjection) return RepairDecision{RepairKind::kInterjection, {index}, 1.0};
  return std::nullopt;
}

double LexWordEq(std::string_view a, std::string_view b) { return NormalizeWord(a) == NormalizeWord(b) ? 1.0 : 0.0; }

double CategoryEq(const CategoryVector& v1, const CategoryVector& v2, const Network& net) {
  if (v1.size() != v2.size()) Fail("equality of vectors with sizes ", v1.size(), " and ", v2.size());
  if (2 * v1.size() != net.spec().input) {
    Fail(net.info().name, ": expects two vectors of size ", net.spec().input / 2, ", got ", v1.size());
  }
  std::vector<double> in(v1.values().begin(), v1.values().end());
  in.insert(in.end(), v2.values().begin(), v2.values().end());
  SequenceState st;
  auto out = net.Forward(in, st);
  return IntegrateTwoUnits(out[0], out[1]);
}

double WordError(double lex, double syn, double sem, const Network& combiner) {
  const double in[3] = {lex, syn, sem};
  SequenceState st;
  auto out = combiner.Forward(in, st);
  return IntegrateTwoUnits(out[0], out[1]);
}

PhraseFeatures ComparePhrases(const Phrase& earlier, const Phrase& later, const std::vector<TokenAnalysis>& tokens,
                              const Network& abs_syn_eq, const Network& abs_sem_eq) {
  PhraseFeatures f;
  f.lex_start = LexWordEq(tokens[earlier.first()].word, tokens[later.first()].word);
  const std::size_t common = std::min(earlier.tokens.size(), later.tokens.size());
  const std::size_t longest = std::max(earlier.tokens.size(), later.tokens.size());
  for (std::size_t j = 0; j < common; ++j) {
    const TokenAnalysis& a = tokens[earlier.tokens[j]];
    const TokenAnalysis& b = tokens[later.tokens[j]];
    f.syn += CategoryEq(Binarize(a.syn_abstract), Binarize(b.syn_abstract), abs_syn_eq);
    f.sem += CategoryEq(Binarize(a.sem_abstract), Binarize(b.sem_abstract), abs_sem_eq);
  }
  f.syn /= static_cast<double>(longest);
  f.sem /= static_cast<double>(longest);
  return f;
}

double PhraseError(const PhraseFeatures& f, const Network& combiner) {
  const double in[3] = {f.lex_start, f.syn, f.sem};
  SequenceState st;
  auto out = combiner.Forward(in, st);
  return IntegrateTwoUnits(out[0], out[1]);
}

void CorrectionConfig::Validate() const {
  for (double t : {boundary_threshold, word_threshold, phrase_threshold}) {
    if (!(t >= 0.0 && t <= 1.0)) Fail("threshold ", t, " outside [0, 1]");
  }
}

Corrector::Corrector(const ModelSet& models, CorrectionConfig cfg) : models_(&models), cfg_(cfg) { cfg_.Validate(); }

std::vector<RepairDecision> Corrector::Apply(std::vector<TokenAnalysis>& tokens) const {
  std::vector<RepairDecision> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].deleted) continue;
    if (auto d = DetectPauseInterjection(i, tokens[i].word, *models_->lexicon)) {
      tokens[i].deleted = true;
      out.push_back(std::move(*d));
    }
  }

  const Network& syn_eq = models_->net(NetId::kBasSynEq);
  const Network& sem_eq = models_->net(NetId::kBasSemEq);
  const Network& word_error = models_->net(NetId::kWordError);
  std::size_t prev = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].deleted) continue;
    if (prev < tokens.size()) {
      const TokenAnalysis& a = tokens[prev];
      const TokenAnalysis& b = tokens[i];
      const double lex = LexWordEq(a.word, b.word);
      const double syn = CategoryEq(Binarize(a.syn_basic), Binarize(b.syn_basic), syn_eq);
      const double sem = CategoryEq(Binarize(a.sem_basic), Binarize(b.sem_basic), sem_eq);
      const double conf = WordError(lex, syn, sem, word_error);
      if (conf >= cfg_.word_threshold) {
        tokens[prev].deleted = true;
        out.push_back({RepairKind::kWordRepair, {prev}, conf});
      }
    }
    prev = i;
  }

  const Network& abs_syn_eq = models_->net(NetId::kAbsSynEq);
  const Network& abs_sem_eq = models_->net(NetId::kAbsSemEq);
  const Network& phrase_error = models_->net(NetId::kPhraseError);
  const std::vector<Phrase> phrases = AssemblePhrases(tokens, cfg_.boundary_threshold);
  for (std::size_t p = 1; p < phrases.size(); ++p) {
    const Phrase& earlier = phrases[p - 1];
    const PhraseFeatures f = ComparePhrases(earlier, phrases[p], tokens, abs_syn_eq, abs_sem_eq);
    const double conf = PhraseError(f, phrase_error);
    if (conf >= cfg_.phrase_threshold) {
      for (std::size_t t : earlier.tokens) tokens[t].deleted = true;
      out.push_back({RepairKind::kPhraseRepair, earlier.tokens, conf});
    }
  }
  return out;
}

CategoryVector Binarize(const CategoryVector& v) { return CategoryVector::OneHot(v.tagset(), v.Argmax()); }

}  // namespace flatsla
