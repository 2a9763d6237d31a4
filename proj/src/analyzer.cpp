// src/analyzer.cpp

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


#include "flatsla/analyzer.hpp"

#include "flatsla/base.hpp"

namespace flatsla {

IncrementalAnalyzer::IncrementalAnalyzer(const ModelSet& models, ScoringOptions opt)
    : models_(&models), opt_(opt), taggers_(models), predictors_(models) {}

IncrementalAnalyzer::Step IncrementalAnalyzer::Next(std::string_view word) {
  Step s;
  s.token = taggers_.Tag(word, *models_->lexicon);
  ++position_;
  if (const LexiconEntry* e = models_->lexicon->Find(word); e && (e->is_pause || e->is_interjection)) return s;
  if (opt_.use_syntax && next_syn_) s.syntactic = AgreementPlausibility(*next_syn_, s.token.syn_basic);
  if (opt_.use_semantics && next_sem_) s.semantic = AgreementPlausibility(*next_sem_, s.token.sem_basic);
  next_syn_ = predictors_.PredictNextSyn(Binarize(s.token.syn_basic));
  next_sem_ = predictors_.PredictNextSem(Binarize(s.token.sem_basic));
  return s;
}

AnalyzedSequence AnalyzeWords(const ModelSet& models, const std::vector<std::string>& words,
                              const CorrectionConfig& correction, ScoringOptions opt,
                              const std::vector<double>* acoustic) {
  if (acoustic && acoustic->size() != words.size()) {
    Fail("got ", acoustic->size(), " acoustic values for ", words.size(), " words");
  }
  AnalyzedSequence out;
  IncrementalAnalyzer an(models, opt);
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto step = an.Next(words[i]);
    out.tokens.push_back(std::move(step.token));
    out.score.acoustic.push_back(acoustic ? (*acoustic)[i] : 1.0);
    out.score.syntactic.push_back(step.syntactic);
    out.score.semantic.push_back(step.semantic);
  }
  if (!words.empty()) out.score.combined = Combine(out.score.acoustic, out.score.syntactic, out.score.semantic);
  out.repairs = Corrector(models, correction).Apply(out.tokens);
  return out;
}

}  // namespace flatsla
