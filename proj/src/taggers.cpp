// src/taggers.cpp

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


#include "flatsla/taggers.hpp"

#include "flatsla/base.hpp"

namespace flatsla {

TaggerBundle::TaggerBundle(const ModelSet& models) : tags_(models.tags) {
  auto init = [&](Slot& s, NetId id) {
    s.net = &models.net(id);
    s.state = s.net->InitialState();
  };
  init(syn_dis_, NetId::kBasSynDis);
  init(sem_dis_, NetId::kBasSemDis);
  init(abs_syn_, NetId::kAbsSynCat);
  init(abs_sem_, NetId::kAbsSemCat);
  init(phrase_, NetId::kPhraseStart);
}

void TaggerBundle::Reset() {
  for (Slot* s : {&syn_dis_, &sem_dis_, &abs_syn_, &abs_sem_, &phrase_}) s->state = s->net->InitialState();
}

std::vector<double> TaggerBundle::Run(Slot& slot, const CategoryVector& in) {
  if (in.size() != slot.net->spec().input) {
    Fail(slot.net->info().name, ": expected a category vector of size ", slot.net->spec().input, ", got ",
         in.size());
  }
  return slot.net->Forward(in.values(), slot.state);
}

CategoryVector TaggerBundle::DisambiguateSyn(const CategoryVector& ambiguous) {
  return CategoryVector(tags_.basic_syn, Run(syn_dis_, ambiguous));
}

CategoryVector TaggerBundle::DisambiguateSem(const CategoryVector& ambiguous) {
  return CategoryVector(tags_.basic_sem, Run(sem_dis_, ambiguous));
}

CategoryVector TaggerBundle::AbstractSyn(const CategoryVector& disambiguated_syn) {
  return CategoryVector(tags_.abstract_syn, Run(abs_syn_, disambiguated_syn));
}

CategoryVector TaggerBundle::AbstractSem(const CategoryVector& disambiguated_sem) {
  return CategoryVector(tags_.abstract_sem, Run(abs_sem_, disambiguated_sem));
}

double TaggerBundle::PhraseStart(const CategoryVector& disambiguated_syn) {
  auto out = Run(phrase_, disambiguated_syn);
  return IntegrateTwoUnits(out[0], out[1]);
}

TokenAnalysis TaggerBundle::Tag(std::string_view word, const Lexicon& lexicon) {
  LookupResult lr = lexicon.Lookup(word);
  TokenAnalysis t;
  t.word = std::string(word);
  t.known = lr.known;
  t.syn_basic = DisambiguateSyn(lr.syn);
  t.sem_basic = DisambiguateSem(lr.sem);
  t.syn_abstract = AbstractSyn(t.syn_basic);
  t.sem_abstract = AbstractSem(t.sem_basic);
  t.boundary = PhraseStart(t.syn_basic);
  return t;
}

std::vector<Phrase> AssemblePhrases(const std::vector<TokenAnalysis>& tokens, double threshold) {
  std::vector<Phrase> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].deleted) continue;
    if (out.empty() || tokens[i].boundary >= threshold) out.emplace_back();
    out.back().tokens.push_back(i);
  }
  for (auto& p : out) {
    p.syn_label = tokens[p.first()].syn_abstract.Argmax();
    p.sem_label = tokens[p.last()].sem_abstract.Argmax();
  }
  return out;
}

}  // namespace flatsla
