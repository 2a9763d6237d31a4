// tests/correction_test.cpp

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


#include <gtest/gtest.h>

#include "flatsla/base.hpp"
#include "flatsla/correction.hpp"
#include "support.hpp"

namespace flatsla {
namespace {

using testing::ConstantNet;
using testing::LexDetector;
using testing::RandomModels;
using testing::SetNet;
using testing::ZeroModels;

TEST(PauseInterjection, SymbolicDetection) {
  const Lexicon lex = GeneratorLexicon(TagsetBundle::Defaults());
  const auto ah = DetectPauseInterjection(0, "ähm", lex);
  ASSERT_TRUE(ah);
  EXPECT_EQ(ah->kind, RepairKind::kInterjection);
  EXPECT_EQ(ah->span, std::vector<std::size_t>{0});
  EXPECT_FALSE(DetectPauseInterjection(3, "März", lex));
  const auto p = DetectPauseInterjection(2, "<pause>", lex);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->kind, RepairKind::kPause);
  EXPECT_EQ(p->span, std::vector<std::size_t>{2});
  EXPECT_FALSE(DetectPauseInterjection(0, "unbekanntes", lex));
}

TEST(LexWordEq, Examples) {
  EXPECT_EQ(LexWordEq("ich", "ich"), 1.0);
  EXPECT_EQ(LexWordEq("ich", "Ich"), 1.0);
  EXPECT_EQ(LexWordEq("Termin", "Treffen"), 0.0);
  EXPECT_EQ(LexWordEq("Ähm", "ähm"), 1.0);
}

TEST(Integration, Formula) {
  EXPECT_EQ(IntegrateTwoUnits(1.0, 0.0), 1.0);
  EXPECT_EQ(IntegrateTwoUnits(0.0, 1.0), 0.0);
  EXPECT_NEAR(IntegrateTwoUnits(0.8, 0.3), 0.56, 1e-15);
}

TEST(Integration, RangeAndMonotone) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u1 = rng.Uniform(), u2 = rng.Uniform(), d = rng.Uniform(0, 0.1);
    const double v = IntegrateTwoUnits(u1, u2);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_GE(IntegrateTwoUnits(std::min(1.0, u1 + d), u2), v);
    EXPECT_LE(IntegrateTwoUnits(u1, std::min(1.0, u2 + d)), v);
  }
}

TEST(CategoryEq, UsesIntegratedOutputs) {
  const TagsetBundle tags = TagsetBundle::Defaults();
  const Network net = ConstantNet(ShapeFor(NetId::kBasSynEq, tags, 3, 0), {0.8, 0.3});
  const auto v = CategoryVector::OneHot(tags.basic_syn, 0), u = CategoryVector::OneHot(tags.basic_syn, 1);
  EXPECT_NEAR(CategoryEq(v, u, net), 0.56, 1e-12);
  EXPECT_THROW(CategoryEq(v, CategoryVector::OneHot(tags.basic_sem, 0), net), Error);
  const Network sem_net = ConstantNet(ShapeFor(NetId::kBasSemEq, tags, 3, 0), {0.5, 0.5});
  EXPECT_THROW(CategoryEq(v, u, sem_net), Error);
}

TEST(WordError, ZeroCombinerIsBelowThreshold) {
  const Network z = Network::Zeros(NetworkSpec{3, 4, 2, false, 0});
  EXPECT_EQ(WordError(1, 1, 1, z), 0.25);
  EXPECT_GT(WordError(1, 1, 1, LexDetector()), 0.99);
  EXPECT_LT(WordError(0, 1, 1, LexDetector()), 0.01);
}

TokenAnalysis Tok(const ModelSet& m, const std::string& word, double boundary, const std::string& syn = "U",
                  const std::string& asyn = "NG") {
  TokenAnalysis t;
  t.word = word;
  t.syn_basic = CategoryVector::OneHot(m.tags.basic_syn, m.tags.basic_syn->Index(syn));
  t.sem_basic = CategoryVector::OneHot(m.tags.basic_sem, 0);
  t.syn_abstract = CategoryVector::OneHot(m.tags.abstract_syn, m.tags.abstract_syn->Index(asyn));
  t.sem_abstract = CategoryVector::OneHot(m.tags.abstract_sem, 0);
  t.boundary = boundary;
  return t;
}

ModelSet LexOnlyModels() {
  ModelSet m = ZeroModels();
  SetNet(m, NetId::kWordError, LexDetector());
  SetNet(m, NetId::kPhraseError, LexDetector());
  return m;
}

std::vector<bool> Deleted(const std::vector<TokenAnalysis>& t) {
  std::vector<bool> d;
  for (const auto& x : t) d.push_back(x.deleted);
  return d;
}

TEST(Corrector, RepetitionMarksEarlierOccurrence) {
  const ModelSet m = LexOnlyModels();
  std::vector<TokenAnalysis> toks = {Tok(m, "bin", 1, "V", "VG"), Tok(m, "ich", 1), Tok(m, "ich", 0)};
  const auto rep = Corrector(m).Apply(toks);
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(Deleted(toks), (std::vector<bool>{false, true, false}));
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep[0].kind, RepairKind::kWordRepair);
  EXPECT_EQ(rep[0].span, std::vector<std::size_t>{1});
}

TEST(Corrector, InterjectionIsDeletedAndSkippedForPairs) {
  const ModelSet m = LexOnlyModels();
  std::vector<TokenAnalysis> toks = {Tok(m, "ähm", 1, "I", "IG"), Tok(m, "ich", 1), Tok(m, "<pause>", 1, "/", "IG"),
                                     Tok(m, "ich", 0)};
  const auto rep = Corrector(m).Apply(toks);
  EXPECT_EQ(Deleted(toks), (std::vector<bool>{true, true, true, false}));
  ASSERT_EQ(rep.size(), 3u);
  EXPECT_EQ(rep[0].kind, RepairKind::kInterjection);
  EXPECT_EQ(rep[1].kind, RepairKind::kPause);
  EXPECT_EQ(rep[2].kind, RepairKind::kWordRepair);
  EXPECT_EQ(rep[2].span, std::vector<std::size_t>{1});
}

TEST(Corrector, PhraseRepairMarksWholeEarlierPhrase) {
  const ModelSet m = LexOnlyModels();
  // "den früheren Termin den späteren Termin"
  std::vector<TokenAnalysis> toks = {Tok(m, "den", 1, "D"),       Tok(m, "früheren", 0, "J"), Tok(m, "Termin", 0, "N"),
                                     Tok(m, "den", 1, "D"),       Tok(m, "späteren", 0, "J"), Tok(m, "Termin", 0, "N")};
  const auto rep = Corrector(m).Apply(toks);
  EXPECT_EQ(Deleted(toks), (std::vector<bool>{true, true, true, false, false, false}));
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep[0].kind, RepairKind::kPhraseRepair);
  EXPECT_EQ(rep[0].span, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Corrector, ThresholdsAreConfigurable) {
  const ModelSet m = ZeroModels();  // every combiner says 0.25
  std::vector<TokenAnalysis> a = {Tok(m, "ich", 1), Tok(m, "ich", 0)};
  EXPECT_TRUE(Corrector(m).Apply(a).empty());
  CorrectionConfig low;
  low.word_threshold = 0.2;
  std::vector<TokenAnalysis> b = {Tok(m, "ich", 1), Tok(m, "ich", 0)};
  const auto rep = Corrector(m, low).Apply(b);
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_NEAR(rep[0].confidence, 0.25, 1e-15);
  CorrectionConfig bad;
  bad.phrase_threshold = 1.5;
  EXPECT_THROW(Corrector(m, bad), Error);
}

TEST(ComparePhrases, PositionalAlignment) {
  ModelSet m = ZeroModels();
  const TagsetBundle& tags = m.tags;
  SetNet(m, NetId::kAbsSynEq, ConstantNet(ShapeFor(NetId::kAbsSynEq, tags, 2, 0), {0.999999, 1e-6}));
  SetNet(m, NetId::kAbsSemEq, ConstantNet(ShapeFor(NetId::kAbsSemEq, tags, 2, 0), {0.5, 0.5}));
  std::vector<TokenAnalysis> toks = {Tok(m, "den", 1), Tok(m, "Termin", 0), Tok(m, "den", 1), Tok(m, "späteren", 0),
                                     Tok(m, "Termin", 0)};
  const auto ph = AssemblePhrases(toks, 0.5);
  ASSERT_EQ(ph.size(), 2u);
  const PhraseFeatures f = ComparePhrases(ph[0], ph[1], toks, m.net(NetId::kAbsSynEq), m.net(NetId::kAbsSemEq));
  EXPECT_EQ(f.lex_start, 1.0);
  EXPECT_NEAR(f.syn, 2.0 / 3.0, 1e-5);   // two aligned positions of three
  EXPECT_NEAR(f.sem, 0.25 * 2.0 / 3.0, 1e-12);
}

TEST(Corrector, NeverRemovesTokensAndIsDeterministic) {
  const ModelSet m = RandomModels(3);
  Rng rng(5);
  const std::vector<std::string> words = {"ich", "ich", "ähm", "den", "Termin", "<pause>", "bin", "zzz"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenAnalysis> toks;
    const std::size_t n = rng.Below(10);
    for (std::size_t i = 0; i < n; ++i) {
      TokenAnalysis t = Tok(m, rng.Pick(words), rng.Uniform());
      t.syn_basic.Set(rng.Below(13), 1.0);
      toks.push_back(t);
    }
    std::vector<TokenAnalysis> again = toks;
    CorrectionConfig cfg;
    cfg.word_threshold = rng.Uniform();
    cfg.phrase_threshold = rng.Uniform();
    const auto r1 = Corrector(m, cfg).Apply(toks);
    const auto r2 = Corrector(m, cfg).Apply(again);
    EXPECT_EQ(toks.size(), n);
    EXPECT_EQ(Deleted(toks), Deleted(again));
    ASSERT_EQ(r1.size(), r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      EXPECT_FALSE(r1[i].span.empty());
      EXPECT_EQ(r1[i].span, r2[i].span);
      EXPECT_EQ(r1[i].confidence, r2[i].confidence);
      for (std::size_t t : r1[i].span) EXPECT_TRUE(toks[t].deleted);
    }
  }
}

TEST(Binarize, LowestIndexArgmaxOneHot) {
  const TagsetBundle tags = TagsetBundle::Defaults();
  CategoryVector v = CategoryVector::Uniform(tags.basic_syn, 0.3);
  v.Set(4, 0.7);
  v.Set(9, 0.7);
  const CategoryVector b = Binarize(v);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i], i == 4 ? 1.0 : 0.0);
}

}  // namespace
}  // namespace flatsla
