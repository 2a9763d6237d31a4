// tests/decoder_test.cpp

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

#include <chrono>
#include <cmath>
#include <map>

#include "flatsla/base.hpp"
#include "flatsla/decoder.hpp"
#include "flatsla/lattice.hpp"
#include "json.hpp"
#include "lattice_oracle.hpp"
#include "support.hpp"

namespace flatsla {
namespace {

using testing::Enumerate;
using testing::RandomHyps;
using testing::RandomModels;
using testing::ZeroModels;

WordHypothesis H(int s, int e, const std::string& w, double a = 1.0) { return WordHypothesis{s, e, w, a}; }

TEST(Connect, Examples) {
  EXPECT_TRUE(Connect(H(21, 43, "am"), H(44, 70, "sechsten"), 1));
  EXPECT_TRUE(Connect(H(123, 130, "ich"), H(131, 138, "ich"), 1));
  EXPECT_FALSE(Connect(H(21, 43, "am"), H(43, 70, "sechsten"), 1));
  EXPECT_FALSE(Connect(H(21, 43, "am"), H(30, 70, "sechsten"), 5));
  EXPECT_FALSE(Connect(H(0, 10, "a"), H(12, 20, "b"), 1));
  EXPECT_TRUE(Connect(H(0, 10, "a"), H(12, 20, "b"), 2));
}

TEST(Hypothesis, Validation) {
  EXPECT_THROW(H(5, 4, "x").Validate(), Error);
  EXPECT_THROW(H(1, 4, "").Validate(), Error);
  EXPECT_THROW(H(1, 4, "x", 0.0).Validate(), Error);
  EXPECT_NO_THROW(H(4, 4, "x", 1e-9).Validate());
}

TEST(WordGraph, AdjacencyIsExactlyTheConnectionRule) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int gap = 1 + static_cast<int>(rng.Below(3));
    const WordGraph g(RandomHyps(rng, 1 + rng.Below(20), 40), gap);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i > 0) {
        EXPECT_LE(g[i - 1].end, g[i].end);
      }
      for (std::size_t j = 0; j < g.size(); ++j) {
        const bool want = Connect(g[i], g[j], gap);
        const auto& s = g.successors(i);
        const auto& p = g.predecessors(j);
        EXPECT_EQ(std::find(s.begin(), s.end(), j) != s.end(), want);
        EXPECT_EQ(std::find(p.begin(), p.end(), i) != p.end(), want);
        edges += want;
      }
    }
    EXPECT_EQ(g.EdgeCount(), edges);
  }
}

TEST(WordGraph, ParseFormat) {
  const WordGraph g = WordGraph::Parse(
      "# start end word acoustic\n"
      "123 130 ich 1.178415e-02\n"
      "\n"
      "131 137 ich 1.813340E-02   # trailing comment\n"
      "123 137 ich 2.463924e-3\n");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0].word, "ich");
  EXPECT_DOUBLE_EQ(g[0].acoustic, 1.178415e-02);
  EXPECT_DOUBLE_EQ(g[2].acoustic, 2.463924e-3);
  EXPECT_EQ(g.EndTime(), 137);
  EXPECT_DOUBLE_EQ(WordGraph::Parse("1 2 x 1.527688e-03\n")[0].acoustic, 1.527688e-03);
}

std::string ErrorOf(const std::string& text) {
  try {
    WordGraph::Parse(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(WordGraph, ParseErrorsNameTheLine) {
  EXPECT_NE(ErrorOf("0 10 a 0.5\n11 x b 0.5\n").find("line 2"), std::string::npos);
  EXPECT_NE(ErrorOf("0 10 a 0.5\n11 20 b\n").find("line 2"), std::string::npos);
  EXPECT_NE(ErrorOf("# c\n0 10 a 0.5\n11 20 b 0.5\n5 9 c 0.5\n").find("line 4"), std::string::npos);
  EXPECT_NE(ErrorOf("10 5 a 0.5\n").find("line 1"), std::string::npos);
  EXPECT_NE(ErrorOf("0 5 a -1\n").find("line 1"), std::string::npos);
  EXPECT_NE(ErrorOf("0 5 a 1 extra\n").find("line 1"), std::string::npos);
  EXPECT_EQ(ErrorOf(""), "");
  EXPECT_TRUE(WordGraph::Parse("# only comments\n").empty());
}

TEST(WordGraph, SerializeRoundTrip) {
  const WordGraph g = FixtureLattice();
  const WordGraph back = WordGraph::Parse(g.Serialize());
  EXPECT_EQ(back.hypotheses(), g.hypotheses());
}

TEST(WordGraph, NormalizeAcousticPerOverlapGroup) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const WordGraph g(RandomHyps(rng, 1 + rng.Below(15), 30), 1);
    const WordGraph n = NormalizeAcoustic(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double best = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[j].start <= g[i].end && g[i].start <= g[j].end) best = std::max(best, g[j].acoustic);
      }
      EXPECT_NEAR(n[i].acoustic, g[i].acoustic / best, 1e-15);
      EXPECT_GT(n[i].acoustic, 0.0);
      EXPECT_LE(n[i].acoustic, 1.0);
    }
  }
}

std::map<std::vector<std::tuple<int, int, std::string>>, double> AsMap(const std::vector<DecodedSequence>& r) {
  std::map<std::vector<std::tuple<int, int, std::string>>, double> out;
  for (const auto& d : r) {
    std::vector<std::tuple<int, int, std::string>> key;
    for (const auto& h : d.hyps) key.emplace_back(h.start, h.end, h.word);
    EXPECT_TRUE(out.emplace(key, d.score.combined).second) << "duplicate sequence";
  }
  return out;
}

void ExpectSameSequences(const std::map<std::vector<std::tuple<int, int, std::string>>, double>& got,
                         const std::map<std::vector<std::tuple<int, int, std::string>>, double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (const auto& [k, s] : want) {
    auto it = got.find(k);
    ASSERT_NE(it, got.end());
    EXPECT_NEAR(it->second, s, 1e-9 * std::max(std::abs(s), 1e-300));
  }
}

TEST(Decoder, UnlimitedBeamEqualsExhaustiveEnumeration) {
  const ModelSet m = RandomModels(3);
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    DecoderConfig cfg;
    cfg.beam = kUnlimitedBeam;
    cfg.max_gap = 1 + static_cast<int>(rng.Below(3));
    cfg.normalize_acoustic = rng.Bernoulli(0.5);
    const WordGraph g(RandomHyps(rng, 1 + rng.Below(12), 25), cfg.max_gap);
    const auto ranking = DecodeGraph(m, g, cfg);
    ExpectSameSequences(AsMap(ranking), Enumerate(m, g, cfg));
    for (std::size_t i = 1; i < ranking.size(); ++i) {
      EXPECT_GE(ranking[i - 1].score.combined, ranking[i].score.combined);
    }
  }
}

TEST(Decoder, FixtureLatticeHasEightCompletePaths) {
  const ModelSet m = RandomModels(5);
  DecoderConfig cfg;
  cfg.beam = kUnlimitedBeam;
  const WordGraph g = FixtureLattice();
  EXPECT_EQ(g.size(), 14u);
  const auto paths = Enumerate(m, g, cfg);
  EXPECT_EQ(paths.size(), 8u);
  const auto ranking = DecodeGraph(m, g, cfg);
  ExpectSameSequences(AsMap(ranking), paths);
  bool desired = false;
  for (const auto& d : ranking) desired = desired || d.Words() == FixtureDesiredWords();
  EXPECT_TRUE(desired);
}

TEST(Decoder, SinglePathKeepsOneSequence) {
  const ModelSet m = RandomModels(6);
  const WordGraph g({H(0, 9, "am"), H(10, 19, "sechsten"), H(20, 29, "April"), H(30, 39, "bin")}, 1);
  std::size_t steps = 0;
  const auto ranking = DecodeGraph(m, g, DecoderConfig{}, kUnlimitedBeam,
                                   [&](std::size_t step, const WordHypothesis&, const Decoder& d) {
                                     ++steps;
                                     // The extended prefix is only dropped once the graph ends.
                                     EXPECT_EQ(d.active(), step < 4 ? 1u : 2u) << step;
                                   });
  EXPECT_EQ(steps, 4u);
  ASSERT_EQ(ranking.size(), 1u);
  EXPECT_EQ(ranking[0].hyps.size(), 4u);
}

DecoderConfig AcousticOnly(std::size_t beam) {
  DecoderConfig cfg;
  cfg.beam = beam;
  cfg.scoring = {false, false};
  cfg.normalize_acoustic = false;
  return cfg;
}

TEST(Decoder, BeamOneOnForkKeepsBetterBranch) {
  const ModelSet m = ZeroModels();
  const WordGraph g({H(0, 9, "a", 1.0), H(10, 19, "b", 0.9), H(10, 19, "c", 0.4), H(20, 29, "d", 1.0)}, 1);
  const auto ranking = DecodeGraph(m, g, AcousticOnly(1));
  ASSERT_EQ(ranking.size(), 1u);
  EXPECT_EQ(ranking[0].Words(), (std::vector<std::string>{"a", "b", "d"}));
  EXPECT_NEAR(ranking[0].score.combined, std::cbrt(0.9), 1e-12);
  const auto wide = DecodeGraph(m, g, AcousticOnly(2));
  ASSERT_EQ(wide.size(), 2u);
  EXPECT_NEAR(wide[1].score.combined, std::cbrt(0.4), 1e-12);
}

WordGraph Fan(std::size_t branches) {
  std::vector<WordHypothesis> hyps = {H(0, 9, "a", 1.0)};
  for (std::size_t i = 0; i < branches; ++i) {
    hyps.push_back(H(10, 19, "w" + std::to_string(i), 0.05 + 0.07 * static_cast<double>(i)));
  }
  return WordGraph(hyps, 1);
}

TEST(Decoder, BeamKeepsBestOfFrontier) {
  const ModelSet m = ZeroModels();
  EXPECT_EQ(DecodeGraph(m, Fan(3), AcousticOnly(10)).size(), 3u);
  const auto r = DecodeGraph(m, Fan(12), AcousticOnly(10));
  ASSERT_EQ(r.size(), 10u);
  std::set<std::string> words;
  for (const auto& d : r) words.insert(d.Words().back());
  EXPECT_FALSE(words.count("w0"));
  EXPECT_FALSE(words.count("w1"));
  EXPECT_EQ(DecodeGraph(m, Fan(12), AcousticOnly(kUnlimitedBeam)).size(), 12u);
}

TEST(Decoder, EqualScoresKeepEarlierSequences) {
  const ModelSet m = ZeroModels();
  std::vector<WordHypothesis> hyps = {H(0, 9, "a")};
  for (int i = 0; i < 5; ++i) hyps.push_back(H(10, 19, "w" + std::to_string(i), 0.5));
  const auto r = DecodeGraph(m, WordGraph(hyps, 1), AcousticOnly(2));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].Words().back(), "w0");
  EXPECT_EQ(r[1].Words().back(), "w1");
  EXPECT_LT(r[0].id, r[1].id);
}

TEST(Decoder, BestRespectsK) {
  const ModelSet m = ZeroModels();
  EXPECT_EQ(DecodeGraph(m, Fan(4), AcousticOnly(10), 2).size(), 2u);
  EXPECT_EQ(DecodeGraph(m, Fan(4), AcousticOnly(10), 100).size(), 4u);
}

TEST(Decoder, PruneDeadEnds) {
  const ModelSet m = ZeroModels();
  Decoder d(m, AcousticOnly(10));
  d.PruneDeadEnds(500);
  EXPECT_EQ(d.active(), 0u);
  d.Advance(H(90, 100, "alt"));
  d.Advance(H(150, 199, "neu"));
  d.PruneDeadEnds(200);
  ASSERT_EQ(d.active(), 1u);
  EXPECT_EQ(d.Best()[0].Words(), std::vector<std::string>{"neu"});
}

TEST(Decoder, OutOfOrderInputNamesTimes) {
  const ModelSet m = ZeroModels();
  Decoder d(m, DecoderConfig{});
  d.Advance(H(0, 50, "a"));
  try {
    d.Advance(H(0, 40, "b"));
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("40"), std::string::npos) << msg;
    EXPECT_NE(msg.find("50"), std::string::npos) << msg;
  }
}

TEST(Decoder, ConfigValidation) {
  const ModelSet m = ZeroModels();
  DecoderConfig zero_beam;
  zero_beam.beam = 0;
  EXPECT_THROW(Decoder(m, zero_beam), Error);
  DecoderConfig zero_gap;
  zero_gap.max_gap = 0;
  EXPECT_THROW(Decoder(m, zero_gap), Error);
}

TEST(Decoder, BeamNeverBeatsUnlimited) {
  const ModelSet m = RandomModels(7);
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const WordGraph g(RandomHyps(rng, 2 + rng.Below(14), 25), 1);
    DecoderConfig full;
    full.beam = kUnlimitedBeam;
    const auto best = DecodeGraph(m, g, full, 1);
    for (std::size_t n : {1u, 2u, 3u, 10u}) {
      DecoderConfig cfg;
      cfg.beam = n;
      const auto r = DecodeGraph(m, g, cfg, 1);
      if (best.empty()) {
        EXPECT_TRUE(r.empty());
        continue;
      }
      if (!r.empty()) {
        EXPECT_LE(r[0].score.combined, best[0].score.combined + 1e-15);
      }
    }
  }
}

TEST(Decoder, IncrementalEqualsBatch) {
  const ModelSet m = RandomModels(9);
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const WordGraph g = NormalizeAcoustic(WordGraph(RandomHyps(rng, 1 + rng.Below(15), 30), 1));
    DecoderConfig cfg;
    cfg.beam = 3;
    cfg.normalize_acoustic = false;
    const auto batch = DecodeGraph(m, g, cfg);
    Decoder d(m, cfg);
    for (const auto& h : g.hypotheses()) d.Advance(h);
    d.Finish();
    const auto inc = d.Best();
    ASSERT_EQ(batch.size(), inc.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      EXPECT_EQ(batch[i].hyps, inc[i].hyps);
      EXPECT_EQ(batch[i].score.combined, inc[i].score.combined);
    }
  }
}

TEST(Decoder, NeverCrashes) {
  const ModelSet m = RandomModels(11);
  EXPECT_TRUE(DecodeGraph(m, WordGraph(), DecoderConfig{}).empty());
  EXPECT_EQ(DecodeGraph(m, WordGraph({H(3, 3, "x")}), DecoderConfig{}).size(), 1u);
  // Disconnected islands: only the last one reaches the end.
  const auto islands = DecodeGraph(m, WordGraph({H(0, 5, "a"), H(20, 25, "b"), H(40, 45, "c")}), DecoderConfig{});
  ASSERT_EQ(islands.size(), 1u);
  EXPECT_EQ(islands[0].Words(), std::vector<std::string>{"c"});

  Rng rng(12);
  std::vector<WordHypothesis> big;
  for (int i = 0; i < 10000; ++i) {
    const int start = static_cast<int>(rng.Below(20000));
    big.push_back(H(start, start + static_cast<int>(rng.Below(8)), rng.Bernoulli(0.1) ? "zzz" : "ich",
                    rng.Uniform(1e-6, 1.0)));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = DecodeGraph(m, WordGraph(big, 1), DecoderConfig{}, 5);
  EXPECT_LE(r.size(), 5u);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}

TEST(Decoder, CorrectionsDoNotChangeScores) {
  ModelSet m = ZeroModels();
  testing::SetNet(m, NetId::kWordError, testing::LexDetector());
  const WordGraph g({H(0, 9, "bin"), H(10, 19, "ich"), H(20, 29, "ich"), H(30, 39, "leider")}, 1);
  const auto r = DecodeGraph(m, g, AcousticOnly(10));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].CorrectedWords(), (std::vector<std::string>{"bin", "ich", "leider"}));
  EXPECT_EQ(r[0].Words().size(), 4u);
  EXPECT_EQ(r[0].score.combined, 1.0);
  ASSERT_EQ(r[0].repairs.size(), 1u);
  EXPECT_EQ(r[0].repairs[0].span, std::vector<std::size_t>{1});
}

TEST(Output, JsonAndCsv) {
  const ModelSet m = RandomModels(13);
  const auto ranking = DecodeGraph(m, FixtureLattice(), DecoderConfig{}, 3);
  ASSERT_EQ(ranking.size(), 3u);
  const auto j = nlohmann::json::parse(RankingToJson(ranking));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 3u);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(j[r]["rank"], r + 1);
    EXPECT_EQ(j[r]["tokens"].size(), ranking[r].tokens.size());
    EXPECT_DOUBLE_EQ(j[r]["combined"].get<double>(), ranking[r].score.combined);
    for (const auto& t : j[r]["tokens"]) {
      for (const char* k : {"syn_basic", "syn_abstract", "sem_basic", "sem_abstract"}) {
        EXPECT_TRUE(t[k].contains("best"));
      }
    }
  }
  EXPECT_EQ(nlohmann::json::parse(RankingToJson({})).size(), 0u);
  const std::string csv = RankingToCsv(ranking);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  std::size_t tokens = 0;
  for (const auto& d : ranking) tokens += d.tokens.size();
  EXPECT_EQ(rows, tokens + 1);
  EXPECT_EQ(csv.rfind("rank,", 0), 0u);
}

TEST(Output, SnapshotsSeeEveryStep) {
  const ModelSet m = RandomModels(14);
  const WordGraph g = FixtureLattice();
  std::vector<int> ends;
  DecodeGraph(m, g, DecoderConfig{}, 10, [&](std::size_t step, const WordHypothesis& h, const Decoder& d) {
    EXPECT_EQ(step, ends.size() + 1);
    EXPECT_EQ(d.end_time(), h.end);
    ends.push_back(h.end);
  });
  EXPECT_EQ(ends.size(), g.size());
}

}  // namespace
}  // namespace flatsla
