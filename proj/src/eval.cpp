// src/eval.cpp

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


#include "flatsla/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flatsla/base.hpp"

namespace flatsla {

PhraseScore& PhraseScore::operator+=(const PhraseScore& o) {
  syn_correct += o.syn_correct;
  sem_correct += o.sem_correct;
  items += o.items;
  return *this;
}

namespace {

struct GoldItem {
  bool disfluent = false;
  std::vector<std::size_t> tokens;
};

std::vector<GoldItem> GoldItems(const Utterance& gold) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<GoldItem> items;
  std::size_t open = kNone;  // current fluent phrase; survives disfluent runs
  bool in_run = false;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].disfluency != Disfluency::kNone) {
      if (!in_run) items.push_back({true, {}});
      items.back().tokens.push_back(i);
      in_run = true;
      continue;
    }
    in_run = false;
    if (open == kNone || gold[i].boundary) {
      items.push_back({false, {i}});
      open = items.size() - 1;
    } else {
      items[open].tokens.push_back(i);
    }
  }
  return items;
}

}  // namespace

PhraseScore ScoreUtterance(const Utterance& gold, const std::vector<TokenAnalysis>& system,
                           const TagsetBundle& tags, double boundary_threshold) {
  if (gold.size() != system.size()) Fail("gold has ", gold.size(), " tokens, system ", system.size());
  const std::vector<Phrase> phrases = AssemblePhrases(system, boundary_threshold);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> phrase_of(system.size(), kNone);
  for (std::size_t p = 0; p < phrases.size(); ++p) {
    for (std::size_t t : phrases[p].tokens) phrase_of[t] = p;
  }
  PhraseScore s;
  for (const GoldItem& item : GoldItems(gold)) {
    ++s.items;
    if (item.disfluent) {
      const bool all = std::all_of(item.tokens.begin(), item.tokens.end(), [&](std::size_t t) { return system[t].deleted; });
      s.syn_correct += all;
      s.sem_correct += all;
      continue;
    }
    const std::size_t f = item.tokens.front(), l = item.tokens.back();
    if (phrase_of[f] != kNone && phrases[phrase_of[f]].first() == f &&
        phrases[phrase_of[f]].syn_label == tags.abstract_syn->Index(gold[f].syn_abstract)) {
      ++s.syn_correct;
    }
    if (phrase_of[l] != kNone && phrases[phrase_of[l]].last() == l &&
        phrases[phrase_of[l]].sem_label == tags.abstract_sem->Index(gold[l].sem_abstract)) {
      ++s.sem_correct;
    }
  }
  return s;
}

bool AnalysisComplete(const std::vector<TokenAnalysis>& tokens, const TagsetBundle& tags) {
  auto ok = [](const CategoryVector& v, const TagsetPtr& t) {
    if (!v.tagset() || v.size() != t->size()) return false;
    for (double a : v.values()) {
      if (!std::isfinite(a) || a < 0.0 || a > 1.0) return false;
    }
    return true;
  };
  for (const auto& t : tokens) {
    if (!ok(t.syn_basic, tags.basic_syn) || !ok(t.syn_abstract, tags.abstract_syn) ||
        !ok(t.sem_basic, tags.basic_sem) || !ok(t.sem_abstract, tags.abstract_sem)) {
      return false;
    }
    if (!std::isfinite(t.boundary) || t.boundary < 0.0 || t.boundary > 1.0) return false;
  }
  return true;
}

OverallReport EvalOverall(const ModelSet& models, const Corpus& test, const CorrectionConfig& correction) {
  OverallReport r;
  for (const Utterance* u : test.Utterances()) {
    ++r.utterances;
    try {
      const AnalyzedSequence a = AnalyzeWords(models, Words(*u), correction);
      if (a.tokens.size() != u->size() || !AnalysisComplete(a.tokens, models.tags)) {
        ++r.failures;
        r.score.items += GoldItems(*u).size();
        continue;
      }
      r.score += ScoreUtterance(*u, a.tokens, models.tags, correction.boundary_threshold);
    } catch (const std::exception&) {
      ++r.failures;
      r.score.items += GoldItems(*u).size();
    }
  }
  return r;
}

std::string OverallToCsv(const OverallReport& r) {
  std::string out = "metric,value\n";
  out += "syntactic_accuracy," + FormatFixed(r.score.syn_accuracy(), 6) + "\n";
  out += "semantic_accuracy," + FormatFixed(r.score.sem_accuracy(), 6) + "\n";
  out += "items," + std::to_string(r.score.items) + "\n";
  out += "utterances," + std::to_string(r.utterances) + "\n";
  out += "failures," + std::to_string(r.failures) + "\n";
  return out;
}

std::vector<AblationRow> AblationExperiment(const ModelSet& models, const Corpus& test,
                                            const std::vector<double>& fractions,
                                            const std::vector<std::uint64_t>& seeds,
                                            const CorrectionConfig& correction) {
  const OverallReport base = EvalOverall(models, test, correction);
  std::vector<AblationRow> rows;
  rows.push_back({0.0, 0, 0, base.score.syn_accuracy(), base.score.sem_accuracy(), 0.0, 0.0, base.failures});
  for (double f : fractions) {
    for (std::uint64_t seed : seeds) {
      Lexicon lex = models.lexicon->Ablate(f, seed);
      const std::size_t removed = models.lexicon->size() - lex.size();
      const ModelSet m = models.WithLexicon(std::move(lex));
      const OverallReport r = EvalOverall(m, test, correction);
      const double syn = r.score.syn_accuracy(), sem = r.score.sem_accuracy();
      rows.push_back({f, seed, removed, syn, sem, 100.0 * (base.score.syn_accuracy() - syn),
                      100.0 * (base.score.sem_accuracy() - sem), r.failures});
    }
  }
  return rows;
}

std::string AblationToCsv(const std::vector<AblationRow>& rows) {
  std::string out = "fraction,seed,removed,syntactic,semantic,syntactic_drop_pp,semantic_drop_pp,failures\n";
  for (const auto& r : rows) {
    out += FormatFixed(r.fraction, 4) + "," + std::to_string(r.seed) + "," + std::to_string(r.removed) + "," +
           FormatFixed(r.syn, 6) + "," + FormatFixed(r.sem, 6) + "," + FormatFixed(r.syn_drop, 4) + "," +
           FormatFixed(r.sem_drop, 4) + "," + std::to_string(r.failures) + "\n";
  }
  return out;
}

namespace {

std::vector<std::string> SpokenVocabulary(const Lexicon& lex) {
  std::vector<std::string> words;
  for (const auto& [w, e] : lex.entries()) {
    if (!e.is_pause && !e.is_interjection) words.push_back(w);
  }
  if (words.size() < 2) Fail("vocabulary too small for distractors");
  return words;
}

}  // namespace

std::vector<NoisyLattice> MakeNoisyLattices(const Corpus& corpus, const Lexicon& vocabulary,
                                            const NoisyLatticeConfig& cfg) {
  const std::vector<const Utterance*> utts = corpus.Utterances();
  if (utts.empty()) Fail("no utterances to build lattices from");
  const std::vector<std::string> vocab = SpokenVocabulary(vocabulary);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(utts.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  std::vector<NoisyLattice> out;
  for (std::size_t n = 0; n < cfg.lattices; ++n) {
    const Utterance& u = *utts[order[n % order.size()]];
    NoisyLattice nl;
    std::vector<WordHypothesis> hyps;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const int start = static_cast<int>(10 * i), end = start + 9;
      std::vector<WordHypothesis> slot;
      slot.push_back({start, end, u[i].word, rng.Uniform(cfg.correct_low, 1.0)});
      const std::string spoken = NormalizeWord(u[i].word);
      while (slot.size() < cfg.distractors + 1) {
        const std::string& w = rng.Pick(vocab);
        bool dup = w == spoken;
        for (const auto& h : slot) dup = dup || NormalizeWord(h.word) == w;
        if (!dup) slot.push_back({start, end, w, rng.Uniform(cfg.distractor_low, 1.0)});
      }
      rng.Shuffle(slot);
      for (auto& h : slot) hyps.push_back(std::move(h));
      nl.reference.push_back(u[i].word);
    }
    nl.graph = WordGraph(std::move(hyps), 1);
    out.push_back(std::move(nl));
  }
  return out;
}

std::size_t EditDistance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (NormalizeWord(a[i - 1]) == NormalizeWord(b[j - 1]) ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double WordAccuracy(const std::vector<std::string>& hypothesis, const std::vector<std::string>& reference) {
  if (reference.empty()) return hypothesis.empty() ? 1.0 : 0.0;
  const double e = static_cast<double>(EditDistance(hypothesis, reference));
  return std::max(0.0, 1.0 - e / static_cast<double>(reference.size()));
}

std::vector<DecodingRow> DecodingExperiment(const ModelSet& models, const std::vector<NoisyLattice>& lattices,
                                            std::size_t beam) {
  const std::pair<const char*, ScoringOptions> modes[] = {
      {"acoustic", {false, false}}, {"acoustic+syn", {true, false}}, {"acoustic+syn+sem", {true, true}}};
  std::vector<DecodingRow> rows;
  for (const auto& [name, opt] : modes) {
    DecoderConfig cfg;
    cfg.beam = beam;
    cfg.scoring = opt;
    DecodingRow row;
    row.mode = name;
    double sum = 0.0;
    for (const auto& nl : lattices) {
      const auto best = DecodeGraph(models, nl.graph, cfg, 1);
      ++row.lattices;
      if (best.empty()) {
        ++row.empty;
        continue;
      }
      sum += WordAccuracy(best.front().Words(), nl.reference);
    }
    row.word_accuracy = row.lattices ? sum / static_cast<double>(row.lattices) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string DecodingToCsv(const std::vector<DecodingRow>& rows) {
  std::string out = "mode,word_accuracy,lattices,empty\n";
  for (const auto& r : rows) {
    out += r.mode + "," + FormatFixed(r.word_accuracy, 6) + "," + std::to_string(r.lattices) + "," +
           std::to_string(r.empty) + "\n";
  }
  return out;
}

WordGraph CorruptedLattice(const Lexicon& vocabulary, std::uint64_t seed, std::size_t max_hypotheses) {
  Rng rng(seed);
  std::vector<std::string> words, fillers;
  for (const auto& [w, e] : vocabulary.entries()) (e.is_pause || e.is_interjection ? fillers : words).push_back(w);
  if (words.empty()) Fail("empty vocabulary");
  static const char* kGarbage[] = {"xyzzy", "qwrt", "Ärgß", "brmpf", "-", "zz9", "Ölk", "ttt"};
  const std::size_t n = 1 + rng.Below(std::max<std::size_t>(max_hypotheses, 1));
  const int span = static_cast<int>(6 * n + 10);
  std::vector<WordHypothesis> hyps;
  int chain_end = -1;
  for (std::size_t i = 0; i < n; ++i) {
    WordHypothesis h;
    const double r = rng.Uniform();
    if (r < 0.5) {
      h.word = rng.Pick(words);
    } else if (r < 0.7) {
      h.word = std::string(kGarbage[rng.Below(std::size(kGarbage))]) + std::to_string(rng.Below(100));
    } else if (r < 0.85 && !hyps.empty()) {
      h.word = hyps[rng.Below(hyps.size())].word;
    } else {
      h.word = fillers.empty() ? rng.Pick(words) : rng.Pick(fillers);
    }
    // Half of the hypotheses continue a chain so that paths exist.
    if (rng.Bernoulli(0.5)) {
      h.start = chain_end + 1;
    } else {
      h.start = static_cast<int>(rng.Below(static_cast<std::size_t>(span)));
    }
    h.end = h.start + static_cast<int>(rng.Below(12));
    chain_end = std::max(chain_end, h.end);
    h.acoustic = rng.Uniform(1e-4, 1.0);
    hyps.push_back(std::move(h));
  }
  return WordGraph(std::move(hyps), 1);
}

std::string FormatTagged(const std::vector<TokenAnalysis>& tokens, double boundary_threshold) {
  std::vector<bool> opens(tokens.size(), false);
  for (const auto& p : AssemblePhrases(tokens, boundary_threshold)) opens[p.first()] = true;
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const TokenAnalysis& t = tokens[i];
    const bool b = t.deleted ? t.boundary >= boundary_threshold : opens[i];
    out += t.word + "\t" + t.syn_basic.Best().abbrev + "\t" + t.syn_abstract.Best().abbrev + "\t" +
           t.sem_basic.Best().abbrev + "\t" + t.sem_abstract.Best().abbrev + "\t" + (b ? "1" : "0") + "\t" +
           (t.deleted ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace flatsla
