// include/flatsla/eval.hpp

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


#ifndef FLATSLA_EVAL_HPP_
#define FLATSLA_EVAL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "flatsla/analyzer.hpp"
#include "flatsla/corpus.hpp"
#include "flatsla/decoder.hpp"
#include "flatsla/models.hpp"

namespace flatsla {

/// Phrase-level agreement of one system analysis with its gold utterance.
///
/// Gold phrases are the runs of fluent tokens opened by a boundary flag. A
/// gold phrase is syntactically correct when its first token is kept, opens a
/// system phrase and that phrase's syntactic label matches; semantically
/// correct when its last token is kept, closes a system phrase and the
/// semantic label matches. A maximal run of disfluent gold tokens is one more
/// item on both levels, correct iff all of its tokens are deleted.
struct PhraseScore {
  std::size_t syn_correct = 0;
  std::size_t sem_correct = 0;
  std::size_t items = 0;

  PhraseScore& operator+=(const PhraseScore& o);
  double syn_accuracy() const { return items ? static_cast<double>(syn_correct) / static_cast<double>(items) : 1.0; }
  double sem_accuracy() const { return items ? static_cast<double>(sem_correct) / static_cast<double>(items) : 1.0; }
};

PhraseScore ScoreUtterance(const Utterance& gold, const std::vector<TokenAnalysis>& system,
                           const TagsetBundle& tags, double boundary_threshold);

struct OverallReport {
  PhraseScore score;
  std::size_t utterances = 0;
  std::size_t failures = 0;  // analyses that threw or left a tag missing
};

/// Analyzes every utterance's transcribed words and scores it.
OverallReport EvalOverall(const ModelSet& models, const Corpus& test, const CorrectionConfig& correction = {});

/// True if every token carries all four vectors of the right sizes with
/// finite activations in [0, 1] and a finite phrase-start value.
bool AnalysisComplete(const std::vector<TokenAnalysis>& tokens, const TagsetBundle& tags);

struct AblationRow {
  double fraction = 0.0;
  std::uint64_t seed = 0;
  std::size_t removed = 0;  // lexicon entries
  double syn = 0.0;
  double sem = 0.0;
  double syn_drop = 0.0;  // percentage points below the full lexicon
  double sem_drop = 0.0;
  std::size_t failures = 0;
};

/// Reruns EvalOverall with ablated copies of the lexicon. Networks are kept;
/// only the lookups change. The first row is the full lexicon (fraction 0).
std::vector<AblationRow> AblationExperiment(const ModelSet& models, const Corpus& test,
                                            const std::vector<double>& fractions,
                                            const std::vector<std::uint64_t>& seeds,
                                            const CorrectionConfig& correction = {});
std::string AblationToCsv(const std::vector<AblationRow>& rows);

/// Lattices built from gold utterances: every word gets its own time slot
/// shared with `distractors` other vocabulary words. Acoustic values are
/// uniform in [correct_low, 1] for the spoken word and [distractor_low, 1]
/// for the others.
struct NoisyLatticeConfig {
  std::size_t lattices = 100;
  std::size_t distractors = 3;
  double correct_low = 0.35;
  double distractor_low = 0.2;
  std::uint64_t seed = 42;
  std::size_t beam = 10;
};

struct NoisyLattice {
  WordGraph graph;
  std::vector<std::string> reference;
};

std::vector<NoisyLattice> MakeNoisyLattices(const Corpus& corpus, const Lexicon& vocabulary,
                                            const NoisyLatticeConfig& cfg);

/// 1 - edit distance / reference length, floored at 0.
double WordAccuracy(const std::vector<std::string>& hypothesis, const std::vector<std::string>& reference);
std::size_t EditDistance(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct DecodingRow {
  std::string mode;  // "acoustic", "acoustic+syn", "acoustic+syn+sem"
  double word_accuracy = 0.0;  // mean over lattices of the rank-1 sequence
  std::size_t lattices = 0;
  std::size_t empty = 0;  // lattices with no surviving sequence
};

/// Rank-1 word accuracy with acoustic evidence only, plus syntax, plus syntax
/// and semantics.
std::vector<DecodingRow> DecodingExperiment(const ModelSet& models, const std::vector<NoisyLattice>& lattices,
                                            std::size_t beam);
std::string DecodingToCsv(const std::vector<DecodingRow>& rows);

/// Random lattices mixing vocabulary words, unknown strings, repetitions
/// and arbitrary category orders, with random overlaps and gaps.
WordGraph CorruptedLattice(const Lexicon& vocabulary, std::uint64_t seed, std::size_t max_hypotheses = 14);

std::string OverallToCsv(const OverallReport& r);

/// Tagged-output format: word, four best labels, boundary and deletion flags.
std::string FormatTagged(const std::vector<TokenAnalysis>& tokens, double boundary_threshold);

}  // namespace flatsla

#endif  // FLATSLA_EVAL_HPP_
