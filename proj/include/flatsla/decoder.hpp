// include/flatsla/decoder.hpp

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


#ifndef FLATSLA_DECODER_HPP_
#define FLATSLA_DECODER_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "flatsla/analyzer.hpp"
#include "flatsla/correction.hpp"
#include "flatsla/lattice.hpp"
#include "flatsla/models.hpp"
#include "flatsla/scoring.hpp"

namespace flatsla {

inline constexpr std::size_t kUnlimitedBeam = std::numeric_limits<std::size_t>::max();

struct DecoderConfig {
  std::size_t beam = 10;  // per frontier end time; kUnlimitedBeam disables pruning
  int max_gap = 1;        // centiseconds
  CorrectionConfig correction;
  ScoringOptions scoring;
  bool normalize_acoustic = true;  // applied by DecodeGraph only
  void Validate() const;
};

/// One hypothesis appended to a sequence. Nodes are immutable and shared by
/// every sequence that extends them.
struct SequenceNode {
  WordHypothesis hyp;
  std::shared_ptr<const SequenceNode> parent;
  IncrementalAnalyzer analyzer;  // state after this word
  TokenAnalysis token;
  double syntactic = 1.0;
  double semantic = 1.0;
  RunningScore score;
  std::uint64_t id = 0;  // creation order
  std::size_t length = 1;
};
using NodePtr = std::shared_ptr<const SequenceNode>;

/// A sequence unrolled for output, with corrections applied.
struct DecodedSequence {
  std::uint64_t id = 0;
  std::vector<WordHypothesis> hyps;
  std::vector<TokenAnalysis> tokens;
  std::vector<RepairDecision> repairs;
  SequenceScore score;

  std::vector<std::string> Words() const;
  /// Words of the tokens not marked deleted.
  std::vector<std::string> CorrectedWords() const;
};

/// Incremental construction of word hypothesis sequences. Hypotheses enter in
/// nondecreasing end order. Each one extends every active sequence it can
/// follow; a hypothesis that no earlier hypothesis can precede starts a new
/// sequence. Sequences that end at the same time compete for `beam` slots.
class Decoder {
 public:
  Decoder(const ModelSet& models, DecoderConfig cfg);

  void Advance(const WordHypothesis& h);
  /// Drops sequences that nothing starting at `clock` or later can extend.
  void PruneDeadEnds(int clock);
  /// Ends the utterance: dead ends relative to the last end time and
  /// sequences that were extended are removed.
  void Finish();

  /// Active sequences by descending combined score (ties: older first).
  std::vector<DecodedSequence> Best(std::size_t k = kUnlimitedBeam) const;

  std::size_t active() const;
  bool finished() const { return finished_; }
  int end_time() const { return last_end_; }
  static DecodedSequence Materialize(const NodePtr& node, const ModelSet& models, const CorrectionConfig& cfg);

 private:
  struct Entry {
    NodePtr node;
    bool extended = false;
  };
  NodePtr Extend(const NodePtr& parent, const WordHypothesis& h);
  void BeamPrune(int frontier);
  std::vector<const Entry*> Ranked() const;

  const ModelSet* models_;
  DecoderConfig cfg_;
  std::map<int, std::vector<Entry>> active_;  // keyed by last end time
  std::set<int> seen_ends_;
  int last_end_ = std::numeric_limits<int>::min();
  std::uint64_t next_id_ = 0;
  bool finished_ = false;
};

/// Normalizes (if configured), streams the graph through a decoder with dead
/// end pruning at the earliest remaining start time and returns the final
/// ranking, at most k sequences. `on_step` sees the decoder after each
/// hypothesis (step counts from 1).
std::vector<DecodedSequence> DecodeGraph(
    const ModelSet& models, const WordGraph& graph, const DecoderConfig& cfg, std::size_t k = kUnlimitedBeam,
    const std::function<void(std::size_t step, const WordHypothesis&, const Decoder&)>& on_step = {});

/// Ranked sequences with per-token tags and scores.
std::string RankingToJson(const std::vector<DecodedSequence>& ranking);
/// One row per token: rank, position, word, times, tags, scores.
std::string RankingToCsv(const std::vector<DecodedSequence>& ranking);

}  // namespace flatsla

#endif  // FLATSLA_DECODER_HPP_
