// include/flatsla/lattice.hpp

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


#ifndef FLATSLA_LATTICE_HPP_
#define FLATSLA_LATTICE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace flatsla {

/// One recognizer hypothesis. Times are integer centiseconds.
struct WordHypothesis {
  int start = 0;
  int end = 0;
  std::string word;
  double acoustic = 1.0;

  void Validate() const;
  bool operator==(const WordHypothesis&) const = default;
};

/// h2 may follow h1 iff 1 <= h2.start - h1.end <= max_gap.
inline bool Connect(const WordHypothesis& h1, const WordHypothesis& h2, int max_gap) {
  const int gap = h2.start - h1.end;
  return gap >= 1 && gap <= max_gap;
}

/// Hypotheses ordered by end time (stable for equal ends) with the derived
/// successor and predecessor lists.
class WordGraph {
 public:
  WordGraph() = default;
  WordGraph(std::vector<WordHypothesis> hyps, int max_gap = 1);

  const std::vector<WordHypothesis>& hypotheses() const { return hyps_; }
  const WordHypothesis& operator[](std::size_t i) const { return hyps_[i]; }
  std::size_t size() const { return hyps_.size(); }
  bool empty() const { return hyps_.empty(); }
  int max_gap() const { return max_gap_; }

  const std::vector<std::size_t>& successors(std::size_t i) const { return succ_[i]; }
  const std::vector<std::size_t>& predecessors(std::size_t i) const { return pred_[i]; }
  std::size_t EdgeCount() const;

  /// Latest end time, 0 for an empty graph.
  int EndTime() const { return hyps_.empty() ? 0 : hyps_.back().end; }

  /// `start_cs end_cs word acoustic` per line, '#' comments, sorted by end.
  static WordGraph Parse(std::string_view text, int max_gap = 1);
  static WordGraph Load(const std::string& path, int max_gap = 1);
  std::string Serialize() const;

 private:
  std::vector<WordHypothesis> hyps_;
  int max_gap_ = 1;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

/// Divides each acoustic value by the largest value among the hypotheses
/// overlapping it in time (itself included), so every region's best
/// hypothesis gets 1.0.
WordGraph NormalizeAcoustic(const WordGraph& graph);

/// Small lattice for "Ähm am sechsten April bin ich leider außer Hause" with
/// competing "ich am", "wenn" and a split "ich ich"; eight complete paths.
WordGraph FixtureLattice();
std::vector<std::string> FixtureDesiredWords();

}  // namespace flatsla

#endif  // FLATSLA_LATTICE_HPP_
