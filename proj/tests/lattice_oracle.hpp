// tests/lattice_oracle.hpp

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


#ifndef FLATSLA_TESTS_LATTICE_ORACLE_HPP_
#define FLATSLA_TESTS_LATTICE_ORACLE_HPP_

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "flatsla/analyzer.hpp"
#include "flatsla/base.hpp"
#include "flatsla/decoder.hpp"
#include "flatsla/lattice.hpp"

namespace flatsla::testing {

using PathKey = std::vector<std::tuple<int, int, std::string>>;

inline std::vector<WordHypothesis> RandomHyps(Rng& rng, std::size_t n, int horizon) {
  static const std::vector<std::string> vocab = {"ich", "am", "sechsten", "April", "bin", "wenn", "leider",
                                                 "außer", "Hause", "ähm", "zzz", "Termin", "den", "meine"};
  std::vector<WordHypothesis> hyps;
  for (std::size_t i = 0; i < n; ++i) {
    const int start = static_cast<int>(rng.Below(static_cast<std::size_t>(horizon)));
    hyps.push_back({start, start + static_cast<int>(rng.Below(6)), rng.Pick(vocab), rng.Uniform(0.01, 1.0)});
  }
  return hyps;
}

// Every path from a hypothesis without predecessor to one without successor
// that ends within max_gap of the final end time, scored in batch.
inline std::map<PathKey, double> Enumerate(const ModelSet& m, const WordGraph& raw, const DecoderConfig& cfg) {
  std::map<PathKey, double> out;
  const WordGraph g = cfg.normalize_acoustic ? NormalizeAcoustic(raw) : raw;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    path.push_back(i);
    if (g.successors(i).empty()) {
      if (g[i].end + g.max_gap() >= g.EndTime() + 1) {
        std::vector<std::string> words;
        std::vector<double> ac;
        PathKey key;
        for (std::size_t k : path) {
          words.push_back(g[k].word);
          ac.push_back(g[k].acoustic);
          key.emplace_back(g[k].start, g[k].end, g[k].word);
        }
        const auto a = AnalyzeWords(m, words, cfg.correction, cfg.scoring, &ac);
        out.emplace(key, a.score.combined);
      }
    } else {
      for (std::size_t j : g.successors(i)) walk(j);
    }
    path.pop_back();
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.predecessors(i).empty()) walk(i);
  }
  return out;
}

inline PathKey KeyOf(const DecodedSequence& d) {
  PathKey key;
  for (const auto& h : d.hyps) key.emplace_back(h.start, h.end, h.word);
  return key;
}

}  // namespace flatsla::testing

#endif  // FLATSLA_TESTS_LATTICE_ORACLE_HPP_
