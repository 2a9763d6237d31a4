// tests/reference.hpp

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


#ifndef FLATSLA_TESTS_REFERENCE_HPP_
#define FLATSLA_TESTS_REFERENCE_HPP_

#include <vector>

#include "flatsla/corpus.hpp"
#include "flatsla/datasets.hpp"
#include "flatsla/models.hpp"

namespace flatsla::testing {

// The reference recipe: generated corpus, one third of the turns for
// training, every network trained with the default hyperparameters.
struct ReferenceRun {
  TagsetBundle tags;
  Lexicon lexicon;
  Corpus corpus;
  CorpusSplit split;
  ModelSet models;
  std::vector<NetworkReport> reports;
};

inline ReferenceRun TrainReference(std::uint64_t seed = 42, TrainAllConfig cfg = {}) {
  const TagsetBundle tags = TagsetBundle::Defaults();
  Lexicon lex = GeneratorLexicon(tags);
  GeneratorConfig g;
  g.seed = seed;
  Corpus corpus = Generate(g);
  CorpusSplit split = SplitCorpus(corpus, {1.0 / 3.0, seed});
  cfg.seed = seed;
  std::vector<NetworkReport> reports;
  ModelSet models = TrainAll(tags, lex, split.train, split.test, cfg, &reports);
  return {tags, std::move(lex), std::move(corpus), std::move(split), std::move(models), std::move(reports)};
}

}  // namespace flatsla::testing

#endif  // FLATSLA_TESTS_REFERENCE_HPP_
