// include/flatsla/datasets.hpp

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


#ifndef FLATSLA_DATASETS_HPP_
#define FLATSLA_DATASETS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flatsla/corpus.hpp"
#include "flatsla/lexicon.hpp"
#include "flatsla/models.hpp"
#include "flatsla/network.hpp"

namespace flatsla {

using Dataset = std::vector<PatternSequence>;

/// One dataset per network, indexed by NetId.
struct TrainingSets {
  std::array<Dataset, kNetCount> sets;
  Dataset& operator[](NetId id) { return sets[static_cast<std::size_t>(id)]; }
  const Dataset& operator[](NetId id) const { return sets[static_cast<std::size_t>(id)]; }
};

/// Builds the supervised data of every network from gold annotations.
/// Taggers and predictors get one sequence per utterance, disfluent tokens
/// included; predictors skip pauses and interjections. Equality and combiner
/// sets are single-pattern sequences, the smaller class cycled (seeded order)
/// up to the size of the larger one.
/// With probability `unknown_rate` a token's disambiguation input is the
/// lexicon's default vector instead of its entry, as for an unknown word.
TrainingSets ExtractTrainingSets(const Corpus& corpus, const Lexicon& lexicon, const TagsetBundle& tags,
                                 std::uint64_t seed, double unknown_rate = 0.0);

/// Argmax-match rate over every pattern of the dataset.
double EvalNetwork(const Network& net, const Dataset& data);

struct TrainAllConfig {
  TrainConfig train;  // epochs, learning rate, bptt depth; seed is derived per network
  std::size_t hidden = 14;
  std::uint64_t seed = 42;
  double unknown_rate = 0.1;  // training sets only
};

struct NetworkReport {
  NetId id{};
  std::vector<double> epoch_mse;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t train_patterns = 0;
  std::size_t test_patterns = 0;
};

/// Trains all thirteen networks on `train`; reports accuracy on `test`.
/// `existing`, when given, supplies networks that are kept instead of trained.
ModelSet TrainAll(const TagsetBundle& tags, const Lexicon& lexicon, const Corpus& train, const Corpus& test,
                  const TrainAllConfig& cfg, std::vector<NetworkReport>* report = nullptr,
                  const std::function<NetworkPtr(NetId)>& existing = {});

std::size_t PatternCount(const Dataset& d);

/// One row per network: pattern counts, accuracies and the last epoch's MSE.
std::string NetworkAccuracyCsv(const std::vector<NetworkReport>& reports);

}  // namespace flatsla

#endif  // FLATSLA_DATASETS_HPP_
