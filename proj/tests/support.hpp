// tests/support.hpp

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


#ifndef FLATSLA_TESTS_SUPPORT_HPP_
#define FLATSLA_TESTS_SUPPORT_HPP_

#include <cmath>
#include <memory>
#include <vector>

#include "flatsla/corpus.hpp"
#include "flatsla/models.hpp"
#include "flatsla/network.hpp"

namespace flatsla::testing {

inline double Logit(double p) { return std::log(p / (1.0 - p)); }

// Zero weights except the output biases, so every input gives `outputs`.
inline Network ConstantNet(const NetworkSpec& spec, const std::vector<double>& outputs) {
  Network n = Network::Zeros(spec);
  auto w2 = n.mutable_w2();
  for (std::size_t k = 0; k < spec.output; ++k) w2[k * (spec.hidden + 1) + spec.hidden] = Logit(outputs[k]);
  return n;
}

inline ModelSet ZeroModels() {
  ModelSet m = ModelSet::Random(TagsetBundle::Defaults(), GeneratorLexicon(TagsetBundle::Defaults()), 1);
  for (NetId id : kAllNets) {
    m.nets[static_cast<std::size_t>(id)] = std::make_shared<const Network>(Network::Zeros(ShapeFor(id, m.tags, 14, 0)));
  }
  return m;
}

inline ModelSet RandomModels(std::uint64_t seed) {
  return ModelSet::Random(TagsetBundle::Defaults(), GeneratorLexicon(TagsetBundle::Defaults()), seed);
}

inline void SetNet(ModelSet& m, NetId id, Network n) {
  m.nets[static_cast<std::size_t>(id)] = std::make_shared<const Network>(std::move(n));
}

// 3 -> 1 -> 2 combiner that fires iff its first input (lexical equality) is 1.
inline Network LexDetector() {
  Network n = Network::Zeros(NetworkSpec{3, 1, 2, false, 0});
  auto w1 = n.mutable_w1();
  w1[0] = 40.0;
  w1[3] = -20.0;
  auto w2 = n.mutable_w2();
  w2[0] = 40.0;
  w2[1] = -20.0;
  w2[2] = -40.0;
  w2[3] = 20.0;
  return n;
}

}  // namespace flatsla::testing

#endif  // FLATSLA_TESTS_SUPPORT_HPP_
