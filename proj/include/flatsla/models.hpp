// include/flatsla/models.hpp

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


#ifndef FLATSLA_MODELS_HPP_
#define FLATSLA_MODELS_HPP_

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "flatsla/lexicon.hpp"
#include "flatsla/network.hpp"
#include "flatsla/tagset.hpp"

namespace flatsla {

// Every learned module of the analyzer.
enum class NetId {
  kBasSynDis,
  kBasSemDis,
  kAbsSynCat,
  kAbsSemCat,
  kPhraseStart,
  kBasSynPre,
  kBasSemPre,
  kBasSynEq,
  kBasSemEq,
  kAbsSynEq,
  kAbsSemEq,
  kWordError,
  kPhraseError,
};
inline constexpr std::size_t kNetCount = 13;
inline constexpr std::array<NetId, kNetCount> kAllNets = {
    NetId::kBasSynDis, NetId::kBasSemDis, NetId::kAbsSynCat, NetId::kAbsSemCat, NetId::kPhraseStart,
    NetId::kBasSynPre, NetId::kBasSemPre, NetId::kBasSynEq,  NetId::kBasSemEq,  NetId::kAbsSynEq,
    NetId::kAbsSemEq,  NetId::kWordError, NetId::kPhraseError};

/// "bas-syn-dis", "phrase-start", "word-error", ...
std::string_view NetName(NetId id);
NetId ParseNetId(std::string_view name);

/// Layer sizes implied by the tagsets, e.g. 13 -> h -> 8 for abs-syn-cat
/// and 26 -> h -> 2 for bas-syn-eq. Taggers and predictors are recurrent.
NetworkSpec ShapeFor(NetId id, const TagsetBundle& tags, std::size_t hidden, std::uint64_t seed);
NetworkInfo InfoFor(NetId id, const TagsetBundle& tags);

/// Tagsets, lexicon and the thirteen networks. Copies share everything.
struct ModelSet {
  TagsetBundle tags;
  std::shared_ptr<const Lexicon> lexicon;
  std::array<NetworkPtr, kNetCount> nets;

  const Network& net(NetId id) const;
  bool complete() const;

  /// Same networks, different lexicon (lexicon ablation).
  ModelSet WithLexicon(Lexicon lex) const;

  /// Untrained networks from seeded random weights; useful for structural tests.
  static ModelSet Random(TagsetBundle tags, Lexicon lex, std::uint64_t seed, std::size_t hidden = 14);

  /// "<dir>/<net-name>.net" for each network.
  void SaveNets(const std::string& dir) const;
  static ModelSet Load(const std::string& dir, TagsetBundle tags, Lexicon lex);
};

std::string ModelPath(const std::string& dir, NetId id);

}  // namespace flatsla

#endif  // FLATSLA_MODELS_HPP_
