// include/flatsla/corpus.hpp

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


#ifndef FLATSLA_CORPUS_HPP_
#define FLATSLA_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flatsla/lexicon.hpp"
#include "flatsla/tagset.hpp"

namespace flatsla {

enum class Disfluency { kNone, kInterjection, kPause, kWordRepair, kPhraseRepair };

/// "none", "interjection", "pause", "word-repair-reparandum",
/// "phrase-repair-reparandum".
std::string_view DisfluencyName(Disfluency d);
Disfluency ParseDisfluency(std::string_view name);

struct GoldToken {
  std::string word;
  std::string syn_basic;
  std::string syn_abstract;
  std::string sem_basic;
  std::string sem_abstract;
  bool boundary = false;  // starts a phrase
  bool deleted = false;   // part of a disfluency
  Disfluency disfluency = Disfluency::kNone;

  bool operator==(const GoldToken&) const = default;
};

using Utterance = std::vector<GoldToken>;

struct Turn {
  std::string id;
  std::vector<Utterance> utterances;
  bool operator==(const Turn&) const = default;
};

/// Gold-tagged dialog turns. File format, one token per line:
///   word TAB synB TAB synA TAB semB TAB semA TAB boundary TAB deleted TAB disfluency
/// with a blank line after each utterance and `== turn <id>` before each turn.
struct Corpus {
  std::vector<Turn> turns;

  std::size_t TokenCount() const;
  std::size_t UtteranceCount() const;
  std::vector<const Utterance*> Utterances() const;

  /// Checks labels against the tagsets and the annotation invariants.
  void Validate(const TagsetBundle& tags) const;

  std::string Serialize() const;
  static Corpus Parse(std::string_view text);
  void Save(const std::string& path) const;
  static Corpus Load(const std::string& path);

  bool operator==(const Corpus&) const = default;
};

struct GeneratorConfig {
  std::uint64_t seed = 42;
  int turns = 184;
  std::size_t min_tokens = 2355;  // more turns are added until reached
  double interjection_rate = 0.15;   // per utterance
  double pause_rate = 0.05;          // per utterance
  double repetition_rate = 0.02;     // per fluent token
  double correction_rate = 0.04;     // per token that has a same-category substitute
  double phrase_repair_rate = 0.25;  // per object or time phrase

  void Validate() const;
};

/// Meeting-domain utterances from a template grammar with gold tags on all
/// four levels. Deterministic in the seed.
Corpus Generate(const GeneratorConfig& cfg);

/// Every word the generator can emit, with its ambiguous possibilities.
Lexicon GeneratorLexicon(const TagsetBundle& tags);

/// Hand-tagged example utterances of the domain.
struct Fixture {
  std::string name;
  Utterance tokens;
};
std::vector<Fixture> FixtureUtterances();
const Fixture& FindFixture(std::string_view name);

struct SplitSpec {
  double train_fraction = 1.0 / 3.0;
  std::uint64_t seed = 42;
  void Validate() const;
};

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

/// Shuffles whole turns and puts the first round(fraction * turns) into train.
CorpusSplit SplitCorpus(const Corpus& corpus, const SplitSpec& spec);

/// Words of an utterance, in order.
std::vector<std::string> Words(const Utterance& u);

}  // namespace flatsla

#endif  // FLATSLA_CORPUS_HPP_
