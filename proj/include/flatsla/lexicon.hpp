// include/flatsla/lexicon.hpp

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

#ifndef FLATSLA_LEXICON_HPP_
#define FLATSLA_LEXICON_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flatsla/tagset.hpp"

namespace flatsla {

/// How ambiguous entries are presented to the networks. Binary keeps every
/// possible category at 1.0; kNormalized divides by the number of readings.
enum class AmbiguityCoding { kBinary, kNormalized };

struct LexiconEntry {
  std::string word;     // normalized form
  CategoryVector syn;   // multi-hot over basic syntactic categories
  CategoryVector sem;   // multi-hot over basic semantic categories
  bool is_pause = false;
  bool is_interjection = false;
};

struct LookupResult {
  CategoryVector syn;
  CategoryVector sem;
  bool known = false;
};

/// Maps words to their ambiguous category possibilities. Immutable once built;
/// unknown words fall back to frequency-normalized default vectors.
class Lexicon {
 public:
  Lexicon(TagsetPtr basic_syn, TagsetPtr basic_sem);

  /// Adds or replaces an entry and validates it. Defaults are not refreshed;
  /// call ComputeDefaults() after a batch of additions.
  void Add(LexiconEntry entry);

  /// Convenience for tests and the generator: categories by abbreviation.
  void Add(std::string_view word, const std::vector<std::string>& syn,
           const std::vector<std::string>& sem, bool pause = false, bool interjection = false);

  /// Total: never throws, unknown strings get the default vectors.
  LookupResult Lookup(std::string_view word) const;

  const LexiconEntry* Find(std::string_view word) const;

  /// Recomputes the default vectors from the category bit frequencies.
  void ComputeDefaults();

  /// Copy with floor(fraction * size) entries removed; the removed set depends
  /// only on the seed and the word list.
  Lexicon Ablate(double fraction, std::uint64_t seed) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, LexiconEntry>& entries() const { return entries_; }
  const CategoryVector& default_syn() const { return default_syn_; }
  const CategoryVector& default_sem() const { return default_sem_; }
  const TagsetPtr& syn_tagset() const { return syn_tagset_; }
  const TagsetPtr& sem_tagset() const { return sem_tagset_; }

  AmbiguityCoding coding() const { return coding_; }
  void set_coding(AmbiguityCoding c) { coding_ = c; }

  /// Line format: `word | SYN: N,V | SEM: TIME | FLAGS: pause`.
  static Lexicon Parse(std::string_view text, TagsetPtr basic_syn, TagsetPtr basic_sem);
  static Lexicon Load(const std::string& path, TagsetPtr basic_syn, TagsetPtr basic_sem);
  std::string Serialize() const;
  void Save(const std::string& path) const;

 private:
  CategoryVector Present(const CategoryVector& v) const;

  TagsetPtr syn_tagset_;
  TagsetPtr sem_tagset_;
  std::map<std::string, LexiconEntry> entries_;
  CategoryVector default_syn_;
  CategoryVector default_sem_;
  AmbiguityCoding coding_ = AmbiguityCoding::kBinary;
};

/// Computes only the defaults of a lexicon (the frequency-normalized average).
/// Throws "empty lexicon" for an empty lexicon.
std::pair<CategoryVector, CategoryVector> ComputeDefaultVectors(const Lexicon& lexicon);

}  // namespace flatsla

#endif  // FLATSLA_LEXICON_HPP_
