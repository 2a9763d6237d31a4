// include/flatsla/tagset.hpp

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

#ifndef FLATSLA_TAGSET_HPP_
#define FLATSLA_TAGSET_HPP_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatsla {

enum class TagsetKind { kBasicSyntactic, kAbstractSyntactic, kBasicSemantic, kAbstractSemantic };

std::string_view TagsetKindName(TagsetKind kind);
TagsetKind ParseTagsetKind(std::string_view name);

struct Label {
  std::string abbrev;  // e.g. "N", "PG", "TM-AT"
  std::string name;    // e.g. "noun"
};

/// An ordered category inventory. The order defines vector indices.
class Tagset {
 public:
  Tagset(TagsetKind kind, std::vector<Label> labels);

  TagsetKind kind() const { return kind_; }
  std::size_t size() const { return labels_.size(); }
  const Label& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<Label>& labels() const { return labels_; }

  /// Index of a label by abbreviation (exact) or full name.
  std::optional<std::size_t> Find(std::string_view abbrev_or_name) const;
  std::size_t Index(std::string_view abbrev_or_name) const;  // throws if absent

  /// Reads "ABBREV [full name]" per line, '#' comments allowed.
  static Tagset Parse(TagsetKind kind, std::string_view text);
  static Tagset Load(TagsetKind kind, const std::string& path);
  std::string Serialize() const;

  // Default inventories of the meeting domain: 13, 8, 20 and 17 labels.
  static const Tagset& BasicSyntactic();
  static const Tagset& AbstractSyntactic();
  static const Tagset& BasicSemantic();
  static const Tagset& AbstractSemantic();

 private:
  TagsetKind kind_;
  std::vector<Label> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using TagsetPtr = std::shared_ptr<const Tagset>;

/// Activation vector over one tagset; every entry in [0, 1].
class CategoryVector {
 public:
  CategoryVector() = default;
  CategoryVector(TagsetPtr tagset, std::vector<double> activations);

  static CategoryVector Zeros(TagsetPtr tagset);
  static CategoryVector OneHot(TagsetPtr tagset, std::size_t index);
  static CategoryVector Uniform(TagsetPtr tagset, double value);

  const TagsetPtr& tagset() const { return tagset_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  void Set(std::size_t i, double v);

  /// Index of the largest activation; ties go to the lowest index.
  std::size_t Argmax() const;
  const Label& Best() const { return tagset_->label(Argmax()); }

  double Sum() const;

 private:
  TagsetPtr tagset_;
  std::vector<double> values_;
};

/// Lowest-index argmax over a plain span.
std::size_t ArgmaxIndex(std::span<const double> values);

/// The four inventories an analysis works with.
struct TagsetBundle {
  TagsetPtr basic_syn;
  TagsetPtr abstract_syn;
  TagsetPtr basic_sem;
  TagsetPtr abstract_sem;

  static TagsetBundle Defaults();
  /// Loads "<dir>/basic-syntactic.txt" and the three siblings.
  static TagsetBundle LoadDir(const std::string& dir);
  void SaveDir(const std::string& dir) const;
};

}  // namespace flatsla

#endif  // FLATSLA_TAGSET_HPP_
