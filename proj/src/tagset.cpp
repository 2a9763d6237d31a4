// src/tagset.cpp

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

#include "flatsla/tagset.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flatsla/base.hpp"

namespace flatsla {

std::string_view TagsetKindName(TagsetKind kind) {
  switch (kind) {
    case TagsetKind::kBasicSyntactic: return "basic-syntactic";
    case TagsetKind::kAbstractSyntactic: return "abstract-syntactic";
    case TagsetKind::kBasicSemantic: return "basic-semantic";
    case TagsetKind::kAbstractSemantic: return "abstract-semantic";
  }
  return "unknown";
}

TagsetKind ParseTagsetKind(std::string_view name) {
  for (auto k : {TagsetKind::kBasicSyntactic, TagsetKind::kAbstractSyntactic,
                 TagsetKind::kBasicSemantic, TagsetKind::kAbstractSemantic}) {
    if (TagsetKindName(k) == name) return k;
  }
  Fail("unknown tagset kind '", std::string(name), "'");
}

Tagset::Tagset(TagsetKind kind, std::vector<Label> labels)
    : kind_(kind), labels_(std::move(labels)) {
  if (labels_.empty()) Fail("tagset ", TagsetKindName(kind), " has no labels");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].abbrev.empty()) Fail("empty label in tagset ", TagsetKindName(kind));
    if (!index_.emplace(labels_[i].abbrev, i).second) {
      Fail("duplicate label '", labels_[i].abbrev, "' in tagset ", TagsetKindName(kind));
    }
  }
}

std::optional<std::size_t> Tagset::Find(std::string_view key) const {
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].name == key) return i;
  }
  return std::nullopt;
}

std::size_t Tagset::Index(std::string_view key) const {
  auto i = Find(key);
  if (!i) Fail("label '", std::string(key), "' not in tagset ", TagsetKindName(kind_));
  return *i;
}

Tagset Tagset::Parse(TagsetKind kind, std::string_view text) {
  std::vector<Label> labels;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto parts = SplitWhitespace(t);
    Label l;
    l.abbrev = parts[0];
    auto rest = Trim(t.substr(parts[0].size()));
    l.name = rest.empty() ? l.abbrev : std::string(rest);
    labels.push_back(std::move(l));
  }
  return Tagset(kind, std::move(labels));
}

Tagset Tagset::Load(TagsetKind kind, const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open tagset file ", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(kind, ss.str());
}

std::string Tagset::Serialize() const {
  std::string out = "# " + std::string(TagsetKindName(kind_)) + "\n";
  for (const auto& l : labels_) out += l.abbrev + " " + l.name + "\n";
  return out;
}

const Tagset& Tagset::BasicSyntactic() {
  static const Tagset t(TagsetKind::kBasicSyntactic,
                        {{"N", "noun"},        {"V", "verb"},        {"R", "preposition"},
                         {"U", "pronoun"},     {"M", "numeral"},     {"P", "participle"},
                         {"/", "pause"},       {"J", "adjective"},   {"A", "adverb"},
                         {"C", "conjunction"}, {"D", "determiner"},  {"I", "interjection"},
                         {"O", "other"}});
  return t;
}

const Tagset& Tagset::AbstractSyntactic() {
  static const Tagset t(TagsetKind::kAbstractSyntactic,
                        {{"VG", "verb group"},
                         {"NG", "noun group"},
                         {"AG", "adverbial group"},
                         {"PG", "prepositional group"},
                         {"CG", "conjunction group"},
                         {"MG", "modus group"},
                         {"SG", "special group"},
                         {"IG", "interjection group"}});
  return t;
}

const Tagset& Tagset::BasicSemantic() {
  static const Tagset t(TagsetKind::kBasicSemantic,
                        {{"SEL", "select"},
                         {"SUG", "suggest"},
                         {"MEET", "meet"},
                         {"UTTER", "utter"},
                         {"IS", "is"},
                         {"HAVE", "have"},
                         {"MOVE", "move"},
                         {"AUX", "aux"},
                         {"QUEST", "question"},
                         {"PHYS", "physical"},
                         {"ANIM", "animate"},
                         {"ABS", "abstract"},
                         {"HERE", "here"},
                         {"SRC", "source"},
                         {"DEST", "destination"},
                         {"LOC", "location"},
                         {"TIME", "time"},
                         {"NO", "negative evaluation"},
                         {"YES", "positive evaluation"},
                         {"NIL", "nil"}});
  return t;
}

const Tagset& Tagset::AbstractSemantic() {
  static const Tagset t(TagsetKind::kAbstractSemantic,
                        {{"ACT", "action"},
                         {"AUX", "aux-action"},
                         {"AGENT", "agent"},
                         {"OBJ", "object"},
                         {"RECIP", "recipient"},
                         {"INSTR", "instrument"},
                         {"MANNER", "manner"},
                         {"TM-AT", "time-at"},
                         {"TM-FRM", "time-from"},
                         {"TM-TO", "time-to"},
                         {"LC-AT", "loc-at"},
                         {"LC-FRM", "loc-from"},
                         {"LC-TO", "loc-to"},
                         {"CONF", "confirmation"},
                         {"NEG", "negation"},
                         {"QUEST", "question"},
                         {"MISC", "misc"}});
  return t;
}

CategoryVector::CategoryVector(TagsetPtr tagset, std::vector<double> activations)
    : tagset_(std::move(tagset)), values_(std::move(activations)) {
  if (!tagset_) Fail("category vector without tagset");
  if (values_.size() != tagset_->size()) {
    Fail("category vector over ", TagsetKindName(tagset_->kind()), " needs ", tagset_->size(),
         " activations, got ", values_.size());
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) Fail("activation ", v, " outside [0, 1]");
  }
}

CategoryVector CategoryVector::Zeros(TagsetPtr tagset) {
  std::size_t n = tagset->size();
  return CategoryVector(std::move(tagset), std::vector<double>(n, 0.0));
}

CategoryVector CategoryVector::OneHot(TagsetPtr tagset, std::size_t index) {
  std::size_t n = tagset->size();
  if (index >= n) Fail("one-hot index ", index, " out of range ", n);
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return CategoryVector(std::move(tagset), std::move(v));
}

CategoryVector CategoryVector::Uniform(TagsetPtr tagset, double value) {
  std::size_t n = tagset->size();
  return CategoryVector(std::move(tagset), std::vector<double>(n, value));
}

void CategoryVector::Set(std::size_t i, double v) {
  if (!(v >= 0.0 && v <= 1.0)) Fail("activation ", v, " outside [0, 1]");
  values_.at(i) = v;
}

std::size_t ArgmaxIndex(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t CategoryVector::Argmax() const { return ArgmaxIndex(values_); }

double CategoryVector::Sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

TagsetBundle TagsetBundle::Defaults() {
  return {std::make_shared<Tagset>(Tagset::BasicSyntactic()),
          std::make_shared<Tagset>(Tagset::AbstractSyntactic()),
          std::make_shared<Tagset>(Tagset::BasicSemantic()),
          std::make_shared<Tagset>(Tagset::AbstractSemantic())};
}

TagsetBundle TagsetBundle::LoadDir(const std::string& dir) {
  auto load = [&](TagsetKind k) {
    return std::make_shared<Tagset>(
        Tagset::Load(k, dir + "/" + std::string(TagsetKindName(k)) + ".txt"));
  };
  return {load(TagsetKind::kBasicSyntactic), load(TagsetKind::kAbstractSyntactic),
          load(TagsetKind::kBasicSemantic), load(TagsetKind::kAbstractSemantic)};
}

void TagsetBundle::SaveDir(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& t : {basic_syn, abstract_syn, basic_sem, abstract_sem}) {
    std::ofstream out(dir + "/" + std::string(TagsetKindName(t->kind())) + ".txt");
    if (!out) Fail("cannot write tagset into ", dir);
    out << t->Serialize();
  }
}

}  // namespace flatsla
