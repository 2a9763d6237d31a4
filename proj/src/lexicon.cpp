// src/lexicon.cpp

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

#include "flatsla/lexicon.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "flatsla/base.hpp"

namespace flatsla {

namespace {

void ValidateEntry(const LexiconEntry& e) {
  if (e.word.empty()) Fail("lexicon entry with empty word");
  auto check = [&](const CategoryVector& v, const char* what) {
    bool any = false;
    for (double a : v.values()) {
      if (a != 0.0 && a != 1.0) Fail("lexicon entry '", e.word, "' has non-binary ", what);
      any = any || a == 1.0;
    }
    if (!any) Fail("lexicon entry '", e.word, "' has no ", what, " category");
  };
  check(e.syn, "syntactic");
  check(e.sem, "semantic");
  if (e.is_pause) {
    if (auto i = e.syn.tagset()->Find("/"); i && e.syn[*i] != 1.0) {
      Fail("pause entry '", e.word, "' lacks the pause category");
    }
  }
  if (e.is_interjection) {
    if (auto i = e.syn.tagset()->Find("I"); i && e.syn[*i] != 1.0) {
      Fail("interjection entry '", e.word, "' lacks the interjection category");
    }
  }
}

CategoryVector MultiHot(const TagsetPtr& tagset, const std::vector<std::string>& labels) {
  auto v = CategoryVector::Zeros(tagset);
  for (const auto& l : labels) v.Set(tagset->Index(Trim(l)), 1.0);
  return v;
}

CategoryVector Normalized(const TagsetPtr& tagset, std::vector<double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  for (double& c : counts) c /= total;
  return CategoryVector(tagset, std::move(counts));
}

}  // namespace

Lexicon::Lexicon(TagsetPtr basic_syn, TagsetPtr basic_sem)
    : syn_tagset_(std::move(basic_syn)), sem_tagset_(std::move(basic_sem)) {
  default_syn_ = CategoryVector::Uniform(syn_tagset_, 1.0 / static_cast<double>(syn_tagset_->size()));
  default_sem_ = CategoryVector::Uniform(sem_tagset_, 1.0 / static_cast<double>(sem_tagset_->size()));
}

void Lexicon::Add(LexiconEntry entry) {
  entry.word = NormalizeWord(entry.word);
  if (entry.syn.tagset() != syn_tagset_ && entry.syn.tagset()->labels().size() != syn_tagset_->size()) {
    Fail("lexicon entry '", entry.word, "' uses a foreign syntactic tagset");
  }
  ValidateEntry(entry);
  std::string key = entry.word;
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

void Lexicon::Add(std::string_view word, const std::vector<std::string>& syn,
                  const std::vector<std::string>& sem, bool pause, bool interjection) {
  LexiconEntry e{std::string(word), MultiHot(syn_tagset_, syn), MultiHot(sem_tagset_, sem), pause,
                 interjection};
  Add(std::move(e));
}

const LexiconEntry* Lexicon::Find(std::string_view word) const {
  auto it = entries_.find(NormalizeWord(word));
  return it == entries_.end() ? nullptr : &it->second;
}

CategoryVector Lexicon::Present(const CategoryVector& v) const {
  if (coding_ == AmbiguityCoding::kBinary) return v;
  std::vector<double> values(v.values().begin(), v.values().end());
  return Normalized(v.tagset(), std::move(values));
}

LookupResult Lexicon::Lookup(std::string_view word) const {
  if (const auto* e = Find(word)) return {Present(e->syn), Present(e->sem), true};
  return {default_syn_, default_sem_, false};
}

std::pair<CategoryVector, CategoryVector> ComputeDefaultVectors(const Lexicon& lexicon) {
  if (lexicon.size() == 0) Fail("empty lexicon");
  std::vector<double> syn(lexicon.syn_tagset()->size(), 0.0);
  std::vector<double> sem(lexicon.sem_tagset()->size(), 0.0);
  for (const auto& [word, e] : lexicon.entries()) {
    for (std::size_t i = 0; i < syn.size(); ++i) syn[i] += e.syn[i];
    for (std::size_t i = 0; i < sem.size(); ++i) sem[i] += e.sem[i];
  }
  return {Normalized(lexicon.syn_tagset(), std::move(syn)),
          Normalized(lexicon.sem_tagset(), std::move(sem))};
}

void Lexicon::ComputeDefaults() {
  auto [syn, sem] = ComputeDefaultVectors(*this);
  default_syn_ = std::move(syn);
  default_sem_ = std::move(sem);
}

Lexicon Lexicon::Ablate(double fraction, std::uint64_t seed) const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) Fail("ablation fraction ", fraction, " outside [0, 1]");
  std::vector<std::string> words;
  words.reserve(entries_.size());
  for (const auto& [w, e] : entries_) words.push_back(w);
  const auto remove = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(words.size())));
  Rng rng(seed);
  rng.Shuffle(words);
  Lexicon out = *this;
  for (std::size_t i = 0; i < remove; ++i) out.entries_.erase(words[i]);
  if (out.size() > 0) out.ComputeDefaults();
  return out;
}

Lexicon Lexicon::Parse(std::string_view text, TagsetPtr basic_syn, TagsetPtr basic_sem) {
  Lexicon lex(std::move(basic_syn), std::move(basic_sem));
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = Split(t, '|');
    if (fields.size() < 3) Fail("lexicon line ", lineno, ": expected `word | SYN: ... | SEM: ...`");
    std::vector<std::string> syn, sem;
    bool pause = false, interjection = false, have_syn = false, have_sem = false;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      auto field = Trim(fields[f]);
      auto colon = field.find(':');
      if (colon == std::string_view::npos) Fail("lexicon line ", lineno, ": field without ':'");
      auto key = Trim(field.substr(0, colon));
      auto values = Split(Trim(field.substr(colon + 1)), ',');
      if (key == "SYN") {
        syn = values;
        have_syn = true;
      } else if (key == "SEM") {
        sem = values;
        have_sem = true;
      } else if (key == "FLAGS") {
        for (const auto& v : values) {
          auto flag = Trim(v);
          if (flag == "pause") {
            pause = true;
          } else if (flag == "interjection") {
            interjection = true;
          } else {
            Fail("lexicon line ", lineno, ": unknown flag '", std::string(flag), "'");
          }
        }
      } else {
        Fail("lexicon line ", lineno, ": unknown field '", std::string(key), "'");
      }
    }
    if (!have_syn || !have_sem) Fail("lexicon line ", lineno, ": missing SYN or SEM");
    try {
      lex.Add(Trim(fields[0]), syn, sem, pause, interjection);
    } catch (const Error& e) {
      Fail("lexicon line ", lineno, ": ", e.what());
    }
  }
  if (lex.size() > 0) lex.ComputeDefaults();
  return lex;
}

Lexicon Lexicon::Load(const std::string& path, TagsetPtr basic_syn, TagsetPtr basic_sem) {
  std::ifstream in(path);
  if (!in) Fail("cannot open lexicon file ", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str(), std::move(basic_syn), std::move(basic_sem));
}

std::string Lexicon::Serialize() const {
  std::string out = "# word | SYN: categories | SEM: categories [| FLAGS: pause,interjection]\n";
  auto join = [](const CategoryVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 1.0) continue;
      if (!s.empty()) s += ",";
      s += v.tagset()->label(i).abbrev;
    }
    return s;
  };
  for (const auto& [w, e] : entries_) {
    out += w + " | SYN: " + join(e.syn) + " | SEM: " + join(e.sem);
    if (e.is_pause || e.is_interjection) {
      out += " | FLAGS: ";
      out += e.is_pause ? (e.is_interjection ? "pause,interjection" : "pause") : "interjection";
    }
    out += "\n";
  }
  return out;
}

void Lexicon::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) Fail("cannot write lexicon file ", path);
  out << Serialize();
}

}  // namespace flatsla
