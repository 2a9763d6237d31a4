// src/models.cpp

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


#include "flatsla/models.hpp"

#include <filesystem>

#include "flatsla/base.hpp"

namespace flatsla {

std::string_view NetName(NetId id) {
  switch (id) {
    case NetId::kBasSynDis: return "bas-syn-dis";
    case NetId::kBasSemDis: return "bas-sem-dis";
    case NetId::kAbsSynCat: return "abs-syn-cat";
    case NetId::kAbsSemCat: return "abs-sem-cat";
    case NetId::kPhraseStart: return "phrase-start";
    case NetId::kBasSynPre: return "bas-syn-pre";
    case NetId::kBasSemPre: return "bas-sem-pre";
    case NetId::kBasSynEq: return "bas-syn-eq";
    case NetId::kBasSemEq: return "bas-sem-eq";
    case NetId::kAbsSynEq: return "abs-syn-eq";
    case NetId::kAbsSemEq: return "abs-sem-eq";
    case NetId::kWordError: return "word-error";
    case NetId::kPhraseError: return "phrase-error";
  }
  return "unknown";
}

NetId ParseNetId(std::string_view name) {
  for (NetId id : kAllNets) {
    if (NetName(id) == name) return id;
  }
  Fail("unknown network '", std::string(name), "'");
}

NetworkInfo InfoFor(NetId id, const TagsetBundle& tags) {
  auto n = [](const TagsetPtr& t) { return std::string(TagsetKindName(t->kind())); };
  NetworkInfo info;
  info.name = std::string(NetName(id));
  switch (id) {
    case NetId::kBasSynDis:
    case NetId::kBasSynPre:
      info.input_tagset = info.output_tagset = n(tags.basic_syn);
      break;
    case NetId::kBasSemDis:
    case NetId::kBasSemPre:
      info.input_tagset = info.output_tagset = n(tags.basic_sem);
      break;
    case NetId::kAbsSynCat:
      info.input_tagset = n(tags.basic_syn);
      info.output_tagset = n(tags.abstract_syn);
      break;
    case NetId::kAbsSemCat:
      info.input_tagset = n(tags.basic_sem);
      info.output_tagset = n(tags.abstract_sem);
      break;
    case NetId::kPhraseStart:
    case NetId::kBasSynEq:
      info.input_tagset = n(tags.basic_syn);
      break;
    case NetId::kBasSemEq: info.input_tagset = n(tags.basic_sem); break;
    case NetId::kAbsSynEq: info.input_tagset = n(tags.abstract_syn); break;
    case NetId::kAbsSemEq: info.input_tagset = n(tags.abstract_sem); break;
    case NetId::kWordError:
    case NetId::kPhraseError:
      break;
  }
  return info;
}

NetworkSpec ShapeFor(NetId id, const TagsetBundle& tags, std::size_t hidden, std::uint64_t seed) {
  const std::size_t bs = tags.basic_syn->size(), as = tags.abstract_syn->size();
  const std::size_t bm = tags.basic_sem->size(), am = tags.abstract_sem->size();
  NetworkSpec s;
  s.hidden = hidden;
  s.seed = seed;
  s.recurrent = true;
  s.output = 2;
  switch (id) {
    case NetId::kBasSynDis: s.input = bs; s.output = bs; break;
    case NetId::kBasSemDis: s.input = bm; s.output = bm; break;
    case NetId::kAbsSynCat: s.input = bs; s.output = as; break;
    case NetId::kAbsSemCat: s.input = bm; s.output = am; break;
    case NetId::kPhraseStart: s.input = bs; break;
    case NetId::kBasSynPre: s.input = bs; s.output = bs; break;
    case NetId::kBasSemPre: s.input = bm; s.output = bm; break;
    case NetId::kBasSynEq: s.input = 2 * bs; s.recurrent = false; break;
    case NetId::kBasSemEq: s.input = 2 * bm; s.recurrent = false; break;
    case NetId::kAbsSynEq: s.input = 2 * as; s.recurrent = false; break;
    case NetId::kAbsSemEq: s.input = 2 * am; s.recurrent = false; break;
    case NetId::kWordError:
    case NetId::kPhraseError:
      s.input = 3;
      s.recurrent = false;
      break;
  }
  return s;
}

const Network& ModelSet::net(NetId id) const {
  const auto& p = nets[static_cast<std::size_t>(id)];
  if (!p) Fail("network ", NetName(id), " is not loaded");
  return *p;
}

bool ModelSet::complete() const {
  for (const auto& p : nets) {
    if (!p) return false;
  }
  return lexicon != nullptr;
}

ModelSet ModelSet::WithLexicon(Lexicon lex) const {
  ModelSet m = *this;
  m.lexicon = std::make_shared<const Lexicon>(std::move(lex));
  return m;
}

ModelSet ModelSet::Random(TagsetBundle tags, Lexicon lex, std::uint64_t seed, std::size_t hidden) {
  ModelSet m;
  m.tags = std::move(tags);
  m.lexicon = std::make_shared<const Lexicon>(std::move(lex));
  for (NetId id : kAllNets) {
    Network n(ShapeFor(id, m.tags, hidden, DeriveSeed(seed, static_cast<std::uint64_t>(id))));
    n.set_info(InfoFor(id, m.tags));
    m.nets[static_cast<std::size_t>(id)] = std::make_shared<const Network>(std::move(n));
  }
  return m;
}

std::string ModelPath(const std::string& dir, NetId id) { return dir + "/" + std::string(NetName(id)) + ".net"; }

void ModelSet::SaveNets(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  for (NetId id : kAllNets) net(id).SaveFile(ModelPath(dir, id));
}

ModelSet ModelSet::Load(const std::string& dir, TagsetBundle tags, Lexicon lex) {
  ModelSet m;
  m.tags = std::move(tags);
  m.lexicon = std::make_shared<const Lexicon>(std::move(lex));
  for (NetId id : kAllNets) {
    Network n = Network::LoadFile(ModelPath(dir, id));
    const NetworkSpec want = ShapeFor(id, m.tags, n.spec().hidden, 0);
    if (!n.spec().SameShape(want)) {
      Fail(ModelPath(dir, id), ": shape ", n.spec().input, "-", n.spec().hidden, "-", n.spec().output,
           " does not fit the tagsets (expected input ", want.input, ", output ", want.output, ")");
    }
    m.nets[static_cast<std::size_t>(id)] = std::make_shared<const Network>(std::move(n));
  }
  return m;
}

}  // namespace flatsla
