// src/datasets.cpp

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


#include "flatsla/datasets.hpp"

#include <algorithm>
#include <set>

#include "flatsla/base.hpp"
#include "flatsla/correction.hpp"

namespace flatsla {

namespace {

std::vector<double> OneHot(const TagsetPtr& t, const std::string& label) {
  std::vector<double> v(t->size(), 0.0);
  v[t->Index(label)] = 1.0;
  return v;
}

std::vector<double> Concat(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<double> kYes = {1.0, 0.0};
const std::vector<double> kNo = {0.0, 1.0};

// Keeps every pattern and cycles through the smaller class until both
// classes have the same count.
Dataset Balance(std::vector<Pattern> pos, std::vector<Pattern> neg, Rng& rng) {
  rng.Shuffle(pos);
  rng.Shuffle(neg);
  Dataset out;
  const std::size_t n = std::max(pos.size(), neg.size());
  for (const auto* cls : {&pos, &neg}) {
    if (cls->empty()) continue;
    for (std::size_t i = 0; i < n; ++i) out.push_back({(*cls)[i % cls->size()]});
  }
  return out;
}

struct GoldPhrase {
  std::vector<const GoldToken*> toks;
};

}  // namespace

std::size_t PatternCount(const Dataset& d) {
  std::size_t n = 0;
  for (const auto& s : d) n += s.size();
  return n;
}

TrainingSets ExtractTrainingSets(const Corpus& corpus, const Lexicon& lexicon, const TagsetBundle& tags,
                                 std::uint64_t seed, double unknown_rate) {
  if (!(unknown_rate >= 0.0 && unknown_rate <= 1.0)) Fail("unknown-word rate ", unknown_rate, " outside [0, 1]");
  TrainingSets ts;
  Rng unknown_rng(DeriveSeed(seed, 7));
  std::vector<Pattern> pos[4], neg[4];
  std::vector<Pattern> we_pos, we_neg, pe_pos, pe_neg;
  const NetId eq_ids[4] = {NetId::kBasSynEq, NetId::kBasSemEq, NetId::kAbsSynEq, NetId::kAbsSemEq};
  std::set<std::string> seen[4];

  for (const Utterance* up : corpus.Utterances()) {
    const Utterance& u = *up;
    PatternSequence syn_dis, sem_dis, abs_syn, abs_sem, phrase, syn_pre, sem_pre;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const GoldToken& t = u[i];
      auto lr = lexicon.Lookup(t.word);
      if (unknown_rate > 0.0 && unknown_rng.Bernoulli(unknown_rate)) lr = {lexicon.default_syn(), lexicon.default_sem(), false};
      const auto sb = OneHot(tags.basic_syn, t.syn_basic);
      const auto mb = OneHot(tags.basic_sem, t.sem_basic);
      syn_dis.push_back({{lr.syn.values().begin(), lr.syn.values().end()}, sb});
      sem_dis.push_back({{lr.sem.values().begin(), lr.sem.values().end()}, mb});
      abs_syn.push_back({sb, OneHot(tags.abstract_syn, t.syn_abstract)});
      abs_sem.push_back({mb, OneHot(tags.abstract_sem, t.sem_abstract)});
      phrase.push_back({sb, t.boundary ? kYes : kNo});
      seen[0].insert(t.syn_basic);
      seen[1].insert(t.sem_basic);
      seen[2].insert(t.syn_abstract);
      seen[3].insert(t.sem_abstract);
      if (i + 1 < u.size()) {
        const GoldToken& n = u[i + 1];
        const std::pair<const TagsetPtr*, std::pair<const std::string*, const std::string*>> levels[4] = {
            {&tags.basic_syn, {&t.syn_basic, &n.syn_basic}},
            {&tags.basic_sem, {&t.sem_basic, &n.sem_basic}},
            {&tags.abstract_syn, {&t.syn_abstract, &n.syn_abstract}},
            {&tags.abstract_sem, {&t.sem_abstract, &n.sem_abstract}}};
        for (int k = 0; k < 4; ++k) {
          const auto& [ts_ptr, labels] = levels[k];
          const bool same = *labels.first == *labels.second;
          Pattern p{Concat(OneHot(*ts_ptr, *labels.first), OneHot(*ts_ptr, *labels.second)), same ? kYes : kNo};
          (same ? pos[k] : neg[k]).push_back(std::move(p));
        }
      }
    }
    // The predictors never see pauses or interjections; the analyzer skips
    // them because the lexicon flags them before any prediction is made.
    std::vector<const GoldToken*> spoken;
    for (const auto& t : u) {
      const LexiconEntry* e = lexicon.Find(t.word);
      if (!(e && (e->is_pause || e->is_interjection))) spoken.push_back(&t);
    }
    for (std::size_t i = 0; i + 1 < spoken.size(); ++i) {
      syn_pre.push_back({OneHot(tags.basic_syn, spoken[i]->syn_basic), OneHot(tags.basic_syn, spoken[i + 1]->syn_basic)});
      sem_pre.push_back({OneHot(tags.basic_sem, spoken[i]->sem_basic), OneHot(tags.basic_sem, spoken[i + 1]->sem_basic)});
    }
    ts[NetId::kBasSynDis].push_back(std::move(syn_dis));
    ts[NetId::kBasSemDis].push_back(std::move(sem_dis));
    ts[NetId::kAbsSynCat].push_back(std::move(abs_syn));
    ts[NetId::kAbsSemCat].push_back(std::move(abs_sem));
    ts[NetId::kPhraseStart].push_back(std::move(phrase));
    if (!syn_pre.empty()) {
      ts[NetId::kBasSynPre].push_back(std::move(syn_pre));
      ts[NetId::kBasSemPre].push_back(std::move(sem_pre));
    }

    // Word repairs: consecutive tokens once pauses and interjections are out.
    std::vector<const GoldToken*> words;
    for (const auto& t : u) {
      if (t.disfluency != Disfluency::kInterjection && t.disfluency != Disfluency::kPause) words.push_back(&t);
    }
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      const GoldToken& a = *words[i];
      const GoldToken& b = *words[i + 1];
      Pattern p{{LexWordEq(a.word, b.word), a.syn_basic == b.syn_basic ? 1.0 : 0.0,
                 a.sem_basic == b.sem_basic ? 1.0 : 0.0},
                {}};
      const bool repair = a.disfluency == Disfluency::kWordRepair;
      p.target = repair ? kYes : kNo;
      (repair ? we_pos : we_neg).push_back(std::move(p));
    }

    // Phrase repairs: adjacent gold phrases once word reparanda are out too.
    std::vector<GoldPhrase> phrases;
    for (const GoldToken* t : words) {
      if (t->disfluency == Disfluency::kWordRepair) continue;
      if (phrases.empty() || t->boundary) phrases.emplace_back();
      phrases.back().toks.push_back(t);
    }
    for (std::size_t i = 0; i + 1 < phrases.size(); ++i) {
      const auto& a = phrases[i].toks;
      const auto& b = phrases[i + 1].toks;
      const std::size_t common = std::min(a.size(), b.size()), longest = std::max(a.size(), b.size());
      double syn = 0.0, sem = 0.0;
      for (std::size_t j = 0; j < common; ++j) {
        syn += a[j]->syn_abstract == b[j]->syn_abstract ? 1.0 : 0.0;
        sem += a[j]->sem_abstract == b[j]->sem_abstract ? 1.0 : 0.0;
      }
      const bool repair = a.front()->disfluency == Disfluency::kPhraseRepair;
      Pattern p{{LexWordEq(a.front()->word, b.front()->word), syn / static_cast<double>(longest),
                 sem / static_cast<double>(longest)},
                repair ? kYes : kNo};
      (repair ? pe_pos : pe_neg).push_back(std::move(p));
    }
  }

  // Reflexive positives: every category seen in the corpus paired with itself.
  const TagsetPtr* eq_tags[4] = {&tags.basic_syn, &tags.basic_sem, &tags.abstract_syn, &tags.abstract_sem};
  for (int k = 0; k < 4; ++k) {
    for (const std::string& label : seen[k]) {
      pos[k].push_back({Concat(OneHot(*eq_tags[k], label), OneHot(*eq_tags[k], label)), kYes});
    }
  }

  Rng rng(seed);
  for (int k = 0; k < 4; ++k) ts[eq_ids[k]] = Balance(std::move(pos[k]), std::move(neg[k]), rng);
  ts[NetId::kWordError] = Balance(std::move(we_pos), std::move(we_neg), rng);
  ts[NetId::kPhraseError] = Balance(std::move(pe_pos), std::move(pe_neg), rng);
  return ts;
}

double EvalNetwork(const Network& net, const Dataset& data) { return ArgmaxAccuracy(net, data); }

ModelSet TrainAll(const TagsetBundle& tags, const Lexicon& lexicon, const Corpus& train, const Corpus& test,
                  const TrainAllConfig& cfg, std::vector<NetworkReport>* report,
                  const std::function<NetworkPtr(NetId)>& existing) {
  const TrainingSets tr = ExtractTrainingSets(train, lexicon, tags, DeriveSeed(cfg.seed, 100), cfg.unknown_rate);
  const TrainingSets te = ExtractTrainingSets(test, lexicon, tags, DeriveSeed(cfg.seed, 101));
  ModelSet m;
  m.tags = tags;
  m.lexicon = std::make_shared<const Lexicon>(lexicon);
  for (NetId id : kAllNets) {
    const auto k = static_cast<std::uint64_t>(id);
    NetworkReport r;
    r.id = id;
    NetworkPtr net = existing ? existing(id) : nullptr;
    if (!net) {
      if (tr[id].empty()) Fail("no training data for ", NetName(id));
      TrainConfig tc = cfg.train;
      tc.seed = DeriveSeed(cfg.seed, 200 + k);
      auto res = Train(ShapeFor(id, tags, cfg.hidden, DeriveSeed(cfg.seed, 300 + k)), tr[id], tc, InfoFor(id, tags));
      r.epoch_mse = std::move(res.epoch_mse);
      net = std::make_shared<const Network>(std::move(res.network));
    }
    r.train_patterns = PatternCount(tr[id]);
    r.test_patterns = PatternCount(te[id]);
    r.train_accuracy = EvalNetwork(*net, tr[id]);
    r.test_accuracy = te[id].empty() ? 0.0 : EvalNetwork(*net, te[id]);
    m.nets[k] = std::move(net);
    if (report) report->push_back(std::move(r));
  }
  return m;
}

std::string NetworkAccuracyCsv(const std::vector<NetworkReport>& reports) {
  std::string out = "network,train_patterns,test_patterns,train_accuracy,test_accuracy,final_mse\n";
  for (const auto& r : reports) {
    out += std::string(NetName(r.id)) + "," + std::to_string(r.train_patterns) + "," + std::to_string(r.test_patterns) +
           "," + FormatFixed(r.train_accuracy, 6) + "," + FormatFixed(r.test_accuracy, 6) + "," +
           (r.epoch_mse.empty() ? std::string("") : FormatFixed(r.epoch_mse.back(), 8)) + "\n";
  }
  return out;
}

}  // namespace flatsla
