// src/decoder.cpp

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


#include "flatsla/decoder.hpp"

#include <algorithm>

#include "flatsla/base.hpp"
#include "json.hpp"

namespace flatsla {

void DecoderConfig::Validate() const {
  if (beam < 1) Fail("beam width must be at least 1");
  if (max_gap < 1) Fail("max gap ", max_gap, " must be at least 1");
  correction.Validate();
}

std::vector<std::string> DecodedSequence::Words() const {
  std::vector<std::string> w;
  for (const auto& h : hyps) w.push_back(h.word);
  return w;
}

std::vector<std::string> DecodedSequence::CorrectedWords() const {
  std::vector<std::string> w;
  for (const auto& t : tokens) {
    if (!t.deleted) w.push_back(t.word);
  }
  return w;
}

Decoder::Decoder(const ModelSet& models, DecoderConfig cfg) : models_(&models), cfg_(std::move(cfg)) {
  cfg_.Validate();
  if (!models.complete()) Fail("decoder needs a complete model set");
}

NodePtr Decoder::Extend(const NodePtr& parent, const WordHypothesis& h) {
  IncrementalAnalyzer an = parent ? parent->analyzer : IncrementalAnalyzer(*models_, cfg_.scoring);
  auto step = an.Next(h.word);
  RunningScore score = parent ? parent->score : RunningScore{};
  score.Add(h.acoustic, step.syntactic, step.semantic);
  return std::make_shared<const SequenceNode>(SequenceNode{h, parent, std::move(an), std::move(step.token),
                                                           step.syntactic, step.semantic, score, next_id_++,
                                                           parent ? parent->length + 1 : 1});
}

void Decoder::Advance(const WordHypothesis& h) {
  if (finished_) Fail("decoder already finished");
  h.Validate();
  if (h.end < last_end_) {
    Fail("hypothesis '", h.word, "' ending at ", h.end, " arrived after one ending at ", last_end_,
         "; input must be sorted by end time");
  }
  const int lo = h.start - cfg_.max_gap;
  std::vector<Entry> fresh;
  for (auto it = active_.lower_bound(lo); it != active_.end() && it->first < h.start; ++it) {
    for (Entry& e : it->second) {
      fresh.push_back({Extend(e.node, h)});
      e.extended = true;
    }
  }
  auto pred = seen_ends_.lower_bound(lo);
  if (pred == seen_ends_.end() || *pred >= h.start) fresh.push_back({Extend(nullptr, h)});

  auto& slot = active_[h.end];
  for (Entry& e : fresh) slot.push_back(std::move(e));
  seen_ends_.insert(h.end);
  last_end_ = h.end;
  BeamPrune(h.end);
}

void Decoder::BeamPrune(int frontier) {
  auto it = active_.find(frontier);
  if (it == active_.end() || it->second.size() <= cfg_.beam) return;
  auto& v = it->second;
  std::stable_sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
    const double sa = a.node->score.combined(), sb = b.node->score.combined();
    if (sa != sb) return sa > sb;
    return a.node->id < b.node->id;
  });
  v.resize(cfg_.beam);
}

void Decoder::PruneDeadEnds(int clock) {
  while (!active_.empty() && active_.begin()->first + static_cast<long long>(cfg_.max_gap) < clock) {
    active_.erase(active_.begin());
  }
}

void Decoder::Finish() {
  if (finished_) return;
  finished_ = true;
  if (seen_ends_.empty()) return;
  PruneDeadEnds(last_end_ + 1);
  for (auto it = active_.begin(); it != active_.end();) {
    auto& v = it->second;
    std::erase_if(v, [](const Entry& e) { return e.extended; });
    it = v.empty() ? active_.erase(it) : std::next(it);
  }
}

std::size_t Decoder::active() const {
  std::size_t n = 0;
  for (const auto& [t, v] : active_) n += v.size();
  return n;
}

std::vector<const Decoder::Entry*> Decoder::Ranked() const {
  std::vector<const Entry*> all;
  for (const auto& [t, v] : active_) {
    for (const Entry& e : v) all.push_back(&e);
  }
  std::sort(all.begin(), all.end(), [](const Entry* a, const Entry* b) {
    const double sa = a->node->score.combined(), sb = b->node->score.combined();
    if (sa != sb) return sa > sb;
    return a->node->id < b->node->id;
  });
  return all;
}

DecodedSequence Decoder::Materialize(const NodePtr& node, const ModelSet& models, const CorrectionConfig& cfg) {
  std::vector<const SequenceNode*> chain;
  for (const SequenceNode* n = node.get(); n; n = n->parent.get()) chain.push_back(n);
  std::reverse(chain.begin(), chain.end());
  DecodedSequence d;
  d.id = node->id;
  for (const SequenceNode* n : chain) {
    d.hyps.push_back(n->hyp);
    d.tokens.push_back(n->token);
    d.score.acoustic.push_back(n->hyp.acoustic);
    d.score.syntactic.push_back(n->syntactic);
    d.score.semantic.push_back(n->semantic);
  }
  d.score.combined = node->score.combined();
  d.repairs = Corrector(models, cfg).Apply(d.tokens);
  return d;
}

std::vector<DecodedSequence> Decoder::Best(std::size_t k) const {
  std::vector<DecodedSequence> out;
  for (const Entry* e : Ranked()) {
    if (out.size() >= k) break;
    out.push_back(Materialize(e->node, *models_, cfg_.correction));
  }
  return out;
}

std::vector<DecodedSequence> DecodeGraph(
    const ModelSet& models, const WordGraph& graph, const DecoderConfig& cfg, std::size_t k,
    const std::function<void(std::size_t step, const WordHypothesis&, const Decoder&)>& on_step) {
  const WordGraph g = cfg.normalize_acoustic ? NormalizeAcoustic(graph) : graph;
  const auto& hyps = g.hypotheses();
  // Earliest start among the hypotheses still to come.
  std::vector<int> min_start(hyps.size() + 1, std::numeric_limits<int>::max());
  for (std::size_t i = hyps.size(); i-- > 0;) min_start[i] = std::min(min_start[i + 1], hyps[i].start);
  Decoder dec(models, cfg);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    dec.Advance(hyps[i]);
    if (i + 1 < hyps.size()) dec.PruneDeadEnds(min_start[i + 1]);
    if (on_step) on_step(i + 1, hyps[i], dec);
  }
  dec.Finish();
  return dec.Best(k);
}

namespace {

nlohmann::ordered_json CategoryJson(const CategoryVector& v) {
  nlohmann::ordered_json j;
  j["best"] = v.Best().abbrev;
  j["value"] = v[v.Argmax()];
  return j;
}

}  // namespace

std::string RankingToJson(const std::vector<DecodedSequence>& ranking) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    const DecodedSequence& d = ranking[r];
    nlohmann::ordered_json s;
    s["rank"] = r + 1;
    s["id"] = d.id;
    s["combined"] = d.score.combined;
    nlohmann::ordered_json toks = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      const TokenAnalysis& t = d.tokens[i];
      nlohmann::ordered_json tj;
      tj["word"] = t.word;
      tj["start"] = d.hyps[i].start;
      tj["end"] = d.hyps[i].end;
      tj["acoustic"] = d.score.acoustic[i];
      tj["syntactic"] = d.score.syntactic[i];
      tj["semantic"] = d.score.semantic[i];
      tj["syn_basic"] = CategoryJson(t.syn_basic);
      tj["syn_abstract"] = CategoryJson(t.syn_abstract);
      tj["sem_basic"] = CategoryJson(t.sem_basic);
      tj["sem_abstract"] = CategoryJson(t.sem_abstract);
      tj["phrase_start"] = t.boundary;
      tj["deleted"] = t.deleted;
      toks.push_back(std::move(tj));
    }
    s["tokens"] = std::move(toks);
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const RepairDecision& rd : d.repairs) {
      reps.push_back({{"kind", std::string(RepairKindName(rd.kind))}, {"tokens", rd.span}, {"confidence", rd.confidence}});
    }
    s["repairs"] = std::move(reps);
    out.push_back(std::move(s));
  }
  return out.dump(2) + "\n";
}

std::string RankingToCsv(const std::vector<DecodedSequence>& ranking) {
  std::string out =
      "rank,combined,position,word,start,end,acoustic,syntactic,semantic,syn_basic,syn_abstract,sem_basic,"
      "sem_abstract,phrase_start,deleted\n";
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    const DecodedSequence& d = ranking[r];
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      const TokenAnalysis& t = d.tokens[i];
      out += std::to_string(r + 1) + "," + FormatDouble(d.score.combined) + "," + std::to_string(i) + "," + t.word +
             "," + std::to_string(d.hyps[i].start) + "," + std::to_string(d.hyps[i].end) + "," +
             FormatDouble(d.score.acoustic[i]) + "," + FormatDouble(d.score.syntactic[i]) + "," +
             FormatDouble(d.score.semantic[i]) + "," + t.syn_basic.Best().abbrev + "," + t.syn_abstract.Best().abbrev +
             "," + t.sem_basic.Best().abbrev + "," + t.sem_abstract.Best().abbrev + "," + FormatDouble(t.boundary) +
             "," + (t.deleted ? "1" : "0") + "\n";
    }
  }
  return out;
}

}  // namespace flatsla
