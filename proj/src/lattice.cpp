// src/lattice.cpp

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


#include "flatsla/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flatsla/base.hpp"

namespace flatsla {

void WordHypothesis::Validate() const {
  if (word.empty()) Fail("hypothesis at ", start, "-", end, " has an empty word");
  if (start < 0) Fail("hypothesis '", word, "' starts at negative time ", start);
  if (start > end) Fail("hypothesis '", word, "' starts at ", start, " after its end ", end);
  if (!(acoustic > 0.0) || !std::isfinite(acoustic)) {
    Fail("hypothesis '", word, "' has acoustic value ", acoustic, ", expected > 0");
  }
}

WordGraph::WordGraph(std::vector<WordHypothesis> hyps, int max_gap) : hyps_(std::move(hyps)), max_gap_(max_gap) {
  if (max_gap < 1) Fail("max gap ", max_gap, " must be at least 1");
  for (const auto& h : hyps_) h.Validate();
  std::stable_sort(hyps_.begin(), hyps_.end(),
                   [](const WordHypothesis& a, const WordHypothesis& b) { return a.end < b.end; });
  succ_.assign(hyps_.size(), {});
  pred_.assign(hyps_.size(), {});
  // Predecessors of j end in [start - max_gap, start - 1]; ends are sorted.
  for (std::size_t j = 0; j < hyps_.size(); ++j) {
    const int lo = hyps_[j].start - max_gap_;
    auto it = std::lower_bound(hyps_.begin(), hyps_.end(), lo,
                               [](const WordHypothesis& h, int t) { return h.end < t; });
    for (; it != hyps_.end() && it->end < hyps_[j].start; ++it) {
      const auto i = static_cast<std::size_t>(it - hyps_.begin());
      pred_[j].push_back(i);
      succ_[i].push_back(j);
    }
  }
}

std::size_t WordGraph::EdgeCount() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

WordGraph WordGraph::Parse(std::string_view text, int max_gap) {
  std::vector<WordHypothesis> hyps;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto f = SplitWhitespace(t);
    // A field starting with '#' begins a trailing comment.
    auto c = std::find_if(f.begin(), f.end(), [](const std::string& x) { return x.front() == '#'; });
    f.erase(c, f.end());
    if (f.size() != 4) Fail("lattice line ", lineno, ": expected `start_cs end_cs word acoustic`, got ", f.size(), " fields");
    WordHypothesis h;
    try {
      h.start = static_cast<int>(ParseInt(f[0], "start time"));
      h.end = static_cast<int>(ParseInt(f[1], "end time"));
      h.word = f[2];
      h.acoustic = ParseDouble(f[3], "acoustic value");
      h.Validate();
    } catch (const Error& e) {
      Fail("lattice line ", lineno, ": ", e.what());
    }
    if (!hyps.empty() && h.end < hyps.back().end) {
      Fail("lattice line ", lineno, ": end time ", h.end, " precedes the previous end time ", hyps.back().end);
    }
    hyps.push_back(std::move(h));
  }
  return WordGraph(std::move(hyps), max_gap);
}

WordGraph WordGraph::Load(const std::string& path, int max_gap) {
  std::ifstream in(path);
  if (!in) Fail("cannot open lattice file ", path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Parse(ss.str(), max_gap);
  } catch (const Error& e) {
    Fail(path, ": ", e.what());
  }
}

std::string WordGraph::Serialize() const {
  std::string out = "# start_cs end_cs word acoustic\n";
  for (const auto& h : hyps_) {
    out += std::to_string(h.start) + " " + std::to_string(h.end) + " " + h.word + " " + FormatDouble(h.acoustic) + "\n";
  }
  return out;
}

WordGraph NormalizeAcoustic(const WordGraph& graph) {
  std::vector<WordHypothesis> out = graph.hypotheses();
  const auto& in = graph.hypotheses();
  for (std::size_t i = 0; i < in.size(); ++i) {
    double best = in[i].acoustic;
    for (const auto& o : in) {
      if (o.start <= in[i].end && in[i].start <= o.end) best = std::max(best, o.acoustic);
    }
    out[i].acoustic = in[i].acoustic / best;
  }
  return WordGraph(std::move(out), graph.max_gap());
}

WordGraph FixtureLattice() {
  // The three "ich" values are those of the recognizer output quoted for this
  // sentence; the rest are made up so the desired words lead locally.
  return WordGraph({{0, 20, "Ähm", 3.1e-02},
                    {21, 43, "am", 2.0e-02},
                    {21, 30, "ich", 1.0e-02},
                    {31, 43, "am", 1.5e-02},
                    {44, 70, "sechsten", 2.2e-02},
                    {71, 100, "April", 2.6e-02},
                    {101, 122, "bin", 1.5e-02},
                    {101, 122, "wenn", 1.2e-02},
                    {123, 130, "ich", 1.178415e-02},
                    {123, 137, "ich", 2.463924e-03},
                    {131, 137, "ich", 1.813340e-02},
                    {138, 170, "leider", 1.9e-02},
                    {171, 200, "außer", 2.1e-02},
                    {201, 240, "Hause", 2.4e-02}});
}

std::vector<std::string> FixtureDesiredWords() {
  return {"Ähm", "am", "sechsten", "April", "bin", "ich", "leider", "außer", "Hause"};
}

}  // namespace flatsla
