// tools/flatsla.cpp

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


#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flatsla/base.hpp"
#include "flatsla/corpus.hpp"
#include "flatsla/datasets.hpp"
#include "flatsla/decoder.hpp"
#include "flatsla/eval.hpp"
#include "flatsla/ngram.hpp"

namespace fs = std::filesystem;
using namespace flatsla;

namespace {

struct Common {
  std::uint64_t seed = 42;
  std::string out = "out";
  std::string tagsets;  // directory; built-in inventories when empty
  std::string lexicon;  // file; generator lexicon when empty
  std::string models;
  std::string corpus;   // file; generated from the seed when empty
  double train_fraction = 1.0 / 3.0;
  CorrectionConfig correction;
};

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail("cannot write ", path.string());
  out << text;
  if (!out) Fail("error writing ", path.string());
}

TagsetBundle LoadTags(const Common& c) { return c.tagsets.empty() ? TagsetBundle::Defaults() : TagsetBundle::LoadDir(c.tagsets); }

Lexicon LoadLexicon(const Common& c, const TagsetBundle& tags) {
  return c.lexicon.empty() ? GeneratorLexicon(tags) : Lexicon::Load(c.lexicon, tags.basic_syn, tags.basic_sem);
}

Corpus LoadCorpus(const Common& c, const TagsetBundle& tags) {
  Corpus corpus;
  if (c.corpus.empty()) {
    GeneratorConfig g;
    g.seed = c.seed;
    corpus = Generate(g);
  } else {
    corpus = Corpus::Load(c.corpus);
  }
  corpus.Validate(tags);
  return corpus;
}

CorpusSplit Split(const Common& c, const Corpus& corpus) {
  SplitSpec s;
  s.train_fraction = c.train_fraction;
  s.seed = c.seed;
  return SplitCorpus(corpus, s);
}

ModelSet LoadModels(const Common& c) {
  if (c.models.empty()) Fail("--models is required");
  TagsetBundle tags = LoadTags(c);
  return ModelSet::Load(c.models, tags, LoadLexicon(c, tags));
}

void Note(const std::string& s) { std::cerr << s << "\n"; }

void AddModelInputs(CLI::App* cmd, Common& c, bool need_models) {
  cmd->add_option("--tagsets", c.tagsets, "Directory with the four tagset files")->check(CLI::ExistingDirectory);
  cmd->add_option("--lexicon", c.lexicon, "Lexicon file")->check(CLI::ExistingFile);
  if (need_models) cmd->add_option("--models", c.models, "Directory with trained networks")->required()->check(CLI::ExistingDirectory);
}

void AddCorpusInputs(CLI::App* cmd, Common& c) {
  cmd->add_option("--corpus", c.corpus, "Gold corpus file (default: generated from --seed)")->check(CLI::ExistingFile);
  cmd->add_option("--train-fraction", c.train_fraction, "Share of turns used for training")->check(CLI::Range(0.0, 1.0));
}

void AddThresholds(CLI::App* cmd, Common& c) {
  cmd->add_option("--boundary-threshold", c.correction.boundary_threshold, "Phrase-start threshold");
  cmd->add_option("--word-threshold", c.correction.word_threshold, "Word repair threshold");
  cmd->add_option("--phrase-threshold", c.correction.phrase_threshold, "Phrase repair threshold");
}

std::vector<std::vector<std::string>> ReadUtterances(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open ", path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto words = SplitWhitespace(line);
    if (!words.empty() && words.front().rfind("#", 0) != 0) out.push_back(std::move(words));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat syntactic/semantic analysis of word hypothesis lattices"};
  app.set_config("--config", "", "INI file with option values; command-line flags override it");
  app.require_subcommand(1);
  app.allow_windows_style_options(false);
  Common c;
  app.add_option("--seed", c.seed, "Seed for generation, splitting, training and sampling")->capture_default_str();
  app.add_option("--out", c.out, "Output directory")->capture_default_str();

  // gen-corpus
  GeneratorConfig gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate the synthetic corpus, its lexicon and tagsets");
  gen_cmd->add_option("--turns", gen.turns, "Minimum number of dialog turns")->capture_default_str();
  gen_cmd->add_option("--min-tokens", gen.min_tokens, "Minimum number of tokens")->capture_default_str();
  gen_cmd->add_option("--interjection-rate", gen.interjection_rate, "Per utterance")->capture_default_str();
  gen_cmd->add_option("--pause-rate", gen.pause_rate, "Per utterance")->capture_default_str();
  gen_cmd->add_option("--repetition-rate", gen.repetition_rate, "Per fluent token")->capture_default_str();
  gen_cmd->add_option("--correction-rate", gen.correction_rate, "Per substitutable token")->capture_default_str();
  gen_cmd->add_option("--phrase-repair-rate", gen.phrase_repair_rate, "Per object or time phrase")->capture_default_str();

  // train
  TrainAllConfig tc;
  bool force = false;
  auto* train_cmd = app.add_subcommand("train", "Train every network on the training part of the corpus");
  AddModelInputs(train_cmd, c, false);
  AddCorpusInputs(train_cmd, c);
  train_cmd->add_option("--epochs", tc.train.epochs, "Training epochs")->capture_default_str();
  train_cmd->add_option("--learning-rate", tc.train.learning_rate, "Learning rate")->capture_default_str();
  train_cmd->add_option("--hidden", tc.hidden, "Hidden units")->capture_default_str();
  train_cmd->add_option("--bptt", tc.train.bptt_steps, "Steps of backprop through the context layer")->capture_default_str();
  train_cmd->add_option("--unknown-rate", tc.unknown_rate, "Share of training tokens presented as unknown words")
      ->capture_default_str();
  train_cmd->add_flag("--force", force, "Retrain networks whose model file already exists");

  // tag
  std::string tag_input;
  auto* tag_cmd = app.add_subcommand("tag", "Tag plain utterances, one per line");
  AddModelInputs(tag_cmd, c, true);
  AddThresholds(tag_cmd, c);
  tag_cmd->add_option("--input", tag_input, "Text file, one whitespace-separated utterance per line")
      ->required()
      ->check(CLI::ExistingFile);

  // decode
  DecoderConfig dc;
  std::string lattice;
  std::size_t top = 10;
  bool snapshots = false, no_norm = false, no_syn = false, no_sem = false, unlimited = false;
  auto* dec_cmd = app.add_subcommand("decode", "Decode a word lattice into ranked, tagged sequences");
  AddModelInputs(dec_cmd, c, true);
  AddThresholds(dec_cmd, c);
  dec_cmd->add_option("--lattice", lattice, "Lattice file: start_cs end_cs word acoustic")->required()->check(CLI::ExistingFile);
  dec_cmd->add_option("--beam", dc.beam, "Sequences kept per frontier end time")->capture_default_str();
  dec_cmd->add_flag("--unlimited-beam", unlimited, "Disable beam pruning");
  dec_cmd->add_option("--max-gap", dc.max_gap, "Largest gap in centiseconds between connected hypotheses")
      ->capture_default_str();
  dec_cmd->add_option("--top", top, "Sequences written to the ranking")->capture_default_str();
  dec_cmd->add_flag("--snapshots", snapshots, "Write the current ranking after every hypothesis");
  dec_cmd->add_flag("--no-normalize", no_norm, "Use raw acoustic values");
  dec_cmd->add_flag("--no-syntax", no_syn, "Leave syntactic plausibility out of the score");
  dec_cmd->add_flag("--no-semantics", no_sem, "Leave semantic plausibility out of the score");

  // eval
  NoisyLatticeConfig nl;
  auto* eval_cmd = app.add_subcommand("eval", "Per-network, overall and lattice decoding accuracy on the test part");
  AddModelInputs(eval_cmd, c, true);
  AddCorpusInputs(eval_cmd, c);
  AddThresholds(eval_cmd, c);
  eval_cmd->add_option("--lattices", nl.lattices, "Noisy lattices for the decoding experiment")->capture_default_str();
  eval_cmd->add_option("--distractors", nl.distractors, "Competing hypotheses per word")->capture_default_str();
  eval_cmd->add_option("--correct-low", nl.correct_low, "Lower acoustic bound of the spoken word")->capture_default_str();
  eval_cmd->add_option("--distractor-low", nl.distractor_low, "Lower acoustic bound of distractors")->capture_default_str();
  eval_cmd->add_option("--beam", nl.beam, "Beam width for the decoding experiment")->capture_default_str();

  // ablate
  std::vector<double> fractions = {0.05, 0.10};
  std::vector<std::uint64_t> ablation_seeds = {1, 2, 3, 4, 5};
  auto* abl_cmd = app.add_subcommand("ablate", "Overall accuracy with lexicon entries removed");
  AddModelInputs(abl_cmd, c, true);
  AddCorpusInputs(abl_cmd, c);
  AddThresholds(abl_cmd, c);
  abl_cmd->add_option("--fractions", fractions, "Shares of lexicon entries to remove")->delimiter(',')->capture_default_str();
  abl_cmd->add_option("--ablation-seeds", ablation_seeds, "Seeds of the removed sets")->delimiter(',')->capture_default_str();

  // ngram-compare
  LagTaskConfig lag;
  int ng_epochs = 300, ng_bptt = 4;
  double ng_lr = 0.1, alpha = 0.1;
  std::size_t ng_hidden = 14;
  auto* ng_cmd = app.add_subcommand("ngram-compare", "Exclusion accuracy of an SRN and 1- to 5-grams on the lag task");
  ng_cmd->add_option("--categories", lag.categories, "Alphabet size")->capture_default_str();
  ng_cmd->add_option("--lag", lag.lag, "Distance of the dependency")->capture_default_str();
  ng_cmd->add_option("--fidelity", lag.fidelity, "Probability that the dependency holds")->capture_default_str();
  ng_cmd->add_option("--length", lag.length, "Sequence length")->capture_default_str();
  ng_cmd->add_option("--train-sequences", lag.train_sequences, "Training sequences")->capture_default_str();
  ng_cmd->add_option("--test-sequences", lag.test_sequences, "Test sequences")->capture_default_str();
  ng_cmd->add_option("--alpha", alpha, "Additive smoothing constant")->capture_default_str();
  ng_cmd->add_option("--hidden", ng_hidden, "SRN hidden units")->capture_default_str();
  ng_cmd->add_option("--epochs", ng_epochs, "SRN epochs")->capture_default_str();
  ng_cmd->add_option("--learning-rate", ng_lr, "SRN learning rate")->capture_default_str();
  ng_cmd->add_option("--bptt", ng_bptt, "SRN backprop depth")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out(c.out);
    fs::create_directories(out);

    if (*gen_cmd) {
      gen.seed = c.seed;
      const TagsetBundle tags = TagsetBundle::Defaults();
      const Corpus corpus = Generate(gen);
      corpus.Validate(tags);
      WriteFile(out / "corpus.txt", corpus.Serialize());
      WriteFile(out / "lexicon.txt", GeneratorLexicon(tags).Serialize());
      tags.SaveDir((out / "tagsets").string());
      Note("wrote " + std::to_string(corpus.turns.size()) + " turns, " + std::to_string(corpus.UtteranceCount()) +
           " utterances, " + std::to_string(corpus.TokenCount()) + " tokens");
    } else if (*train_cmd) {
      const TagsetBundle tags = LoadTags(c);
      const Lexicon lex = LoadLexicon(c, tags);
      const CorpusSplit split = Split(c, LoadCorpus(c, tags));
      tc.seed = c.seed;
      const fs::path dir = out / "models";
      fs::create_directories(dir);
      auto existing = [&](NetId id) -> NetworkPtr {
        const std::string path = ModelPath(dir.string(), id);
        if (force || !fs::exists(path)) return nullptr;
        const NetworkSpec shape = ShapeFor(id, tags, tc.hidden, 0);
        Note("keeping " + path);
        return std::make_shared<const Network>(Network::LoadFile(path, &shape));
      };
      std::vector<NetworkReport> reports;
      const ModelSet models = TrainAll(tags, lex, split.train, split.test, tc, &reports, existing);
      models.SaveNets(dir.string());
      std::string curves = "network,epoch,mse\n";
      for (const auto& r : reports) {
        for (std::size_t e = 0; e < r.epoch_mse.size(); ++e) {
          curves += std::string(NetName(r.id)) + "," + std::to_string(e + 1) + "," + FormatFixed(r.epoch_mse[e], 8) + "\n";
        }
      }
      WriteFile(out / "training-report.csv", NetworkAccuracyCsv(reports));
      WriteFile(out / "training-curves.csv", curves);
    } else if (*tag_cmd) {
      const ModelSet models = LoadModels(c);
      std::string text;
      for (const auto& words : ReadUtterances(tag_input)) {
        AnalyzedSequence a = AnalyzeWords(models, words, c.correction);
        text += FormatTagged(a.tokens, c.correction.boundary_threshold) + "\n";
      }
      WriteFile(out / "tagged.txt", text);
    } else if (*dec_cmd) {
      const ModelSet models = LoadModels(c);
      dc.correction = c.correction;
      if (unlimited) dc.beam = kUnlimitedBeam;
      dc.normalize_acoustic = !no_norm;
      dc.scoring = {!no_syn, !no_sem};
      const WordGraph graph = WordGraph::Load(lattice, dc.max_gap);
      std::function<void(std::size_t, const WordHypothesis&, const Decoder&)> hook;
      if (snapshots) {
        fs::create_directories(out / "snapshots");
        hook = [&](std::size_t step, const WordHypothesis&, const Decoder& d) {
          char name[32];
          std::snprintf(name, sizeof name, "step-%04zu.json", step);
          WriteFile(out / "snapshots" / name, RankingToJson(d.Best(top)));
        };
      }
      const auto ranking = DecodeGraph(models, graph, dc, top, hook);
      WriteFile(out / "ranking.json", RankingToJson(ranking));
      WriteFile(out / "ranking.csv", RankingToCsv(ranking));
      Note(std::to_string(ranking.size()) + " sequences");
    } else if (*eval_cmd) {
      const ModelSet models = LoadModels(c);
      const CorpusSplit split = Split(c, LoadCorpus(c, models.tags));
      const TrainingSets sets = ExtractTrainingSets(split.test, *models.lexicon, models.tags, DeriveSeed(c.seed, 101));
      std::string acc = "network,test_patterns,test_accuracy\n";
      for (NetId id : kAllNets) {
        acc += std::string(NetName(id)) + "," + std::to_string(PatternCount(sets[id])) + "," +
               FormatFixed(sets[id].empty() ? 0.0 : EvalNetwork(models.net(id), sets[id]), 6) + "\n";
      }
      WriteFile(out / "network-accuracy.csv", acc);
      WriteFile(out / "overall.csv", OverallToCsv(EvalOverall(models, split.test, c.correction)));
      nl.seed = DeriveSeed(c.seed, 400);
      const auto lattices = MakeNoisyLattices(split.test, *models.lexicon, nl);
      WriteFile(out / "decoding.csv", DecodingToCsv(DecodingExperiment(models, lattices, nl.beam)));
    } else if (*abl_cmd) {
      const ModelSet models = LoadModels(c);
      const CorpusSplit split = Split(c, LoadCorpus(c, models.tags));
      const auto rows = AblationExperiment(models, split.test, fractions, ablation_seeds, c.correction);
      WriteFile(out / "ablation.csv", AblationToCsv(rows));
      std::string summary = "fraction,metric,mean_drop_pp,failures\n";
      for (double f : fractions) {
        double syn = 0.0, sem = 0.0;
        std::size_t n = 0, failures = 0;
        for (const auto& r : rows) {
          if (r.fraction != f || r.seed == 0) continue;
          syn += r.syn_drop;
          sem += r.sem_drop;
          failures += r.failures;
          ++n;
        }
        if (n == 0) continue;
        summary += FormatFixed(f, 4) + ",syntactic," + FormatFixed(syn / static_cast<double>(n), 4) + "," +
                   std::to_string(failures) + "\n";
        summary += FormatFixed(f, 4) + ",semantic," + FormatFixed(sem / static_cast<double>(n), 4) + "," +
                   std::to_string(failures) + "\n";
      }
      WriteFile(out / "ablation-summary.csv", summary);
    } else if (*ng_cmd) {
      lag.seed = c.seed;
      const LagTask task = MakeLagTask(lag);
      std::vector<CurveRow> rows;
      NetworkSpec spec{lag.categories, ng_hidden, lag.categories, true, DeriveSeed(c.seed, 500)};
      TrainConfig t;
      t.epochs = ng_epochs;
      t.learning_rate = ng_lr;
      t.bptt_steps = ng_bptt;
      t.seed = DeriveSeed(c.seed, 501);
      const Network srn = Train(spec, ToPatterns(task.train, lag.categories), t).network;
      SrnPredictor sp(srn);
      const auto srn_curve = ExclusionCurve(sp, task.test);
      for (std::size_t k = 0; k < srn_curve.size(); ++k) rows.push_back({"srn", k, srn_curve[k]});
      for (int n = 1; n <= NgramModel::kMaxOrder; ++n) {
        const NgramModel m = NgramModel::Fit(task.train, n, lag.categories, alpha);
        NgramPredictor np(m);
        const auto curve = ExclusionCurve(np, task.test);
        for (std::size_t k = 0; k < curve.size(); ++k) rows.push_back({std::to_string(n) + "-gram", k, curve[k]});
      }
      WriteFile(out / "ngram-curves.csv", CurvesToCsv(rows));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
