// src/corpus.cpp

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


#include "flatsla/corpus.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "flatsla/base.hpp"

namespace flatsla {

namespace {

struct VocabEntry {
  const char* word;
  const char* syn;  // comma-separated possibilities
  const char* sem;
  bool pause = false;
  bool interjection = false;
};

// The lexicon of the template grammar. Ambiguous entries list every reading.
const std::vector<VocabEntry>& Vocabulary() {
  static const std::vector<VocabEntry> v = {
      // pronouns
      {"ich", "U", "ANIM"}, {"wir", "U", "ANIM"}, {"Sie", "U", "ANIM"}, {"Ihnen", "U", "ANIM"},
      {"mir", "U", "ANIM"}, {"uns", "U", "ANIM"}, {"es", "U", "ABS"},
      {"meine", "V,U", "UTTER,NIL"}, {"das", "D,U", "NIL"},
      // determiners
      {"der", "D", "NIL"}, {"die", "D", "NIL"}, {"den", "D", "NIL"}, {"dem", "D", "NIL"},
      {"ein", "D", "NIL"}, {"einen", "D", "NIL"}, {"eine", "D", "NIL"}, {"kein", "D", "NO"},
      {"keine", "D", "NO"},
      // verbs
      {"dachte", "V", "UTTER"}, {"sage", "V", "UTTER"}, {"bin", "V", "IS,AUX"},
      {"ist", "V", "IS,AUX"}, {"wäre", "V", "IS"}, {"habe", "V", "HAVE,AUX"},
      {"haben", "V", "HAVE,AUX"}, {"hätte", "V", "HAVE"}, {"brauchen", "V", "HAVE"},
      {"brauche", "V", "HAVE"}, {"kann", "V", "AUX"}, {"können", "V", "AUX"},
      {"würde", "V", "AUX"}, {"muss", "V", "AUX"}, {"schlage", "V", "SUG"},
      {"passt", "V", "SUG"}, {"geht", "V", "SUG"}, {"nehme", "V", "SEL"},
      {"nehmen", "V", "SEL"}, {"wählen", "V", "SEL"}, {"sehen", "V", "MEET"},
      {"besprechen", "V", "MEET"}, {"fahre", "V", "MOVE"}, {"komme", "V", "MOVE"},
      {"fliege", "V", "MOVE"},
      // participles and particles
      {"vorgeschlagen", "P", "SUG"}, {"gesagt", "P", "UTTER"}, {"vereinbart", "P", "MEET"},
      {"verschoben", "P", "MOVE"}, {"vor", "O", "NIL"},
      // adverbs and modus words
      {"leider", "A", "NIL"}, {"noch", "A", "NIL"}, {"schon", "A", "NIL"}, {"auch", "A", "NIL"},
      {"natürlich", "A", "NIL"}, {"dann", "A", "NIL"}, {"allerdings", "A", "NIL"},
      {"da", "A,C", "HERE,NIL"}, {"ja", "A", "YES"}, {"genau", "A", "YES"},
      {"gut", "J", "YES"}, {"prima", "J", "YES"}, {"richtig", "J", "YES"},
      {"nein", "A", "NO"}, {"schlecht", "J", "NO"}, {"schade", "J", "NO"},
      {"Käse", "N", "NO"}, {"wann", "A", "QUEST"}, {"wie", "A", "QUEST"},
      // conjunctions
      {"und", "C", "NIL"}, {"aber", "C", "NIL"}, {"also", "C", "NIL"}, {"wenn", "C", "NIL"},
      // prepositions
      {"am", "R", "HERE"}, {"im", "R", "HERE"}, {"um", "R", "HERE"}, {"in", "R", "HERE"},
      {"beim", "R", "HERE"}, {"außer", "R", "HERE"}, {"von", "R", "SRC"}, {"aus", "R", "SRC"},
      {"ab", "R", "SRC"}, {"bis", "R", "DEST"}, {"nach", "R", "DEST"}, {"mit", "R", "NIL"},
      // time words
      {"März", "N", "TIME"}, {"April", "N", "TIME"}, {"Mai", "N", "TIME"}, {"Juni", "N", "TIME"},
      {"Montag", "N", "TIME"}, {"Dienstag", "N", "TIME"}, {"Mittwoch", "N", "TIME"},
      {"Donnerstag", "N", "TIME"}, {"Freitag", "N", "TIME"}, {"Woche", "N", "TIME"},
      {"Uhr", "N", "TIME,PHYS"}, {"Zeit", "N", "ABS,TIME"},
      {"ersten", "M", "TIME"}, {"zweiten", "M", "TIME"}, {"dritten", "M", "TIME"},
      {"sechsten", "M", "TIME"}, {"vierzehnten", "M", "TIME"}, {"vierzehnte", "M", "TIME"},
      {"zwei", "M", "TIME"}, {"drei", "M", "TIME"}, {"vier", "M", "TIME"}, {"acht", "M", "TIME"},
      {"neun", "M", "TIME"}, {"zehn", "M", "TIME"}, {"elf", "M", "TIME"}, {"zwölf", "M", "TIME"},
      {"vierzehn", "M", "TIME"}, {"dreißig", "M", "TIME"},
      {"nächsten", "J", "TIME"}, {"nächste", "J", "TIME"}, {"früheren", "J", "TIME"},
      {"späteren", "J", "TIME"},
      // places, things, people
      {"Hamburg", "N", "LOC"}, {"Berlin", "N", "LOC"}, {"München", "N", "LOC"},
      {"Bonn", "N", "LOC"}, {"Hause", "N", "LOC"}, {"Büro", "N", "LOC"}, {"Hotel", "N", "LOC"},
      {"Zug", "N", "PHYS"}, {"Auto", "N", "PHYS"}, {"Flugzeug", "N", "PHYS"},
      {"Termin", "N", "ABS"}, {"Treffen", "N", "ABS"}, {"Arzttermin", "N", "ABS"},
      {"Besprechung", "N", "ABS"}, {"Vorschlag", "N", "ABS"}, {"Problem", "N", "ABS"},
      {"Kollegin", "N", "ANIM"}, {"Sekretärin", "N", "ANIM"}, {"Chef", "N", "ANIM"},
      {"Zahnarzt", "N", "ANIM"},
      // disfluency material
      {"ähm", "I", "NIL", false, true}, {"äh", "I", "NIL", false, true},
      {"oh", "I", "NIL", false, true}, {"hm", "I", "NIL", false, true},
      {"<pause>", "/", "NIL", true, false},
  };
  return v;
}

struct Tok {
  std::string word, syn, sem;
};

struct Phr {
  std::vector<Tok> toks;
  std::string syn_a, sem_a;
  int kind = 0;
};

enum Kind {
  kSubj, kSubjDas, kRecip, kEs, kVerbUtter, kVerbHave, kVerbHaveAux, kVerbIs, kVerbAux,
  kVerbMeet, kVerbSel, kVerbSug, kVerbSugFin, kVerbMove, kParticle, kParticiple, kTimeAt,
  kTimeNg, kFrom, kTo, kLocAt, kLocTo, kLocFrom, kInstr, kObj, kConfA, kConfJ, kNegMg, kNegNg,
  kQuest, kAdvAg, kAdvSg, kConj, kDaAdv, kDaConj
};

using WordList = std::vector<std::string>;
const WordList kMonths = {"März", "April", "Mai", "Juni"};
const WordList kWeekdays = {"Montag", "Dienstag", "Mittwoch", "Donnerstag", "Freitag"};
const WordList kOrdinals = {"ersten", "zweiten", "dritten", "sechsten", "vierzehnten"};
const WordList kCardinals = {"zwei", "drei", "vier", "acht", "neun", "zehn", "elf", "zwölf", "vierzehn"};
const WordList kCities = {"Hamburg", "Berlin", "München", "Bonn"};
const WordList kAbsNouns = {"Termin", "Treffen", "Arzttermin", "Besprechung", "Vorschlag"};
const WordList kVehicles = {"Zug", "Auto", "Flugzeug"};
const WordList kPeople = {"Kollegin", "Sekretärin", "Chef"};

// Word classes whose members share both basic categories; a word correction
// replaces one member by another.
const std::vector<const WordList*> kSubstitutable = {&kMonths,  &kWeekdays, &kOrdinals, &kCardinals,
                                                     &kCities,  &kAbsNouns, &kVehicles, &kPeople};

class Grammar {
 public:
  explicit Grammar(Rng& rng) : rng_(rng) {}

  Phr Make(int kind) {
    Phr p;
    p.kind = kind;
    auto add = [&](const std::string& w, const char* syn, const char* sem) {
      p.toks.push_back({w, syn, sem});
    };
    auto pick = [&](const WordList& l) -> const std::string& { return rng_.Pick(l); };
    auto set = [&](const char* a, const char* b) {
      p.syn_a = a;
      p.sem_a = b;
    };
    switch (kind) {
      case kSubj:
        set("NG", "AGENT");
        if (rng_.Bernoulli(0.8)) {
          add(pick({"ich", "wir", "Sie"}), "U", "ANIM");
        } else if (rng_.Bernoulli(0.5)) {
          add("meine", "U", "NIL");
          add(pick(kPeople), "N", "ANIM");
        } else {
          add("der", "D", "NIL");
          add("Chef", "N", "ANIM");
        }
        break;
      case kSubjDas: set("NG", "AGENT"); add("das", "U", "NIL"); break;
      case kRecip: set("NG", "RECIP"); add(pick({"Ihnen", "mir", "uns"}), "U", "ANIM"); break;
      case kEs: set("NG", "AGENT"); add("es", "U", "ABS"); break;
      case kVerbUtter:
        set("VG", "ACT");
        add(pick({"meine", "dachte", "sage"}), "V", "UTTER");
        break;
      case kVerbHave:
        set("VG", "ACT");
        add(pick({"habe", "haben", "hätte", "brauchen", "brauche"}), "V", "HAVE");
        break;
      case kVerbHaveAux: set("VG", "AUX"); add(pick({"habe", "haben"}), "V", "AUX"); break;
      case kVerbIs: set("VG", "ACT"); add(pick({"bin", "ist", "wäre"}), "V", "IS"); break;
      case kVerbAux:
        set("VG", "AUX");
        add(pick({"kann", "können", "würde", "muss"}), "V", "AUX");
        break;
      case kVerbMeet: set("VG", "ACT"); add(pick({"sehen", "besprechen"}), "V", "MEET"); break;
      case kVerbSel: set("VG", "ACT"); add(pick({"nehme", "nehmen", "wählen"}), "V", "SEL"); break;
      case kVerbSug: set("VG", "ACT"); add(pick({"passt", "geht"}), "V", "SUG"); break;
      case kVerbSugFin: set("VG", "ACT"); add("schlage", "V", "SUG"); break;
      case kVerbMove: set("VG", "ACT"); add(pick({"fahre", "komme", "fliege"}), "V", "MOVE"); break;
      case kParticle: set("VG", "ACT"); add("vor", "O", "NIL"); break;
      case kParticiple: {
        set("VG", "ACT");
        static const std::vector<std::pair<std::string, const char*>> parts = {
            {"vorgeschlagen", "SUG"}, {"gesagt", "UTTER"}, {"vereinbart", "MEET"}, {"verschoben", "MOVE"}};
        const auto& pp = rng_.Pick(parts);
        add(pp.first, "P", pp.second);
        break;
      }
      case kTimeAt:
        set("PG", "TM-AT");
        switch (rng_.Below(5)) {
          case 0:
            add("am", "R", "HERE");
            add(pick(kOrdinals), "M", "TIME");
            if (rng_.Bernoulli(0.6)) add(pick(kMonths), "N", "TIME");
            break;
          case 1:
            add("am", "R", "HERE");
            add(pick(kWeekdays), "N", "TIME");
            break;
          case 2:
            add("im", "R", "HERE");
            add(pick(kMonths), "N", "TIME");
            break;
          case 3:
            add("um", "R", "HERE");
            add(pick(kCardinals), "M", "TIME");
            add("Uhr", "N", "TIME");
            if (rng_.Bernoulli(0.3)) add("dreißig", "M", "TIME");
            break;
          default:
            add("in", "R", "HERE");
            add("der", "D", "NIL");
            add("nächsten", "J", "TIME");
            add("Woche", "N", "TIME");
            break;
        }
        break;
      case kTimeNg:
        set("NG", "TM-AT");
        switch (rng_.Below(4)) {
          case 0: add(pick(kMonths), "N", "TIME"); break;
          case 1: add(pick(kWeekdays), "N", "TIME"); break;
          case 2:
            add("den", "D", "NIL");
            add(pick(kWeekdays), "N", "TIME");
            break;
          default:
            add("der", "D", "NIL");
            add("vierzehnte", "M", "TIME");
            break;
        }
        break;
      case kFrom:
        set("PG", "TM-FRM");
        if (rng_.Bernoulli(0.7)) {
          add("von", "R", "SRC");
          add(pick(kCardinals), "M", "TIME");
          if (rng_.Bernoulli(0.3)) add("Uhr", "N", "TIME");
        } else {
          add("ab", "R", "SRC");
          add(pick(kWeekdays), "N", "TIME");
        }
        break;
      case kTo:
        set("PG", "TM-TO");
        add("bis", "R", "DEST");
        if (rng_.Bernoulli(0.7)) {
          add(pick(kCardinals), "M", "TIME");
          add("Uhr", "N", "TIME");
        } else {
          add(pick(kWeekdays), "N", "TIME");
        }
        break;
      case kLocAt:
        set("PG", "LC-AT");
        switch (rng_.Below(4)) {
          case 0:
            add("in", "R", "HERE");
            add(pick(kCities), "N", "LOC");
            break;
          case 1:
            add("außer", "R", "HERE");
            add("Hause", "N", "LOC");
            break;
          case 2:
            add("im", "R", "HERE");
            add(pick({"Büro", "Hotel"}), "N", "LOC");
            break;
          default:
            add("beim", "R", "HERE");
            add("Zahnarzt", "N", "ANIM");
            break;
        }
        break;
      case kLocTo:
        set("PG", "LC-TO");
        add("nach", "R", "DEST");
        add(pick(kCities), "N", "LOC");
        break;
      case kLocFrom:
        set("PG", "LC-FRM");
        add("aus", "R", "SRC");
        add(pick(kCities), "N", "LOC");
        break;
      case kInstr:
        set("PG", "INSTR");
        add("mit", "R", "NIL");
        add("dem", "D", "NIL");
        add(pick(kVehicles), "N", "PHYS");
        break;
      case kObj:
        set("NG", "OBJ");
        if (rng_.Bernoulli(0.15)) {
          add("keine", "D", "NO");
          add("Zeit", "N", "ABS");
          break;
        }
        add(pick({"einen", "den", "ein", "das", "die", "eine"}), "D", "NIL");
        if (rng_.Bernoulli(0.35)) add(pick({"früheren", "späteren", "nächsten"}), "J", "TIME");
        add(pick(kAbsNouns), "N", "ABS");
        break;
      case kConfA: set("MG", "CONF"); add(pick({"ja", "genau"}), "A", "YES"); break;
      case kConfJ: set("MG", "CONF"); add(pick({"gut", "prima", "richtig"}), "J", "YES"); break;
      case kNegMg:
        set("MG", "NEG");
        if (rng_.Bernoulli(0.3)) {
          add("nein", "A", "NO");
        } else {
          add(pick({"schlecht", "schade"}), "J", "NO");
        }
        break;
      case kNegNg: set("NG", "NEG"); add("Käse", "N", "NO"); break;
      case kQuest: set("MG", "QUEST"); add(pick({"wann", "wie"}), "A", "QUEST"); break;
      case kAdvAg:
        set("AG", "MANNER");
        add(pick({"leider", "noch", "schon", "auch"}), "A", "NIL");
        break;
      case kAdvSg:
        set("SG", "MISC");
        add(pick({"natürlich", "dann", "allerdings"}), "A", "NIL");
        break;
      case kConj: set("CG", "MISC"); add(pick({"und", "aber", "also", "wenn"}), "C", "NIL"); break;
      case kDaAdv: set("AG", "LC-AT"); add("da", "A", "HERE"); break;
      case kDaConj: set("CG", "MISC"); add("da", "C", "NIL"); break;
      default: Fail("unknown phrase kind ", kind);
    }
    return p;
  }

  std::vector<Phr> Sentence() {
    struct Slot {
      int kind;
      double p = 1.0;
    };
    using T = std::vector<Slot>;
    static const std::vector<T> templates = {
        {{kNegNg, 0.5}, {kSubj}, {kVerbUtter}, {kAdvSg, 0.6}, {kTimeNg}},
        {{kTimeAt}, {kVerbIs}, {kSubj}, {kAdvAg, 0.6}, {kLocAt}},
        {{kConfA}, {kConfJ, 0.5}, {kAdvSg, 0.5}, {kVerbHave}, {kSubj}, {kDaAdv, 0.4}, {kFrom}, {kTo},
         {kAdvAg, 0.5}, {kObj}},
        {{kSubj}, {kVerbAux}, {kTimeAt}, {kObj}, {kVerbMeet}},
        {{kQuest}, {kVerbSug}, {kEs}, {kRecip}},
        {{kConj, 0.5}, {kSubj}, {kVerbSugFin}, {kTimeNg}, {kParticle}},
        {{kSubj}, {kVerbMove}, {kTimeAt, 0.7}, {kLocTo}, {kInstr, 0.5}},
        {{kSubjDas}, {kVerbIs}, {kNegMg}},
        {{kConfJ}, {kAdvSg}, {kVerbSug}, {kRecip}, {kTimeNg}},
        {{kSubj}, {kVerbHaveAux}, {kObj}, {kParticiple}},
        {{kSubj}, {kVerbHave}, {kObj}, {kTimeAt}},
        {{kSubj}, {kVerbSel}, {kTimeNg}},
        {{kVerbAux}, {kSubj}, {kTimeAt}, {kVerbMeet}},
        {{kConj}, {kSubj}, {kVerbUtter}, {kTimeAt}},
        {{kSubj}, {kVerbIs}, {kTimeAt}, {kLocAt}},
        {{kSubj}, {kVerbMove}, {kTimeAt}, {kLocFrom}},
        {{kDaConj}, {kSubj}, {kTimeAt}, {kLocAt}, {kVerbIs}},
        {{kDaAdv}, {kVerbHave}, {kSubj}, {kTimeAt}, {kObj}},
    };
    const T& t = rng_.Pick(templates);
    std::vector<Phr> out;
    for (const auto& slot : t) {
      if (slot.p < 1.0 && !rng_.Bernoulli(slot.p)) continue;
      out.push_back(Make(slot.kind));
    }
    return out;
  }

 private:
  Rng& rng_;
};

// Adjacent fluent tokens never share both basic categories and adjacent
// phrases never share their first word; otherwise fluent speech would look
// exactly like a correction.
bool FluentOk(const std::vector<Phr>& phrases) {
  const Tok* prev = nullptr;
  const Phr* prev_phrase = nullptr;
  for (const auto& p : phrases) {
    if (prev_phrase && NormalizeWord(prev_phrase->toks.front().word) == NormalizeWord(p.toks.front().word)) {
      return false;
    }
    for (const auto& t : p.toks) {
      if (prev && prev->syn == t.syn && prev->sem == t.sem) return false;
      prev = &t;
    }
    prev_phrase = &p;
  }
  return true;
}

const WordList* SubstituteClass(const std::string& word) {
  for (const auto* cls : kSubstitutable) {
    for (const auto& w : *cls) {
      if (w == word) return cls;
    }
  }
  return nullptr;
}

GoldToken ToGold(const Tok& t, const Phr& p, bool boundary) {
  return GoldToken{t.word, t.syn, p.syn_a, t.sem, p.sem_a, boundary, false, Disfluency::kNone};
}

Utterance Realize(Grammar& g, Rng& rng, const GeneratorConfig& cfg) {
  std::vector<Phr> phrases;
  do {
    phrases = g.Sentence();
  } while (!FluentOk(phrases));

  Utterance u;
  for (std::size_t pi = 0; pi < phrases.size(); ++pi) {
    const Phr& p = phrases[pi];
    if (pi > 0 && rng.Bernoulli(cfg.pause_rate / static_cast<double>(phrases.size() - 1))) {
      u.push_back({"<pause>", "/", "IG", "NIL", "MISC", true, true, Disfluency::kPause});
    }
    if (p.kind == kObj || p.kind == kTimeAt) {
      if (rng.Bernoulli(cfg.phrase_repair_rate)) {
        // A replaced phrase with the same opening word.
        for (int attempt = 0; attempt < 50; ++attempt) {
          Phr alt = g.Make(p.kind);
          if (alt.toks.front().word != p.toks.front().word) continue;
          bool same = alt.toks.size() == p.toks.size();
          for (std::size_t i = 0; same && i < alt.toks.size(); ++i) same = alt.toks[i].word == p.toks[i].word;
          if (same && rng.Bernoulli(0.7)) continue;
          for (std::size_t i = 0; i < alt.toks.size(); ++i) {
            GoldToken t = ToGold(alt.toks[i], alt, i == 0);
            t.deleted = true;
            t.disfluency = Disfluency::kPhraseRepair;
            u.push_back(std::move(t));
          }
          break;
        }
      }
    }
    for (std::size_t ti = 0; ti < p.toks.size(); ++ti) {
      const Tok& tok = p.toks[ti];
      GoldToken gold = ToGold(tok, p, ti == 0);
      if (rng.Bernoulli(cfg.repetition_rate)) {
        GoldToken rep = gold;
        rep.deleted = true;
        rep.disfluency = Disfluency::kWordRepair;
        u.push_back(std::move(rep));
      } else if (const WordList* cls = SubstituteClass(tok.word); cls && rng.Bernoulli(cfg.correction_rate)) {
        std::string other;
        do {
          other = rng.Pick(*cls);
        } while (other == tok.word);
        GoldToken rep = gold;
        rep.word = other;
        rep.deleted = true;
        rep.disfluency = Disfluency::kWordRepair;
        u.push_back(std::move(rep));
      }
      u.push_back(std::move(gold));
    }
  }
  if (rng.Bernoulli(cfg.interjection_rate)) {
    // Mostly utterance-initial, otherwise before a phrase start.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i].boundary && u[i].disfluency == Disfluency::kNone) starts.push_back(i);
    }
    std::size_t at = rng.Bernoulli(0.7) ? 0 : rng.Pick(starts);
    static const WordList interj = {"ähm", "äh", "oh", "hm"};
    GoldToken t{rng.Pick(interj), "I", "IG", "NIL", "MISC", true, true, Disfluency::kInterjection};
    u.insert(u.begin() + static_cast<std::ptrdiff_t>(at), std::move(t));
  }
  return u;
}

GoldToken Fx(const char* w, const char* synb, const char* syna, const char* semb, const char* sema,
             bool b, Disfluency d = Disfluency::kNone) {
  return GoldToken{w, synb, syna, semb, sema, b, d != Disfluency::kNone, d};
}

void CheckRate(double r, const char* name) {
  if (!(r >= 0.0 && r <= 1.0)) Fail(name, " must be in [0, 1], got ", r);
}

}  // namespace

std::string_view DisfluencyName(Disfluency d) {
  switch (d) {
    case Disfluency::kNone: return "none";
    case Disfluency::kInterjection: return "interjection";
    case Disfluency::kPause: return "pause";
    case Disfluency::kWordRepair: return "word-repair-reparandum";
    case Disfluency::kPhraseRepair: return "phrase-repair-reparandum";
  }
  return "none";
}

Disfluency ParseDisfluency(std::string_view name) {
  for (auto d : {Disfluency::kNone, Disfluency::kInterjection, Disfluency::kPause, Disfluency::kWordRepair,
                 Disfluency::kPhraseRepair}) {
    if (DisfluencyName(d) == name) return d;
  }
  Fail("unknown disfluency annotation '", std::string(name), "'");
}

std::size_t Corpus::TokenCount() const {
  std::size_t n = 0;
  for (const auto& t : turns) {
    for (const auto& u : t.utterances) n += u.size();
  }
  return n;
}

std::size_t Corpus::UtteranceCount() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.utterances.size();
  return n;
}

std::vector<const Utterance*> Corpus::Utterances() const {
  std::vector<const Utterance*> out;
  for (const auto& t : turns) {
    for (const auto& u : t.utterances) out.push_back(&u);
  }
  return out;
}

void Corpus::Validate(const TagsetBundle& tags) const {
  for (const auto& turn : turns) {
    for (const auto& u : turn.utterances) {
      if (u.empty()) Fail("turn ", turn.id, ": empty utterance");
      bool seen_fluent = false;
      for (const auto& t : u) {
        if (t.word.empty()) Fail("turn ", turn.id, ": empty word");
        tags.basic_syn->Index(t.syn_basic);
        tags.abstract_syn->Index(t.syn_abstract);
        tags.basic_sem->Index(t.sem_basic);
        tags.abstract_sem->Index(t.sem_abstract);
        if (t.deleted != (t.disfluency != Disfluency::kNone)) {
          Fail("turn ", turn.id, ": token '", t.word, "' deletion mark disagrees with its annotation");
        }
        if (!t.deleted && !seen_fluent && !t.boundary) {
          Fail("turn ", turn.id, ": first fluent token '", t.word, "' does not start a phrase");
        }
        seen_fluent = seen_fluent || !t.deleted;
      }
    }
  }
}

std::string Corpus::Serialize() const {
  std::string out;
  for (const auto& turn : turns) {
    out += "== turn " + turn.id + "\n";
    for (const auto& u : turn.utterances) {
      for (const auto& t : u) {
        out += t.word + "\t" + t.syn_basic + "\t" + t.syn_abstract + "\t" + t.sem_basic + "\t" +
               t.sem_abstract + "\t" + (t.boundary ? "1" : "0") + "\t" + (t.deleted ? "1" : "0") + "\t" +
               std::string(DisfluencyName(t.disfluency)) + "\n";
      }
      out += "\n";
    }
  }
  return out;
}

Corpus Corpus::Parse(std::string_view text) {
  Corpus c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  Utterance current;
  auto flush = [&] {
    if (current.empty()) return;
    if (c.turns.empty()) c.turns.push_back(Turn{"0", {}});
    c.turns.back().utterances.push_back(std::move(current));
    current.clear();
  };
  auto flag = [&](const std::string& s, const char* what) {
    if (s == "1") return true;
    if (s == "0") return false;
    Fail("corpus line ", lineno, ": ", what, " must be 0 or 1, got '", s, "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = Trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t.rfind("==", 0) == 0) {
      flush();
      auto parts = SplitWhitespace(t);
      if (parts.size() != 3 || parts[1] != "turn") Fail("corpus line ", lineno, ": expected `== turn <id>`");
      c.turns.push_back(Turn{parts[2], {}});
      continue;
    }
    auto f = Split(t, '\t');
    if (f.size() != 8) Fail("corpus line ", lineno, ": expected 8 tab-separated fields, got ", f.size());
    GoldToken g;
    g.word = f[0];
    g.syn_basic = f[1];
    g.syn_abstract = f[2];
    g.sem_basic = f[3];
    g.sem_abstract = f[4];
    g.boundary = flag(f[5], "boundary");
    g.deleted = flag(f[6], "deleted");
    try {
      g.disfluency = ParseDisfluency(f[7]);
    } catch (const Error& e) {
      Fail("corpus line ", lineno, ": ", e.what());
    }
    current.push_back(std::move(g));
  }
  flush();
  return c;
}

void Corpus::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail("cannot write corpus file ", path);
  out << Serialize();
}

Corpus Corpus::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail("cannot open corpus file ", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

void GeneratorConfig::Validate() const {
  if (turns < 1) Fail("turn count must be >= 1, got ", turns);
  CheckRate(interjection_rate, "interjection rate");
  CheckRate(pause_rate, "pause rate");
  CheckRate(repetition_rate, "repetition rate");
  CheckRate(correction_rate, "correction rate");
  CheckRate(phrase_repair_rate, "phrase repair rate");
}

Corpus Generate(const GeneratorConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  Grammar g(rng);
  Corpus c;
  std::size_t tokens = 0;
  while (static_cast<int>(c.turns.size()) < cfg.turns || tokens < cfg.min_tokens) {
    Turn turn;
    char id[32];
    std::snprintf(id, sizeof id, "t%03zu", c.turns.size() + 1);
    turn.id = id;
    const double r = rng.Uniform();
    const int n = r < 0.55 ? 1 : (r < 0.85 ? 2 : 3);
    for (int i = 0; i < n; ++i) {
      turn.utterances.push_back(Realize(g, rng, cfg));
      tokens += turn.utterances.back().size();
    }
    c.turns.push_back(std::move(turn));
  }
  return c;
}

Lexicon GeneratorLexicon(const TagsetBundle& tags) {
  Lexicon lex(tags.basic_syn, tags.basic_sem);
  for (const auto& e : Vocabulary()) {
    lex.Add(e.word, Split(e.syn, ','), Split(e.sem, ','), e.pause, e.interjection);
  }
  lex.ComputeDefaults();
  return lex;
}

std::vector<Fixture> FixtureUtterances() {
  using D = Disfluency;
  std::vector<Fixture> f;
  f.push_back({"rubbish-i-mean",
               {Fx("Käse", "N", "NG", "NO", "NEG", true), Fx("ich", "U", "NG", "ANIM", "AGENT", true),
                Fx("meine", "V", "VG", "UTTER", "ACT", true), Fx("natürlich", "A", "SG", "NIL", "MISC", true),
                Fx("März", "N", "NG", "TIME", "TM-AT", true)}});
  f.push_back({"rubbish-i-had-i",
               {Fx("Käse", "N", "NG", "NO", "NEG", true), Fx("ich", "U", "NG", "ANIM", "AGENT", true),
                Fx("hätte", "V", "VG", "HAVE", "ACT", true), Fx("ich", "U", "NG", "ANIM", "AGENT", true),
                Fx("März", "N", "NG", "TIME", "TM-AT", true)}});
  f.push_back({"sixth-april",
               {Fx("Ähm", "I", "IG", "NIL", "MISC", true, D::kInterjection),
                Fx("am", "R", "PG", "HERE", "TM-AT", true), Fx("sechsten", "M", "PG", "TIME", "TM-AT", false),
                Fx("April", "N", "PG", "TIME", "TM-AT", false), Fx("bin", "V", "VG", "IS", "ACT", true),
                Fx("ich", "U", "NG", "ANIM", "AGENT", true), Fx("leider", "A", "AG", "NIL", "MANNER", true),
                Fx("außer", "R", "PG", "HERE", "LC-AT", true), Fx("Hause", "N", "PG", "LOC", "LC-AT", false)}});
  f.push_back({"sixth-april-repeated-i",
               {Fx("Ähm", "I", "IG", "NIL", "MISC", true, D::kInterjection),
                Fx("am", "R", "PG", "HERE", "TM-AT", true), Fx("sechsten", "M", "PG", "TIME", "TM-AT", false),
                Fx("April", "N", "PG", "TIME", "TM-AT", false), Fx("bin", "V", "VG", "IS", "ACT", true),
                Fx("ich", "U", "NG", "ANIM", "AGENT", true, D::kWordRepair),
                Fx("ich", "U", "NG", "ANIM", "AGENT", true), Fx("leider", "A", "AG", "NIL", "MANNER", true),
                Fx("außer", "R", "PG", "HERE", "LC-AT", true), Fx("Hause", "N", "PG", "LOC", "LC-AT", false)}});
  f.push_back({"doctor-appointment",
               {Fx("Ähm", "I", "IG", "NIL", "MISC", true, D::kInterjection), Fx("Ja", "A", "MG", "YES", "CONF", true), Fx("genau", "A", "MG", "YES", "CONF", true),
                Fx("allerdings", "A", "SG", "NIL", "MISC", true), Fx("habe", "V", "VG", "HAVE", "ACT", true),
                Fx("ich", "U", "NG", "ANIM", "AGENT", true), Fx("da", "A", "AG", "HERE", "LC-AT", true),
                Fx("von", "R", "PG", "SRC", "TM-FRM", true), Fx("neun", "M", "PG", "TIME", "TM-FRM", false),
                Fx("bis", "R", "PG", "DEST", "TM-TO", true), Fx("vier", "M", "PG", "TIME", "TM-TO", false),
                Fx("Uhr", "N", "PG", "TIME", "TM-TO", false), Fx("schon", "A", "AG", "NIL", "MANNER", true),
                Fx("einen", "D", "NG", "NIL", "OBJ", true), Fx("Arzttermin", "N", "NG", "ABS", "OBJ", false)}});
  f.push_back({"two-o-clock-dentist",
               {Fx("Oh", "I", "IG", "NIL", "MISC", true, D::kInterjection),
                Fx("das", "U", "NG", "NIL", "AGENT", true), Fx("ist", "V", "VG", "IS", "ACT", true),
                Fx("schlecht", "J", "MG", "NO", "NEG", true), Fx("da", "A", "AG", "HERE", "LC-AT", true),
                Fx("habe", "V", "VG", "HAVE", "ACT", true), Fx("ich", "U", "NG", "ANIM", "AGENT", true),
                Fx("um", "R", "PG", "HERE", "TM-AT", true), Fx("vierzehn", "M", "PG", "TIME", "TM-AT", false),
                Fx("Uhr", "N", "PG", "TIME", "TM-AT", false), Fx("dreißig", "M", "PG", "TIME", "TM-AT", false),
                Fx("einen", "D", "NG", "NIL", "OBJ", true), Fx("Termin", "N", "NG", "ABS", "OBJ", false),
                Fx("beim", "R", "PG", "HERE", "LC-AT", true), Fx("Zahnarzt", "N", "PG", "ANIM", "LC-AT", false)}});
  f.push_back({"appointment-meeting",
               {Fx("wir", "U", "NG", "ANIM", "AGENT", true), Fx("haben", "V", "VG", "HAVE", "ACT", true),
                Fx("ein", "D", "NG", "NIL", "OBJ", true),
                Fx("Termin", "N", "NG", "ABS", "OBJ", false, D::kWordRepair),
                Fx("Treffen", "N", "NG", "ABS", "OBJ", false)}});
  f.push_back({"earlier-later-appointment",
               {Fx("wir", "U", "NG", "ANIM", "AGENT", true), Fx("brauchen", "V", "VG", "HAVE", "ACT", true),
                Fx("den", "D", "NG", "NIL", "OBJ", true, D::kPhraseRepair),
                Fx("früheren", "J", "NG", "TIME", "OBJ", false, D::kPhraseRepair),
                Fx("Termin", "N", "NG", "ABS", "OBJ", false, D::kPhraseRepair),
                Fx("den", "D", "NG", "NIL", "OBJ", true), Fx("späteren", "J", "NG", "TIME", "OBJ", false),
                Fx("Termin", "N", "NG", "ABS", "OBJ", false)}});
  return f;
}

const Fixture& FindFixture(std::string_view name) {
  static const std::vector<Fixture> all = FixtureUtterances();
  for (const auto& f : all) {
    if (f.name == name) return f;
  }
  Fail("no fixture named '", std::string(name), "'");
}

void SplitSpec::Validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    Fail("train fraction must be in (0, 1), got ", train_fraction);
  }
}

CorpusSplit SplitCorpus(const Corpus& corpus, const SplitSpec& spec) {
  spec.Validate();
  std::vector<std::size_t> order(corpus.turns.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  rng.Shuffle(order);
  const auto n_train = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(corpus.turns.size())));
  CorpusSplit s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? s.train : s.test).turns.push_back(corpus.turns[order[i]]);
  }
  return s;
}

std::vector<std::string> Words(const Utterance& u) {
  std::vector<std::string> w;
  w.reserve(u.size());
  for (const auto& t : u) w.push_back(t.word);
  return w;
}

}  // namespace flatsla
