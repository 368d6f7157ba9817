// convtts/frontend/symbols.cc

// Copyright 2026  The convtts authors
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

#include "convtts/frontend/symbols.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace convtts {
namespace frontend {

namespace {

using nlohmann::json;

const char *kStressNames[] = {"none", "primary", "secondary"};
const char *kPhraseNames[] = {"declarative", "interrogative", "other"};
const char *kKindNames[] = {"phone", "pause", "word_boundary"};

bool IsPauseToken(const std::string &tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (c != '-' && c != ',' && c != ';' && c != ':') return false;
  return true;
}

std::string StripPunct(const std::string &tok, bool *pause_after) {
  std::size_t a = 0, b = tok.size();
  while (a < b && !std::isalnum(static_cast<unsigned char>(tok[a])) &&
         tok[a] != '\'')
    ++a;
  while (b > a) {
    char c = tok[b - 1];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' ||
        c == '-')  // keep internal/word-final hyphens ("uh-huh")
      break;
    if (c == ',' || c == ';' || c == ':') *pause_after = true;
    --b;
  }
  std::string core = tok.substr(a, b - a);
  while (!core.empty() && core.back() == '-') {  // trailing dash = pause
    core.pop_back();
    *pause_after = true;
  }
  return core;
}

struct WordItem {
  std::vector<PronPhone> pron;
  const Span *span = nullptr;
  bool pause_after = false;
};

}  // namespace

int SymbolSequence::NumWords() const {
  return static_cast<int>(WordRanges().size());
}

std::vector<std::pair<int, int>> SymbolSequence::WordRanges() const {
  std::vector<std::pair<int, int>> ranges;
  int start = -1;
  for (int i = 0; i < static_cast<int>(symbols.size()); ++i) {
    bool is_phone = symbols[i].kind == SymbolKind::kPhone;
    if (is_phone && start < 0) start = i;
    if (!is_phone && start >= 0) {
      ranges.emplace_back(start, i);
      start = -1;
    }
  }
  if (start >= 0) ranges.emplace_back(start, static_cast<int>(symbols.size()));
  return ranges;
}

std::vector<int> SymbolSequence::WordOfSymbol() const {
  std::vector<int> out(symbols.size(), 0);
  int word = -1;
  bool in_word = false;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bool is_phone = symbols[i].kind == SymbolKind::kPhone;
    if (is_phone && !in_word) {
      ++word;
      in_word = true;
    } else if (!is_phone) {
      in_word = false;
    }
    out[i] = std::max(word, 0);
  }
  return out;
}

VocabTables::VocabTables(const Lexicon &lexicon) {
  phones_.push_back("<wb>");
  phones_.push_back("<pause>");
  for (const std::string &p : lexicon.PhoneInventory()) phones_.push_back(p);
}

int VocabTables::phone_index(const std::string &phone) const {
  auto it = std::find(phones_.begin(), phones_.end(), phone);
  if (it == phones_.end())
    Raise(ErrorCode::kVocabularyMismatch, "phone '" + phone + "' not in table");
  return static_cast<int>(it - phones_.begin());
}

IntMat VocabTables::EncodeSymbolIds(const SymbolSequence &seq) const {
  long L = static_cast<long>(seq.symbols.size());
  IntMat ids(L, 6);
  for (long i = 0; i < L; ++i) {
    const Symbol &s = seq.symbols[i];
    if (s.phone_id < 0 || s.phone_id >= static_cast<int>(phones_.size()))
      Raise(ErrorCode::kVocabularyMismatch,
            "phone id " + std::to_string(s.phone_id) + " out of range");
    SymbolKind expect = s.phone_id == 0 ? SymbolKind::kWordBoundary
                        : s.phone_id == 1 ? SymbolKind::kPause
                                          : SymbolKind::kPhone;
    if (s.kind != expect)
      Raise(ErrorCode::kVocabularyMismatch, "symbol kind/phone id mismatch");
    ids(i, 0) = (s.phone_id * 3 + static_cast<int>(s.stress)) * 3 +
                static_cast<int>(s.phrase_type);
    ids(i, 1) = static_cast<int>(s.style);
    ids(i, 2) = s.emphasis ? 1 : 0;
    ids(i, 3) = static_cast<int>(s.dialog_tag);
    ids(i, 4) = static_cast<int>(s.interjection);
    ids(i, 5) = -1;  // speaker slot, resolved by the acoustic model
  }
  return ids;
}

SymbolSequence VocabTables::DecodeSymbolIds(const IntMat &ids,
                                            const std::string &utterance_id) const {
  SymbolSequence seq;
  seq.utterance_id = utterance_id;
  for (long i = 0; i < ids.rows(); ++i) {
    int joint = ids(i, 0);
    if (joint < 0 || joint >= joint_size())
      Raise(ErrorCode::kVocabularyMismatch, "joint id out of range");
    Symbol s;
    s.phrase_type = static_cast<PhraseType>(joint % 3);
    s.stress = static_cast<Stress>((joint / 3) % 3);
    s.phone_id = joint / 9;
    s.kind = s.phone_id == 0 ? SymbolKind::kWordBoundary
             : s.phone_id == 1 ? SymbolKind::kPause
                               : SymbolKind::kPhone;
    if (ids(i, 1) < 0 || ids(i, 1) > 1 || ids(i, 2) < 0 || ids(i, 2) > 1 ||
        ids(i, 3) < 0 || ids(i, 3) >= kNumDialogTags || ids(i, 4) < 0 ||
        ids(i, 4) >= kNumInterjectionTypes)
      Raise(ErrorCode::kVocabularyMismatch, "feature id out of range");
    s.style = static_cast<Style>(ids(i, 1));
    s.emphasis = ids(i, 2) == 1;
    s.dialog_tag = static_cast<DialogTag>(ids(i, 3));
    s.interjection = static_cast<InterjectionType>(ids(i, 4));
    seq.symbols.push_back(s);
  }
  return seq;
}

SymbolSequence BuildSymbolSequence(const AnnotatedUtterance &utt,
                                   const Lexicon &lexicon,
                                   const VocabTables &tables) {
  // phrase type from the terminal punctuation
  std::string plain = utt.PlainText();
  PhraseType phrase = PhraseType::kDeclarative;
  for (auto it = plain.rbegin(); it != plain.rend(); ++it) {
    if (*it == ' ' || *it == '\t') continue;
    if (*it == '?') phrase = PhraseType::kInterrogative;
    break;
  }

  std::vector<WordItem> words;
  for (const Span &span : utt.spans) {
    if (span.interjection != InterjectionType::kNone) {
      WordItem w;
      w.pron = lexicon.LookupInterjection(span.interjection);
      w.span = &span;
      words.push_back(std::move(w));
      continue;
    }
    std::istringstream iss(span.text);
    std::string tok;
    while (iss >> tok) {
      if (IsPauseToken(tok)) {
        if (!words.empty()) words.back().pause_after = true;
        continue;
      }
      bool pause_after = false;
      std::string core = StripPunct(tok, &pause_after);
      if (core.empty()) {
        if (pause_after && !words.empty()) words.back().pause_after = true;
        continue;
      }
      WordItem w;
      w.pron = lexicon.Lookup(core);
      w.span = &span;
      w.pause_after = pause_after;
      words.push_back(std::move(w));
    }
  }

  SymbolSequence seq;
  seq.utterance_id = utt.utterance_id;
  auto boundary = [&]() {
    Symbol s;
    s.kind = SymbolKind::kWordBoundary;
    s.phone_id = 0;
    s.phrase_type = phrase;
    s.style = utt.style;
    return s;
  };
  seq.symbols.push_back(boundary());
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const WordItem &w = words[wi];
    for (const PronPhone &p : w.pron) {
      Symbol s;
      s.kind = SymbolKind::kPhone;
      s.phone_id = tables.phone_index(p.phone);
      s.stress = p.stress;
      s.phrase_type = phrase;
      s.emphasis = w.span->emphasis;
      s.dialog_tag = w.span->dialog_tag;
      s.interjection = w.span->interjection;
      s.style = utt.style;
      seq.symbols.push_back(s);
    }
    seq.symbols.push_back(boundary());
    if (w.pause_after && wi + 1 < words.size()) {
      Symbol s;
      s.kind = SymbolKind::kPause;
      s.phone_id = 1;
      s.phrase_type = phrase;
      s.style = utt.style;
      seq.symbols.push_back(s);
    }
  }
  return seq;
}

std::string SymbolSequenceToJson(const SymbolSequence &seq, SpeakerRole role,
                                 Style style) {
  json j;
  j["utterance_id"] = seq.utterance_id;
  j["speaker_role"] = SpeakerRoleName(role);
  j["style"] = StyleName(style);
  json syms = json::array();
  for (const Symbol &s : seq.symbols) {
    json js;
    js["kind"] = kKindNames[static_cast<int>(s.kind)];
    js["phone_id"] = s.phone_id;
    js["stress"] = kStressNames[static_cast<int>(s.stress)];
    js["phrase_type"] = kPhraseNames[static_cast<int>(s.phrase_type)];
    js["emphasis"] = s.emphasis;
    js["dialog_tag"] = DialogTagName(s.dialog_tag);
    js["interjection"] = InterjectionTypeName(s.interjection);
    syms.push_back(js);
  }
  j["symbols"] = std::move(syms);
  return j.dump();
}

SymbolSequence SymbolSequenceFromJson(const std::string &json_line,
                                      const VocabTables &tables) {
  json j = json::parse(json_line);
  SymbolSequence seq;
  seq.utterance_id = j.at("utterance_id").get<std::string>();
  Style style = StyleFromName(j.at("style").get<std::string>());
  for (const json &js : j.at("symbols")) {
    Symbol s;
    std::string kind = js.at("kind").get<std::string>();
    s.kind = kind == "phone" ? SymbolKind::kPhone
             : kind == "pause" ? SymbolKind::kPause
                               : SymbolKind::kWordBoundary;
    s.phone_id = js.at("phone_id").get<int>();
    if (s.phone_id < 0 || s.phone_id >= static_cast<int>(tables.phones().size()))
      Raise(ErrorCode::kVocabularyMismatch, "phone id out of range in JSON");
    std::string stress = js.at("stress").get<std::string>();
    s.stress = stress == "primary" ? Stress::kPrimary
               : stress == "secondary" ? Stress::kSecondary
                                       : Stress::kNone;
    std::string ph = js.at("phrase_type").get<std::string>();
    s.phrase_type = ph == "interrogative" ? PhraseType::kInterrogative
                    : ph == "other" ? PhraseType::kOther
                                    : PhraseType::kDeclarative;
    s.emphasis = js.at("emphasis").get<bool>();
    s.dialog_tag = DialogTagFromName(js.at("dialog_tag").get<std::string>());
    s.interjection =
        InterjectionTypeFromName(js.at("interjection").get<std::string>());
    s.style = style;
    seq.symbols.push_back(s);
  }
  return seq;
}

}  // namespace frontend
}  // namespace convtts
