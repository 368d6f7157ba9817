// convtts/frontend/symbols.h

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

#ifndef CONVTTS_FRONTEND_SYMBOLS_H_
#define CONVTTS_FRONTEND_SYMBOLS_H_

#include <string>
#include <vector>

#include "convtts/common.h"
#include "convtts/frontend/lexicon.h"
#include "convtts/frontend/markup.h"

namespace convtts {
namespace frontend {

enum class SymbolKind { kPhone, kPause, kWordBoundary };
enum class PhraseType { kDeclarative, kInterrogative, kOther };

// One element of the extended phone sequence. Non-phone symbols carry
// stress none; dialog tag / interjection / emphasis are span properties of
// the enclosing word and stay at their defaults on pauses and boundaries.
struct Symbol {
  SymbolKind kind = SymbolKind::kPhone;
  int phone_id = 0;  // index into VocabTables::phones
  Stress stress = Stress::kNone;
  PhraseType phrase_type = PhraseType::kDeclarative;
  bool emphasis = false;
  DialogTag dialog_tag = DialogTag::kNone;
  InterjectionType interjection = InterjectionType::kNone;
  Style style = Style::kNeutral;

  bool operator==(const Symbol &) const = default;
};

struct SymbolSequence {
  std::string utterance_id;
  std::vector<Symbol> symbols;

  int NumWords() const;
  // Symbol-index interval [first, last) of each word (runs of phones
  // between word boundaries; pauses belong to no word).
  std::vector<std::pair<int, int>> WordRanges() const;
  // Word index of every symbol; non-phone symbols attach to the preceding
  // word (the leading boundary attaches to word 0).
  std::vector<int> WordOfSymbol() const;
};

using IntMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Fixed id tables over the frontend enums plus a phone inventory. Column
// layout of the id matrix:
//   0 joint (phone, stress, phrase_type)   1 style        2 emphasis
//   3 dialog tag                           4 interjection 5 speaker (later)
class VocabTables {
 public:
  VocabTables() = default;
  explicit VocabTables(const Lexicon &lexicon);

  int phone_index(const std::string &phone) const;
  const std::vector<std::string> &phones() const { return phones_; }
  int joint_size() const { return static_cast<int>(phones_.size()) * 9; }

  IntMat EncodeSymbolIds(const SymbolSequence &seq) const;
  SymbolSequence DecodeSymbolIds(const IntMat &ids,
                                 const std::string &utterance_id) const;

 private:
  std::vector<std::string> phones_;  // [0]="<wb>", [1]="<pause>", then sorted
};

// Compiles an annotated utterance into the extended symbol sequence: phones
// inherit their span's tags, word boundaries frame every word, pauses follow
// commas and sentence-internal dashes, and the phrase type comes from the
// terminal punctuation ('?' -> interrogative).
SymbolSequence BuildSymbolSequence(const AnnotatedUtterance &utt,
                                   const Lexicon &lexicon,
                                   const VocabTables &tables);

// JSON (de)serialization used by the `parse` subcommand's JSON-lines output.
std::string SymbolSequenceToJson(const SymbolSequence &seq, SpeakerRole role,
                                 Style style);
SymbolSequence SymbolSequenceFromJson(const std::string &json_line,
                                      const VocabTables &tables);

}  // namespace frontend
}  // namespace convtts

#endif  // CONVTTS_FRONTEND_SYMBOLS_H_
