// convtts/frontend/lexicon.h

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

#ifndef CONVTTS_FRONTEND_LEXICON_H_
#define CONVTTS_FRONTEND_LEXICON_H_

#include <map>
#include <string>
#include <vector>

#include "convtts/common.h"
#include "convtts/frontend/markup.h"

namespace convtts {
namespace frontend {

enum class Stress { kNone, kPrimary, kSecondary };

struct PronPhone {
  std::string phone;
  Stress stress = Stress::kNone;
  bool operator==(const PronPhone &) const = default;
};

// Pronunciation lexicon: one `word<TAB>phones` line per entry, stress digits
// (1, 2) appended to vowel phones. Interjections may carry dedicated entries
// under the key `intj:<orthography>`; built-in pronunciations cover the seven
// inventory items when a file does not.
class Lexicon {
 public:
  Lexicon();

  void Load(const std::string &path);
  void AddEntry(const std::string &word, const std::string &phones);

  bool Contains(const std::string &word) const;

  // Looks the word up (lower-cased); falls back to letter-to-phone mapping
  // when enabled, otherwise raises OovWord.
  std::vector<PronPhone> Lookup(const std::string &word) const;

  // Dedicated interjection pronunciation; falls back to the builtin table.
  std::vector<PronPhone> LookupInterjection(InterjectionType type) const;

  void set_g2p_fallback(bool enabled) { g2p_fallback_ = enabled; }

  // Sorted union of every phone reachable through this lexicon (entries,
  // builtin interjections and the letter fallback). Stable across runs.
  std::vector<std::string> PhoneInventory() const;

 private:
  static std::vector<PronPhone> ParsePhones(const std::string &phones);

  std::map<std::string, std::vector<PronPhone>> entries_;
  bool g2p_fallback_ = true;
};

}  // namespace frontend
}  // namespace convtts

#endif  // CONVTTS_FRONTEND_LEXICON_H_
