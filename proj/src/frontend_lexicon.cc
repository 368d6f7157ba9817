// convtts/frontend/lexicon.cc

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

#include "convtts/frontend/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace convtts {
namespace frontend {

namespace {

std::string Lower(const std::string &s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Hand-written pronunciations for the interjection inventory; these items
// behave unlike regular lexical words, so they always get dedicated entries.
const std::pair<const char *, const char *> kBuiltinInterjections[] = {
    {"aha", "ax hh a1"},
    {"oh", "ow1"},
    {"hmm", "hh m"},
    {"huh", "hh ah1"},
    {"uh", "ah1"},
    {"uh-huh", "ah hh ah1"},
    {"um", "ah1 m"},
};

}  // namespace

Lexicon::Lexicon() {
  for (const auto &[orth, phones] : kBuiltinInterjections)
    entries_["intj:" + std::string(orth)] = ParsePhones(phones);
}

std::vector<PronPhone> Lexicon::ParsePhones(const std::string &phones) {
  std::vector<PronPhone> out;
  std::istringstream iss(phones);
  std::string tok;
  while (iss >> tok) {
    PronPhone p;
    char last = tok.back();
    if (last == '1' || last == '2') {
      p.stress = (last == '1') ? Stress::kPrimary : Stress::kSecondary;
      tok.pop_back();
    }
    if (tok.empty())
      Raise(ErrorCode::kConfigError, "empty phone token in '" + phones + "'");
    p.phone = tok;
    out.push_back(p);
  }
  return out;
}

void Lexicon::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) Raise(ErrorCode::kIoError, "cannot open lexicon " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      Raise(ErrorCode::kConfigError, path + ":" + std::to_string(lineno) +
                                         ": expected word<TAB>phones");
    AddEntry(line.substr(0, tab), line.substr(tab + 1));
  }
}

void Lexicon::AddEntry(const std::string &word, const std::string &phones) {
  entries_[Lower(word)] = ParsePhones(phones);
}

bool Lexicon::Contains(const std::string &word) const {
  return entries_.count(Lower(word)) > 0;
}

std::vector<PronPhone> Lexicon::Lookup(const std::string &word) const {
  auto it = entries_.find(Lower(word));
  if (it != entries_.end()) return it->second;
  if (!g2p_fallback_)
    Raise(ErrorCode::kOovWord, "'" + word + "' not in lexicon");
  // letter-to-phone fallback: each letter becomes the phone of its own name
  std::vector<PronPhone> out;
  for (char c : Lower(word)) {
    if (!std::isalpha(static_cast<unsigned char>(c))) continue;
    out.push_back(PronPhone{std::string(1, c), Stress::kNone});
  }
  if (out.empty())
    Raise(ErrorCode::kOovWord, "'" + word + "' has no pronounceable letters");
  return out;
}

std::vector<PronPhone> Lexicon::LookupInterjection(InterjectionType type) const {
  std::string key = "intj:" + std::string(InterjectionOrthography(type));
  auto it = entries_.find(key);
  if (it == entries_.end())
    Raise(ErrorCode::kInternal, "missing builtin interjection " + key);
  return it->second;
}

std::vector<std::string> Lexicon::PhoneInventory() const {
  std::set<std::string> phones;
  for (const auto &[word, pron] : entries_)
    for (const PronPhone &p : pron) phones.insert(p.phone);
  for (char c = 'a'; c <= 'z'; ++c) phones.insert(std::string(1, c));
  return {phones.begin(), phones.end()};
}

}  // namespace frontend
}  // namespace convtts
