// convtts/frontend/markup.cc

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

#include "convtts/frontend/markup.h"

#include <algorithm>
#include <cctype>

namespace convtts {
namespace frontend {

namespace {

const char *kDialogTagNames[kNumDialogTags] = {
    "agreement", "farewell", "greeting", "empathy", "instruction",
    "positive_feedback", "surprise", "thanks", "uncertainty", "waiting",
    "none"};

const char *kInterjectionNames[kNumInterjectionTypes] = {
    "aha", "oh", "hmm", "huh", "uh", "uh_huh", "um", "none"};

const char *kInterjectionOrth[kNumInterjectionTypes] = {
    "aha", "oh", "hmm", "huh", "uh", "uh-huh", "um", ""};

std::string Lower(const std::string &s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string Trim(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
}

}  // namespace

const char *DialogTagName(DialogTag tag) {
  return kDialogTagNames[static_cast<int>(tag)];
}

const char *InterjectionTypeName(InterjectionType type) {
  return kInterjectionNames[static_cast<int>(type)];
}

const char *InterjectionOrthography(InterjectionType type) {
  return kInterjectionOrth[static_cast<int>(type)];
}

const char *SpeakerRoleName(SpeakerRole role) {
  return role == SpeakerRole::kAgent ? "agent" : "user";
}

const char *StyleName(Style style) {
  return style == Style::kNeutral ? "neutral" : "conversational";
}

DialogTag DialogTagFromName(const std::string &name) {
  for (int i = 0; i < kNumDialogTags; ++i)
    if (name == kDialogTagNames[i]) return static_cast<DialogTag>(i);
  Raise(ErrorCode::kUnknownTag, "dialog tag '" + name + "'");
}

InterjectionType InterjectionTypeFromName(const std::string &name) {
  for (int i = 0; i < kNumInterjectionTypes; ++i)
    if (name == kInterjectionNames[i]) return static_cast<InterjectionType>(i);
  Raise(ErrorCode::kUnknownTag, "interjection type '" + name + "'");
}

SpeakerRole SpeakerRoleFromName(const std::string &name) {
  if (name == "agent") return SpeakerRole::kAgent;
  if (name == "user") return SpeakerRole::kUser;
  Raise(ErrorCode::kUnknownTag, "speaker role '" + name + "'");
}

Style StyleFromName(const std::string &name) {
  if (name == "neutral") return Style::kNeutral;
  if (name == "conversational") return Style::kConversational;
  Raise(ErrorCode::kUnknownTag, "style '" + name + "'");
}

std::string AnnotatedUtterance::PlainText() const {
  std::string out;
  for (const Span &s : spans) out += s.text;
  return out;
}

AnnotatedUtterance ParseMarkup(const std::string &text) {
  AnnotatedUtterance utt;
  DialogTag da = DialogTag::kNone;
  InterjectionType intj = InterjectionType::kNone;
  bool emph = false;
  bool in_da = false;
  char before_emph = '\0';

  std::string buf;
  char last_plain = '\0';  // last plain-text character seen so far

  auto flush = [&]() {
    if (buf.empty()) return;
    utt.spans.push_back(Span{buf, da, intj, emph});
    last_plain = buf.back();
    buf.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ']')
      Raise(ErrorCode::kMalformedMarkup, "stray ']' at offset " +
                                             std::to_string(i));
    if (c != '[') {
      buf += c;
      ++i;
      continue;
    }
    std::size_t close = text.find(']', i);
    if (close == std::string::npos)
      Raise(ErrorCode::kMalformedMarkup, "unterminated '[' at offset " +
                                             std::to_string(i));
    std::string tag = text.substr(i + 1, close - i - 1);
    i = close + 1;

    if (tag.rfind("da:", 0) == 0) {
      if (in_da)
        Raise(ErrorCode::kMalformedMarkup, "nested [da:] block");
      if (intj != InterjectionType::kNone || emph)
        Raise(ErrorCode::kMalformedMarkup,
              "[da:] must not open inside [intj] or [emph]");
      flush();
      da = DialogTagFromName(tag.substr(3));
      in_da = true;
    } else if (tag == "/da") {
      if (!in_da || intj != InterjectionType::kNone || emph)
        Raise(ErrorCode::kMalformedMarkup, "unbalanced [/da]");
      flush();
      da = DialogTag::kNone;
      in_da = false;
    } else if (tag.rfind("intj:", 0) == 0) {
      if (intj != InterjectionType::kNone)
        Raise(ErrorCode::kMalformedMarkup, "nested [intj:] block");
      flush();
      intj = InterjectionTypeFromName(tag.substr(5));
      if (intj == InterjectionType::kNone)
        Raise(ErrorCode::kUnknownTag, "interjection type 'none'");
    } else if (tag == "/intj") {
      if (intj == InterjectionType::kNone)
        Raise(ErrorCode::kMalformedMarkup, "unbalanced [/intj]");
      std::string norm = Lower(Trim(buf));
      if (norm != InterjectionOrthography(intj))
        Raise(ErrorCode::kMalformedMarkup,
              "interjection text '" + buf + "' does not spell '" +
                  std::string(InterjectionOrthography(intj)) + "'");
      flush();
      intj = InterjectionType::kNone;
    } else if (tag == "emph") {
      if (emph)
        Raise(ErrorCode::kMalformedMarkup, "nested [emph] block");
      if (intj != InterjectionType::kNone)
        Raise(ErrorCode::kMalformedMarkup, "[emph] must not open inside [intj]");
      before_emph = buf.empty() ? last_plain : buf.back();
      flush();
      emph = true;
    } else if (tag == "/emph") {
      if (!emph || intj != InterjectionType::kNone)
        Raise(ErrorCode::kMalformedMarkup, "unbalanced [/emph]");
      // the emphasized run must start and end at word edges
      std::string span_text = buf;
      if (Trim(span_text).empty())
        Raise(ErrorCode::kNonWordEmphasis, "empty emphasis span");
      if (IsWordChar(before_emph) && IsWordChar(span_text.front()))
        Raise(ErrorCode::kNonWordEmphasis, "emphasis opens mid-word");
      char next = (i < text.size()) ? text[i] : '\0';
      if (IsWordChar(span_text.back()) && IsWordChar(next))
        Raise(ErrorCode::kNonWordEmphasis, "emphasis closes mid-word");
      flush();
      emph = false;
    } else {
      Raise(ErrorCode::kMalformedMarkup, "unrecognized tag [" + tag + "]");
    }
  }
  if (in_da || intj != InterjectionType::kNone || emph)
    Raise(ErrorCode::kMalformedMarkup, "unclosed block at end of input");
  flush();
  return utt;
}

std::string SerializeMarkup(const AnnotatedUtterance &utt) {
  std::string out;
  DialogTag open_da = DialogTag::kNone;
  for (const Span &s : utt.spans) {
    if (s.dialog_tag != open_da) {
      if (open_da != DialogTag::kNone) out += "[/da]";
      if (s.dialog_tag != DialogTag::kNone)
        out += "[da:" + std::string(DialogTagName(s.dialog_tag)) + "]";
      open_da = s.dialog_tag;
    }
    if (s.emphasis) out += "[emph]";
    if (s.interjection != InterjectionType::kNone)
      out += "[intj:" + std::string(InterjectionTypeName(s.interjection)) + "]";
    out += s.text;
    if (s.interjection != InterjectionType::kNone) out += "[/intj]";
    if (s.emphasis) out += "[/emph]";
  }
  if (open_da != DialogTag::kNone) out += "[/da]";
  return out;
}

}  // namespace frontend
}  // namespace convtts
