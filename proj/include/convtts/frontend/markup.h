// convtts/frontend/markup.h

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

#ifndef CONVTTS_FRONTEND_MARKUP_H_
#define CONVTTS_FRONTEND_MARKUP_H_

#include <string>
#include <vector>

#include "convtts/common.h"

namespace convtts {
namespace frontend {

// Ten communicative-function tags plus the absent value.
enum class DialogTag {
  kAgreement, kFarewell, kGreeting, kEmpathy, kInstruction,
  kPositiveFeedback, kSurprise, kThanks, kUncertainty, kWaiting, kNone,
};
constexpr int kNumDialogTags = 11;

// Seven phonetically transcribable interjections plus the absent value.
enum class InterjectionType {
  kAha, kOh, kHmm, kHuh, kUh, kUhHuh, kUm, kNone,
};
constexpr int kNumInterjectionTypes = 8;

enum class SpeakerRole { kAgent, kUser };
enum class Style { kNeutral, kConversational };

const char *DialogTagName(DialogTag tag);
const char *InterjectionTypeName(InterjectionType type);
const char *InterjectionOrthography(InterjectionType type);
const char *SpeakerRoleName(SpeakerRole role);
const char *StyleName(Style style);

// Parse helpers raise UnknownTag for names outside the inventories.
DialogTag DialogTagFromName(const std::string &name);
InterjectionType InterjectionTypeFromName(const std::string &name);
SpeakerRole SpeakerRoleFromName(const std::string &name);
Style StyleFromName(const std::string &name);

// A maximal run of text with uniform annotation state.
struct Span {
  std::string text;
  DialogTag dialog_tag = DialogTag::kNone;
  InterjectionType interjection = InterjectionType::kNone;
  bool emphasis = false;

  bool operator==(const Span &) const = default;
};

struct AnnotatedUtterance {
  std::string utterance_id;
  SpeakerRole speaker_role = SpeakerRole::kAgent;
  Style style = Style::kNeutral;
  std::vector<Span> spans;

  std::string PlainText() const;
};

// Parses the bracket markup described in docs/markup.md:
//   [da:greeting]Hi there![/da]   [intj:uh_huh]Uh-huh[/intj]   [emph]now[/emph]
// Dialog-act blocks cannot nest; [emph] may contain [intj] but not vice
// versa. Raises UnknownTag, MalformedMarkup or NonWordEmphasis.
AnnotatedUtterance ParseMarkup(const std::string &text);

// Emits markup text that ParseMarkup maps back onto the same span list.
std::string SerializeMarkup(const AnnotatedUtterance &utt);

}  // namespace frontend
}  // namespace convtts

#endif  // CONVTTS_FRONTEND_MARKUP_H_
