// convtts/augment/manifest.h

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

#ifndef CONVTTS_AUGMENT_MANIFEST_H_
#define CONVTTS_AUGMENT_MANIFEST_H_

#include <string>
#include <vector>

#include "convtts/common.h"
#include "convtts/frontend/markup.h"

namespace convtts {
namespace augment {

// One corpus row: an utterance bound to its speaker, style, markup and
// feature files. `origin` distinguishes recordings from VC-generated data.
struct ManifestRow {
  std::string utterance_id;
  int speaker_id = 0;
  frontend::Style style = frontend::Style::kNeutral;
  frontend::SpeakerRole role = frontend::SpeakerRole::kAgent;
  std::string markup_path;
  std::string feature_path;
  std::string origin = "recorded";  // "recorded" | "vc"
  int source_speaker = -1;          // origin == "vc" only

  bool operator==(const ManifestRow &) const = default;
};

struct CorpusManifest {
  std::vector<ManifestRow> rows;

  static CorpusManifest LoadJsonl(const std::string &path);
  void SaveJsonl(const std::string &path) const;

  // Uniqueness of utterance ids per (speaker, origin); optional eager check
  // that every referenced file exists. Raises ValidationFailure.
  void Validate(bool check_files) const;

  std::vector<int> Speakers() const;
  CorpusManifest FilterSpeaker(int speaker_id, bool keep) const;
  CorpusManifest FilterStyle(frontend::Style style) const;
};

}  // namespace augment
}  // namespace convtts

#endif  // CONVTTS_AUGMENT_MANIFEST_H_
