// convtts/augment/augment.h

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

#ifndef CONVTTS_AUGMENT_AUGMENT_H_
#define CONVTTS_AUGMENT_AUGMENT_H_

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "convtts/augment/manifest.h"

namespace convtts {
namespace augment {

enum class SystemKind { kBase, kAdv, kAug };

const char *SystemKindName(SystemKind kind);
SystemKind SystemKindFromName(const std::string &name);

// Per-style constant prosody-control offsets: three utterance-level and
// three word-level values.
struct StyleOffsets {
  std::array<double, 3> utterance{0, 0, 0};
  std::array<double, 3> word{0, 0, 0};
};

struct SystemConfig {
  SystemKind kind = SystemKind::kBase;
  bool adversary_enabled = false;
  CorpusManifest manifest;
  std::map<std::string, StyleOffsets> hpc_offsets;  // keyed by style name
};

struct AugmentStats {
  int requested = 0;
  int converted = 0;
  int failed = 0;
};

// Converts one source row into `out_feature_path` for `target_speaker`;
// returns false (or throws) on failure. Implemented over vc::VcModel by the
// orchestration layer and faked in tests.
using ConvertFn = std::function<bool(const ManifestRow &source,
                                     int target_speaker,
                                     const std::string &out_feature_path)>;

// Applies VC over the conversational corpus for every listed neutral
// speaker. Produces |neutral| x |conv_manifest| synthetic rows (minus
// skipped failures); raises ConversionFailure when the success rate drops
// below `min_success`. Conversion jobs run `jobs`-wide; outputs and row
// order do not depend on scheduling.
CorpusManifest GenerateAugmentedCorpus(const CorpusManifest &conv_manifest,
                                       const std::vector<int> &neutral_speakers,
                                       const ConvertFn &convert,
                                       const std::string &out_dir,
                                       AugmentStats *stats = nullptr,
                                       double min_success = 0.95, int jobs = 1);

// Base = recorded only; Adv = recorded only with the adversary enabled;
// Aug = recorded minus every row of the conversational speaker, plus the
// augmented manifest. Raises IncompleteCorpus when the recorded corpus lacks
// the conversational speaker or a second speaker.
SystemConfig AssembleTrainingManifest(SystemKind kind,
                                      const CorpusManifest &recorded,
                                      const CorpusManifest &augmented,
                                      int conversational_speaker);

// Proxy statistics a synthesis probe reports for one offset setting.
struct OffsetProxy {
  double total_frames = 0;
  double pitch_range = 0;
};

using SynthProbe = std::function<OffsetProxy(const Vec &utt_offsets,
                                             const Vec &word_offsets)>;

// Grid search over (pitch-range, log-rate) utterance offsets against
// total-duration and pitch-range targets. Returns (utterance, word) offsets;
// word offsets mirror the utterance ones.
std::pair<Vec, Vec> GridSearchOffsets(const SynthProbe &probe,
                                      const OffsetProxy &target,
                                      const std::vector<double> &grid);

}  // namespace augment
}  // namespace convtts

#endif  // CONVTTS_AUGMENT_AUGMENT_H_
