// convtts/exp/toygen.h

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

#ifndef CONVTTS_EXP_TOYGEN_H_
#define CONVTTS_EXP_TOYGEN_H_

#include <string>
#include <vector>

#include "convtts/augment/manifest.h"

namespace convtts {
namespace exp {

// Deterministic synthetic corpus with known alignments and controllable
// prosody: per-speaker f0 base and spectral tilt, per-dialog-tag pitch
// shifts, interjections, rising contours on questions. Ground truth for the
// whole pipeline at desk scale.
struct ToyCorpusOptions {
  // "standard": multi-speaker customer-care-style corpus, one conversational
  //             speaker with tags/interjections and speaker-specific wording.
  // "disentangle": two speakers reading the same texts, the only
  //             difference being a strong spectral tilt.
  std::string preset = "standard";
  int speakers = 4;
  int conv_speaker = 3;
  int utts_per_speaker = 12;
  int heldout_utts = 6;
  int test_script_lines = 70;
  double duration_scale = 1.0;  // stretches every phone
  std::uint64_t seed = 1;
};

struct ToyCorpus {
  std::string root;
  std::string lexicon_path;
  std::string recorded_manifest;  // root/recorded.jsonl
  std::string heldout_manifest;   // root/heldout.jsonl
  std::string test_script;        // root/script_test.tsv
  std::string meta_path;          // root/meta.json
};

// Writes the corpus under `root`: lexicon.tsv, markup/<id>.txt,
// wav/<id>.wav, align/<id>.json, manifests and a 70-line annotated test
// script. Feature files are *not* produced here; the `features` step fills
// the manifest's feature paths.
ToyCorpus MakeToyCorpus(const std::string &root, const ToyCorpusOptions &opts);

// Workspace metadata written by the generator and read by the trainer.
struct CorpusMeta {
  int num_speakers = 0;
  int conv_speaker = -1;
  std::vector<int> neutral_speakers;

  static CorpusMeta Load(const std::string &path);
  void Save(const std::string &path) const;
};

}  // namespace exp
}  // namespace convtts

#endif  // CONVTTS_EXP_TOYGEN_H_
