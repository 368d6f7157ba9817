// convtts/features/hpc.h

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

#ifndef CONVTTS_FEATURES_HPC_H_
#define CONVTTS_FEATURES_HPC_H_

#include <utility>
#include <vector>

#include "convtts/common.h"
#include "convtts/features/spectral.h"
#include "convtts/frontend/symbols.h"

namespace convtts {
namespace features {

// Hierarchical prosodic controls: (pitch level, pitch range, log rate) at
// utterance level and per word, z-normalized per speaker.
constexpr int kHpcDims = 3;

struct HpcVector {
  Vec utterance;  // [3]
  Mat word;       // [W x 3]
};

struct SpeakerStats {
  Vec utt_mean = Vec::Zero(kHpcDims), utt_std = Vec::Ones(kHpcDims);
  Vec word_mean = Vec::Zero(kHpcDims), word_std = Vec::Ones(kHpcDims);
};

// Raw (un-normalized) controls. Pitch level is the median voiced log-f0,
// pitch range the 90th-10th percentile spread, rate the mean log duration of
// symbols at least one frame long. Words with no voiced frames inherit the
// utterance pitch values. Raises NoVoicedFrames on fully unvoiced input.
HpcVector ComputeHpcRaw(const AcousticFeatures &feats,
                        const std::vector<std::pair<int, int>> &word_spans);

HpcVector NormalizeHpc(const HpcVector &raw, const SpeakerStats &stats);

HpcVector ComputeHpc(const AcousticFeatures &feats,
                     const std::vector<std::pair<int, int>> &word_spans,
                     const SpeakerStats &stats);

// Reduction over one speaker's corpus of raw vectors.
SpeakerStats AccumulateSpeakerStats(const std::vector<HpcVector> &raw);

// Frame interval of each word, tiling [0, T): a word's interval starts where
// the previous one ended, so boundary and pause frames attach left.
std::vector<std::pair<int, int>> WordFrameSpans(
    const frontend::SymbolSequence &seq, const std::vector<int> &durations);

}  // namespace features
}  // namespace convtts

#endif  // CONVTTS_FEATURES_HPC_H_
