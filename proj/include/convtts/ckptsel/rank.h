// convtts/ckptsel/rank.h

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

#ifndef CONVTTS_CKPTSEL_RANK_H_
#define CONVTTS_CKPTSEL_RANK_H_

#include <functional>
#include <string>
#include <vector>

#include "convtts/ckptsel/slope.h"

namespace convtts {
namespace ckptsel {

struct CheckpointScore {
  std::string checkpoint_id;
  long long step = 0;
  int unnatural_count = 0;
  int total = 0;  // natural + unnatural; indeterminate excluded
  std::vector<Verdict> verdicts;  // one per held-out utterance
};

// One rankable checkpoint: `synthesize(i)` renders the i-th held-out text
// and returns its contour. Throwing marks the whole checkpoint failed.
struct RankCandidate {
  std::string id;
  long long step = 0;
  std::function<UtteranceContour(int utterance_index)> synthesize;
};

// Scores every candidate against the references, sorts ascending by
// unnatural count (later training step wins ties) and returns the top_k
// entries (all, when top_k <= 0). Failed checkpoints are excluded and
// reported through `failed`.
std::vector<CheckpointScore> RankCheckpoints(
    const std::vector<RankCandidate> &candidates,
    const std::vector<UtteranceContour> &references, const SlopeConfig &config,
    int top_k, std::vector<std::string> *failed = nullptr);

}  // namespace ckptsel
}  // namespace convtts

#endif  // CONVTTS_CKPTSEL_RANK_H_
