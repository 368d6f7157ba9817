// convtts/ckptsel/rank.cc

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

#include "convtts/ckptsel/rank.h"

#include <algorithm>

namespace convtts {
namespace ckptsel {

std::vector<CheckpointScore> RankCheckpoints(
    const std::vector<RankCandidate> &candidates,
    const std::vector<UtteranceContour> &references, const SlopeConfig &config,
    int top_k, std::vector<std::string> *failed) {
  std::vector<CheckpointScore> scores;
  for (const RankCandidate &cand : candidates) {
    CheckpointScore score;
    score.checkpoint_id = cand.id;
    score.step = cand.step;
    bool ok = true;
    for (std::size_t i = 0; i < references.size(); ++i) {
      UtteranceContour synth;
      try {
        synth = cand.synthesize(static_cast<int>(i));
      } catch (const std::exception &) {
        ok = false;
        break;
      }
      Verdict v;
      try {
        v = UtterancePatternCheck(synth, references[i], config);
      } catch (const Error &) {
        v = Verdict::kIndeterminate;
      }
      score.verdicts.push_back(v);
      if (v != Verdict::kIndeterminate) {
        ++score.total;
        if (v == Verdict::kUnnatural) ++score.unnatural_count;
      }
    }
    if (!ok) {
      if (failed != nullptr) failed->push_back(cand.id);
      continue;
    }
    scores.push_back(std::move(score));
  }

  std::stable_sort(scores.begin(), scores.end(),
                   [](const CheckpointScore &a, const CheckpointScore &b) {
                     if (a.unnatural_count != b.unnatural_count)
                       return a.unnatural_count < b.unnatural_count;
                     return a.step > b.step;  // later checkpoint wins ties
                   });
  if (top_k > 0 && static_cast<int>(scores.size()) > top_k)
    scores.resize(top_k);
  return scores;
}

}  // namespace ckptsel
}  // namespace convtts
