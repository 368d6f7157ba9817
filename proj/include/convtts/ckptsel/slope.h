// convtts/ckptsel/slope.h

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

#ifndef CONVTTS_CKPTSEL_SLOPE_H_
#define CONVTTS_CKPTSEL_SLOPE_H_

#include <utility>
#include <vector>

#include "convtts/common.h"
#include "convtts/features/f0.h"

namespace convtts {
namespace ckptsel {

struct SlopeResult {
  double slope = 0.0;       // Hz per frame
  double n_effective = 0.0; // sum of voicing weights over the interval
};

struct SlopeConfig {
  double weight_threshold = 3.0;  // minimum effective voiced mass
  double eps = 1e-3;              // |slope| below this counts as flat
};

// Voicing-weighted linear regression of the f0 contour over frames [a, b).
// Raises NoVoicedFrames when the effective mass is at or below the
// threshold, DegenerateInterval when all weight sits on one time index.
SlopeResult WeightedF0Slope(const std::vector<double> &f0,
                            const std::vector<double> &weights, int a, int b,
                            double weight_threshold = 3.0);

enum class Verdict { kNatural, kUnnatural, kIndeterminate };
const char *VerdictName(Verdict v);

// An f0 contour plus its word frame intervals, for one utterance.
struct UtteranceContour {
  features::F0Track track;
  std::vector<std::pair<int, int>> word_spans;
};

// Final-intonation agreement: each side's slope is estimated over its own
// last-two-words interval (the time bases differ; only the signs are
// compared). Opposite signs flag an unnatural pattern; estimation failures
// and near-flat slopes yield indeterminate. Raises TooFewWords.
Verdict UtterancePatternCheck(const UtteranceContour &tts,
                              const UtteranceContour &ref,
                              const SlopeConfig &config = {});

}  // namespace ckptsel
}  // namespace convtts

#endif  // CONVTTS_CKPTSEL_SLOPE_H_
