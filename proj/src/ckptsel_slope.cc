// convtts/ckptsel/slope.cc

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

#include "convtts/ckptsel/slope.h"

#include <cmath>

namespace convtts {
namespace ckptsel {

const char *VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kNatural: return "natural";
    case Verdict::kUnnatural: return "unnatural";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "indeterminate";
}

SlopeResult WeightedF0Slope(const std::vector<double> &f0,
                            const std::vector<double> &weights, int a, int b,
                            double weight_threshold) {
  if (b <= a || a < 0 || b > static_cast<int>(f0.size()) ||
      f0.size() != weights.size())
    Raise(ErrorCode::kDegenerateInterval, "invalid slope interval");

  double wsum = 0.0, tbar = 0.0, fbar = 0.0;
  for (int t = a; t < b; ++t) {
    wsum += weights[t];
    tbar += weights[t] * t;
    fbar += weights[t] * f0[t];
  }
  if (wsum <= weight_threshold)
    Raise(ErrorCode::kNoVoicedFrames,
          "effective voiced mass " + std::to_string(wsum) +
              " at or below threshold");
  tbar /= wsum;
  fbar /= wsum;

  double num = 0.0, den = 0.0;
  for (int t = a; t < b; ++t) {
    double dt = t - tbar;
    num += weights[t] * dt * (f0[t] - fbar);
    den += weights[t] * dt * dt;
  }
  if (den <= 0.0)
    Raise(ErrorCode::kDegenerateInterval,
          "all regression weight on a single time index");
  return SlopeResult{num / den, wsum};
}

namespace {

SlopeResult LastTwoWordsSlope(const UtteranceContour &utt,
                              const SlopeConfig &config) {
  std::size_t w = utt.word_spans.size();
  if (w < 2)
    Raise(ErrorCode::kTooFewWords, "need at least two words, have " +
                                       std::to_string(w));
  int a = utt.word_spans[w - 2].first;
  int b = utt.word_spans[w - 1].second;
  return WeightedF0Slope(utt.track.f0, utt.track.voicing, a, b,
                         config.weight_threshold);
}

}  // namespace

Verdict UtterancePatternCheck(const UtteranceContour &tts,
                              const UtteranceContour &ref,
                              const SlopeConfig &config) {
  if (tts.word_spans.size() < 2 || ref.word_spans.size() < 2)
    Raise(ErrorCode::kTooFewWords, "pattern check needs two words per side");
  SlopeResult s_tts, s_ref;
  try {
    s_tts = LastTwoWordsSlope(tts, config);
    s_ref = LastTwoWordsSlope(ref, config);
  } catch (const Error &) {
    return Verdict::kIndeterminate;
  }
  if (std::abs(s_tts.slope) < config.eps || std::abs(s_ref.slope) < config.eps)
    return Verdict::kIndeterminate;
  return (s_tts.slope * s_ref.slope < 0.0) ? Verdict::kUnnatural
                                           : Verdict::kNatural;
}

}  // namespace ckptsel
}  // namespace convtts
