// convtts/features/f0.cc

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

#include "convtts/features/f0.h"

#include <algorithm>
#include <cmath>

#include "convtts/common.h"

namespace convtts {
namespace features {

F0Track ExtractF0Voicing(const io::Waveform &wave, const F0Config &config) {
  if (wave.samples.empty()) Raise(ErrorCode::kEmptyAudio, "zero-length audio");
  const double fs = wave.sample_rate;
  const long n = static_cast<long>(wave.samples.size());
  const long frames = (n + config.hop - 1) / config.hop;
  const int w = config.window;
  const int lag_min = std::max(2, static_cast<int>(std::floor(fs / config.fmax)));
  const int lag_max = std::min(w - 2, static_cast<int>(std::ceil(fs / config.fmin)));

  F0Track track;
  track.f0.assign(frames, 0.0);
  track.voicing.assign(frames, 0.0);
  track.frame_hop = config.hop / fs;

  std::vector<double> seg(w);
  std::vector<double> r(lag_max + 2, 0.0);
  // prefix sums of squares allow O(1) per-lag normalization
  std::vector<double> sq(w + 1, 0.0);

  for (long t = 0; t < frames; ++t) {
    long start = t * config.hop;
    for (int i = 0; i < w; ++i) {
      long s = start + i;
      seg[i] = (s < n) ? wave.samples[s] : 0.0;
    }
    for (int i = 0; i < w; ++i) sq[i + 1] = sq[i] + seg[i] * seg[i];
    if (sq[w] <= 0.0) continue;  // digital silence

    for (int lag = lag_min - 1; lag <= lag_max + 1 && lag < w; ++lag) {
      double acc = 0.0;
      for (int i = 0; i + lag < w; ++i) acc += seg[i] * seg[i + lag];
      double e1 = sq[w - lag];                 // energy of seg[0 .. w-lag)
      double e2 = sq[w] - sq[lag];             // energy of seg[lag .. w)
      r[lag] = (e1 > 0.0 && e2 > 0.0) ? acc / std::sqrt(e1 * e2) : 0.0;
    }

    // best normalized peak, then the earliest local peak close to it
    double best = 0.0;
    for (int lag = lag_min; lag <= lag_max; ++lag) best = std::max(best, r[lag]);
    if (best <= config.voicing_floor) continue;
    int chosen = -1;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
      if (r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1] &&
          r[lag] >= config.peak_ratio * best) {
        chosen = lag;
        break;
      }
    }
    if (chosen < 0) continue;

    // parabolic refinement around the peak
    double denom = r[chosen - 1] - 2.0 * r[chosen] + r[chosen + 1];
    double delta = 0.0;
    if (std::abs(denom) > 1e-12)
      delta = 0.5 * (r[chosen - 1] - r[chosen + 1]) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    double lag_star = chosen + delta;

    double voicing = (r[chosen] - config.voicing_floor) /
                     (config.voicing_ceil - config.voicing_floor);
    voicing = std::clamp(voicing, 0.0, 1.0);
    if (voicing > 0.0) {
      track.voicing[t] = voicing;
      track.f0[t] = fs / lag_star;
    }
  }
  return track;
}

}  // namespace features
}  // namespace convtts
