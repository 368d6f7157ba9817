// convtts/features/f0.h

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

#ifndef CONVTTS_FEATURES_F0_H_
#define CONVTTS_FEATURES_F0_H_

#include <vector>

#include "convtts/io/wav.h"

namespace convtts {
namespace features {

struct F0Track {
  std::vector<double> f0;       // Hz; 0 on unvoiced frames
  std::vector<double> voicing;  // in [0, 1]; f0 > 0 iff voicing > 0
  double frame_hop = 256.0 / 22050.0;  // seconds
};

struct F0Config {
  int hop = 256;
  int window = 1024;
  double fmin = 50.0;
  double fmax = 500.0;
  // normalized autocorrelation peak mapped linearly onto [0, 1]
  double voicing_floor = 0.30;
  double voicing_ceil = 0.90;
  // earliest local peak within this fraction of the best peak wins,
  // which suppresses octave-down errors on strongly periodic frames
  double peak_ratio = 0.90;
};

// Autocorrelation pitch tracker. Frame t covers samples [t*hop, t*hop+window)
// (zero-padded past the end), so the track has ceil(samples/hop) frames.
// The normalized autocorrelation makes both f0 and voicing invariant to
// amplitude scaling. Raises EmptyAudio on zero-length input.
F0Track ExtractF0Voicing(const io::Waveform &wave, const F0Config &config = {});

}  // namespace features
}  // namespace convtts

#endif  // CONVTTS_FEATURES_F0_H_
