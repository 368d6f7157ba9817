// convtts/features/spectral.h

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

#ifndef CONVTTS_FEATURES_SPECTRAL_H_
#define CONVTTS_FEATURES_SPECTRAL_H_

#include <vector>

#include "convtts/common.h"
#include "convtts/features/f0.h"
#include "convtts/io/wav.h"

namespace convtts {
namespace features {

struct SpectralConfig {
  int hop = 256;
  int window = 1024;  // must be a power of two
  int n_mels = 80;
  int n_cepstra = 20;
  double fmin = 0.0;
  double fmax = 11025.0;
  double log_floor = 1e-10;
  double voicing_gate = 0.25;  // below this, frames read back as unvoiced
};

// Per-utterance acoustic features: 80-band log-mel track, 22-dim vocoder
// track (20 envelope cepstra + normalized log pitch period + pitch
// correlation) and the per-symbol frame durations that tile the tracks.
struct AcousticFeatures {
  Mat mel;                  // [T x n_mels]
  Mat vocoder;              // [T x n_cepstra+2]
  std::vector<int> durations;  // per symbol; sums to T
  F0Track f0track;
};

// Extracts mel and vocoder tracks, reconciling the frame count with
// sum(durations): up to a 2-frame gap is absorbed by padding (repeating the
// final frame) or truncation, larger gaps raise DurationMismatch.
AcousticFeatures ExtractAcousticFeatures(const io::Waveform &wave,
                                         const std::vector<int> &durations,
                                         const SpectralConfig &config = {},
                                         const F0Config &f0_config = {});

// Rebuilds an F0Track from the two pitch columns of a (possibly synthetic)
// vocoder track; the inverse of the pitch encoding used above.
F0Track F0TrackFromVocoder(const Mat &vocoder, const SpectralConfig &config = {},
                           const F0Config &f0_config = {});

// In-place radix-2 FFT over interleaved complex data (test hook).
void Fft(std::vector<double> *re, std::vector<double> *im);

}  // namespace features
}  // namespace convtts

#endif  // CONVTTS_FEATURES_SPECTRAL_H_
