// convtts/am/decoder.h

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

#ifndef CONVTTS_AM_DECODER_H_
#define CONVTTS_AM_DECODER_H_

#include <string>
#include <vector>

#include "convtts/nn/layers.h"

namespace convtts {
namespace am {

struct DecoderConfig {
  int ctx_dim = 0;  // per-frame conditioning width (posenc included)
  int n_mels = 80;
  int n_vocoder = 22;
  int lstm = 512;
  int prenet = 256;
  int postnet_channels = 64;
  int postnet_kernel = 5;
};

struct DecodeVars {
  nn::Var mel;       // (T x n_mels)
  nn::Var voc_pre;   // (T x n_vocoder)
  nn::Var voc_post;  // (T x n_vocoder)
};

// Autoregressive spectral decoder: prenet on the 80-dim mel feedback, two
// LSTM stacks, two parallel linear heads, and residual post-nets split
// between envelope cepstra and the two pitch columns. The same architecture
// serves the TTS model and the voice-conversion decoder (separate weights).
struct SpectralDecoder {
  DecoderConfig cfg;
  nn::Linear prenet1, prenet2;
  nn::Lstm lstm1, lstm2;
  nn::Linear mel_head, voc_head;
  nn::Conv1dLayer post_cep1, post_cep2, post_cep3;
  nn::Conv1dLayer post_pit1, post_pit2;

  void Init(nn::ParamRegistry *reg, const std::string &prefix,
            const DecoderConfig &config, Rng *rng);

  // Teacher-forced when teacher_mel is non-null, else self-fed from the
  // zero go-frame. The context rows fix the output length: non-attentive,
  // so exactly ctx.rows() frames come out.
  DecodeVars Run(nn::Tape &t, nn::Var ctx, const Mat *teacher_mel) const;
};

}  // namespace am
}  // namespace convtts

#endif  // CONVTTS_AM_DECODER_H_
