// convtts/am/decoder.cc

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

#include "convtts/am/decoder.h"

namespace convtts {
namespace am {

using nn::Tape;
using nn::Var;

void SpectralDecoder::Init(nn::ParamRegistry *reg, const std::string &prefix,
                           const DecoderConfig &config, Rng *rng) {
  cfg = config;
  prenet1.Init(reg, prefix + ".prenet1", cfg.n_mels, cfg.prenet, rng);
  prenet2.Init(reg, prefix + ".prenet2", cfg.prenet, cfg.prenet, rng);
  lstm1.Init(reg, prefix + ".lstm1", cfg.ctx_dim + cfg.prenet, cfg.lstm, rng);
  lstm2.Init(reg, prefix + ".lstm2", cfg.lstm, cfg.lstm, rng);
  int head_in = cfg.lstm + cfg.ctx_dim;
  mel_head.Init(reg, prefix + ".mel_head", head_in, cfg.n_mels, rng);
  voc_head.Init(reg, prefix + ".voc_head", head_in, cfg.n_vocoder, rng);

  int cep = cfg.n_vocoder - 2;
  int ch = cfg.postnet_channels;
  int pch = std::max(4, ch / 4);
  post_cep1.Init(reg, prefix + ".post_cep1", cep, ch, cfg.postnet_kernel, 1, rng);
  post_cep2.Init(reg, prefix + ".post_cep2", ch, ch, cfg.postnet_kernel, 1, rng);
  // zero-initialized final layers make the post-nets start as identities
  post_cep3.Init(reg, prefix + ".post_cep3", ch, cep, cfg.postnet_kernel, 1, rng,
                 /*zero=*/true);
  post_pit1.Init(reg, prefix + ".post_pit1", 2, pch, cfg.postnet_kernel, 1, rng);
  post_pit2.Init(reg, prefix + ".post_pit2", pch, 2, cfg.postnet_kernel, 1, rng,
                 /*zero=*/true);
}

DecodeVars SpectralDecoder::Run(Tape &t, Var ctx, const Mat *teacher_mel) const {
  long T = t.value(ctx).rows();
  int H = cfg.lstm;
  Var h1 = t.Constant(Mat::Zero(1, H)), c1 = t.Constant(Mat::Zero(1, H));
  Var h2 = t.Constant(Mat::Zero(1, H)), c2 = t.Constant(Mat::Zero(1, H));

  Var mel, voc_pre;
  if (teacher_mel != nullptr) {
    // teacher-forced: the prenet runs over the shifted target track at once
    Mat prev = Mat::Zero(T, cfg.n_mels);
    if (T > 1) prev.bottomRows(T - 1) = teacher_mel->topRows(T - 1);
    Var pn = t.Relu(
        prenet2.Forward(t, t.Relu(prenet1.Forward(t, t.Constant(prev)))));
    std::vector<Var> states(T);
    for (long i = 0; i < T; ++i) {
      Var x = t.ConcatCols({t.SliceRows(ctx, i, 1), t.SliceRows(pn, i, 1)});
      auto [nh1, nc1] = lstm1.Step(t, x, h1, c1);
      h1 = nh1; c1 = nc1;
      auto [nh2, nc2] = lstm2.Step(t, h1, h2, c2);
      h2 = nh2; c2 = nc2;
      states[i] = h2;
    }
    Var head_in = t.ConcatCols({t.ConcatRows(states), ctx});
    mel = mel_head.Forward(t, head_in);
    voc_pre = voc_head.Forward(t, head_in);
  } else {
    std::vector<Var> mel_rows(T), voc_rows(T);
    Var prev = t.Constant(Mat::Zero(1, cfg.n_mels));
    for (long i = 0; i < T; ++i) {
      Var pn = t.Relu(prenet2.Forward(t, t.Relu(prenet1.Forward(t, prev))));
      Var ctx_i = t.SliceRows(ctx, i, 1);
      Var x = t.ConcatCols({ctx_i, pn});
      auto [nh1, nc1] = lstm1.Step(t, x, h1, c1);
      h1 = nh1; c1 = nc1;
      auto [nh2, nc2] = lstm2.Step(t, h1, h2, c2);
      h2 = nh2; c2 = nc2;
      Var head_in = t.ConcatCols({h2, ctx_i});
      mel_rows[i] = mel_head.Forward(t, head_in);
      voc_rows[i] = voc_head.Forward(t, head_in);
      prev = mel_rows[i];
    }
    mel = t.ConcatRows(mel_rows);
    voc_pre = t.ConcatRows(voc_rows);
  }

  int cep = cfg.n_vocoder - 2;
  Var cep_in = t.SliceCols(voc_pre, 0, cep);
  Var cep_post = post_cep3.Forward(
      t, t.Tanh(post_cep2.Forward(t, t.Tanh(post_cep1.Forward(t, cep_in)))));
  Var pit_in = t.SliceCols(voc_pre, cep, 2);
  Var pit_post = post_pit2.Forward(t, t.Tanh(post_pit1.Forward(t, pit_in)));
  Var voc_post =
      t.ConcatCols({t.Add(cep_in, cep_post), t.Add(pit_in, pit_post)});
  return {mel, voc_pre, voc_post};
}

}  // namespace am
}  // namespace convtts
