// convtts/vc/model.cc

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

#include "convtts/vc/model.h"

#include <cmath>
#include <numeric>

#include "convtts/am/model.h"
#include "json.hpp"

namespace convtts {
namespace vc {

using nn::Tape;
using nn::Var;

VcConfig VcConfig::Toy(int num_speakers, std::uint64_t seed) {
  VcConfig c;
  c.num_speakers = num_speakers;
  c.enc_channels = 64;
  c.enc_gru = 64;
  c.decoder_lstm = 128;
  c.prenet = 64;
  c.posenc = 8;
  c.postnet_channels = 16;
  c.seed = seed;
  return c;
}

std::string VcConfig::ToJsonString() const {
  nlohmann::json j;
  j["num_speakers"] = num_speakers;
  j["encoder_stride"] = encoder_stride;
  j["enc_channels"] = enc_channels;
  j["enc_kernel"] = enc_kernel;
  j["enc_gru"] = enc_gru;
  j["freeze_below"] = freeze_below;
  j["temperature"] = temperature;
  j["resample_sigma"] = resample_sigma;
  j["decoder_lstm"] = decoder_lstm;
  j["prenet"] = prenet;
  j["posenc"] = posenc;
  j["postnet_channels"] = postnet_channels;
  j["postnet_kernel"] = postnet_kernel;
  j["n_mels"] = n_mels;
  j["n_vocoder"] = n_vocoder;
  j["seed"] = seed;
  return j.dump();
}

VcConfig VcConfig::FromJsonString(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VcConfig c;
  c.num_speakers = j.at("num_speakers").get<int>();
  c.encoder_stride = j.at("encoder_stride").get<int>();
  c.enc_channels = j.at("enc_channels").get<int>();
  c.enc_kernel = j.at("enc_kernel").get<int>();
  c.enc_gru = j.at("enc_gru").get<int>();
  c.freeze_below = j.at("freeze_below").get<int>();
  c.temperature = j.at("temperature").get<double>();
  c.resample_sigma = j.at("resample_sigma").get<double>();
  c.decoder_lstm = j.at("decoder_lstm").get<int>();
  c.prenet = j.at("prenet").get<int>();
  c.posenc = j.at("posenc").get<int>();
  c.postnet_channels = j.at("postnet_channels").get<int>();
  c.postnet_kernel = j.at("postnet_kernel").get<int>();
  c.n_mels = j.at("n_mels").get<int>();
  c.n_vocoder = j.at("n_vocoder").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string VcConfig::Hash() const { return HashHex(ToJsonString()); }

Mat ResampleWeights(const std::vector<int> &durations, long t_enc, double ratio,
                    double sigma) {
  long L = static_cast<long>(durations.size());
  long T = std::accumulate(durations.begin(), durations.end(), 0L);
  if (T < 1) Raise(ErrorCode::kEmptyOutput, "durations sum to zero");
  if (t_enc < 1) Raise(ErrorCode::kEmptyOutput, "no content frames");
  Mat w = Mat::Zero(T, t_enc);

  long boundary = 0;  // cumulative TTS frames
  for (long i = 0; i < L; ++i) {
    long b0 = boundary, b1 = boundary + durations[i];
    boundary = b1;
    if (durations[i] == 0) continue;
    // content frames whose centers fall inside this symbol's interval
    long s0 = t_enc, s1 = -1;
    for (long j = 0; j < t_enc; ++j) {
      double center = (j + 0.5) / ratio;
      if (center >= b0 && center < b1) {
        s0 = std::min(s0, j);
        s1 = std::max(s1, j);
      }
    }
    if (s1 < s0) {
      // no native frame: borrow the one closest to the interval center
      double mid = ratio * (b0 + b1) / 2.0;
      long best = std::clamp<long>(static_cast<long>(std::floor(mid)), 0,
                                   t_enc - 1);
      for (long t = b0; t < b1; ++t) w(t, best) = 1.0;
      continue;
    }
    long n_src = s1 - s0 + 1;
    long n_tgt = b1 - b0;
    double step = static_cast<double>(n_tgt) / static_cast<double>(n_src);
    for (long t = 0; t < n_tgt; ++t) {
      double tau = t + 0.5;
      double norm = 0.0;
      for (long k = 0; k < n_src; ++k) {
        double c = (k + 0.5) * step;
        double d = tau - c;
        double a = std::exp(-d * d / (2.0 * sigma * sigma));
        w(b0 + t, s0 + k) = a;
        norm += a;
      }
      if (norm <= 0.0) {
        long best = std::clamp<long>(
            static_cast<long>(std::floor(tau / step)), 0, n_src - 1);
        w(b0 + t, s0 + best) = 1.0;
      } else {
        w.row(b0 + t).segment(s0, n_src) /= norm;
      }
    }
  }
  return w;
}

VcModel::VcModel(const VcConfig &config) : config_(config) {
  Rng rng(config_.seed);
  enc_conv1_.Init(&reg_, "cenc.conv1", config_.n_mels, config_.enc_channels,
                  config_.enc_kernel, config_.encoder_stride, &rng);
  // the strided layer keeps ceil(T/stride) rows when padded symmetrically
  enc_conv1_.pad = (config_.enc_kernel - 1) / 2;
  enc_conv2_.Init(&reg_, "cenc.conv2", config_.enc_channels,
                  config_.enc_channels, config_.enc_kernel, 1, &rng);
  enc_rnn_.Init(&reg_, "cenc.rnn", config_.enc_channels, config_.enc_gru, &rng);
  enc_proj_.Init(&reg_, "cenc.proj", config_.enc_gru, kContentDim, &rng);
  disc_proj_.Init(&reg_, "disc.proj", kContentDim, 2 * kNumCodes, &rng);

  am::DecoderConfig dec;
  dec.ctx_dim = config_.num_speakers * kNumCodes + config_.posenc;
  dec.n_mels = config_.n_mels;
  dec.n_vocoder = config_.n_vocoder;
  dec.lstm = config_.decoder_lstm;
  dec.prenet = config_.prenet;
  dec.postnet_channels = config_.postnet_channels;
  dec.postnet_kernel = config_.postnet_kernel;
  decoder_.Init(&reg_, "dec", dec, &rng);
}

Var VcModel::EncodeContentBuiltin(Tape &t, const Mat &mel) const {
  Var x = t.Constant(mel);
  x = t.Relu(enc_conv1_.Forward(t, x));
  x = t.Relu(enc_conv2_.Forward(t, x));
  x = enc_rnn_.Forward(t, x);
  return enc_proj_.Forward(t, x);
}

Var VcModel::EncodeContent(Tape &t, const VcUtterance &utt) const {
  if (utt.external_content.has_value()) {
    if (utt.external_content->cols() != kContentDim)
      Raise(ErrorCode::kDimensionMismatch,
            "external content has " +
                std::to_string(utt.external_content->cols()) +
                " columns, expected " + std::to_string(kContentDim));
    return t.Constant(*utt.external_content);
  }
  if (utt.mel.rows() == 0)
    Raise(ErrorCode::kMissingEncoder,
          "no content source: neither features nor external content present");
  return EncodeContentBuiltin(t, utt.mel);
}

Var VcModel::ResampleToTtsRate(Tape &t, Var content,
                               const std::vector<int> &durations) const {
  long t_enc = t.value(content).rows();
  long T = std::accumulate(durations.begin(), durations.end(), 0L);
  double ratio = static_cast<double>(t_enc) / static_cast<double>(T);
  Mat w = ResampleWeights(durations, t_enc, ratio, config_.resample_sigma);
  return t.MatMul(t.Constant(w), content);
}

Var VcModel::Discretize(Tape &t, Var resampled, CodeMode mode,
                        Rng *noise) const {
  if (config_.temperature <= 0.0)
    Raise(ErrorCode::kConfigError, "temperature must be positive");
  Var logits = disc_proj_.Forward(t, resampled);  // (T x 64), pairs (2n, 2n+1)
  std::vector<int> cat0(kNumCodes), cat1(kNumCodes);
  for (int n = 0; n < kNumCodes; ++n) {
    cat0[n] = 2 * n;
    cat1[n] = 2 * n + 1;
  }
  Var delta = t.Sub(t.GatherCols(logits, cat1), t.GatherCols(logits, cat0));
  long T = t.value(resampled).rows();
  if (noise != nullptr) {
    Mat g(T, kNumCodes);
    for (long r = 0; r < T; ++r)
      for (int c = 0; c < kNumCodes; ++c)
        g(r, c) = noise->Gumbel() - noise->Gumbel();
    delta = t.Add(delta, t.Constant(g));
  }
  // category-1 probability of the two-way Gumbel-Softmax
  Var relaxed = t.Sigmoid(t.Scale(delta, 1.0 / config_.temperature));
  if (mode == CodeMode::kHard) return t.HardBinary(relaxed);
  return relaxed;
}

Var VcModel::IntegrateSpeaker(Tape &t, Var h, int speaker_id) const {
  int K = config_.num_speakers;
  if (speaker_id < 0 || speaker_id >= K)
    Raise(ErrorCode::kSpeakerOutOfRange,
          "speaker " + std::to_string(speaker_id) + " not in [0, " +
              std::to_string(K) + ")");
  long T = t.value(h).rows();
  std::vector<Var> blocks;
  for (int k = 0; k < K; ++k) {
    if (k == speaker_id)
      blocks.push_back(h);
    else
      blocks.push_back(t.Constant(Mat::Zero(T, kNumCodes)));
  }
  return t.ConcatCols(blocks);
}

Var VcModel::BuildReconstructionLoss(Tape &t, const VcUtterance &utt,
                                     CodeMode mode, Rng *noise,
                                     VcLossRecord *record) const {
  Var content = EncodeContent(t, utt);
  Var resampled = ResampleToTtsRate(t, content, utt.durations);
  Var h = Discretize(t, resampled, mode, noise);
  Var z = IntegrateSpeaker(t, h, utt.speaker_id);
  Mat pe = am::SinusoidalPositionalEncoding(utt.durations, config_.posenc);
  Var ctx = t.ConcatCols({z, t.Constant(pe)});
  am::DecodeVars dec = decoder_.Run(t, ctx, &utt.mel);

  Var l_mel = t.L1L2Loss(dec.mel, utt.mel);
  Var l_vpre = t.L1L2Loss(dec.voc_pre, utt.vocoder);
  Var l_vpost = t.L1L2Loss(dec.voc_post, utt.vocoder);
  Var total = t.Add(l_mel, t.Add(l_vpre, l_vpost));
  if (record != nullptr) {
    record->mel = t.value(l_mel)(0, 0);
    record->voc_pre = t.value(l_vpre)(0, 0);
    record->voc_post = t.value(l_vpost)(0, 0);
    record->total = t.value(total)(0, 0);
  }
  return total;
}

VcLossRecord VcModel::TrainStep(const std::vector<const VcUtterance *> &batch,
                                Rng *noise, nn::Adam *opt) const {
  if (batch.empty()) Raise(ErrorCode::kInternal, "empty batch");
  Tape t;
  VcLossRecord mean;
  Var sum;
  for (const VcUtterance *utt : batch) {
    VcLossRecord r;
    Var loss = BuildReconstructionLoss(t, *utt, CodeMode::kRelaxed, noise, &r);
    sum = sum.valid() ? t.Add(sum, loss) : loss;
    mean.total += r.total;
    mean.mel += r.mel;
    mean.voc_pre += r.voc_pre;
    mean.voc_post += r.voc_post;
  }
  double inv = 1.0 / static_cast<double>(batch.size());
  Var objective = t.Scale(sum, inv);
  opt->ZeroGrad();
  t.Backward(objective);
  opt->Step();
  mean.total *= inv;
  mean.mel *= inv;
  mean.voc_pre *= inv;
  mean.voc_post *= inv;
  return mean;
}

VcLossRecord VcModel::EvalReconstruction(const VcUtterance &utt) const {
  Tape t;
  VcLossRecord r;
  BuildReconstructionLoss(t, utt, CodeMode::kHard, nullptr, &r);
  return r;
}

DiscreteCode VcModel::HardCodes(const VcUtterance &utt) const {
  Tape t;
  Var content = EncodeContent(t, utt);
  Var resampled = ResampleToTtsRate(t, content, utt.durations);
  Var h = Discretize(t, resampled, CodeMode::kHard, nullptr);
  return DiscreteCode{t.value(h), CodeMode::kHard};
}

ConvertResult VcModel::Convert(const VcUtterance &utt,
                               int target_speaker) const {
  if (!trained_)
    Raise(ErrorCode::kUntrainedModel, "conversion requires a trained VC model");
  Tape t;
  Var content = EncodeContent(t, utt);
  Var resampled = ResampleToTtsRate(t, content, utt.durations);
  Var h = Discretize(t, resampled, CodeMode::kHard, nullptr);
  Var z = IntegrateSpeaker(t, h, target_speaker);
  Mat pe = am::SinusoidalPositionalEncoding(utt.durations, config_.posenc);
  Var ctx = t.ConcatCols({z, t.Constant(pe)});
  am::DecodeVars dec = decoder_.Run(t, ctx, nullptr);

  ConvertResult res;
  res.mel = t.value(dec.mel);
  res.vocoder = t.value(dec.voc_post);
  res.durations = utt.durations;
  res.code = DiscreteCode{t.value(h), CodeMode::kHard};
  return res;
}

std::vector<std::vector<nn::Parameter *>> VcModel::EncoderLayers() const {
  return {
      {enc_conv1_.w, enc_conv1_.b},
      {enc_conv2_.w, enc_conv2_.b},
      {enc_rnn_.wx, enc_rnn_.wh, enc_rnn_.b},
      {enc_proj_.w, enc_proj_.b},
  };
}

std::vector<nn::Parameter *> VcModel::TrainableParams() const {
  auto layers = EncoderLayers();
  std::vector<nn::Parameter *> frozen;
  for (int l = 0; l < config_.freeze_below && l < static_cast<int>(layers.size());
       ++l)
    for (nn::Parameter *p : layers[l]) frozen.push_back(p);
  std::vector<nn::Parameter *> out;
  for (const auto &p : reg_.params()) {
    bool is_frozen = false;
    for (nn::Parameter *f : frozen) is_frozen = is_frozen || f == p.get();
    if (!is_frozen) out.push_back(p.get());
  }
  return out;
}

io::Checkpoint VcModel::MakeCheckpoint(long long step) const {
  return io::Checkpoint::FromRegistry(reg_, config_.Hash(), "vc", step);
}

void VcModel::LoadCheckpoint(const io::Checkpoint &ck) {
  if (ck.stage != "vc")
    Raise(ErrorCode::kStageMismatch, "not a voice-conversion checkpoint");
  if (ck.config_hash != config_.Hash())
    Raise(ErrorCode::kValidationFailure,
          "checkpoint was produced by a different configuration");
  ck.ApplyToRegistry(&reg_);
  trained_ = true;
}

}  // namespace vc
}  // namespace convtts
