// convtts/vc/model.h

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

#ifndef CONVTTS_VC_MODEL_H_
#define CONVTTS_VC_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "convtts/am/decoder.h"
#include "convtts/io/checkpoint.h"
#include "convtts/nn/layers.h"
#include "convtts/rng.h"

namespace convtts {
namespace vc {

constexpr int kContentDim = 768;  // projection input contract
constexpr int kNumCodes = 32;     // binary latent width

struct VcConfig {
  int num_speakers = 2;

  // built-in content encoder (strided conv + conv + GRU + projection)
  int encoder_stride = 2;  // content rate = TTS frame rate / stride
  int enc_channels = 128;
  int enc_kernel = 5;
  int enc_gru = 128;
  int freeze_below = 0;  // encoder layers [0, freeze_below) stay fixed

  double temperature = 1.0;    // Gumbel-Softmax temperature
  double resample_sigma = 1.0; // Gaussian width of the rate resampler

  int decoder_lstm = 512;
  int prenet = 256;
  int posenc = 32;
  int postnet_channels = 64;
  int postnet_kernel = 5;
  int n_mels = 80;
  int n_vocoder = 22;

  std::uint64_t seed = 1;

  static VcConfig Toy(int num_speakers, std::uint64_t seed);
  std::string Hash() const;
  std::string ToJsonString() const;
  static VcConfig FromJsonString(const std::string &text);
};

// Value-level content frames (the external-encoder interchange type).
struct ContentFrames {
  Mat frames;              // [T_enc x 768]
  double frame_rate = 0.0; // Hz
};

enum class CodeMode { kRelaxed, kHard };

struct DiscreteCode {
  Mat h;  // [T x 32], entries in [0,1] (relaxed) or {0,1} (hard)
  CodeMode mode = CodeMode::kRelaxed;
};

struct VcLossRecord {
  double total = 0, mel = 0, voc_pre = 0, voc_post = 0;
};

struct VcUtterance {
  std::string utterance_id;
  int speaker_id = 0;
  Mat mel;      // [T x 80] input features and reconstruction target
  Mat vocoder;  // [T x 22] reconstruction target
  std::vector<int> durations;  // per symbol, sums to T
  std::optional<Mat> external_content;  // precomputed [T_enc x 768]
};

struct ConvertResult {
  Mat mel;
  Mat vocoder;
  std::vector<int> durations;  // copied from the source (prosody preserved)
  DiscreteCode code;           // hard codes used for the conversion
};

// Builds the [T x T_enc] resampling weights: per-symbol Gaussian upsampling
// from content frames to TTS frames, with symbol boundaries at exactly the
// positions implied by `durations`. `ratio` is content rows per TTS frame.
Mat ResampleWeights(const std::vector<int> &durations, long t_enc, double ratio,
                    double sigma);

// Conditional discrete-VAE voice conversion: pluggable content encoder,
// alignment-preserving rate resampling, 32 binary Gumbel-Softmax variables,
// outer-product speaker integration, and the shared spectral decoder.
class VcModel {
 public:
  explicit VcModel(const VcConfig &config);

  const VcConfig &config() const { return config_; }
  nn::ParamRegistry &registry() { return reg_; }
  bool trained() const { return trained_; }
  void set_trained(bool v) { trained_ = v; }

  // Built-in trainable content encoder over the mel track.
  nn::Var EncodeContentBuiltin(nn::Tape &t, const Mat &mel) const;

  // Either the external precomputed frames (checked against the 768-wide
  // contract) or the built-in encoder.
  nn::Var EncodeContent(nn::Tape &t, const VcUtterance &utt) const;

  nn::Var ResampleToTtsRate(nn::Tape &t, nn::Var content,
                            const std::vector<int> &durations) const;

  // Linear 768 -> 32x2 logit pairs, then per-pair binary Gumbel-Softmax.
  // noise == nullptr runs noise-free (deterministic). In hard mode the
  // forward value is the argmax indicator and the backward Jacobian is the
  // relaxed one (straight-through).
  nn::Var Discretize(nn::Tape &t, nn::Var resampled, CodeMode mode,
                     Rng *noise) const;

  // z_t = one_hot(speaker) (x) h_t: block k of the K*32-wide latent carries
  // h_t, every other block is zero.
  nn::Var IntegrateSpeaker(nn::Tape &t, nn::Var h, int speaker_id) const;

  nn::Var BuildReconstructionLoss(nn::Tape &t, const VcUtterance &utt,
                                  CodeMode mode, Rng *noise,
                                  VcLossRecord *record) const;

  VcLossRecord TrainStep(const std::vector<const VcUtterance *> &batch,
                         Rng *noise, nn::Adam *opt) const;

  // Teacher-forced reconstruction error with inference-style (hard,
  // noise-free) codes; the reference point for identity conversion.
  VcLossRecord EvalReconstruction(const VcUtterance &utt) const;

  // Hard noise-free codes for an utterance (probe surface).
  DiscreteCode HardCodes(const VcUtterance &utt) const;

  // Full conversion to `target_speaker`; output durations equal the input's.
  ConvertResult Convert(const VcUtterance &utt, int target_speaker) const;

  // Content-encoder layers in depth order, for the freezing contract.
  std::vector<std::vector<nn::Parameter *>> EncoderLayers() const;
  // Everything the optimizer may update under the configured freeze boundary.
  std::vector<nn::Parameter *> TrainableParams() const;

  io::Checkpoint MakeCheckpoint(long long step) const;
  void LoadCheckpoint(const io::Checkpoint &ck);

 private:
  VcConfig config_;
  nn::ParamRegistry reg_;
  bool trained_ = false;

  nn::Conv1dLayer enc_conv1_, enc_conv2_;
  nn::Gru enc_rnn_;
  nn::Linear enc_proj_;
  nn::Linear disc_proj_;
  am::SpectralDecoder decoder_;
};

}  // namespace vc
}  // namespace convtts

#endif  // CONVTTS_VC_MODEL_H_
