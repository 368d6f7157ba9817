// convtts/am/model.h

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

#ifndef CONVTTS_AM_MODEL_H_
#define CONVTTS_AM_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "convtts/adversary/adversary.h"
#include "convtts/am/decoder.h"
#include "convtts/features/hpc.h"
#include "convtts/frontend/symbols.h"
#include "convtts/io/checkpoint.h"
#include "convtts/nn/layers.h"

namespace convtts {
namespace am {

// Dimensions and loss weights of the duration-informed acoustic model. The
// toy preset quarters every width so the whole model trains on a CPU in
// minutes.
struct AmConfig {
  int num_speakers = 2;
  int joint_vocab = 0;  // set from the vocabulary tables

  int d_joint = 128, d_style = 16, d_emph = 8, d_da = 32, d_intj = 32;
  int d_fe = 256;       // FE encoder output width
  int d_spk = 32;       // speaker embedding
  int d_hpc = 16;       // HPC embedding
  int enc_kernel = 5;
  int dur_hidden = 128;    // duration/range predictor BiGRU width (per dir)
  int decoder_lstm = 512;  // two stacks
  int prenet = 256;
  int posenc = 32;
  int postnet_channels = 64;
  int postnet_kernel = 5;
  int hpc_pred_hidden = 128;

  int n_mels = 80;
  int n_vocoder = 22;

  double w_dur = 1.0;
  double w_adv = 0.02;
  adversary::AdversaryConfig adversary;

  std::uint64_t seed = 1;

  static AmConfig Toy(int num_speakers, int joint_vocab, std::uint64_t seed);

  int d_enc() const { return d_fe + d_spk + d_hpc; }
  int d_symbol_emb() const {
    return d_joint + d_style + d_emph + d_da + d_intj;
  }
  std::string Hash() const;
  std::string ToJsonString() const;
  static AmConfig FromJsonString(const std::string &text);
};

// One assembled training (or evaluation) example.
struct Utterance {
  std::string utterance_id;
  frontend::IntMat ids;  // [L x 6]
  int speaker_id = 0;
  features::HpcVector hpc;       // normalized ground truth
  Mat mel;                       // [T x 80] target
  Mat vocoder;                   // [T x 22] target
  std::vector<int> durations;    // [L], sums to T
  std::vector<int> word_of_symbol;
  std::vector<std::pair<int, int>> word_ranges;  // symbol-index ranges
};

struct LossRecord {
  double total = 0, mel = 0, voc_pre = 0, voc_post = 0, dur = 0, adv = 0;
};

struct SynthesisResult {
  Mat mel;
  Mat vocoder;            // post-net output
  std::vector<int> durations;
  features::HpcVector hpc_used;
};

enum class Stage { kNone, kAcoustic, kHpcPredictor };

const char *StageName(Stage stage);
Stage StageFromName(const std::string &name);

class AcousticModel {
 public:
  explicit AcousticModel(const AmConfig &config);

  const AmConfig &config() const { return config_; }
  nn::ParamRegistry &registry() { return reg_; }
  Stage stage() const { return stage_; }
  void set_stage(Stage s) { stage_ = s; }

  // --- forward pieces -----------------------------------------------------

  // Symbol embeddings -> convolutional + BiGRU front-end encoder (L x d_fe).
  // Sees only text-derived ids, never the speaker.
  nn::Var EncodeFe(nn::Tape &t, const frontend::IntMat &ids) const;

  // Full encoder output: FE ++ speaker embedding ++ HPC embedding, where the
  // HPC embedding mixes the symbol's word-level controls with the
  // utterance-level ones broadcast over all symbols.
  nn::Var Encode(nn::Tape &t, frontend::IntMat &ids, int speaker_id,
                 const features::HpcVector &hpc,
                 const std::vector<int> &word_of_symbol) const;
  nn::Var EncodeFromFe(nn::Tape &t, nn::Var fe, int speaker_id,
                       const features::HpcVector &hpc,
                       const std::vector<int> &word_of_symbol) const;

  // Duration and Gaussian-width predictions, one row per symbol; durations
  // pass through softplus (>= 0), ranges through softplus plus a floor (> 0).
  struct DurationRange {
    nn::Var durations;  // (L x 1)
    nn::Var ranges;     // (L x 1)
  };
  DurationRange PredictDurationRange(nn::Tape &t, nn::Var enc) const;

  // Autoregressive decode over the upsampled encoder output (positional
  // encoding appended inside). Teacher-forced when teacher_mel is given,
  // self-fed otherwise.
  DecodeVars DecodeFrames(nn::Tape &t, nn::Var upsampled,
                          const std::vector<int> &frame_durations,
                          const Mat *teacher_mel) const;

  // Loss graph for one utterance; records term values when `record` is set.
  nn::Var BuildTrainLoss(nn::Tape &t, const Utterance &utt, bool adversarial,
                         long step, LossRecord *record) const;

  // One optimizer update over a batch; returns mean loss terms.
  LossRecord TrainStep(const std::vector<const Utterance *> &batch,
                       bool adversarial, long step, nn::Adam *opt) const;

  // Evaluation-only loss (teacher-forced, no update).
  LossRecord EvalLoss(const Utterance &utt) const;

  // --- HPC predictor (second training stage) ------------------------------

  struct HpcPrediction {
    nn::Var utterance;  // (1 x 3)
    nn::Var word;       // (W x 3)
  };
  HpcPrediction PredictHpc(nn::Tape &t, nn::Var fe,
                           const std::vector<std::pair<int, int>> &word_ranges)
      const;

  double HpcTrainStep(const std::vector<const Utterance *> &batch,
                      nn::Adam *opt) const;
  double HpcEvalLoss(const Utterance &utt) const;

  features::HpcVector PredictHpcValues(const frontend::IntMat &ids,
                                       const std::vector<std::pair<int, int>>
                                           &word_ranges) const;

  // --- synthesis -----------------------------------------------------------

  // offsets: per-level constant adjustments added to the predicted controls.
  SynthesisResult Synthesize(const frontend::SymbolSequence &seq,
                             const frontend::VocabTables &tables,
                             int speaker_id, const Vec &utt_offsets,
                             const Vec &word_offsets) const;

  // Parameter handles by stage, for the optimizers and freezing contract.
  std::vector<nn::Parameter *> AcousticParams() const;
  std::vector<nn::Parameter *> HpcPredictorParams() const;

  io::Checkpoint MakeCheckpoint(Stage stage, long long step) const;
  void LoadCheckpoint(const io::Checkpoint &ck);

  const adversary::SpeakerClassifier &classifier() const { return classifier_; }

 private:
  nn::Var SymbolEmbeddings(nn::Tape &t, const frontend::IntMat &ids) const;

  AmConfig config_;
  nn::ParamRegistry reg_;
  Stage stage_ = Stage::kNone;

  nn::Parameter *emb_joint_, *emb_style_, *emb_emph_, *emb_da_, *emb_intj_,
      *emb_speaker_;
  nn::Conv1dLayer enc_conv1_, enc_conv2_, enc_conv3_;
  nn::BiGru enc_rnn_;
  nn::Linear hpc_proj_;

  nn::BiGru dur_rnn_, range_rnn_;
  nn::Linear dur_head_, range_head_;

  SpectralDecoder decoder_;

  nn::Gru hpcp_rnn1_, hpcp_rnn2_;
  nn::Linear hpcp_word_, hpcp_utt_;

  adversary::SpeakerClassifier classifier_;
};

// Assembles the per-frame decoder context: upsampled encoder output
// concatenated with the sinusoidal within-symbol positional encoding.
Mat SinusoidalPositionalEncoding(const std::vector<int> &frame_durations,
                                 int dim);

}  // namespace am
}  // namespace convtts

#endif  // CONVTTS_AM_MODEL_H_
