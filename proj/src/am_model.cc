// convtts/am/model.cc

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

#include "convtts/am/model.h"

#include <cmath>
#include <numeric>

#include "json.hpp"

namespace convtts {
namespace am {

using nn::Tape;
using nn::Var;

namespace {
constexpr double kRangeFloor = 0.1;
}

AmConfig AmConfig::Toy(int num_speakers, int joint_vocab, std::uint64_t seed) {
  AmConfig c;
  c.num_speakers = num_speakers;
  c.joint_vocab = joint_vocab;
  c.d_joint = 32;
  c.d_style = 4;
  c.d_emph = 2;
  c.d_da = 8;
  c.d_intj = 8;
  c.d_fe = 64;
  c.d_spk = 8;
  c.d_hpc = 4;
  c.dur_hidden = 32;
  c.decoder_lstm = 128;
  c.prenet = 64;
  c.posenc = 8;
  c.postnet_channels = 16;
  c.hpc_pred_hidden = 32;
  c.adversary.hidden = 16;
  c.adversary.num_speakers = num_speakers;
  c.seed = seed;
  return c;
}

std::string AmConfig::ToJsonString() const {
  nlohmann::json j;
  j["num_speakers"] = num_speakers;
  j["joint_vocab"] = joint_vocab;
  j["d_joint"] = d_joint;
  j["d_style"] = d_style;
  j["d_emph"] = d_emph;
  j["d_da"] = d_da;
  j["d_intj"] = d_intj;
  j["d_fe"] = d_fe;
  j["d_spk"] = d_spk;
  j["d_hpc"] = d_hpc;
  j["enc_kernel"] = enc_kernel;
  j["dur_hidden"] = dur_hidden;
  j["decoder_lstm"] = decoder_lstm;
  j["prenet"] = prenet;
  j["posenc"] = posenc;
  j["postnet_channels"] = postnet_channels;
  j["postnet_kernel"] = postnet_kernel;
  j["hpc_pred_hidden"] = hpc_pred_hidden;
  j["n_mels"] = n_mels;
  j["n_vocoder"] = n_vocoder;
  j["w_dur"] = w_dur;
  j["w_adv"] = w_adv;
  j["adversary.lambda"] = adversary.lambda;
  j["adversary.hidden"] = adversary.hidden;
  j["adversary.warmup_steps"] = adversary.warmup_steps;
  j["seed"] = seed;
  return j.dump();
}

AmConfig AmConfig::FromJsonString(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  AmConfig c;
  c.num_speakers = j.at("num_speakers").get<int>();
  c.joint_vocab = j.at("joint_vocab").get<int>();
  c.d_joint = j.at("d_joint").get<int>();
  c.d_style = j.at("d_style").get<int>();
  c.d_emph = j.at("d_emph").get<int>();
  c.d_da = j.at("d_da").get<int>();
  c.d_intj = j.at("d_intj").get<int>();
  c.d_fe = j.at("d_fe").get<int>();
  c.d_spk = j.at("d_spk").get<int>();
  c.d_hpc = j.at("d_hpc").get<int>();
  c.enc_kernel = j.at("enc_kernel").get<int>();
  c.dur_hidden = j.at("dur_hidden").get<int>();
  c.decoder_lstm = j.at("decoder_lstm").get<int>();
  c.prenet = j.at("prenet").get<int>();
  c.posenc = j.at("posenc").get<int>();
  c.postnet_channels = j.at("postnet_channels").get<int>();
  c.postnet_kernel = j.at("postnet_kernel").get<int>();
  c.hpc_pred_hidden = j.at("hpc_pred_hidden").get<int>();
  c.n_mels = j.at("n_mels").get<int>();
  c.n_vocoder = j.at("n_vocoder").get<int>();
  c.w_dur = j.at("w_dur").get<double>();
  c.w_adv = j.at("w_adv").get<double>();
  c.adversary.lambda = j.at("adversary.lambda").get<double>();
  c.adversary.hidden = j.at("adversary.hidden").get<int>();
  c.adversary.warmup_steps = j.at("adversary.warmup_steps").get<int>();
  c.adversary.num_speakers = c.num_speakers;
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string AmConfig::Hash() const { return HashHex(ToJsonString()); }

const char *StageName(Stage stage) {
  switch (stage) {
    case Stage::kNone: return "none";
    case Stage::kAcoustic: return "acoustic";
    case Stage::kHpcPredictor: return "hpc_predictor";
  }
  return "none";
}

Stage StageFromName(const std::string &name) {
  if (name == "acoustic") return Stage::kAcoustic;
  if (name == "hpc_predictor") return Stage::kHpcPredictor;
  return Stage::kNone;
}

Mat SinusoidalPositionalEncoding(const std::vector<int> &frame_durations,
                                 int dim) {
  long T = 0;
  for (int d : frame_durations) T += d;
  Mat pe = Mat::Zero(T, dim);
  long t = 0;
  for (int d : frame_durations) {
    for (int pos = 0; pos < d; ++pos, ++t) {
      for (int k = 0; k * 2 < dim; ++k) {
        double angle = pos / std::pow(10000.0, (2.0 * k) / dim);
        pe(t, 2 * k) = std::sin(angle);
        if (2 * k + 1 < dim) pe(t, 2 * k + 1) = std::cos(angle);
      }
    }
  }
  return pe;
}

AcousticModel::AcousticModel(const AmConfig &config) : config_(config) {
  if (config_.joint_vocab <= 0)
    Raise(ErrorCode::kConfigError, "joint_vocab must be set from the tables");
  Rng rng(config_.seed);

  emb_joint_ = reg_.Create("enc.emb_joint", config_.joint_vocab, config_.d_joint);
  emb_style_ = reg_.Create("enc.emb_style", 2, config_.d_style);
  emb_emph_ = reg_.Create("enc.emb_emph", 2, config_.d_emph);
  emb_da_ = reg_.Create("enc.emb_da", frontend::kNumDialogTags, config_.d_da);
  emb_intj_ = reg_.Create("enc.emb_intj", frontend::kNumInterjectionTypes,
                          config_.d_intj);
  emb_speaker_ = reg_.Create("enc.emb_speaker", config_.num_speakers,
                             config_.d_spk);
  for (nn::Parameter *p : {emb_joint_, emb_style_, emb_emph_, emb_da_,
                           emb_intj_, emb_speaker_})
    nn::UniformInit(p, 0.5 / std::sqrt(static_cast<double>(p->value.cols())),
                    &rng);

  int d_in = config_.d_symbol_emb();
  enc_conv1_.Init(&reg_, "enc.conv1", d_in, config_.d_fe, config_.enc_kernel, 1,
                  &rng);
  enc_conv2_.Init(&reg_, "enc.conv2", config_.d_fe, config_.d_fe,
                  config_.enc_kernel, 1, &rng);
  enc_conv3_.Init(&reg_, "enc.conv3", config_.d_fe, config_.d_fe,
                  config_.enc_kernel, 1, &rng);
  enc_rnn_.Init(&reg_, "enc.rnn", config_.d_fe, config_.d_fe / 2, &rng);
  hpc_proj_.Init(&reg_, "enc.hpc_proj", 2 * features::kHpcDims, config_.d_hpc,
                 &rng);

  dur_rnn_.Init(&reg_, "dur.rnn", config_.d_enc(), config_.dur_hidden, &rng);
  dur_head_.Init(&reg_, "dur.head", 2 * config_.dur_hidden, 1, &rng);
  range_rnn_.Init(&reg_, "range.rnn", config_.d_enc(), config_.dur_hidden, &rng);
  range_head_.Init(&reg_, "range.head", 2 * config_.dur_hidden, 1, &rng);

  DecoderConfig dec;
  dec.ctx_dim = config_.d_enc() + config_.posenc;
  dec.n_mels = config_.n_mels;
  dec.n_vocoder = config_.n_vocoder;
  dec.lstm = config_.decoder_lstm;
  dec.prenet = config_.prenet;
  dec.postnet_channels = config_.postnet_channels;
  dec.postnet_kernel = config_.postnet_kernel;
  decoder_.Init(&reg_, "dec", dec, &rng);

  hpcp_rnn1_.Init(&reg_, "hpcp.rnn1", config_.d_fe, config_.hpc_pred_hidden,
                  &rng);
  hpcp_rnn2_.Init(&reg_, "hpcp.rnn2", config_.hpc_pred_hidden,
                  config_.hpc_pred_hidden, &rng);
  hpcp_word_.Init(&reg_, "hpcp.word", config_.hpc_pred_hidden,
                  features::kHpcDims, &rng);
  hpcp_utt_.Init(&reg_, "hpcp.utt", config_.hpc_pred_hidden,
                 features::kHpcDims, &rng);

  adversary::AdversaryConfig adv = config_.adversary;
  adv.num_speakers = config_.num_speakers;
  classifier_.Init(&reg_, "adv", config_.d_fe, adv, &rng);
}

Var AcousticModel::SymbolEmbeddings(Tape &t, const frontend::IntMat &ids) const {
  long L = ids.rows();
  std::vector<int> joint(L), style(L), emph(L), da(L), intj(L);
  for (long i = 0; i < L; ++i) {
    joint[i] = ids(i, 0);
    style[i] = ids(i, 1);
    emph[i] = ids(i, 2);
    da[i] = ids(i, 3);
    intj[i] = ids(i, 4);
  }
  return t.ConcatCols({t.Embedding(emb_joint_, joint),
                       t.Embedding(emb_style_, style),
                       t.Embedding(emb_emph_, emph),
                       t.Embedding(emb_da_, da),
                       t.Embedding(emb_intj_, intj)});
}

Var AcousticModel::EncodeFe(Tape &t, const frontend::IntMat &ids) const {
  Var x = SymbolEmbeddings(t, ids);
  x = t.Relu(enc_conv1_.Forward(t, x));
  x = t.Relu(enc_conv2_.Forward(t, x));
  x = t.Relu(enc_conv3_.Forward(t, x));
  return enc_rnn_.Forward(t, x);
}

Var AcousticModel::EncodeFromFe(Tape &t, Var fe, int speaker_id,
                                const features::HpcVector &hpc,
                                const std::vector<int> &word_of_symbol) const {
  long L = t.value(fe).rows();
  if (speaker_id < 0 || speaker_id >= config_.num_speakers)
    Raise(ErrorCode::kSpeakerOutOfRange,
          "speaker " + std::to_string(speaker_id) + " not in [0, " +
              std::to_string(config_.num_speakers) + ")");
  int words = 0;
  for (int w : word_of_symbol) words = std::max(words, w + 1);
  if (hpc.word.rows() < words)
    Raise(ErrorCode::kHpcShapeMismatch,
          "HPC has " + std::to_string(hpc.word.rows()) + " word rows, need " +
              std::to_string(words));

  std::vector<int> spk(L, speaker_id);
  Var spk_emb = t.Embedding(emb_speaker_, spk);

  Mat hpc_in(L, 2 * features::kHpcDims);
  for (long i = 0; i < L; ++i) {
    int w = word_of_symbol.empty() ? 0 : word_of_symbol[i];
    for (int d = 0; d < features::kHpcDims; ++d) {
      hpc_in(i, d) = (hpc.word.rows() > 0) ? hpc.word(w, d) : 0.0;
      hpc_in(i, features::kHpcDims + d) = hpc.utterance(d);
    }
  }
  Var hpc_emb = hpc_proj_.Forward(t, t.Constant(hpc_in));
  return t.ConcatCols({fe, spk_emb, hpc_emb});
}

Var AcousticModel::Encode(Tape &t, frontend::IntMat &ids, int speaker_id,
                          const features::HpcVector &hpc,
                          const std::vector<int> &word_of_symbol) const {
  for (long i = 0; i < ids.rows(); ++i) ids(i, 5) = speaker_id;
  Var fe = EncodeFe(t, ids);
  return EncodeFromFe(t, fe, speaker_id, hpc, word_of_symbol);
}

AcousticModel::DurationRange AcousticModel::PredictDurationRange(
    Tape &t, Var enc) const {
  long L = t.value(enc).rows();
  Var dh = dur_rnn_.Forward(t, enc);
  Var durations = t.Softplus(dur_head_.Forward(t, dh));
  Var rh = range_rnn_.Forward(t, enc);
  Var ranges = t.Add(t.Softplus(range_head_.Forward(t, rh)),
                     t.Constant(Mat::Constant(L, 1, kRangeFloor)));
  return {durations, ranges};
}

DecodeVars AcousticModel::DecodeFrames(
    Tape &t, Var upsampled, const std::vector<int> &frame_durations,
    const Mat *teacher_mel) const {
  long T = t.value(upsampled).rows();
  Mat pe = SinusoidalPositionalEncoding(frame_durations, config_.posenc);
  if (pe.rows() != T)
    Raise(ErrorCode::kInternal, "positional encoding length mismatch");
  Var ctx = t.ConcatCols({upsampled, t.Constant(pe)});
  return decoder_.Run(t, ctx, teacher_mel);
}

Var AcousticModel::BuildTrainLoss(Tape &t, const Utterance &utt,
                                  bool adversarial, long step,
                                  LossRecord *record) const {
  if (stage_ == Stage::kHpcPredictor)
    Raise(ErrorCode::kStageMismatch,
          "acoustic stage is frozen once the HPC predictor is trained");
  frontend::IntMat ids = utt.ids;
  for (long i = 0; i < ids.rows(); ++i) ids(i, 5) = utt.speaker_id;

  Var fe = EncodeFe(t, ids);
  Var enc = EncodeFromFe(t, fe, utt.speaker_id, utt.hpc, utt.word_of_symbol);
  DurationRange dr = PredictDurationRange(t, enc);

  std::vector<double> gt_dur(utt.durations.begin(), utt.durations.end());
  Var up = t.GaussianUpsample(enc, dr.ranges, gt_dur);
  DecodeVars dec = DecodeFrames(t, up, utt.durations, &utt.mel);

  Var l_mel = t.L1L2Loss(dec.mel, utt.mel);
  Var l_vpre = t.L1L2Loss(dec.voc_pre, utt.vocoder);
  Var l_vpost = t.L1L2Loss(dec.voc_post, utt.vocoder);
  Mat dur_target(utt.durations.size(), 1);
  for (std::size_t i = 0; i < utt.durations.size(); ++i)
    dur_target(i, 0) = utt.durations[i];
  Var l_dur = t.Scale(t.MseLoss(dr.durations, dur_target), config_.w_dur);

  Var total = t.Add(t.Add(l_mel, l_vpre), t.Add(l_vpost, l_dur));
  Var l_adv;
  if (adversarial) {
    double lambda = config_.adversary.LambdaAt(step);
    l_adv = t.Scale(
        classifier_.AdversarialLoss(t, fe, utt.speaker_id, lambda),
        config_.w_adv);
    total = t.Add(total, l_adv);
  }
  if (record != nullptr) {
    record->mel = t.value(l_mel)(0, 0);
    record->voc_pre = t.value(l_vpre)(0, 0);
    record->voc_post = t.value(l_vpost)(0, 0);
    record->dur = t.value(l_dur)(0, 0);
    record->adv = adversarial ? t.value(l_adv)(0, 0) : 0.0;
    record->total = t.value(total)(0, 0);
  }
  return total;
}

LossRecord AcousticModel::TrainStep(const std::vector<const Utterance *> &batch,
                                    bool adversarial, long step,
                                    nn::Adam *opt) const {
  if (batch.empty()) Raise(ErrorCode::kInternal, "empty batch");
  Tape t;
  LossRecord mean;
  Var sum;
  for (const Utterance *utt : batch) {
    LossRecord r;
    Var loss = BuildTrainLoss(t, *utt, adversarial, step, &r);
    sum = sum.valid() ? t.Add(sum, loss) : loss;
    mean.total += r.total;
    mean.mel += r.mel;
    mean.voc_pre += r.voc_pre;
    mean.voc_post += r.voc_post;
    mean.dur += r.dur;
    mean.adv += r.adv;
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
  mean.dur *= inv;
  mean.adv *= inv;
  return mean;
}

LossRecord AcousticModel::EvalLoss(const Utterance &utt) const {
  Tape t;
  LossRecord r;
  BuildTrainLoss(t, utt, /*adversarial=*/false, /*step=*/0, &r);
  return r;
}

AcousticModel::HpcPrediction AcousticModel::PredictHpc(
    Tape &t, Var fe,
    const std::vector<std::pair<int, int>> &word_ranges) const {
  long L = t.value(fe).rows();
  Var h = hpcp_rnn2_.Forward(t, hpcp_rnn1_.Forward(t, fe));
  Var utt = hpcp_utt_.Forward(t, t.MeanRows(h, 0, static_cast<int>(L)));
  Var word;
  if (!word_ranges.empty()) {
    std::vector<Var> pooled;
    for (auto [a, b] : word_ranges) pooled.push_back(t.MeanRows(h, a, b - a));
    word = hpcp_word_.Forward(t, t.ConcatRows(pooled));
  } else {
    word = t.Constant(Mat::Zero(0, features::kHpcDims));
  }
  return {utt, word};
}

double AcousticModel::HpcTrainStep(const std::vector<const Utterance *> &batch,
                                   nn::Adam *opt) const {
  if (stage_ == Stage::kNone)
    Raise(ErrorCode::kMissingBaseCheckpoint,
          "HPC predictor training requires a trained acoustic stage");
  Tape t;
  Var sum;
  for (const Utterance *utt : batch) {
    Var fe = EncodeFe(t, utt->ids);
    HpcPrediction pred = PredictHpc(t, fe, utt->word_ranges);
    Var loss = t.MseLoss(pred.utterance, utt->hpc.utterance.transpose());
    if (utt->hpc.word.rows() > 0)
      loss = t.Add(loss, t.MseLoss(pred.word, utt->hpc.word));
    sum = sum.valid() ? t.Add(sum, loss) : loss;
  }
  Var objective = t.Scale(sum, 1.0 / static_cast<double>(batch.size()));
  opt->ZeroGrad();
  t.Backward(objective);
  opt->Step();
  return t.value(objective)(0, 0);
}

double AcousticModel::HpcEvalLoss(const Utterance &utt) const {
  Tape t;
  Var fe = EncodeFe(t, utt.ids);
  HpcPrediction pred = PredictHpc(t, fe, utt.word_ranges);
  Var loss = t.MseLoss(pred.utterance, utt.hpc.utterance.transpose());
  if (utt.hpc.word.rows() > 0)
    loss = t.Add(loss, t.MseLoss(pred.word, utt.hpc.word));
  return t.value(loss)(0, 0);
}

features::HpcVector AcousticModel::PredictHpcValues(
    const frontend::IntMat &ids,
    const std::vector<std::pair<int, int>> &word_ranges) const {
  Tape t;
  Var fe = EncodeFe(t, ids);
  HpcPrediction pred = PredictHpc(t, fe, word_ranges);
  features::HpcVector out;
  out.utterance = t.value(pred.utterance).row(0).transpose();
  out.word = t.value(pred.word);
  return out;
}

SynthesisResult AcousticModel::Synthesize(const frontend::SymbolSequence &seq,
                                          const frontend::VocabTables &tables,
                                          int speaker_id,
                                          const Vec &utt_offsets,
                                          const Vec &word_offsets) const {
  if (stage_ != Stage::kHpcPredictor)
    Raise(ErrorCode::kUntrainedModel,
          "synthesis requires a completed two-stage checkpoint");
  frontend::IntMat ids = tables.EncodeSymbolIds(seq);
  for (long i = 0; i < ids.rows(); ++i) ids(i, 5) = speaker_id;
  auto word_ranges = seq.WordRanges();
  auto word_of_symbol = seq.WordOfSymbol();

  Tape t;
  Var fe = EncodeFe(t, ids);
  HpcPrediction pred = PredictHpc(t, fe, word_ranges);
  features::HpcVector hpc_used;
  hpc_used.utterance = t.value(pred.utterance).row(0).transpose() + utt_offsets;
  hpc_used.word = t.value(pred.word);
  for (long w = 0; w < hpc_used.word.rows(); ++w)
    hpc_used.word.row(w) += word_offsets.transpose();

  Var enc = EncodeFromFe(t, fe, speaker_id, hpc_used, word_of_symbol);
  DurationRange dr = PredictDurationRange(t, enc);
  std::vector<int> durations(ids.rows());
  std::vector<double> dur_real(ids.rows());
  long T = 0;
  for (long i = 0; i < ids.rows(); ++i) {
    durations[i] = RoundHalfUp(t.value(dr.durations)(i, 0));
    dur_real[i] = durations[i];
    T += durations[i];
  }
  if (T < 1)
    Raise(ErrorCode::kEmptyOutput, "all predicted durations round to zero");

  Var up = t.GaussianUpsample(enc, dr.ranges, dur_real);
  DecodeVars dec = DecodeFrames(t, up, durations, nullptr);

  SynthesisResult res;
  res.mel = t.value(dec.mel);
  res.vocoder = t.value(dec.voc_post);
  res.durations = durations;
  res.hpc_used = hpc_used;
  return res;
}

std::vector<nn::Parameter *> AcousticModel::AcousticParams() const {
  std::vector<nn::Parameter *> out;
  for (const auto &p : reg_.params())
    if (p->name.rfind("hpcp.", 0) != 0) out.push_back(p.get());
  return out;
}

std::vector<nn::Parameter *> AcousticModel::HpcPredictorParams() const {
  std::vector<nn::Parameter *> out;
  for (const auto &p : reg_.params())
    if (p->name.rfind("hpcp.", 0) == 0) out.push_back(p.get());
  return out;
}

io::Checkpoint AcousticModel::MakeCheckpoint(Stage stage,
                                             long long step) const {
  return io::Checkpoint::FromRegistry(reg_, config_.Hash(), StageName(stage),
                                      step);
}

void AcousticModel::LoadCheckpoint(const io::Checkpoint &ck) {
  if (ck.config_hash != config_.Hash())
    Raise(ErrorCode::kValidationFailure,
          "checkpoint was produced by a different configuration");
  ck.ApplyToRegistry(&reg_);
  stage_ = StageFromName(ck.stage);
}

}  // namespace am
}  // namespace convtts
