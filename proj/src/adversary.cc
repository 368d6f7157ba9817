// convtts/adversary/adversary.cc

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

#include "convtts/adversary/adversary.h"

namespace convtts {
namespace adversary {

void SpeakerClassifier::Init(nn::ParamRegistry *reg, const std::string &prefix,
                             int input_dim, const AdversaryConfig &config,
                             Rng *rng) {
  config.Validate();
  config_ = config;
  l1_.Init(reg, prefix + ".l1", input_dim, config.hidden, rng);
  l2_.Init(reg, prefix + ".l2", config.hidden, config.num_speakers, rng);
}

nn::Var SpeakerClassifier::Logits(nn::Tape &t, nn::Var fe) const {
  return l2_.Forward(t, t.Relu(l1_.Forward(t, fe)));
}

nn::Var SpeakerClassifier::AdversarialLoss(nn::Tape &t, nn::Var fe,
                                           int speaker_id,
                                           double lambda) const {
  if (speaker_id < 0 || speaker_id >= config_.num_speakers)
    Raise(ErrorCode::kSpeakerOutOfRange,
          "speaker " + std::to_string(speaker_id) + " not in [0, " +
              std::to_string(config_.num_speakers) + ")");
  nn::Var reversed = t.GradReverse(fe, lambda);
  nn::Var logits = Logits(t, reversed);
  std::vector<int> labels(t.value(fe).rows(), speaker_id);
  return t.CrossEntropy(logits, labels);
}

}  // namespace adversary
}  // namespace convtts
