// convtts/adversary/adversary.h

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

#ifndef CONVTTS_ADVERSARY_ADVERSARY_H_
#define CONVTTS_ADVERSARY_ADVERSARY_H_

#include <string>

#include "convtts/nn/layers.h"

namespace convtts {
namespace adversary {

struct AdversaryConfig {
  double lambda = 1.0;    // gradient reversal strength
  int hidden = 64;
  int num_speakers = 2;
  int warmup_steps = 0;   // 0 disables the optional 0 -> lambda ramp

  void Validate() const {
    if (lambda < 0.0)
      Raise(ErrorCode::kConfigError, "adversary.lambda must be >= 0");
    if (num_speakers < 2)
      Raise(ErrorCode::kConfigError, "adversary.num_speakers must be >= 2");
  }

  double LambdaAt(long step) const {
    if (warmup_steps <= 0) return lambda;
    double frac = std::min(1.0, static_cast<double>(step) / warmup_steps);
    return lambda * frac;
  }
};

// Per-symbol speaker classifier attached behind a gradient-reversal layer.
// The classifier itself receives the plain cross-entropy gradient; only the
// path into the encoder below the reversal is negated.
class SpeakerClassifier {
 public:
  SpeakerClassifier() = default;
  void Init(nn::ParamRegistry *reg, const std::string &prefix, int input_dim,
            const AdversaryConfig &config, Rng *rng);

  // Logits (L x num_speakers) over the raw input, no reversal.
  nn::Var Logits(nn::Tape &t, nn::Var fe) const;

  // Mean cross-entropy over symbol positions of the reversed input.
  nn::Var AdversarialLoss(nn::Tape &t, nn::Var fe, int speaker_id,
                          double lambda) const;

  int num_speakers() const { return config_.num_speakers; }

 private:
  AdversaryConfig config_;
  nn::Linear l1_, l2_;
};

}  // namespace adversary
}  // namespace convtts

#endif  // CONVTTS_ADVERSARY_ADVERSARY_H_
