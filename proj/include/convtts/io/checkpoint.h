// convtts/io/checkpoint.h

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

#ifndef CONVTTS_IO_CHECKPOINT_H_
#define CONVTTS_IO_CHECKPOINT_H_

#include <map>
#include <string>

#include "convtts/common.h"
#include "convtts/nn/layers.h"

namespace convtts {
namespace io {

// Versioned parameter snapshot. `stage` distinguishes the first training
// stage (acoustic) from the finished two-stage model (hpc_predictor) and the
// voice-conversion model (vc).
struct Checkpoint {
  std::string config_hash;
  std::string stage;
  long long step = 0;
  std::map<std::string, Mat> params;

  void Save(const std::string &path) const;
  static Checkpoint Load(const std::string &path);

  static Checkpoint FromRegistry(const nn::ParamRegistry &reg,
                                 const std::string &config_hash,
                                 const std::string &stage, long long step);
  // Copies stored arrays into matching registry parameters; raises on
  // missing names or shape mismatches.
  void ApplyToRegistry(nn::ParamRegistry *reg) const;
};

}  // namespace io
}  // namespace convtts

#endif  // CONVTTS_IO_CHECKPOINT_H_
