// convtts/nn/layers.h

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

#ifndef CONVTTS_NN_LAYERS_H_
#define CONVTTS_NN_LAYERS_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "convtts/nn/tensor.h"
#include "convtts/rng.h"

namespace convtts {
namespace nn {

// Owns parameters by name. Models allocate all their parameters through one
// registry so checkpoints can save/load them uniformly.
class ParamRegistry {
 public:
  Parameter *Create(const std::string &name, int rows, int cols);
  Parameter *Find(const std::string &name);
  const std::vector<std::unique_ptr<Parameter>> &params() const {
    return params_;
  }
  std::vector<Parameter *> Trainable() const;
  void ZeroGrad();

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
  std::map<std::string, Parameter *> by_name_;
};

void UniformInit(Parameter *p, double scale, Rng *rng);
// Glorot-style fan-based uniform init.
void GlorotInit(Parameter *p, Rng *rng);

struct Linear {
  Parameter *w = nullptr;
  Parameter *b = nullptr;
  void Init(ParamRegistry *reg, const std::string &name, int in, int out,
            Rng *rng, bool zero = false);
  Var Forward(Tape &t, Var x) const;
};

struct Conv1dLayer {
  Parameter *w = nullptr;
  Parameter *b = nullptr;
  int kernel = 1, stride = 1, pad = 0;
  void Init(ParamRegistry *reg, const std::string &name, int cin, int cout,
            int kernel_size, int stride_len, Rng *rng, bool zero = false);
  Var Forward(Tape &t, Var x) const;
};

// Single-direction GRU over the rows of the input (one row per step).
struct Gru {
  Parameter *wx = nullptr;  // (in, 3H) gates order: z | r | n
  Parameter *wh = nullptr;  // (H, 3H)
  Parameter *b = nullptr;   // (1, 3H)
  int hidden = 0;
  void Init(ParamRegistry *reg, const std::string &name, int in, int h,
            Rng *rng);
  // Returns the full hidden sequence (L, H).
  Var Forward(Tape &t, Var x, bool reverse = false) const;
};

// Forward + backward GRU, outputs concatenated (L, 2H).
struct BiGru {
  Gru fwd, bwd;
  void Init(ParamRegistry *reg, const std::string &name, int in, int h,
            Rng *rng);
  Var Forward(Tape &t, Var x) const;
};

// LSTM cell advanced manually by the decoder loop.
struct Lstm {
  Parameter *wx = nullptr;  // (in, 4H) gates order: i | f | g | o
  Parameter *wh = nullptr;  // (H, 4H)
  Parameter *b = nullptr;   // (1, 4H)
  int hidden = 0;
  void Init(ParamRegistry *reg, const std::string &name, int in, int h,
            Rng *rng);
  // One step: x is (1, in); state h/c are (1, H). Returns new h and c.
  std::pair<Var, Var> Step(Tape &t, Var x, Var h, Var c) const;
};

// Adam with optional global-norm clipping; state is kept per parameter and
// travels with the optimizer, not the checkpoint.
class Adam {
 public:
  explicit Adam(std::vector<Parameter *> params, double lr = 1e-3,
                double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8,
                double clip_norm = 5.0);
  void Step();
  void ZeroGrad();
  double lr() const { return lr_; }
  void set_lr(double lr) { lr_ = lr; }

 private:
  std::vector<Parameter *> params_;
  std::vector<Mat> m_, v_;
  double lr_, beta1_, beta2_, eps_, clip_norm_;
  long step_ = 0;
};

}  // namespace nn
}  // namespace convtts

#endif  // CONVTTS_NN_LAYERS_H_
