// convtts/nn/layers.cc

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

#include "convtts/nn/layers.h"

#include <cmath>

namespace convtts {
namespace nn {

Parameter *ParamRegistry::Create(const std::string &name, int rows, int cols) {
  if (by_name_.count(name))
    Raise(ErrorCode::kInternal, "duplicate parameter name " + name);
  params_.push_back(std::make_unique<Parameter>(name, rows, cols));
  Parameter *p = params_.back().get();
  by_name_[name] = p;
  return p;
}

Parameter *ParamRegistry::Find(const std::string &name) {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

std::vector<Parameter *> ParamRegistry::Trainable() const {
  std::vector<Parameter *> out;
  for (const auto &p : params_)
    if (p->trainable) out.push_back(p.get());
  return out;
}

void ParamRegistry::ZeroGrad() {
  for (const auto &p : params_) p->ZeroGrad();
}

void UniformInit(Parameter *p, double scale, Rng *rng) {
  for (long c = 0; c < p->value.cols(); ++c)
    for (long r = 0; r < p->value.rows(); ++r)
      p->value(r, c) = rng->Uniform(-scale, scale);
}

void GlorotInit(Parameter *p, Rng *rng) {
  double scale = std::sqrt(6.0 / (p->value.rows() + p->value.cols()));
  UniformInit(p, scale, rng);
}

void Linear::Init(ParamRegistry *reg, const std::string &name, int in, int out,
                  Rng *rng, bool zero) {
  w = reg->Create(name + ".w", in, out);
  b = reg->Create(name + ".b", 1, out);
  if (!zero) GlorotInit(w, rng);
}

Var Linear::Forward(Tape &t, Var x) const {
  return t.AddRowBroadcast(t.MatMul(x, t.Leaf(w)), t.Leaf(b));
}

void Conv1dLayer::Init(ParamRegistry *reg, const std::string &name, int cin,
                       int cout, int kernel_size, int stride_len, Rng *rng,
                       bool zero) {
  kernel = kernel_size;
  stride = stride_len;
  pad = (stride == 1) ? (kernel - 1) / 2 : 0;
  w = reg->Create(name + ".w", kernel * cin, cout);
  b = reg->Create(name + ".b", 1, cout);
  if (!zero) GlorotInit(w, rng);
}

Var Conv1dLayer::Forward(Tape &t, Var x) const {
  return t.Conv1d(x, t.Leaf(w), t.Leaf(b), kernel, stride, pad);
}

void Gru::Init(ParamRegistry *reg, const std::string &name, int in, int h,
               Rng *rng) {
  hidden = h;
  wx = reg->Create(name + ".wx", in, 3 * h);
  wh = reg->Create(name + ".wh", h, 3 * h);
  b = reg->Create(name + ".b", 1, 3 * h);
  GlorotInit(wx, rng);
  GlorotInit(wh, rng);
}

Var Gru::Forward(Tape &t, Var x, bool reverse) const {
  long steps = t.value(x).rows();
  Var wxv = t.Leaf(wx), whv = t.Leaf(wh), bv = t.Leaf(b);
  Var h = t.Constant(Mat::Zero(1, hidden));
  std::vector<Var> outs(steps);
  Var one = t.Constant(Mat::Ones(1, hidden));
  for (long s = 0; s < steps; ++s) {
    long row = reverse ? steps - 1 - s : s;
    Var xt = t.SliceRows(x, static_cast<int>(row), 1);
    Var xpre = t.AddRowBroadcast(t.MatMul(xt, wxv), bv);
    Var hpre = t.MatMul(h, whv);
    Var z = t.Sigmoid(t.Add(t.SliceCols(xpre, 0, hidden),
                            t.SliceCols(hpre, 0, hidden)));
    Var r = t.Sigmoid(t.Add(t.SliceCols(xpre, hidden, hidden),
                            t.SliceCols(hpre, hidden, hidden)));
    // candidate uses the reset-gated recurrent contribution
    Var n = t.Tanh(t.Add(t.SliceCols(xpre, 2 * hidden, hidden),
                         t.Mul(r, t.SliceCols(hpre, 2 * hidden, hidden))));
    // h' = (1-z) * n + z * h
    h = t.Add(t.Mul(t.Sub(one, z), n), t.Mul(z, h));
    outs[row] = h;
  }
  return t.ConcatRows(outs);
}

void BiGru::Init(ParamRegistry *reg, const std::string &name, int in, int h,
                 Rng *rng) {
  fwd.Init(reg, name + ".fwd", in, h, rng);
  bwd.Init(reg, name + ".bwd", in, h, rng);
}

Var BiGru::Forward(Tape &t, Var x) const {
  return t.ConcatCols({fwd.Forward(t, x, false), bwd.Forward(t, x, true)});
}

void Lstm::Init(ParamRegistry *reg, const std::string &name, int in, int h,
                Rng *rng) {
  hidden = h;
  wx = reg->Create(name + ".wx", in, 4 * h);
  wh = reg->Create(name + ".wh", h, 4 * h);
  b = reg->Create(name + ".b", 1, 4 * h);
  GlorotInit(wx, rng);
  GlorotInit(wh, rng);
  // forget-gate bias starts at 1
  b->value.block(0, hidden, 1, hidden).setOnes();
}

std::pair<Var, Var> Lstm::Step(Tape &t, Var x, Var h, Var c) const {
  Var pre = t.AddRowBroadcast(
      t.Add(t.MatMul(x, t.Leaf(wx)), t.MatMul(h, t.Leaf(wh))), t.Leaf(b));
  Var i = t.Sigmoid(t.SliceCols(pre, 0, hidden));
  Var f = t.Sigmoid(t.SliceCols(pre, hidden, hidden));
  Var g = t.Tanh(t.SliceCols(pre, 2 * hidden, hidden));
  Var o = t.Sigmoid(t.SliceCols(pre, 3 * hidden, hidden));
  Var c_new = t.Add(t.Mul(f, c), t.Mul(i, g));
  Var h_new = t.Mul(o, t.Tanh(c_new));
  return {h_new, c_new};
}

Adam::Adam(std::vector<Parameter *> params, double lr, double beta1,
           double beta2, double eps, double clip_norm)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2),
      eps_(eps), clip_norm_(clip_norm) {
  for (Parameter *p : params_) {
    m_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
  }
}

void Adam::Step() {
  ++step_;
  double sq = 0.0;
  for (Parameter *p : params_) sq += p->grad.squaredNorm();
  double norm = std::sqrt(sq);
  double scale = (clip_norm_ > 0.0 && norm > clip_norm_) ? clip_norm_ / norm
                                                         : 1.0;
  double bc1 = 1.0 - std::pow(beta1_, step_);
  double bc2 = 1.0 - std::pow(beta2_, step_);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Parameter *p = params_[i];
    Mat g = p->grad * scale;
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g.cwiseProduct(g);
    Mat mhat = m_[i] / bc1;
    Mat vhat = v_[i] / bc2;
    p->value.array() -=
        lr_ * mhat.array() / (vhat.array().sqrt() + eps_);
  }
}

void Adam::ZeroGrad() {
  for (Parameter *p : params_) p->ZeroGrad();
}

}  // namespace nn
}  // namespace convtts
