// convtts/nn/tensor.h

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

#ifndef CONVTTS_NN_TENSOR_H_
#define CONVTTS_NN_TENSOR_H_

#include <functional>
#include <string>
#include <vector>

#include "convtts/common.h"

namespace convtts {
namespace nn {

// A named trainable array. Parameters live outside the tape; every forward
// pass registers them as leaves and Backward() accumulates into grad.
struct Parameter {
  std::string name;
  Mat value;
  Mat grad;
  bool trainable = true;

  Parameter() = default;
  Parameter(std::string n, int rows, int cols)
      : name(std::move(n)), value(Mat::Zero(rows, cols)),
        grad(Mat::Zero(rows, cols)) {}

  void ZeroGrad() { grad.setZero(); }
};

// Handle into a Tape node.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Reverse-mode tape over Eigen double matrices. One tape per forward pass;
// matrices are small (desk-scale models), so values are stored by copy.
class Tape {
 public:
  Tape() { nodes_.reserve(1024); }

  Var Constant(const Mat &value);
  Var Leaf(Parameter *param);

  const Mat &value(Var v) const { return nodes_[v.id].value; }

  Var Add(Var a, Var b);
  Var Sub(Var a, Var b);
  Var Mul(Var a, Var b);               // elementwise
  Var Scale(Var a, double c);
  Var AddRowBroadcast(Var a, Var row); // a(L,D) + row(1,D) per row
  Var MatMul(Var a, Var b);

  Var ConcatCols(const std::vector<Var> &vs);
  Var ConcatRows(const std::vector<Var> &vs);
  Var SliceCols(Var a, int start, int count);
  Var SliceRows(Var a, int start, int count);
  Var GatherCols(Var a, const std::vector<int> &cols);
  // Rows of `a` selected by index; index -1 yields a zero row.
  Var GatherRows(Var a, const std::vector<int> &rows);

  Var Sigmoid(Var a);
  Var Tanh(Var a);
  Var Relu(Var a);
  Var Softplus(Var a);

  Var Sum(Var a);            // 1x1
  Var Mean(Var a);           // 1x1
  Var MeanRows(Var a, int start, int count);  // 1xD mean over a row range

  // mean(|a-t|) + mean((a-t)^2), the acoustic regression loss operator.
  Var L1L2Loss(Var a, const Mat &target);
  Var MseLoss(Var a, const Mat &target);
  // Mean softmax cross-entropy of row logits against one label per row.
  Var CrossEntropy(Var logits, const std::vector<int> &labels);

  // Identity forward; backward multiplies the upstream gradient by -lambda.
  Var GradReverse(Var a, double lambda);

  // Forward emits 1[p > 0.5]; backward passes the gradient through unchanged
  // (straight-through), so the Jacobian used is the relaxed one.
  Var HardBinary(Var p);

  Var Embedding(Parameter *table, const std::vector<int> &ids);

  // Mixes rows of enc (L,D) into T output frames with Gaussian weights
  //   w(t,i) ~ exp(-(t+0.5-c_i)^2 / (2 sigma_i^2)),  c_i = cumsum(d)_i - d_i/2
  // normalized over the non-skipped sources i. T = sum(RoundHalfUp(d_i)).
  // Sources with RoundHalfUp(d_i) == 0 are skipped; all-zero durations raise
  // EmptyOutput. Gradients flow to enc and sigma (durations are data).
  Var GaussianUpsample(Var enc, Var sigma, const std::vector<double> &durations);

  // 1-d convolution over rows of x (L,Cin); weight (K*Cin, Cout) row-major in
  // (tap, channel) order, bias (1, Cout). Zero padding, output length
  // floor((L + 2*pad - K)/stride) + 1.
  Var Conv1d(Var x, Var weight, Var bias, int kernel, int stride, int pad);

  void Backward(Var loss);

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    Mat value;
    Mat grad;  // allocated lazily
    bool requires_grad = false;
    std::function<void(Tape &)> backward;
  };

  int NewNode(Mat value, bool requires_grad);
  Mat &GradRef(int id);
  bool HasGrad(int id) const { return nodes_[id].grad.size() > 0; }
  void Accumulate(int id, const Mat &g);

  std::vector<Node> nodes_;
  std::vector<Parameter *> leaf_params_;
  std::vector<int> leaf_ids_;

  friend struct GaussianUpsampleOp;
};

// Static helper shared with non-autodiff call sites (tests, resampler):
// computes the normalized weight matrix W (T, L) used by GaussianUpsample.
Mat GaussianUpsampleWeights(const std::vector<double> &durations,
                            const Vec &sigma);

}  // namespace nn
}  // namespace convtts

#endif  // CONVTTS_NN_TENSOR_H_
