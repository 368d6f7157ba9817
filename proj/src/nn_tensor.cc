// convtts/nn/tensor.cc

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

#include "convtts/nn/tensor.h"

#include <cmath>

namespace convtts {
namespace nn {

int Tape::NewNode(Mat value, bool requires_grad) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

Mat &Tape::GradRef(int id) {
  Node &node = nodes_[id];
  if (node.grad.size() == 0)
    node.grad = Mat::Zero(node.value.rows(), node.value.cols());
  return node.grad;
}

void Tape::Accumulate(int id, const Mat &g) {
  if (!nodes_[id].requires_grad) return;
  GradRef(id) += g;
}

Var Tape::Constant(const Mat &value) {
  return Var{NewNode(value, false)};
}

Var Tape::Leaf(Parameter *param) {
  int id = NewNode(param->value, param->trainable);
  if (param->trainable) {
    nodes_[id].backward = [id, param](Tape &t) {
      param->grad += t.nodes_[id].grad;
    };
    leaf_params_.push_back(param);
    leaf_ids_.push_back(id);
  }
  return Var{id};
}

Var Tape::Add(Var a, Var b) {
  int id = NewNode(nodes_[a.id].value + nodes_[b.id].value,
                   nodes_[a.id].requires_grad || nodes_[b.id].requires_grad);
  nodes_[id].backward = [id, a, b](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    t.Accumulate(a.id, g);
    t.Accumulate(b.id, g);
  };
  return Var{id};
}

Var Tape::Sub(Var a, Var b) {
  int id = NewNode(nodes_[a.id].value - nodes_[b.id].value,
                   nodes_[a.id].requires_grad || nodes_[b.id].requires_grad);
  nodes_[id].backward = [id, a, b](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    t.Accumulate(a.id, g);
    t.Accumulate(b.id, -g);
  };
  return Var{id};
}

Var Tape::Mul(Var a, Var b) {
  int id = NewNode(nodes_[a.id].value.cwiseProduct(nodes_[b.id].value),
                   nodes_[a.id].requires_grad || nodes_[b.id].requires_grad);
  nodes_[id].backward = [id, a, b](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    t.Accumulate(a.id, g.cwiseProduct(t.nodes_[b.id].value));
    t.Accumulate(b.id, g.cwiseProduct(t.nodes_[a.id].value));
  };
  return Var{id};
}

Var Tape::Scale(Var a, double c) {
  int id = NewNode(nodes_[a.id].value * c, nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a, c](Tape &t) {
    t.Accumulate(a.id, t.nodes_[id].grad * c);
  };
  return Var{id};
}

Var Tape::AddRowBroadcast(Var a, Var row) {
  Mat out = nodes_[a.id].value;
  out.rowwise() += nodes_[row.id].value.row(0);
  int id = NewNode(std::move(out),
                   nodes_[a.id].requires_grad || nodes_[row.id].requires_grad);
  nodes_[id].backward = [id, a, row](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    t.Accumulate(a.id, g);
    t.Accumulate(row.id, g.colwise().sum());
  };
  return Var{id};
}

Var Tape::MatMul(Var a, Var b) {
  int id = NewNode(nodes_[a.id].value * nodes_[b.id].value,
                   nodes_[a.id].requires_grad || nodes_[b.id].requires_grad);
  nodes_[id].backward = [id, a, b](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    t.Accumulate(a.id, g * t.nodes_[b.id].value.transpose());
    t.Accumulate(b.id, t.nodes_[a.id].value.transpose() * g);
  };
  return Var{id};
}

Var Tape::ConcatCols(const std::vector<Var> &vs) {
  long rows = nodes_[vs[0].id].value.rows();
  long cols = 0;
  bool req = false;
  for (Var v : vs) {
    cols += nodes_[v.id].value.cols();
    req = req || nodes_[v.id].requires_grad;
  }
  Mat out(rows, cols);
  long at = 0;
  for (Var v : vs) {
    long c = nodes_[v.id].value.cols();
    out.middleCols(at, c) = nodes_[v.id].value;
    at += c;
  }
  int id = NewNode(std::move(out), req);
  std::vector<Var> inputs = vs;
  nodes_[id].backward = [id, inputs](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    long at = 0;
    for (Var v : inputs) {
      long c = t.nodes_[v.id].value.cols();
      t.Accumulate(v.id, g.middleCols(at, c));
      at += c;
    }
  };
  return Var{id};
}

Var Tape::ConcatRows(const std::vector<Var> &vs) {
  long cols = nodes_[vs[0].id].value.cols();
  long rows = 0;
  bool req = false;
  for (Var v : vs) {
    rows += nodes_[v.id].value.rows();
    req = req || nodes_[v.id].requires_grad;
  }
  Mat out(rows, cols);
  long at = 0;
  for (Var v : vs) {
    long r = nodes_[v.id].value.rows();
    out.middleRows(at, r) = nodes_[v.id].value;
    at += r;
  }
  int id = NewNode(std::move(out), req);
  std::vector<Var> inputs = vs;
  nodes_[id].backward = [id, inputs](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    long at = 0;
    for (Var v : inputs) {
      long r = t.nodes_[v.id].value.rows();
      t.Accumulate(v.id, g.middleRows(at, r));
      at += r;
    }
  };
  return Var{id};
}

Var Tape::SliceCols(Var a, int start, int count) {
  int id = NewNode(nodes_[a.id].value.middleCols(start, count),
                   nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a, start, count](Tape &t) {
    if (!t.nodes_[a.id].requires_grad) return;
    Mat &ga = t.GradRef(a.id);
    ga.middleCols(start, count) += t.nodes_[id].grad;
  };
  return Var{id};
}

Var Tape::SliceRows(Var a, int start, int count) {
  int id = NewNode(nodes_[a.id].value.middleRows(start, count),
                   nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a, start, count](Tape &t) {
    if (!t.nodes_[a.id].requires_grad) return;
    Mat &ga = t.GradRef(a.id);
    ga.middleRows(start, count) += t.nodes_[id].grad;
  };
  return Var{id};
}

Var Tape::GatherCols(Var a, const std::vector<int> &cols) {
  const Mat &src = nodes_[a.id].value;
  Mat out(src.rows(), static_cast<long>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = src.col(cols[j]);
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  std::vector<int> idx = cols;
  nodes_[id].backward = [id, a, idx](Tape &t) {
    if (!t.nodes_[a.id].requires_grad) return;
    Mat &ga = t.GradRef(a.id);
    const Mat &g = t.nodes_[id].grad;
    for (std::size_t j = 0; j < idx.size(); ++j) ga.col(idx[j]) += g.col(j);
  };
  return Var{id};
}

Var Tape::GatherRows(Var a, const std::vector<int> &rows) {
  const Mat &src = nodes_[a.id].value;
  Mat out = Mat::Zero(static_cast<long>(rows.size()), src.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] >= 0) out.row(i) = src.row(rows[i]);
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  std::vector<int> idx = rows;
  nodes_[id].backward = [id, a, idx](Tape &t) {
    if (!t.nodes_[a.id].requires_grad) return;
    Mat &ga = t.GradRef(a.id);
    const Mat &g = t.nodes_[id].grad;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] >= 0) ga.row(idx[i]) += g.row(i);
  };
  return Var{id};
}

Var Tape::Sigmoid(Var a) {
  Mat out = nodes_[a.id].value.unaryExpr(
      [](double x) { return 1.0 / (1.0 + std::exp(-x)); });
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a](Tape &t) {
    const Mat &y = t.nodes_[id].value;
    Mat dy = y.array() * (1.0 - y.array());
    t.Accumulate(a.id, t.nodes_[id].grad.cwiseProduct(dy));
  };
  return Var{id};
}

Var Tape::Tanh(Var a) {
  Mat out = nodes_[a.id].value.array().tanh();
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a](Tape &t) {
    const Mat &y = t.nodes_[id].value;
    Mat dy = 1.0 - y.array().square();
    t.Accumulate(a.id, t.nodes_[id].grad.cwiseProduct(dy));
  };
  return Var{id};
}

Var Tape::Relu(Var a) {
  Mat out = nodes_[a.id].value.cwiseMax(0.0);
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a](Tape &t) {
    Mat mask = (t.nodes_[a.id].value.array() > 0.0).cast<double>();
    t.Accumulate(a.id, t.nodes_[id].grad.cwiseProduct(mask));
  };
  return Var{id};
}

Var Tape::Softplus(Var a) {
  // log(1 + e^x), computed stably.
  Mat out = nodes_[a.id].value.unaryExpr([](double x) {
    return x > 30.0 ? x : std::log1p(std::exp(x));
  });
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a](Tape &t) {
    Mat dy = t.nodes_[a.id].value.unaryExpr(
        [](double x) { return 1.0 / (1.0 + std::exp(-x)); });
    t.Accumulate(a.id, t.nodes_[id].grad.cwiseProduct(dy));
  };
  return Var{id};
}

Var Tape::Sum(Var a) {
  Mat out(1, 1);
  out(0, 0) = nodes_[a.id].value.sum();
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a](Tape &t) {
    double g = t.nodes_[id].grad(0, 0);
    const Mat &v = t.nodes_[a.id].value;
    t.Accumulate(a.id, Mat::Constant(v.rows(), v.cols(), g));
  };
  return Var{id};
}

Var Tape::Mean(Var a) {
  double n = static_cast<double>(nodes_[a.id].value.size());
  Mat out(1, 1);
  out(0, 0) = nodes_[a.id].value.sum() / n;
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a, n](Tape &t) {
    double g = t.nodes_[id].grad(0, 0) / n;
    const Mat &v = t.nodes_[a.id].value;
    t.Accumulate(a.id, Mat::Constant(v.rows(), v.cols(), g));
  };
  return Var{id};
}

Var Tape::MeanRows(Var a, int start, int count) {
  Mat out = nodes_[a.id].value.middleRows(start, count).colwise().mean();
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a, start, count](Tape &t) {
    if (!t.nodes_[a.id].requires_grad) return;
    Mat &ga = t.GradRef(a.id);
    const Mat &g = t.nodes_[id].grad;
    for (int r = 0; r < count; ++r) ga.row(start + r) += g.row(0) / count;
  };
  return Var{id};
}

Var Tape::L1L2Loss(Var a, const Mat &target) {
  const Mat &p = nodes_[a.id].value;
  Mat diff = p - target;
  double n = static_cast<double>(diff.size());
  Mat out(1, 1);
  out(0, 0) = diff.cwiseAbs().sum() / n + diff.squaredNorm() / n;
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  Mat diff_copy = std::move(diff);
  nodes_[id].backward = [id, a, diff_copy, n](Tape &t) {
    double g = t.nodes_[id].grad(0, 0);
    Mat sign = diff_copy.unaryExpr(
        [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
    t.Accumulate(a.id, (g / n) * (sign + 2.0 * diff_copy));
  };
  return Var{id};
}

Var Tape::MseLoss(Var a, const Mat &target) {
  const Mat &p = nodes_[a.id].value;
  Mat diff = p - target;
  double n = static_cast<double>(diff.size());
  Mat out(1, 1);
  out(0, 0) = diff.squaredNorm() / n;
  int id = NewNode(std::move(out), nodes_[a.id].requires_grad);
  Mat diff_copy = std::move(diff);
  nodes_[id].backward = [id, a, diff_copy, n](Tape &t) {
    double g = t.nodes_[id].grad(0, 0);
    t.Accumulate(a.id, (2.0 * g / n) * diff_copy);
  };
  return Var{id};
}

Var Tape::CrossEntropy(Var logits, const std::vector<int> &labels) {
  const Mat &z = nodes_[logits.id].value;
  long rows = z.rows(), cols = z.cols();
  if (static_cast<long>(labels.size()) != rows)
    Raise(ErrorCode::kInternal, "CrossEntropy label count mismatch");
  Mat probs(rows, cols);
  double loss = 0.0;
  for (long r = 0; r < rows; ++r) {
    double zmax = z.row(r).maxCoeff();
    Eigen::RowVectorXd e = (z.row(r).array() - zmax).exp();
    double denom = e.sum();
    probs.row(r) = e / denom;
    loss += -(z(r, labels[r]) - zmax - std::log(denom));
  }
  Mat out(1, 1);
  out(0, 0) = loss / static_cast<double>(rows);
  int id = NewNode(std::move(out), nodes_[logits.id].requires_grad);
  Mat probs_copy = std::move(probs);
  std::vector<int> labels_copy = labels;
  nodes_[id].backward = [id, logits, probs_copy, labels_copy](Tape &t) {
    double g = t.nodes_[id].grad(0, 0);
    Mat d = probs_copy;
    for (long r = 0; r < d.rows(); ++r) d(r, labels_copy[r]) -= 1.0;
    t.Accumulate(logits.id, (g / static_cast<double>(d.rows())) * d);
  };
  return Var{id};
}

Var Tape::GradReverse(Var a, double lambda) {
  int id = NewNode(nodes_[a.id].value, nodes_[a.id].requires_grad);
  nodes_[id].backward = [id, a, lambda](Tape &t) {
    t.Accumulate(a.id, -lambda * t.nodes_[id].grad);
  };
  return Var{id};
}

Var Tape::HardBinary(Var p) {
  Mat out = nodes_[p.id].value.unaryExpr(
      [](double x) { return x > 0.5 ? 1.0 : 0.0; });
  int id = NewNode(std::move(out), nodes_[p.id].requires_grad);
  nodes_[id].backward = [id, p](Tape &t) {
    t.Accumulate(p.id, t.nodes_[id].grad);
  };
  return Var{id};
}

Var Tape::Embedding(Parameter *table, const std::vector<int> &ids) {
  const Mat &tab = table->value;
  Mat out(static_cast<long>(ids.size()), tab.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= tab.rows())
      Raise(ErrorCode::kVocabularyMismatch,
            "embedding id " + std::to_string(ids[i]) + " out of range for " +
                table->name);
    out.row(i) = tab.row(ids[i]);
  }
  int id = NewNode(std::move(out), table->trainable);
  if (table->trainable) {
    std::vector<int> ids_copy = ids;
    nodes_[id].backward = [id, table, ids_copy](Tape &t) {
      const Mat &g = t.nodes_[id].grad;
      for (std::size_t i = 0; i < ids_copy.size(); ++i)
        table->grad.row(ids_copy[i]) += g.row(i);
    };
  }
  return Var{id};
}

Mat GaussianUpsampleWeights(const std::vector<double> &durations,
                            const Vec &sigma) {
  long L = static_cast<long>(durations.size());
  long T = 0;
  std::vector<int> rounded(L);
  for (long i = 0; i < L; ++i) {
    rounded[i] = RoundHalfUp(durations[i]);
    T += rounded[i];
  }
  if (T < 1) Raise(ErrorCode::kEmptyOutput, "all durations round to zero");
  Vec centers(L);
  double cum = 0.0;
  for (long i = 0; i < L; ++i) {
    cum += durations[i];
    centers(i) = cum - durations[i] / 2.0;
  }
  Mat w = Mat::Zero(T, L);
  for (long t = 0; t < T; ++t) {
    double tau = t + 0.5;
    double norm = 0.0;
    for (long i = 0; i < L; ++i) {
      if (rounded[i] == 0) continue;  // zero-length symbols are not sources
      double d = tau - centers(i);
      double a = std::exp(-d * d / (2.0 * sigma(i) * sigma(i)));
      w(t, i) = a;
      norm += a;
    }
    if (norm <= 0.0) {
      // all mass underflowed; fall back to the nearest non-skipped center
      long best = -1;
      double bestd = 0.0;
      for (long i = 0; i < L; ++i) {
        if (rounded[i] == 0) continue;
        double d = std::abs(tau - centers(i));
        if (best < 0 || d < bestd) { best = i; bestd = d; }
      }
      w(t, best) = 1.0;
    } else {
      w.row(t) /= norm;
    }
  }
  return w;
}

Var Tape::GaussianUpsample(Var enc, Var sigma,
                           const std::vector<double> &durations) {
  const Mat &e = nodes_[enc.id].value;
  const Mat &s = nodes_[sigma.id].value;
  long L = e.rows();
  if (static_cast<long>(durations.size()) != L || s.rows() != L)
    Raise(ErrorCode::kInternal, "GaussianUpsample shape mismatch");
  Vec sig = s.col(0);
  Mat w = GaussianUpsampleWeights(durations, sig);
  Mat out = w * e;
  int id = NewNode(out, nodes_[enc.id].requires_grad ||
                            nodes_[sigma.id].requires_grad);
  Mat w_copy = std::move(w);
  Mat out_copy = std::move(out);
  std::vector<double> dur = durations;
  nodes_[id].backward = [id, enc, sigma, w_copy, out_copy, dur](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    if (t.nodes_[enc.id].requires_grad)
      t.Accumulate(enc.id, w_copy.transpose() * g);
    if (!t.nodes_[sigma.id].requires_grad) return;
    const Mat &e = t.nodes_[enc.id].value;
    const Vec sig = t.nodes_[sigma.id].value.col(0);
    long L = e.rows(), T = w_copy.rows();
    Vec centers(L);
    double cum = 0.0;
    for (long i = 0; i < L; ++i) {
      cum += dur[i];
      centers(i) = cum - dur[i] / 2.0;
    }
    // d out_t / d sigma_i = w(t,i) * k_ti * (e_i - out_t), with
    // k_ti = (tau_t - c_i)^2 / sigma_i^3 the log-derivative of the kernel.
    Mat dsig = Mat::Zero(L, 1);
    for (long t_i = 0; t_i < T; ++t_i) {
      double tau = t_i + 0.5;
      double g_dot_out = g.row(t_i).dot(out_copy.row(t_i));
      for (long i = 0; i < L; ++i) {
        if (w_copy(t_i, i) == 0.0) continue;
        double d = tau - centers(i);
        double k = (d * d) / (sig(i) * sig(i) * sig(i));
        dsig(i, 0) +=
            w_copy(t_i, i) * k * (g.row(t_i).dot(e.row(i)) - g_dot_out);
      }
    }
    t.Accumulate(sigma.id, dsig);
  };
  return Var{id};
}

Var Tape::Conv1d(Var x, Var weight, Var bias, int kernel, int stride,
                 int pad) {
  const Mat &in = nodes_[x.id].value;
  long L = in.rows(), cin = in.cols();
  long lout = (L + 2 * pad - kernel) / stride + 1;
  if (lout < 1) Raise(ErrorCode::kInternal, "Conv1d output is empty");
  Mat cols(lout, kernel * cin);
  for (long o = 0; o < lout; ++o) {
    long start = o * stride - pad;
    for (int k = 0; k < kernel; ++k) {
      long r = start + k;
      if (r < 0 || r >= L)
        cols.block(o, k * cin, 1, cin).setZero();
      else
        cols.block(o, k * cin, 1, cin) = in.row(r);
    }
  }
  Mat out = cols * nodes_[weight.id].value;
  out.rowwise() += nodes_[bias.id].value.row(0);
  bool req = nodes_[x.id].requires_grad || nodes_[weight.id].requires_grad ||
             nodes_[bias.id].requires_grad;
  int id = NewNode(std::move(out), req);
  Mat cols_copy = std::move(cols);
  nodes_[id].backward = [id, x, weight, bias, kernel, stride, pad, cols_copy,
                         L, cin](Tape &t) {
    const Mat &g = t.nodes_[id].grad;
    if (t.nodes_[bias.id].requires_grad)
      t.Accumulate(bias.id, g.colwise().sum());
    if (t.nodes_[weight.id].requires_grad)
      t.Accumulate(weight.id, cols_copy.transpose() * g);
    if (t.nodes_[x.id].requires_grad) {
      Mat dcols = g * t.nodes_[weight.id].value.transpose();
      Mat dx = Mat::Zero(L, cin);
      long lout = dcols.rows();
      for (long o = 0; o < lout; ++o) {
        long start = o * stride - pad;
        for (int k = 0; k < kernel; ++k) {
          long r = start + k;
          if (r >= 0 && r < L) dx.row(r) += dcols.block(o, k * cin, 1, cin);
        }
      }
      t.Accumulate(x.id, dx);
    }
  };
  return Var{id};
}

void Tape::Backward(Var loss) {
  Node &top = nodes_[loss.id];
  if (top.value.size() != 1)
    Raise(ErrorCode::kInternal, "Backward expects a scalar loss");
  GradRef(loss.id)(0, 0) = 1.0;
  for (int i = loss.id; i >= 0; --i) {
    Node &node = nodes_[i];
    if (!node.requires_grad || node.grad.size() == 0 || !node.backward)
      continue;
    node.backward(*this);
  }
}

}  // namespace nn
}  // namespace convtts
