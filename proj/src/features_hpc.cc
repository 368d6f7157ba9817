// convtts/features/hpc.cc

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

#include "convtts/features/hpc.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace convtts {
namespace features {

namespace {

double Percentile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  double rank = q * (static_cast<double>(sorted.size()) - 1.0);
  long lo = static_cast<long>(std::floor(rank));
  long hi = static_cast<long>(std::ceil(rank));
  double frac = rank - lo;
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

void PitchStats(const std::vector<double> &logf0, double *level, double *range) {
  std::vector<double> sorted = logf0;
  std::sort(sorted.begin(), sorted.end());
  *level = Percentile(sorted, 0.5);
  *range = Percentile(sorted, 0.9) - Percentile(sorted, 0.1);
}

}  // namespace

HpcVector ComputeHpcRaw(const AcousticFeatures &feats,
                        const std::vector<std::pair<int, int>> &word_spans) {
  const long T = feats.mel.rows();
  long covered = 0;
  for (auto [a, b] : word_spans) {
    if (b <= a || a != covered)
      Raise(ErrorCode::kValidationFailure, "word spans must tile [0, T)");
    covered = b;
  }
  if (covered != T)
    Raise(ErrorCode::kValidationFailure, "word spans must tile [0, T)");

  std::vector<double> voiced_log;
  for (long t = 0; t < T; ++t)
    if (feats.f0track.voicing[t] > 0.0 && feats.f0track.f0[t] > 0.0)
      voiced_log.push_back(std::log(feats.f0track.f0[t]));
  if (voiced_log.empty())
    Raise(ErrorCode::kNoVoicedFrames, "utterance has no voiced frames");

  HpcVector hpc;
  hpc.utterance = Vec::Zero(kHpcDims);
  PitchStats(voiced_log, &hpc.utterance(0), &hpc.utterance(1));

  std::vector<double> log_durs;
  for (int d : feats.durations)
    if (d >= 1) log_durs.push_back(std::log(static_cast<double>(d)));
  hpc.utterance(2) =
      log_durs.empty()
          ? 0.0
          : std::accumulate(log_durs.begin(), log_durs.end(), 0.0) /
                static_cast<double>(log_durs.size());

  // symbol centers map durations onto word frame intervals
  std::vector<double> centers(feats.durations.size());
  {
    double cum = 0.0;
    for (std::size_t i = 0; i < feats.durations.size(); ++i) {
      centers[i] = cum + feats.durations[i] / 2.0;
      cum += feats.durations[i];
    }
  }

  long W = static_cast<long>(word_spans.size());
  hpc.word = Mat::Zero(W, kHpcDims);
  for (long w = 0; w < W; ++w) {
    auto [a, b] = word_spans[w];
    std::vector<double> local;
    for (int t = a; t < b; ++t)
      if (feats.f0track.voicing[t] > 0.0 && feats.f0track.f0[t] > 0.0)
        local.push_back(std::log(feats.f0track.f0[t]));
    if (local.empty()) {
      hpc.word(w, 0) = hpc.utterance(0);
      hpc.word(w, 1) = hpc.utterance(1);
    } else {
      PitchStats(local, &hpc.word(w, 0), &hpc.word(w, 1));
    }
    std::vector<double> wdur;
    for (std::size_t i = 0; i < feats.durations.size(); ++i)
      if (feats.durations[i] >= 1 && centers[i] >= a && centers[i] < b)
        wdur.push_back(std::log(static_cast<double>(feats.durations[i])));
    hpc.word(w, 2) = wdur.empty()
                         ? hpc.utterance(2)
                         : std::accumulate(wdur.begin(), wdur.end(), 0.0) /
                               static_cast<double>(wdur.size());
  }
  return hpc;
}

HpcVector NormalizeHpc(const HpcVector &raw, const SpeakerStats &stats) {
  HpcVector out = raw;
  for (int d = 0; d < kHpcDims; ++d) {
    out.utterance(d) = (raw.utterance(d) - stats.utt_mean(d)) / stats.utt_std(d);
    for (long w = 0; w < raw.word.rows(); ++w)
      out.word(w, d) = (raw.word(w, d) - stats.word_mean(d)) / stats.word_std(d);
  }
  return out;
}

HpcVector ComputeHpc(const AcousticFeatures &feats,
                     const std::vector<std::pair<int, int>> &word_spans,
                     const SpeakerStats &stats) {
  return NormalizeHpc(ComputeHpcRaw(feats, word_spans), stats);
}

SpeakerStats AccumulateSpeakerStats(const std::vector<HpcVector> &raw) {
  SpeakerStats stats;
  if (raw.empty()) return stats;
  Vec usum = Vec::Zero(kHpcDims), usq = Vec::Zero(kHpcDims);
  Vec wsum = Vec::Zero(kHpcDims), wsq = Vec::Zero(kHpcDims);
  long un = 0, wn = 0;
  for (const HpcVector &h : raw) {
    usum += h.utterance;
    usq += h.utterance.cwiseProduct(h.utterance);
    ++un;
    for (long w = 0; w < h.word.rows(); ++w) {
      wsum += h.word.row(w).transpose();
      wsq += h.word.row(w).transpose().cwiseProduct(h.word.row(w).transpose());
      ++wn;
    }
  }
  stats.utt_mean = usum / un;
  stats.word_mean = wn > 0 ? Vec(wsum / wn) : Vec::Zero(kHpcDims);
  for (int d = 0; d < kHpcDims; ++d) {
    double uv = usq(d) / un - stats.utt_mean(d) * stats.utt_mean(d);
    stats.utt_std(d) = std::sqrt(std::max(uv, 1e-12));
    if (wn > 0) {
      double wv = wsq(d) / wn - stats.word_mean(d) * stats.word_mean(d);
      stats.word_std(d) = std::sqrt(std::max(wv, 1e-12));
    }
  }
  return stats;
}

std::vector<std::pair<int, int>> WordFrameSpans(
    const frontend::SymbolSequence &seq, const std::vector<int> &durations) {
  if (durations.size() != seq.symbols.size())
    Raise(ErrorCode::kValidationFailure,
          "durations and symbols disagree in length");
  auto ranges = seq.WordRanges();
  long T = std::accumulate(durations.begin(), durations.end(), 0L);
  std::vector<int> cum(durations.size() + 1, 0);
  for (std::size_t i = 0; i < durations.size(); ++i)
    cum[i + 1] = cum[i] + durations[i];
  std::vector<std::pair<int, int>> spans;
  int start = 0;
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    int end = (w + 1 == ranges.size()) ? static_cast<int>(T)
                                       : cum[ranges[w].second];
    spans.emplace_back(start, end);
    start = end;
  }
  return spans;
}

}  // namespace features
}  // namespace convtts
