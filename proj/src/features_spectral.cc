// convtts/features/spectral.cc

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

#include "convtts/features/spectral.h"

#include <cmath>
#include <numeric>

namespace convtts {
namespace features {

namespace {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular mel filterbank over the power spectrum bins.
Mat MelFilterbank(int n_mels, int n_fft, double fs, double fmin, double fmax) {
  int bins = n_fft / 2 + 1;
  Mat fb = Mat::Zero(n_mels, bins);
  double mlo = HzToMel(fmin), mhi = HzToMel(fmax);
  std::vector<double> centers(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    centers[i] = MelToHz(mlo + (mhi - mlo) * i / (n_mels + 1));
  for (int m = 0; m < n_mels; ++m) {
    double lo = centers[m], mid = centers[m + 1], hi = centers[m + 2];
    for (int b = 0; b < bins; ++b) {
      double f = b * fs / n_fft;
      if (f <= lo || f >= hi) continue;
      fb(m, b) = (f < mid) ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
    }
  }
  return fb;
}

// Orthonormal DCT-II rows (n_out x n_in).
Mat DctMatrix(int n_out, int n_in) {
  Mat d(n_out, n_in);
  double norm0 = std::sqrt(1.0 / n_in);
  double norm = std::sqrt(2.0 / n_in);
  for (int k = 0; k < n_out; ++k)
    for (int i = 0; i < n_in; ++i)
      d(k, i) = (k == 0 ? norm0 : norm) *
                std::cos(M_PI * k * (2.0 * i + 1.0) / (2.0 * n_in));
  return d;
}

double PitchPeriodNorm(double f0, double fs, const F0Config &f0c) {
  // log pitch period mapped onto [0, 1] over the tracker's range
  double lo = std::log(fs / f0c.fmax), hi = std::log(fs / f0c.fmin);
  double p = std::log(fs / std::clamp(f0, f0c.fmin, f0c.fmax));
  return (p - lo) / (hi - lo);
}

}  // namespace

void Fft(std::vector<double> *re, std::vector<double> *im) {
  std::size_t n = re->size();
  if (n == 0 || (n & (n - 1)) != 0)
    Raise(ErrorCode::kConfigError, "FFT length must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap((*re)[i], (*re)[j]);
      std::swap((*im)[i], (*im)[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * M_PI / static_cast<double>(len);
    double wr = std::cos(ang), wi = std::sin(ang);
    for (std::size_t i = 0; i < n; i += len) {
      double cr = 1.0, ci = 0.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::size_t a = i + k, b = i + k + len / 2;
        double tr = (*re)[b] * cr - (*im)[b] * ci;
        double ti = (*re)[b] * ci + (*im)[b] * cr;
        (*re)[b] = (*re)[a] - tr;
        (*im)[b] = (*im)[a] - ti;
        (*re)[a] += tr;
        (*im)[a] += ti;
        double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

AcousticFeatures ExtractAcousticFeatures(const io::Waveform &wave,
                                         const std::vector<int> &durations,
                                         const SpectralConfig &config,
                                         const F0Config &f0_config) {
  if (wave.samples.empty()) Raise(ErrorCode::kEmptyAudio, "zero-length audio");
  const long n = static_cast<long>(wave.samples.size());
  const int hop = config.hop, w = config.window;
  long t_wave = (n + hop - 1) / hop;
  long t_target = std::accumulate(durations.begin(), durations.end(), 0L);
  if (t_target <= 0)
    Raise(ErrorCode::kDurationMismatch, "durations sum to zero");
  if (std::abs(t_wave - t_target) > 2)
    Raise(ErrorCode::kDurationMismatch,
          "waveform has " + std::to_string(t_wave) + " frames but durations sum to " +
              std::to_string(t_target));

  F0Track f0 = ExtractF0Voicing(wave, f0_config);

  std::vector<double> hann(w);
  for (int i = 0; i < w; ++i)
    hann[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (w - 1));
  Mat fb = MelFilterbank(config.n_mels, w, wave.sample_rate, config.fmin,
                         config.fmax);
  Mat dct = DctMatrix(config.n_cepstra, config.n_mels);

  AcousticFeatures out;
  out.mel = Mat::Zero(t_target, config.n_mels);
  out.vocoder = Mat::Zero(t_target, config.n_cepstra + 2);
  out.durations = durations;

  std::vector<double> re(w), im(w);
  long t_common = std::min(t_wave, t_target);
  Eigen::VectorXd power(w / 2 + 1);
  for (long t = 0; t < t_common; ++t) {
    long start = t * hop;
    for (int i = 0; i < w; ++i) {
      long s = start + i;
      re[i] = (s < n) ? wave.samples[s] * hann[i] : 0.0;
      im[i] = 0.0;
    }
    Fft(&re, &im);
    for (int b = 0; b <= w / 2; ++b)
      power(b) = re[b] * re[b] + im[b] * im[b];
    Eigen::VectorXd mel = fb * power;
    for (int m = 0; m < config.n_mels; ++m)
      out.mel(t, m) = std::log(std::max(mel(m), config.log_floor));
    Eigen::VectorXd cep = dct * out.mel.row(t).transpose();
    out.vocoder.block(t, 0, 1, config.n_cepstra) = cep.transpose();
  }
  // reconcile a |gap| <= 2 by repeating the final analysis frame
  for (long t = t_common; t < t_target; ++t) {
    out.mel.row(t) = out.mel.row(t_common - 1);
    out.vocoder.row(t) = out.vocoder.row(t_common - 1);
  }
  f0.f0.resize(t_target, 0.0);
  f0.voicing.resize(t_target, 0.0);
  out.f0track = std::move(f0);

  for (long t = 0; t < t_target; ++t) {
    double v = out.f0track.voicing[t];
    out.vocoder(t, config.n_cepstra) =
        v > 0.0 ? PitchPeriodNorm(out.f0track.f0[t], wave.sample_rate, f0_config)
                : 0.0;
    out.vocoder(t, config.n_cepstra + 1) = v;
  }
  return out;
}

F0Track F0TrackFromVocoder(const Mat &vocoder, const SpectralConfig &config,
                           const F0Config &f0_config) {
  const double fs = 22050.0;
  F0Track track;
  long T = vocoder.rows();
  track.f0.assign(T, 0.0);
  track.voicing.assign(T, 0.0);
  track.frame_hop = config.hop / fs;
  double lo = std::log(fs / f0_config.fmax), hi = std::log(fs / f0_config.fmin);
  for (long t = 0; t < T; ++t) {
    double v = std::clamp(vocoder(t, config.n_cepstra + 1), 0.0, 1.0);
    if (v <= config.voicing_gate) continue;
    double pn = std::clamp(vocoder(t, config.n_cepstra), 0.0, 1.0);
    track.voicing[t] = v;
    track.f0[t] = fs / std::exp(pn * (hi - lo) + lo);
  }
  return track;
}

}  // namespace features
}  // namespace convtts
