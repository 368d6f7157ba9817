// convtts/rng.h

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

#ifndef CONVTTS_RNG_H_
#define CONVTTS_RNG_H_

#include <cmath>
#include <cstdint>
#include <vector>

namespace convtts {

// Deterministic generator (splitmix64 core). All stochastic code in the
// toolkit draws from this so runs reproduce bit-exactly for a given seed;
// std:: distributions are avoided because their sequences are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * (1.0 / 9007199254740992.0);
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  int UniformInt(int n) {  // in [0, n)
    return static_cast<int>(NextU64() % static_cast<std::uint64_t>(n));
  }

  // Box-Muller; one spare cached.
  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = Uniform();
    double u2 = Uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  // Standard Gumbel(0, 1) sample: -log(-log(u)).
  double Gumbel() {
    double u = Uniform();
    if (u < 1e-300) u = 1e-300;
    return -std::log(-std::log(u));
  }

  // Derives an independent stream, e.g. one per utterance.
  Rng Fork(std::uint64_t stream) {
    return Rng(NextU64() ^ (stream * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL));
  }

  template <typename T>
  void Shuffle(std::vector<T> *v) {
    for (std::size_t i = v->size(); i > 1; --i) {
      std::size_t j = NextU64() % i;
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace convtts

#endif  // CONVTTS_RNG_H_
