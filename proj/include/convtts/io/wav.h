// convtts/io/wav.h

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

#ifndef CONVTTS_IO_WAV_H_
#define CONVTTS_IO_WAV_H_

#include <string>
#include <vector>

namespace convtts {
namespace io {

struct Waveform {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 22050;
};

// Minimal RIFF reader/writer, mono PCM16 only.
Waveform ReadWav(const std::string &path);
void WriteWav(const std::string &path, const Waveform &wave);

}  // namespace io
}  // namespace convtts

#endif  // CONVTTS_IO_WAV_H_
