// convtts/io/wav.cc

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

#include "convtts/io/wav.h"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "convtts/common.h"

namespace convtts {
namespace io {

namespace {

template <typename T>
void Write(std::ofstream &out, T v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T Read(std::ifstream &in) {
  T v{};
  in.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!in) Raise(ErrorCode::kIoError, "truncated wav file");
  return v;
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Raise(ErrorCode::kIoError, "cannot open " + path);
  char riff[4], wave[4];
  in.read(riff, 4);
  Read<std::uint32_t>(in);
  in.read(wave, 4);
  if (!in || std::memcmp(riff, "RIFF", 4) != 0 ||
      std::memcmp(wave, "WAVE", 4) != 0)
    Raise(ErrorCode::kIoError, path + " is not a RIFF/WAVE file");

  Waveform out;
  bool got_fmt = false;
  while (in) {
    char id[4];
    in.read(id, 4);
    if (!in) break;
    auto size = Read<std::uint32_t>(in);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      auto format = Read<std::uint16_t>(in);
      auto channels = Read<std::uint16_t>(in);
      auto rate = Read<std::uint32_t>(in);
      Read<std::uint32_t>(in);  // byte rate
      Read<std::uint16_t>(in);  // block align
      auto bits = Read<std::uint16_t>(in);
      if (format != 1 || channels != 1 || bits != 16)
        Raise(ErrorCode::kIoError, path + ": only mono PCM16 is supported");
      out.sample_rate = static_cast<int>(rate);
      got_fmt = true;
      if (size > 16) in.seekg(size - 16, std::ios::cur);
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (!got_fmt) Raise(ErrorCode::kIoError, path + ": data before fmt");
      std::size_t n = size / 2;
      out.samples.resize(n);
      std::vector<std::int16_t> raw(n);
      in.read(reinterpret_cast<char *>(raw.data()),
              static_cast<std::streamsize>(size));
      if (!in) Raise(ErrorCode::kIoError, "truncated wav data in " + path);
      for (std::size_t i = 0; i < n; ++i) out.samples[i] = raw[i] / 32768.0;
      return out;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
    }
  }
  Raise(ErrorCode::kIoError, path + " has no data chunk");
}

void WriteWav(const std::string &path, const Waveform &wave) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Raise(ErrorCode::kIoError, "cannot write " + path);
  std::uint32_t n = static_cast<std::uint32_t>(wave.samples.size());
  std::uint32_t data_bytes = n * 2;
  out.write("RIFF", 4);
  Write<std::uint32_t>(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  Write<std::uint32_t>(out, 16);
  Write<std::uint16_t>(out, 1);  // PCM
  Write<std::uint16_t>(out, 1);  // mono
  Write<std::uint32_t>(out, static_cast<std::uint32_t>(wave.sample_rate));
  Write<std::uint32_t>(out, static_cast<std::uint32_t>(wave.sample_rate * 2));
  Write<std::uint16_t>(out, 2);
  Write<std::uint16_t>(out, 16);
  out.write("data", 4);
  Write<std::uint32_t>(out, data_bytes);
  for (double s : wave.samples) {
    double clipped = std::clamp(s, -1.0, 1.0);
    auto v = static_cast<std::int16_t>(std::lround(clipped * 32767.0));
    Write<std::int16_t>(out, v);
  }
  if (!out) Raise(ErrorCode::kIoError, "short write to " + path);
}

}  // namespace io
}  // namespace convtts
