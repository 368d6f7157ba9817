// convtts/io/checkpoint.cc

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

#include "convtts/io/checkpoint.h"

#include <cstdint>
#include <fstream>

namespace convtts {
namespace io {

namespace {

constexpr std::uint32_t kMagic = 0x4b435643;  // "CVCK"
constexpr std::uint32_t kVersion = 1;

template <typename T>
void WritePod(std::ofstream &out, T v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T ReadPod(std::ifstream &in) {
  T v{};
  in.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!in) Raise(ErrorCode::kIoError, "truncated checkpoint");
  return v;
}

void WriteString(std::ofstream &out, const std::string &s) {
  WritePod<std::uint16_t>(out, static_cast<std::uint16_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadString(std::ifstream &in) {
  auto n = ReadPod<std::uint16_t>(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) Raise(ErrorCode::kIoError, "truncated checkpoint");
  return s;
}

}  // namespace

void Checkpoint::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) Raise(ErrorCode::kIoError, "cannot write " + path);
  WritePod(out, kMagic);
  WritePod(out, kVersion);
  WriteString(out, config_hash);
  WriteString(out, stage);
  WritePod<std::int64_t>(out, step);
  WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const auto &[name, m] : params) {
    WriteString(out, name);
    WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
    WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c) WritePod<double>(out, m(r, c));
  }
  if (!out) Raise(ErrorCode::kIoError, "short write to " + path);
}

Checkpoint Checkpoint::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Raise(ErrorCode::kIoError, "cannot open " + path);
  if (ReadPod<std::uint32_t>(in) != kMagic)
    Raise(ErrorCode::kIoError, path + " is not a checkpoint");
  auto version = ReadPod<std::uint32_t>(in);
  if (version != kVersion)
    Raise(ErrorCode::kIoError,
          "unsupported checkpoint version " + std::to_string(version));
  Checkpoint ck;
  ck.config_hash = ReadString(in);
  ck.stage = ReadString(in);
  ck.step = ReadPod<std::int64_t>(in);
  auto count = ReadPod<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = ReadString(in);
    auto rows = ReadPod<std::uint32_t>(in);
    auto cols = ReadPod<std::uint32_t>(in);
    Mat m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r)
      for (std::uint32_t c = 0; c < cols; ++c) m(r, c) = ReadPod<double>(in);
    ck.params[name] = std::move(m);
  }
  return ck;
}

Checkpoint Checkpoint::FromRegistry(const nn::ParamRegistry &reg,
                                    const std::string &config_hash,
                                    const std::string &stage, long long step) {
  Checkpoint ck;
  ck.config_hash = config_hash;
  ck.stage = stage;
  ck.step = step;
  for (const auto &p : reg.params()) ck.params[p->name] = p->value;
  return ck;
}

void Checkpoint::ApplyToRegistry(nn::ParamRegistry *reg) const {
  for (const auto &[name, m] : params) {
    nn::Parameter *p = reg->Find(name);
    if (p == nullptr)
      Raise(ErrorCode::kIoError, "checkpoint parameter '" + name +
                                     "' unknown to this model");
    if (p->value.rows() != m.rows() || p->value.cols() != m.cols())
      Raise(ErrorCode::kIoError, "checkpoint parameter '" + name +
                                     "' has mismatched shape");
    p->value = m;
  }
}

}  // namespace io
}  // namespace convtts
