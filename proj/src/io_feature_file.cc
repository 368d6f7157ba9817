// convtts/io/feature_file.cc

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

#include "convtts/io/feature_file.h"

#include <cstring>
#include <fstream>

namespace convtts {
namespace io {

namespace {

constexpr std::uint32_t kMagic = 0x54465643;  // "CVFT"
constexpr std::uint32_t kVersion = 1;

template <typename T>
void WritePod(std::ofstream &out, T v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T ReadPod(std::ifstream &in) {
  T v{};
  in.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!in) Raise(ErrorCode::kIoError, "truncated array file");
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
  if (!in) Raise(ErrorCode::kIoError, "truncated array file");
  return s;
}

}  // namespace

void ArrayFile::PutMat(const std::string &name, const Mat &m) {
  Entry e;
  e.dtype = 0;
  e.dims = {static_cast<std::uint32_t>(m.rows()),
            static_cast<std::uint32_t>(m.cols())};
  e.f64.resize(static_cast<std::size_t>(m.size()));
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      e.f64[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  entries_[name] = std::move(e);
}

void ArrayFile::PutVec(const std::string &name, const std::vector<double> &v) {
  Entry e;
  e.dtype = 0;
  e.dims = {static_cast<std::uint32_t>(v.size())};
  e.f64 = v;
  entries_[name] = std::move(e);
}

void ArrayFile::PutIntVec(const std::string &name,
                          const std::vector<long long> &v) {
  Entry e;
  e.dtype = 1;
  e.dims = {static_cast<std::uint32_t>(v.size())};
  e.i64 = v;
  entries_[name] = std::move(e);
}

std::vector<std::string> ArrayFile::Names() const {
  std::vector<std::string> out;
  for (const auto &[name, entry] : entries_) out.push_back(name);
  return out;
}

const ArrayFile::Entry &ArrayFile::Require(const std::string &name) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    Raise(ErrorCode::kIoError, "array '" + name + "' not present");
  return it->second;
}

Mat ArrayFile::GetMat(const std::string &name) const {
  const Entry &e = Require(name);
  if (e.dtype != 0 || e.dims.size() != 2)
    Raise(ErrorCode::kIoError, "array '" + name + "' is not a float matrix");
  Mat m(e.dims[0], e.dims[1]);
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      m(r, c) = e.f64[static_cast<std::size_t>(r * m.cols() + c)];
  return m;
}

std::vector<double> ArrayFile::GetVec(const std::string &name) const {
  const Entry &e = Require(name);
  if (e.dtype != 0 || e.dims.size() != 1)
    Raise(ErrorCode::kIoError, "array '" + name + "' is not a float vector");
  return e.f64;
}

std::vector<long long> ArrayFile::GetIntVec(const std::string &name) const {
  const Entry &e = Require(name);
  if (e.dtype != 1 || e.dims.size() != 1)
    Raise(ErrorCode::kIoError, "array '" + name + "' is not an int vector");
  return e.i64;
}

void ArrayFile::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) Raise(ErrorCode::kIoError, "cannot write " + path);
  WritePod(out, kMagic);
  WritePod(out, kVersion);
  WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(entries_.size()));
  for (const auto &[name, e] : entries_) {
    WriteString(out, name);
    WritePod<std::uint8_t>(out, e.dtype);
    WritePod<std::uint8_t>(out, static_cast<std::uint8_t>(e.dims.size()));
    for (std::uint32_t d : e.dims) WritePod(out, d);
    if (e.dtype == 0)
      out.write(reinterpret_cast<const char *>(e.f64.data()),
                static_cast<std::streamsize>(e.f64.size() * sizeof(double)));
    else
      out.write(reinterpret_cast<const char *>(e.i64.data()),
                static_cast<std::streamsize>(e.i64.size() * sizeof(long long)));
  }
  if (!out) Raise(ErrorCode::kIoError, "short write to " + path);
}

ArrayFile ArrayFile::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Raise(ErrorCode::kIoError, "cannot open " + path);
  if (ReadPod<std::uint32_t>(in) != kMagic)
    Raise(ErrorCode::kIoError, path + " is not an array file");
  std::uint32_t version = ReadPod<std::uint32_t>(in);
  if (version != kVersion)
    Raise(ErrorCode::kIoError, "unsupported array file version " +
                                   std::to_string(version));
  auto count = ReadPod<std::uint32_t>(in);
  ArrayFile file;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = ReadString(in);
    Entry e;
    e.dtype = ReadPod<std::uint8_t>(in);
    auto ndim = ReadPod<std::uint8_t>(in);
    std::size_t total = 1;
    for (int d = 0; d < ndim; ++d) {
      e.dims.push_back(ReadPod<std::uint32_t>(in));
      total *= e.dims.back();
    }
    if (e.dtype == 0) {
      e.f64.resize(total);
      in.read(reinterpret_cast<char *>(e.f64.data()),
              static_cast<std::streamsize>(total * sizeof(double)));
    } else {
      e.i64.resize(total);
      in.read(reinterpret_cast<char *>(e.i64.data()),
              static_cast<std::streamsize>(total * sizeof(long long)));
    }
    if (!in) Raise(ErrorCode::kIoError, "truncated array file " + path);
    file.entries_[name] = std::move(e);
  }
  return file;
}

}  // namespace io
}  // namespace convtts
