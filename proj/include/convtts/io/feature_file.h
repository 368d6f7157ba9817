// convtts/io/feature_file.h

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

#ifndef CONVTTS_IO_FEATURE_FILE_H_
#define CONVTTS_IO_FEATURE_FILE_H_

#include <map>
#include <string>
#include <vector>

#include "convtts/common.h"

namespace convtts {
namespace io {

// Binary container of named arrays with shape headers; one file per
// utterance holds mel, vocoder, durations, f0, voicing (and, once computed,
// hpc_utt / hpc_word). Little-endian, versioned, row-major payloads.
class ArrayFile {
 public:
  void PutMat(const std::string &name, const Mat &m);
  void PutVec(const std::string &name, const std::vector<double> &v);
  void PutIntVec(const std::string &name, const std::vector<long long> &v);

  bool Has(const std::string &name) const { return entries_.count(name) > 0; }
  std::vector<std::string> Names() const;

  Mat GetMat(const std::string &name) const;
  std::vector<double> GetVec(const std::string &name) const;
  std::vector<long long> GetIntVec(const std::string &name) const;

  void Save(const std::string &path) const;
  static ArrayFile Load(const std::string &path);

 private:
  struct Entry {
    std::uint8_t dtype = 0;  // 0 = f64, 1 = i64
    std::vector<std::uint32_t> dims;
    std::vector<double> f64;
    std::vector<long long> i64;
  };
  const Entry &Require(const std::string &name) const;
  std::map<std::string, Entry> entries_;
};

}  // namespace io
}  // namespace convtts

#endif  // CONVTTS_IO_FEATURE_FILE_H_
