// convtts/common.h

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

#ifndef CONVTTS_COMMON_H_
#define CONVTTS_COMMON_H_

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace convtts {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Error taxonomy shared across modules. Each failure mode raised by an
// operation carries one of these codes so callers (and tests) can match on
// the condition instead of the message text.
enum class ErrorCode {
  kUnknownTag,
  kMalformedMarkup,
  kNonWordEmphasis,
  kOovWord,
  kVocabularyMismatch,
  kEmptyAudio,
  kDurationMismatch,
  kNoVoicedFrames,
  kHpcShapeMismatch,
  kStageMismatch,
  kMissingBaseCheckpoint,
  kUntrainedModel,
  kSpeakerOutOfRange,
  kMissingEncoder,
  kDimensionMismatch,
  kEmptyOutput,
  kDegenerateInterval,
  kTooFewWords,
  kSynthesisFailure,
  kConversionFailure,
  kIncompleteCorpus,
  kValidationFailure,
  kIoError,
  kConfigError,
  kInternal,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Raise(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

// FNV-1a over bytes; used for config hashes and step stamps.
std::uint64_t Fnv1a(const void *data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string HashHex(const std::string &text);

inline int RoundHalfUp(double x) {
  return static_cast<int>(std::floor(x + 0.5));
}

}  // namespace convtts

#endif  // CONVTTS_COMMON_H_
