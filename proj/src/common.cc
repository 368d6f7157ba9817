// convtts/common.cc

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

#include "convtts/common.h"

#include <cstdio>

namespace convtts {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownTag: return "UnknownTag";
    case ErrorCode::kMalformedMarkup: return "MalformedMarkup";
    case ErrorCode::kNonWordEmphasis: return "NonWordEmphasis";
    case ErrorCode::kOovWord: return "OovWord";
    case ErrorCode::kVocabularyMismatch: return "VocabularyMismatch";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kDurationMismatch: return "DurationMismatch";
    case ErrorCode::kNoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::kHpcShapeMismatch: return "HpcShapeMismatch";
    case ErrorCode::kStageMismatch: return "StageMismatch";
    case ErrorCode::kMissingBaseCheckpoint: return "MissingBaseCheckpoint";
    case ErrorCode::kUntrainedModel: return "UntrainedModel";
    case ErrorCode::kSpeakerOutOfRange: return "SpeakerOutOfRange";
    case ErrorCode::kMissingEncoder: return "MissingEncoder";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyOutput: return "EmptyOutput";
    case ErrorCode::kDegenerateInterval: return "DegenerateInterval";
    case ErrorCode::kTooFewWords: return "TooFewWords";
    case ErrorCode::kSynthesisFailure: return "SynthesisFailure";
    case ErrorCode::kConversionFailure: return "ConversionFailure";
    case ErrorCode::kIncompleteCorpus: return "IncompleteCorpus";
    case ErrorCode::kValidationFailure: return "ValidationFailure";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

std::uint64_t Fnv1a(const void *data, std::size_t size, std::uint64_t seed) {
  const auto *bytes = static_cast<const unsigned char *>(data);
  std::uint64_t hash = seed;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string HashHex(const std::string &text) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a(text.data(), text.size())));
  return std::string(buf);
}

}  // namespace convtts
