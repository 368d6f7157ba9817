// convtts/augment/manifest.cc

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

#include "convtts/augment/manifest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"

namespace convtts {
namespace augment {

using nlohmann::json;

CorpusManifest CorpusManifest::LoadJsonl(const std::string &path) {
  std::ifstream in(path);
  if (!in) Raise(ErrorCode::kIoError, "cannot open manifest " + path);
  CorpusManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      Raise(ErrorCode::kIoError,
            path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    ManifestRow row;
    row.utterance_id = j.at("utterance_id").get<std::string>();
    row.speaker_id = j.at("speaker_id").get<int>();
    row.style = frontend::StyleFromName(j.at("style").get<std::string>());
    row.role = frontend::SpeakerRoleFromName(j.at("role").get<std::string>());
    row.markup_path = j.at("markup_path").get<std::string>();
    row.feature_path = j.at("feature_path").get<std::string>();
    row.origin = j.value("origin", "recorded");
    row.source_speaker = j.value("source_speaker", -1);
    m.rows.push_back(std::move(row));
  }
  return m;
}

void CorpusManifest::SaveJsonl(const std::string &path) const {
  std::ofstream out(path);
  if (!out) Raise(ErrorCode::kIoError, "cannot write manifest " + path);
  for (const ManifestRow &row : rows) {
    json j;
    j["utterance_id"] = row.utterance_id;
    j["speaker_id"] = row.speaker_id;
    j["style"] = frontend::StyleName(row.style);
    j["role"] = frontend::SpeakerRoleName(row.role);
    j["markup_path"] = row.markup_path;
    j["feature_path"] = row.feature_path;
    j["origin"] = row.origin;
    if (row.source_speaker >= 0) j["source_speaker"] = row.source_speaker;
    out << j.dump() << "\n";
  }
}

void CorpusManifest::Validate(bool check_files) const {
  std::set<std::tuple<std::string, int, std::string>> seen;
  for (const ManifestRow &row : rows) {
    if (row.origin != "recorded" && row.origin != "vc")
      Raise(ErrorCode::kValidationFailure,
            "row " + row.utterance_id + " has origin '" + row.origin + "'");
    auto key = std::make_tuple(row.utterance_id, row.speaker_id, row.origin);
    if (!seen.insert(key).second)
      Raise(ErrorCode::kValidationFailure,
            "duplicate utterance " + row.utterance_id + " for speaker " +
                std::to_string(row.speaker_id) + " origin " + row.origin);
    if (check_files) {
      for (const std::string &p : {row.markup_path, row.feature_path})
        if (!std::filesystem::exists(p))
          Raise(ErrorCode::kValidationFailure,
                "manifest references missing file " + p);
    }
  }
}

std::vector<int> CorpusManifest::Speakers() const {
  std::set<int> s;
  for (const ManifestRow &row : rows) s.insert(row.speaker_id);
  return {s.begin(), s.end()};
}

CorpusManifest CorpusManifest::FilterSpeaker(int speaker_id, bool keep) const {
  CorpusManifest out;
  for (const ManifestRow &row : rows)
    if ((row.speaker_id == speaker_id) == keep) out.rows.push_back(row);
  return out;
}

CorpusManifest CorpusManifest::FilterStyle(frontend::Style style) const {
  CorpusManifest out;
  for (const ManifestRow &row : rows)
    if (row.style == style) out.rows.push_back(row);
  return out;
}

}  // namespace augment
}  // namespace convtts
