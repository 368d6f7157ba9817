// convtts/augment/augment.cc

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

#include "convtts/augment/augment.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

namespace convtts {
namespace augment {

const char *SystemKindName(SystemKind kind) {
  switch (kind) {
    case SystemKind::kBase: return "Base";
    case SystemKind::kAdv: return "Adv";
    case SystemKind::kAug: return "Aug";
  }
  return "Base";
}

SystemKind SystemKindFromName(const std::string &name) {
  if (name == "Base" || name == "base") return SystemKind::kBase;
  if (name == "Adv" || name == "adv") return SystemKind::kAdv;
  if (name == "Aug" || name == "aug") return SystemKind::kAug;
  Raise(ErrorCode::kConfigError, "unknown system '" + name + "'");
}

CorpusManifest GenerateAugmentedCorpus(const CorpusManifest &conv_manifest,
                                       const std::vector<int> &neutral_speakers,
                                       const ConvertFn &convert,
                                       const std::string &out_dir,
                                       AugmentStats *stats, double min_success,
                                       int jobs) {
  for (const ManifestRow &row : conv_manifest.rows)
    if (row.style != frontend::Style::kConversational)
      Raise(ErrorCode::kValidationFailure,
            "augmentation source row " + row.utterance_id +
                " is not conversational");
  std::filesystem::create_directories(out_dir);

  struct Job {
    ManifestRow out_row;
    const ManifestRow *src;
    int target;
    bool ok = false;
  };
  std::vector<Job> work;
  for (int target : neutral_speakers) {
    for (const ManifestRow &src : conv_manifest.rows) {
      Job job;
      job.src = &src;
      job.target = target;
      job.out_row = src;
      job.out_row.speaker_id = target;
      job.out_row.style = frontend::Style::kConversational;
      job.out_row.origin = "vc";
      job.out_row.source_speaker = src.speaker_id;
      job.out_row.feature_path =
          (std::filesystem::path(out_dir) /
           (src.utterance_id + "__to_spk" + std::to_string(target) + ".feat"))
              .string();
      work.push_back(std::move(job));
    }
  }

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Job &job = work[i];
      try {
        job.ok = convert(*job.src, job.target, job.out_row.feature_path);
      } catch (const std::exception &) {
        job.ok = false;
      }
    }
  };
  int n_threads = std::max(1, jobs);
  if (n_threads == 1 || work.size() < 2) {
    run_range(0, work.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (work.size() + n_threads - 1) / n_threads;
    for (int k = 0; k < n_threads; ++k) {
      std::size_t lo = k * chunk, hi = std::min(work.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (std::thread &th : pool) th.join();
  }

  CorpusManifest out;
  int ok = 0;
  for (const Job &job : work)
    if (job.ok) {
      out.rows.push_back(job.out_row);
      ++ok;
    }
  if (stats != nullptr) {
    stats->requested = static_cast<int>(work.size());
    stats->converted = ok;
    stats->failed = static_cast<int>(work.size()) - ok;
  }
  if (!work.empty() &&
      static_cast<double>(ok) < min_success * static_cast<double>(work.size()))
    Raise(ErrorCode::kConversionFailure,
          std::to_string(work.size() - ok) + " of " +
              std::to_string(work.size()) +
              " conversions failed (success rate below threshold)");
  return out;
}

SystemConfig AssembleTrainingManifest(SystemKind kind,
                                      const CorpusManifest &recorded,
                                      const CorpusManifest &augmented,
                                      int conversational_speaker) {
  auto speakers = recorded.Speakers();
  if (speakers.size() < 2)
    Raise(ErrorCode::kIncompleteCorpus,
          "recorded corpus must contain the conversational speaker and at "
          "least one neutral speaker");
  bool has_conv = false;
  for (int s : speakers) has_conv = has_conv || s == conversational_speaker;
  if (!has_conv)
    Raise(ErrorCode::kIncompleteCorpus,
          "conversational speaker " + std::to_string(conversational_speaker) +
              " has no recorded rows");

  SystemConfig sys;
  sys.kind = kind;
  sys.adversary_enabled = (kind == SystemKind::kAdv);
  switch (kind) {
    case SystemKind::kBase:
    case SystemKind::kAdv:
      sys.manifest = recorded;
      break;
    case SystemKind::kAug: {
      if (augmented.rows.empty())
        Raise(ErrorCode::kIncompleteCorpus,
              "Aug assembly requires a non-empty augmented corpus");
      sys.manifest = recorded.FilterSpeaker(conversational_speaker,
                                            /*keep=*/false);
      for (const ManifestRow &row : augmented.rows)
        sys.manifest.rows.push_back(row);
      break;
    }
  }
  sys.manifest.Validate(/*check_files=*/false);
  return sys;
}

std::pair<Vec, Vec> GridSearchOffsets(const SynthProbe &probe,
                                      const OffsetProxy &target,
                                      const std::vector<double> &grid) {
  Vec best_utt = Vec::Zero(3), best_word = Vec::Zero(3);
  double best_cost = std::numeric_limits<double>::infinity();
  for (double range_off : grid) {
    for (double rate_off : grid) {
      Vec utt(3), word(3);
      utt << 0.0, range_off, rate_off;
      word << 0.0, range_off, rate_off;
      OffsetProxy got = probe(utt, word);
      double dur_err =
          std::log(std::max(got.total_frames, 1.0) /
                   std::max(target.total_frames, 1.0));
      double range_err = got.pitch_range - target.pitch_range;
      double cost = dur_err * dur_err + range_err * range_err;
      if (cost < best_cost) {
        best_cost = cost;
        best_utt = utt;
        best_word = word;
      }
    }
  }
  return {best_utt, best_word};
}

}  // namespace augment
}  // namespace convtts
