// Copyright 2026 The flashauth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLASHAUTH_SCENARIO_H_
#define FLASHAUTH_SCENARIO_H_

// Batch scenarios: Monte Carlo authentication sessions, attack campaigns and
// synthetic clip datasets, driven by a flat key=value config file.
//
//   # comment
//   name = night_highway
//   trials = 2700
//   master_seed = 7
//   timing.d = 25
//   channel.fps = 30
//   lighting_preset = night
//
// Unknown keys are errors. See README.md for the full key list.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "flashauth/adversary.h"
#include "flashauth/occ_channel.h"
#include "flashauth/protocol.h"
#include "flashauth/timing.h"

namespace flashauth {

enum class LightingPreset { kDaySunny, kDayCloudy, kNight, kSunset };

struct LightingLevels {
  double ambient_level;
  double noise_sigma;
};

LightingLevels PresetLevels(LightingPreset preset);
absl::string_view PresetName(LightingPreset preset);
absl::StatusOr<LightingPreset> ParsePreset(absl::string_view name);

struct ExportSpec {
  int count_per_class = 30;
  std::string output_dir;
  double capture_s = 1.6;
};

struct ScenarioConfig {
  std::string name = "default";
  int trials = 100;
  uint64_t master_seed = 1;
  TimingParams timing;
  ChannelParams channel = ChannelParams::ForFps(30.0);
  std::optional<LightingPreset> lighting;
  std::optional<AttackerProfile> attack;
  std::optional<ExportSpec> export_clips;
  double reaction_delay_s = 0.3;
  RsuConfig rsu;
  // Cycle challenge classes 1..27 over trials instead of drawing them.
  bool sweep_classes = false;

  absl::Status Validate() const;
};

absl::StatusOr<ScenarioConfig> ParseScenarioConfig(absl::string_view text);
absl::StatusOr<ScenarioConfig> LoadScenarioConfig(
    const std::filesystem::path& path);

struct MetricsReport {
  std::string scenario;
  std::string mode;  // "sessions" or the attack profile name
  uint64_t master_seed = 0;
  std::vector<SessionRecord> records;

  double AcceptanceRate() const;
  // Fraction of decoded sessions whose label matched the challenge.
  double DecodeAccuracy() const;
  double MeanDecodeLatency() const;

  static std::string MetricsCsvHeader();
  // Header plus one row per session, in trial order.
  std::string MetricsCsv() const;
  // key,value rows: acceptance rate, decode accuracy, per-class accuracy,
  // mean latency, and a count per rejection reason.
  std::string SummaryCsv() const;
};

absl::StatusOr<MetricsReport> RunScenario(const ScenarioConfig& config);

// Writes metrics.csv, summary.csv and transcripts/ under `out_dir`.
absl::Status WriteReport(const MetricsReport& report,
                         const std::filesystem::path& out_dir);

// Attack campaign with the config's channel and timing.
absl::StatusOr<CampaignResult> RunAttackScenario(const ScenarioConfig& config,
                                                 const AttackerProfile& profile);

// Writes count_per_class clips for each of the 29 labels under
// `out_dir`/clips/class_NN/clip_MMM/. Returns the number of clips written.
absl::StatusOr<int> ExportDataset(const ScenarioConfig& config,
                                  const std::filesystem::path& out_dir);

}  // namespace flashauth

#endif  // FLASHAUTH_SCENARIO_H_
