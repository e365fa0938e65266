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

#include "flashauth/scenario.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "flashauth/clip_export.h"

namespace flashauth {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("flashauth_" + name + "_" +
                        std::to_string(::testing::UnitTest::GetInstance()
                                           ->random_seed()));
  fs::remove_all(dir);
  return dir;
}

TEST(ParseScenarioConfig, Defaults) {
  auto cfg = ParseScenarioConfig("");
  ASSERT_TRUE(cfg.ok());
  EXPECT_EQ(cfg->trials, 100);
  EXPECT_DOUBLE_EQ(cfg->channel.fps, 30);
  EXPECT_TRUE(ValidateParams(cfg->channel).empty());
  EXPECT_FALSE(cfg->attack.has_value());
  EXPECT_FALSE(cfg->export_clips.has_value());
}

TEST(ParseScenarioConfig, AllSections) {
  auto cfg = ParseScenarioConfig(R"(
# comment line
name = highway      # trailing comment
trials = 12
master_seed = 99
timing.d = 30
timing.v = 16.6
timing.t_f = 0.1
channel.fps = 60
channel.distance_m = 20
channel.mirror_view = true
lighting_preset = night
channel.noise_sigma = 0.01
attack.profile = replay
export.count = 2
export.dir = clips_out
protocol.lockout = 5
)");
  ASSERT_TRUE(cfg.ok()) << cfg.status();
  EXPECT_EQ(cfg->name, "highway");
  EXPECT_EQ(cfg->trials, 12);
  EXPECT_EQ(cfg->master_seed, 99u);
  EXPECT_DOUBLE_EQ(cfg->timing.distance_m, 30);
  EXPECT_DOUBLE_EQ(cfg->timing.flash_s, 0.1);
  EXPECT_DOUBLE_EQ(cfg->channel.exposure_s, 1.0 / 60);
  EXPECT_TRUE(cfg->channel.mirror_view);
  EXPECT_DOUBLE_EQ(cfg->channel.ambient_level, 0.02);
  EXPECT_DOUBLE_EQ(cfg->channel.noise_sigma, 0.01);
  ASSERT_TRUE(cfg->attack.has_value());
  EXPECT_EQ(cfg->attack->kind, AttackKind::kProximityReplayer);
  EXPECT_TRUE(cfg->attack->capabilities.can_record_los);
  EXPECT_EQ(cfg->export_clips->count_per_class, 2);
  EXPECT_EQ(cfg->export_clips->output_dir, "clips_out");
  EXPECT_EQ(cfg->rsu.lockout_threshold, 5);
}

TEST(ParseScenarioConfig, Errors) {
  EXPECT_FALSE(ParseScenarioConfig("bogus = 1").ok());
  EXPECT_FALSE(ParseScenarioConfig("trials = many").ok());
  EXPECT_FALSE(ParseScenarioConfig("trials").ok());
  EXPECT_FALSE(ParseScenarioConfig("lighting_preset = fog").ok());
  EXPECT_FALSE(ParseScenarioConfig("attack.has_los_emitter = 1").ok());
  EXPECT_FALSE(ParseScenarioConfig("channel.pw_s = 0.05").ok());
  EXPECT_FALSE(ParseScenarioConfig("timing.n = 13").ok());
  EXPECT_FALSE(
      ParseScenarioConfig("attack.profile = remote\nattack.has_los_emitter = 1")
          .ok());
  const auto s = ParseScenarioConfig("trials = 3\n\nfoo = 2").status();
  EXPECT_NE(s.message().find("line 3"), std::string::npos) << s;
}

TEST(LoadScenarioConfig, MissingFile) {
  EXPECT_EQ(LoadScenarioConfig("/nonexistent/x.conf").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(LightingPresets, Levels) {
  for (auto p : {LightingPreset::kDaySunny, LightingPreset::kDayCloudy,
                 LightingPreset::kSunset, LightingPreset::kNight}) {
    EXPECT_EQ(*ParsePreset(PresetName(p)), p);
  }
  EXPECT_DOUBLE_EQ(PresetLevels(LightingPreset::kDaySunny).noise_sigma, 0.05);
  EXPECT_LT(PresetLevels(LightingPreset::kDaySunny).noise_sigma,
            PresetLevels(LightingPreset::kNight).noise_sigma);
}

TEST(Metrics, GoldenHeader) {
  EXPECT_EQ(MetricsReport::MetricsCsvHeader(),
            "trial,seed,role,vehicle_id,challenge_class,decoded_class,score,"
            "alignment_s,decode_latency_s,outcome,reason");
}

TEST(RunScenario, CleanSessionsAllAuthenticate) {
  auto cfg = ParseScenarioConfig(
      "trials = 54\nsweep_classes = 1\nchannel.noise_sigma = 0");
  ASSERT_TRUE(cfg.ok());
  auto report = RunScenario(*cfg);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->mode, "sessions");
  EXPECT_EQ(report->records.size(), 54u);
  EXPECT_DOUBLE_EQ(report->AcceptanceRate(), 1.0);
  EXPECT_DOUBLE_EQ(report->DecodeAccuracy(), 1.0);
  std::vector<int> per_class(28, 0);
  for (const auto& r : report->records) ++per_class[r.challenge_class];
  for (int c = 1; c <= 27; ++c) EXPECT_EQ(per_class[c], 2) << c;
  // Frame ends about 0.02 + 0.02 + 0.3 + 1.05 s after issue, plus t_c.
  EXPECT_NEAR(report->MeanDecodeLatency(), 0.02 + 0.3 + 1.05 + 0.1, 0.05);
  const std::string summary = report->SummaryCsv();
  EXPECT_NE(summary.find("acceptance_rate,1.000000"), std::string::npos);
  EXPECT_NE(summary.find("class_27_accuracy,1.000000"), std::string::npos);
  EXPECT_NE(summary.find("rejected_late,0"), std::string::npos);
}

TEST(RunScenario, AttackMode) {
  auto cfg = ParseScenarioConfig("trials = 20\nattack.profile = remote");
  auto report = RunScenario(*cfg);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->mode, "remote");
  EXPECT_EQ(report->AcceptanceRate(), 0.0);
}

TEST(WriteReport, ByteIdenticalReruns) {
  auto cfg = ParseScenarioConfig(
      "trials = 30\nlighting_preset = sunset\nchannel.jitter_sigma = 0.005\n"
      "channel.frame_drop_prob = 0.02");
  const fs::path a = TempDir("rep_a"), b = TempDir("rep_b");
  ASSERT_TRUE(WriteReport(*RunScenario(*cfg), a).ok());
  ASSERT_TRUE(WriteReport(*RunScenario(*cfg), b).ok());
  EXPECT_EQ(Slurp(a / "metrics.csv"), Slurp(b / "metrics.csv"));
  EXPECT_EQ(Slurp(a / "summary.csv"), Slurp(b / "summary.csv"));
  int files = 0;
  for (const auto& e : fs::directory_iterator(a / "transcripts")) {
    ++files;
    EXPECT_EQ(Slurp(e.path()),
              Slurp(b / "transcripts" / e.path().filename()));
  }
  EXPECT_EQ(files, 30);
  EXPECT_TRUE(fs::exists(a / "transcripts" / "trial_000000_vehicle_veh-000.tsv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(ExportDataset, OneClipPerLabel) {
  auto cfg = ParseScenarioConfig("export.count = 1\nmaster_seed = 4");
  const fs::path out = TempDir("export");
  auto n = ExportDataset(*cfg, out);
  ASSERT_TRUE(n.ok()) << n.status();
  EXPECT_EQ(*n, 29);
  std::set<int> codes;
  for (int code = 1; code <= 29; ++code) {
    char name[16];
    std::snprintf(name, sizeof(name), "class_%02d", code);
    const fs::path clip = out / "clips" / name / "clip_000";
    auto m = ClipManifest::Parse(Slurp(clip / "manifest.txt"));
    ASSERT_TRUE(m.ok());
    codes.insert(m->class_code);
    EXPECT_EQ(m->class_code, code);
    EXPECT_EQ(m->frame_count, 48);
    EXPECT_GE(m->frame_count, 32);
    EXPECT_TRUE(fs::exists(clip / "frame_0047.pgm"));
    EXPECT_FALSE(fs::exists(clip / "frame_0048.pgm"));
  }
  EXPECT_EQ(codes.size(), 29u);
  fs::remove_all(out);
}

TEST(ExportDataset, ThirtyPerClass) {
  auto cfg = ParseScenarioConfig("export.count = 30\nexport.capture_s = 1.1");
  const fs::path out = TempDir("export30");
  auto n = ExportDataset(*cfg, out);
  ASSERT_TRUE(n.ok());
  EXPECT_EQ(*n, 870);
  int dirs = 0;
  for (const auto& e : fs::directory_iterator(out / "clips" / "class_28")) {
    dirs += e.is_directory();
  }
  EXPECT_EQ(dirs, 30);
  fs::remove_all(out);
}

TEST(ExportDataset, RequiresExportSection) {
  EXPECT_FALSE(ExportDataset(*ParseScenarioConfig(""), TempDir("none")).ok());
}

}  // namespace
}  // namespace flashauth
