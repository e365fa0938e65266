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

// flashauth: batch runner for authentication sessions, attack campaigns and
// clip dataset export.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "flashauth/adversary.h"
#include "flashauth/scenario.h"

namespace {

using flashauth::ScenarioConfig;

absl::StatusOr<ScenarioConfig> Load(const std::string& path,
                                    std::optional<uint64_t> seed) {
  auto cfg = flashauth::LoadScenarioConfig(path);
  if (!cfg.ok()) return cfg.status();
  if (seed) cfg->master_seed = *seed;
  return cfg;
}

int Fail(const absl::Status& status) {
  std::fprintf(stderr, "flashauth: %s\n", std::string(status.message()).c_str());
  return 1;
}

int Run(const std::string& config, const std::string& out,
        std::optional<uint64_t> seed) {
  auto cfg = Load(config, seed);
  if (!cfg.ok()) return Fail(cfg.status());
  auto report = flashauth::RunScenario(*cfg);
  if (!report.ok()) return Fail(report.status());
  if (auto s = flashauth::WriteReport(*report, out); !s.ok()) return Fail(s);
  std::printf("%s: %zu sessions, acceptance %.4f, decode accuracy %.4f -> %s\n",
              report->scenario.c_str(), report->records.size(),
              report->AcceptanceRate(), report->DecodeAccuracy(), out.c_str());
  return 0;
}

int Export(const std::string& config, std::string out,
           std::optional<uint64_t> seed) {
  auto cfg = Load(config, seed);
  if (!cfg.ok()) return Fail(cfg.status());
  if (!cfg->export_clips) {
    return Fail(absl::FailedPreconditionError(
        "config has no export.* keys (set at least export.count)"));
  }
  if (out.empty()) out = cfg->export_clips->output_dir;
  if (out.empty()) {
    return Fail(absl::InvalidArgumentError("no --out and no export.dir"));
  }
  auto n = flashauth::ExportDataset(*cfg, out);
  if (!n.ok()) return Fail(n.status());
  std::printf("wrote %d clips to %s\n", *n,
              (std::filesystem::path(out) / "clips").string().c_str());
  return 0;
}

int Attack(const std::string& config, const std::string& profile_name,
           const std::string& out, std::optional<uint64_t> seed) {
  auto cfg = Load(config, seed);
  if (!cfg.ok()) return Fail(cfg.status());
  auto kind = flashauth::ParseAttackKind(profile_name);
  if (!kind.ok()) return Fail(kind.status());
  // Capabilities configured for the same profile take precedence.
  flashauth::AttackerProfile profile =
      cfg->attack && cfg->attack->kind == *kind
          ? *cfg->attack
          : flashauth::AttackerProfile::Default(*kind);
  auto result = flashauth::RunAttackScenario(*cfg, profile);
  if (!result.ok()) return Fail(result.status());
  const std::string csv = absl::StrCat(flashauth::CampaignResult::CsvHeader(),
                                       "\n", result->ToCsvRow(), "\n");
  std::fputs(csv.c_str(), stdout);
  if (!out.empty()) {
    flashauth::MetricsReport report;
    report.scenario = cfg->name;
    report.mode = result->profile;
    report.master_seed = cfg->master_seed;
    report.records = std::move(result->records);
    if (auto s = flashauth::WriteReport(report, out); !s.ok()) return Fail(s);
    std::ofstream(std::filesystem::path(out) / "campaign.csv") << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-channel V2I authentication simulator"};
  app.require_subcommand(1);
  std::optional<uint64_t> seed;
  app.add_option("--seed", seed, "Override master_seed from the config");

  std::string config, out, profile;

  auto* run = app.add_subcommand("run", "Run Monte Carlo sessions");
  run->add_option("config", config, "Scenario config file")->required();
  run->add_option("--out", out, "Output directory")->required();

  auto* exp = app.add_subcommand("export-dataset", "Export PGM clip dataset");
  exp->add_option("config", config, "Scenario config file")->required();
  exp->add_option("--out", out, "Output directory (default: export.dir)");

  auto* attack = app.add_subcommand("attack", "Run an attack campaign");
  attack->add_option("config", config, "Scenario config file")->required();
  attack->add_option("--profile", profile,
                     "remote, replay, guess or obstruct")
      ->required();
  attack->add_option("--out", out, "Also write metrics and transcripts here");

  CLI11_PARSE(app, argc, argv);

  if (*run) return Run(config, out, seed);
  if (*exp) return Export(config, out, seed);
  return Attack(config, profile, out, seed);
}
