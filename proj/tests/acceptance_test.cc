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

// Acceptance suite: one PASS/FAIL line per primary criterion. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flashauth/adversary.h"
#include "flashauth/frame_codec.h"
#include "flashauth/occ_channel.h"
#include "flashauth/protocol.h"
#include "flashauth/reference_decoder.h"
#include "flashauth/rng.h"
#include "flashauth/scenario.h"
#include "flashauth/timing.h"

namespace flashauth {
namespace {

namespace fs = std::filesystem;

// Pinned tolerances and budgets.
constexpr double kAuthLowSpeedMin = 2.95, kAuthLowSpeedMax = 3.05;
constexpr double kAuthHighSpeedMin = 1.48, kAuthHighSpeedMax = 1.53;
constexpr int kChannelDraws = 1000;
constexpr int kOracleSeeds = 20;
constexpr int kNoisySeedsPerClass = 100;
constexpr double kNoisyAccuracyFloor = 0.95;
constexpr int kRateTrials = 10000;
constexpr double kRateCentre = 0.0370, kRateHalfWidth = 0.0060;
constexpr int kRemoteTrials = 1000;
constexpr int kObstructionTrials = 500;
constexpr double kBudgetCodecS = 1, kBudgetTimingS = 1, kBudgetChannelS = 5,
                 kBudgetOracleS = 30, kBudgetNoisyS = 120,
                 kBudgetSecurityS = 120;
constexpr uint64_t kMasterSeed = 20261016;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;
// Transcripts of every session produced by the criteria above soundness.
std::vector<SessionRecord> all_records;

void Report(const char* name, double budget_s,
            const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = body();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (budget_s > 0 && elapsed > budget_s) {
    o.pass = false;
    o.detail += " [over runtime budget]";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-22s %s (%.2f s", o.pass ? "PASS" : "FAIL", name,
              o.detail.c_str(), elapsed);
  if (budget_s > 0) std::printf(" / budget %.0f s", budget_s);
  std::printf(")\n");
  std::fflush(stdout);
}

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

Outcome CodecExactness() {
  int bad = 0;
  std::vector<std::string> seen;
  for (int i = 1; i <= kNumValidClasses; ++i) {
    auto f = EncodeClass(i);
    if (!f.ok() || DecodeSymbols(f->symbols()) != *ClassLabel::Valid(i)) ++bad;
    seen.push_back(f->ToString());
  }
  std::sort(seen.begin(), seen.end());
  const bool distinct =
      std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  const std::vector<std::pair<int, std::string>> pairs = {
      {3, "11-00-11-00-11-00-01"},
      {4, "11-00-11-00-10-00-11"},
      {14, "11-00-10-00-10-00-10"},
      {15, "11-00-10-00-10-00-01"}};
  int pair_bad = 0;
  for (const auto& [index, text] : pairs) {
    if (EncodeClass(index)->ToString() != text) ++pair_bad;
    if (DecodeSymbols(*ParseSymbols(text)).index() != index) ++pair_bad;
  }
  return {bad == 0 && pair_bad == 0 && distinct,
          Fmt("round-trip failures %.0f/27, reference pair mismatches %.0f",
              bad, pair_bad)};
}

Outcome TimingReproduction() {
  const double slow = *AuthWindow(25, 8.3);
  const double fast = *AuthWindow(25, 16.6);
  const double sched = *FlashScheduleDuration(14, 0.15);
  const bool ok = slow >= kAuthLowSpeedMin && slow <= kAuthLowSpeedMax &&
                  fast >= kAuthHighSpeedMin && fast <= kAuthHighSpeedMax &&
                  sched == 1.05;
  return {ok, Fmt("t_auth(25,8.3)=%.4f s, t_auth(25,16.6)=%.4f s, "
                  "schedule(14,0.15)=%.17g s",
                  slow, fast, sched)};
}

Outcome ChannelConstraints() {
  std::mt19937_64 rng(kMasterSeed);
  std::uniform_real_distribution<double> u(0, 1);
  int mismatches = 0, accepted = 0;
  for (int i = 0; i < kChannelDraws; ++i) {
    ChannelParams p = ChannelParams::ForFps(30);
    p.fps = 5 + 115 * u(rng);
    const double te = 1.0 / p.fps;
    p.exposure_s = u(rng) < 0.7 ? te : te * (0.5 + u(rng));
    p.pulse_width_s = p.exposure_s * (1.4 * u(rng) - 0.1);
    p.guard_width_s = p.exposure_s * 0.8 * u(rng);
    p.duty_cycle_min =
        u(rng) < 0.7 ? p.pulse_width_s / p.exposure_s : 1.2 * u(rng) - 0.1;
    // Independent statement of the four channel inequalities.
    const bool expect =
        std::abs(p.exposure_s - 1.0 / p.fps) <= 1e-12 &&
        p.pulse_width_s < p.exposure_s &&
        p.pulse_width_s + p.guard_width_s < p.exposure_s &&
        std::abs(p.duty_cycle_min - p.pulse_width_s / p.exposure_s) <= 1e-12 &&
        p.duty_cycle_min > 0 && p.duty_cycle_min < 1;
    const bool got = ValidateParams(p).empty();
    accepted += got;
    mismatches += got != expect;
  }
  return {mismatches == 0 && accepted > 0 && accepted < kChannelDraws,
          Fmt("%.0f draws, %.0f accepted, %.0f disagreements with oracle",
              kChannelDraws, accepted, mismatches)};
}

Outcome OracleDecoding() {
  int total = 0, correct = 0;
  for (double fps : {15.0, 30.0, 60.0}) {
    for (int c = 1; c <= kNumValidClasses; ++c) {
      for (int s = 0; s < kOracleSeeds; ++s) {
        const uint64_t seed = DeriveSeed(kMasterSeed, total);
        ChannelParams p = ChannelParams::ForFps(fps);
        p.ambient_level = 0.1;
        p.seed = seed;
        const double start = 0.05 + 0.35 * CounterRng(seed).Uniform(9, 0);
        const auto trace =
            SampleTrace(BuildSchedule(*EncodeClass(c), 0.15, start), p, 1.6);
        correct += trace.ok() &&
                   Decode(*trace, 0.15, false).label == *ClassLabel::Valid(c);
        ++total;
      }
    }
  }
  return {correct == total,
          Fmt("%.0f/%.0f noiseless traces decoded (fps 15/30/60)", correct,
              total)};
}

Outcome NoisyRegime() {
  auto cfg = ParseScenarioConfig(
      "name = acceptance_day_sunny\nlighting_preset = day_sunny\n"
      "channel.fps = 30\nchannel.distance_m = 25\ntiming.d = 25\n"
      "sweep_classes = 1");
  if (!cfg.ok()) return {false, std::string(cfg.status().message())};
  cfg->trials = kNumValidClasses * kNoisySeedsPerClass;
  cfg->master_seed = kMasterSeed;
  auto report = RunScenario(*cfg);
  if (!report.ok()) return {false, std::string(report.status().message())};
  int decoded = 0, correct = 0;
  for (const auto& r : report->records) {
    decoded += r.decoded();
    correct += r.decode_correct();
  }
  all_records.insert(all_records.end(), report->records.begin(),
                     report->records.end());
  const double acc = decoded ? static_cast<double>(correct) / decoded : 0;
  return {decoded == cfg->trials && acc >= kNoisyAccuracyFloor,
          Fmt("decode accuracy %.4f over %.0f sessions (floor %.2f)", acc,
              decoded, kNoisyAccuracyFloor)};
}

Outcome SecurityStatistics() {
  ChannelParams channel = ChannelParams::ForFps(30);
  channel.ambient_level = PresetLevels(LightingPreset::kDaySunny).ambient_level;
  channel.noise_sigma = PresetLevels(LightingPreset::kDaySunny).noise_sigma;
  const AttackEnvironment env =
      MakeAttackEnvironment(channel, TimingParams{}, kMasterSeed);
  std::string detail;
  bool ok = true;
  auto keep = [](CampaignResult& r) {
    all_records.insert(all_records.end(), r.records.begin(), r.records.end());
  };

  for (AttackKind kind :
       {AttackKind::kProximityReplayer, AttackKind::kUniformGuesser}) {
    auto r = RunCampaign(AttackerProfile::Default(kind), env, kRateTrials,
                         kMasterSeed + static_cast<int>(kind));
    if (!r.ok()) return {false, std::string(r.status().message())};
    const bool in_band = std::abs(r->rate - kRateCentre) <= kRateHalfWidth;
    ok = ok && in_band;
    detail += std::string(AttackKindName(kind)) +
              Fmt(" %.2f%% (%.0f/10000); ", 100 * r->rate, r->successes);
    keep(*r);
  }

  auto remote = RunCampaign(
      AttackerProfile::Default(AttackKind::kRemoteImpersonator), env,
      kRemoteTrials, kMasterSeed + 7);
  if (!remote.ok()) return {false, std::string(remote.status().message())};
  ok = ok && remote->successes == 0;
  detail += Fmt("remote %.0f/%.0f tokens; ", remote->successes, kRemoteTrials);
  keep(*remote);

  // Obstruction: the same seeded 3-vehicle scene with and without the
  // victim's ROI blocked.
  const AttackerProfile blocker =
      AttackerProfile::Default(AttackKind::kCameraObstructor);
  const std::string victim = env.deployment.credentials[0].vehicle_id;
  int bystanders = 0, differing = 0, victims_blocked = 0;
  for (int t = 0; t < kObstructionTrials; ++t) {
    const uint64_t seed = DeriveSeed(kMasterSeed + 11, t);
    const auto attacked = AttackObstruct(blocker, env, 3, {victim}, seed);
    const auto baseline = AttackObstruct(blocker, env, 3, {}, seed);
    for (size_t i = 0; i < attacked.size(); ++i) {
      const std::string id = env.deployment.credentials[i].vehicle_id;
      all_records.push_back(ToRecord(attacked[i], t, seed,
                                     i == 0 ? "victim" : "bystander", id));
      all_records.push_back(ToRecord(baseline[i], t, seed, "baseline", id));
      if (i == 0) {
        victims_blocked += !attacked[i].token().has_value();
        continue;
      }
      ++bystanders;
      differing += attacked[i].transcript().Serialize() !=
                       baseline[i].transcript().Serialize() ||
                   attacked[i].state() != baseline[i].state();
    }
  }
  ok = ok && differing == 0 && victims_blocked == kObstructionTrials;
  detail += Fmt("obstruction: %.0f/%.0f bystanders differ from baseline, "
                "%.0f victims denied",
                differing, bystanders, victims_blocked);
  return {ok, detail};
}

Outcome ProtocolSoundness() {
  int failed = 0, tokens = 0;
  std::string first_error;
  for (const auto& r : all_records) {
    auto t = Transcript::Parse(r.transcript);
    absl::StatusOr<TranscriptAudit> audit =
        t.ok() ? AuditTranscript(*t) : absl::StatusOr<TranscriptAudit>(
                                           t.status());
    const bool good = audit.ok() && audit->token_issued == r.token;
    if (!good && first_error.empty()) {
      first_error = audit.ok() ? "token flag mismatch"
                               : std::string(audit.status().message());
    }
    failed += !good;
    tokens += r.token;
  }
  Outcome o{failed == 0 && !all_records.empty(),
            Fmt("%.0f transcripts replayed, %.0f tokens, %.0f violations",
                all_records.size(), tokens, failed)};
  if (!first_error.empty()) o.detail += " first: " + first_error;
  return o;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Determinism() {
  const fs::path root = fs::temp_directory_path() / "flashauth_acceptance";
  fs::remove_all(root);
  const std::vector<std::string> configs = {
      "name = det_sessions\ntrials = 200\nlighting_preset = sunset\n"
      "channel.jitter_sigma = 0.004\nchannel.frame_drop_prob = 0.03",
      "name = det_replay\ntrials = 200\nattack.profile = replay",
      "name = det_obstruct\ntrials = 60\nattack.profile = obstruct"};
  int compared = 0, differing = 0;
  for (size_t i = 0; i < configs.size(); ++i) {
    auto cfg = ParseScenarioConfig(configs[i]);
    if (!cfg.ok()) return {false, std::string(cfg.status().message())};
    cfg->master_seed = kMasterSeed;
    const fs::path a = root / (std::to_string(i) + "a");
    const fs::path b = root / (std::to_string(i) + "b");
    if (!WriteReport(*RunScenario(*cfg), a).ok() ||
        !WriteReport(*RunScenario(*cfg), b).ok()) {
      return {false, "could not write reports"};
    }
    ++compared;
    differing += Slurp(a / "metrics.csv") != Slurp(b / "metrics.csv");
    for (const auto& e : fs::directory_iterator(a / "transcripts")) {
      ++compared;
      differing += Slurp(e.path()) != Slurp(b / "transcripts" / e.path().filename());
    }
    int count_b = 0;
    for ([[maybe_unused]] const auto& e :
         fs::directory_iterator(b / "transcripts")) {
      ++count_b;
    }
    int count_a = 0;
    for ([[maybe_unused]] const auto& e :
         fs::directory_iterator(a / "transcripts")) {
      ++count_a;
    }
    differing += count_a != count_b;
  }
  fs::remove_all(root);
  return {differing == 0,
          Fmt("%.0f files compared across 3 scenarios, %.0f differ", compared,
              differing)};
}

}  // namespace
}  // namespace flashauth

int main() {
  using namespace flashauth;
  Report("codec_exactness", kBudgetCodecS, CodecExactness);
  Report("timing_reproduction", kBudgetTimingS, TimingReproduction);
  Report("channel_constraints", kBudgetChannelS, ChannelConstraints);
  Report("oracle_decoding", kBudgetOracleS, OracleDecoding);
  Report("noisy_regime", kBudgetNoisyS, NoisyRegime);
  Report("security_statistics", kBudgetSecurityS, SecurityStatistics);
  Report("protocol_soundness", 0, ProtocolSoundness);
  Report("determinism", 0, Determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
