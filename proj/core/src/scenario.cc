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

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "flashauth/clip_export.h"
#include "flashauth/parallel.h"
#include "flashauth/rng.h"

namespace flashauth {
namespace {

constexpr int kFleetSize = 8;
constexpr int kLabelCount = 29;

// Export seed streams.
constexpr uint64_t kClipStartStream = 1;
constexpr uint64_t kClipPatternStream = 2;

absl::Status ParseBool(absl::string_view v, bool* out) {
  if (v == "1" || v == "true" || v == "yes") {
    *out = true;
  } else if (v == "0" || v == "false" || v == "no") {
    *out = false;
  } else {
    return absl::InvalidArgumentError(absl::StrCat("not a boolean: ", v));
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status ParseNumber(absl::string_view v, T* out) {
  bool ok;
  if constexpr (std::is_floating_point_v<T>) {
    ok = absl::SimpleAtod(v, out);
  } else {
    ok = absl::SimpleAtoi(v, out);
  }
  if (!ok) return absl::InvalidArgumentError(absl::StrCat("not a number: ", v));
  return absl::OkStatus();
}

std::map<std::string, int> CountReasons(
    const std::vector<SessionRecord>& records) {
  std::map<std::string, int> counts;
  for (const auto& r : records) {
    if (r.state == SessionState::kRejected) {
      ++counts[std::string(ReasonName(r.reason))];
    }
  }
  return counts;
}

// Clip schedule for a label code: valid frames, a non-conforming random
// pattern for 28, darkness for 29.
EmissionSchedule ClipSchedule(int code, double flash_s, uint64_t seed) {
  const CounterRng rng(seed);
  const double start = 0.1 + 0.3 * rng.Uniform(kClipStartStream, 0);
  if (code == kAllZeroCode) return EmissionSchedule{{}, flash_s};
  if (code == kRandomFlashCode) {
    for (uint64_t attempt = 0;; ++attempt) {
      SymbolSequence seq;
      for (int j = 0; j < kFrameSymbols; ++j) {
        const uint64_t bits =
            rng.Bits(kClipPatternStream, attempt * kFrameSymbols + j);
        seq[j] = Symbol{(bits & 1) != 0, (bits & 2) != 0};
      }
      if (DecodeSymbols(seq).kind() == ClassLabel::Kind::kRandomFlash) {
        return BuildSchedule(std::vector<Symbol>(seq.begin(), seq.end()),
                             flash_s, start);
      }
    }
  }
  return BuildSchedule(*EncodeClass(code), flash_s, start);
}

}  // namespace

LightingLevels PresetLevels(LightingPreset preset) {
  switch (preset) {
    case LightingPreset::kDaySunny:
      return {0.10, 0.05};
    case LightingPreset::kDayCloudy:
      return {0.08, 0.07};
    case LightingPreset::kSunset:
      return {0.15, 0.09};
    case LightingPreset::kNight:
      return {0.02, 0.12};
  }
  return {0.1, 0.05};
}

absl::string_view PresetName(LightingPreset preset) {
  switch (preset) {
    case LightingPreset::kDaySunny:
      return "day_sunny";
    case LightingPreset::kDayCloudy:
      return "day_cloudy";
    case LightingPreset::kSunset:
      return "sunset";
    case LightingPreset::kNight:
      return "night";
  }
  return "?";
}

absl::StatusOr<LightingPreset> ParsePreset(absl::string_view name) {
  for (LightingPreset p :
       {LightingPreset::kDaySunny, LightingPreset::kDayCloudy,
        LightingPreset::kSunset, LightingPreset::kNight}) {
    if (PresetName(p) == name) return p;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown lighting preset '", name, "'"));
}

absl::Status ScenarioConfig::Validate() const {
  if (trials < 0) return absl::InvalidArgumentError("trials must be >= 0");
  if (auto s = timing.Validate(); !s.ok()) return s;
  if (auto s = CheckParams(channel); !s.ok()) return s;
  if (attack) {
    if (auto s = attack->Validate(); !s.ok()) return s;
  }
  if (export_clips) {
    if (export_clips->count_per_class < 1) {
      return absl::InvalidArgumentError("export.count must be >= 1");
    }
    if (export_clips->capture_s < kFrameSymbols * timing.flash_s) {
      return absl::InvalidArgumentError(
          "export.capture_s shorter than one security frame");
    }
  }
  if (reaction_delay_s < 0 || rsu.nlos_latency_s < 0) {
    return absl::InvalidArgumentError("delays must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<ScenarioConfig> ParseScenarioConfig(absl::string_view text) {
  ScenarioConfig cfg;
  std::optional<double> fps, pw_s, pw_g, ambient, noise;
  std::optional<AttackKind> attack_kind;
  std::map<std::string, bool> capability_overrides;
  ExportSpec export_spec;
  bool export_set = false;

  using Setter = std::function<absl::Status(absl::string_view)>;
  auto num = [](auto* field) {
    return Setter([field](absl::string_view v) { return ParseNumber(v, field); });
  };
  auto opt = [](std::optional<double>* field) {
    return Setter([field](absl::string_view v) {
      double x;
      if (auto s = ParseNumber(v, &x); !s.ok()) return s;
      *field = x;
      return absl::OkStatus();
    });
  };
  auto flag = [](bool* field) {
    return Setter([field](absl::string_view v) { return ParseBool(v, field); });
  };
  auto capability = [&](const std::string& name) {
    return Setter([&capability_overrides, name](absl::string_view v) {
      bool b = false;
      if (auto s = ParseBool(v, &b); !s.ok()) return s;
      capability_overrides[name] = b;
      return absl::OkStatus();
    });
  };
  auto exporting = [&](Setter inner) {
    return Setter([&export_set, inner](absl::string_view v) {
      export_set = true;
      return inner(v);
    });
  };

  const std::map<std::string, Setter, std::less<>> setters = {
      {"name", [&](absl::string_view v) {
         cfg.name = std::string(v);
         return absl::OkStatus();
       }},
      {"trials", num(&cfg.trials)},
      {"master_seed", num(&cfg.master_seed)},
      {"sweep_classes", flag(&cfg.sweep_classes)},
      {"timing.d", num(&cfg.timing.distance_m)},
      {"timing.v", num(&cfg.timing.speed_mps)},
      {"timing.t_f", num(&cfg.timing.flash_s)},
      {"timing.t_c", num(&cfg.timing.compute_s)},
      {"timing.n", num(&cfg.timing.bits)},
      {"channel.fps", opt(&fps)},
      {"channel.pw_s", opt(&pw_s)},
      {"channel.pw_g", opt(&pw_g)},
      {"channel.distance_m", num(&cfg.channel.distance_m)},
      {"channel.ambient_level", opt(&ambient)},
      {"channel.noise_sigma", opt(&noise)},
      {"channel.jitter_sigma", num(&cfg.channel.jitter_sigma_s)},
      {"channel.frame_drop_prob", num(&cfg.channel.frame_drop_prob)},
      {"channel.mirror_view", flag(&cfg.channel.mirror_view)},
      {"channel.reference_luminance", num(&cfg.channel.reference_luminance)},
      {"channel.reference_distance_m",
       num(&cfg.channel.reference_distance_m)},
      {"lighting_preset", [&](absl::string_view v) {
         auto p = ParsePreset(v);
         if (!p.ok()) return p.status();
         cfg.lighting = *p;
         return absl::OkStatus();
       }},
      {"attack.profile", [&](absl::string_view v) {
         auto k = ParseAttackKind(v);
         if (!k.ok()) return k.status();
         attack_kind = *k;
         return absl::OkStatus();
       }},
      {"attack.holds_stolen_credential", capability("holds_stolen_credential")},
      {"attack.has_los_emitter", capability("has_los_emitter")},
      {"attack.can_record_los", capability("can_record_los")},
      {"attack.can_block_camera", capability("can_block_camera")},
      {"export.count", exporting(num(&export_spec.count_per_class))},
      {"export.dir", exporting([&](absl::string_view v) {
         export_spec.output_dir = std::string(v);
         return absl::OkStatus();
       })},
      {"export.capture_s", exporting(num(&export_spec.capture_s))},
      {"protocol.reaction_delay", num(&cfg.reaction_delay_s)},
      {"protocol.nlos_latency", num(&cfg.rsu.nlos_latency_s)},
      {"protocol.lockout", num(&cfg.rsu.lockout_threshold)},
  };

  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = raw.substr(0, raw.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected key = value"));
    }
    const absl::string_view key = absl::StripAsciiWhitespace(line.substr(0, eq));
    const absl::string_view value =
        absl::StripAsciiWhitespace(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": unknown key '", key, "'"));
    }
    if (auto s = it->second(value); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, " (", key, "): ", s.message()));
    }
  }

  const double rate = fps.value_or(30.0);
  const double exposure = 1.0 / rate;
  cfg.channel.SetTiming(rate, pw_s.value_or(0.6 * exposure),
                        pw_g.value_or(0.3 * exposure));
  if (cfg.lighting) {
    const LightingLevels levels = PresetLevels(*cfg.lighting);
    cfg.channel.ambient_level = levels.ambient_level;
    cfg.channel.noise_sigma = levels.noise_sigma;
  }
  if (ambient) cfg.channel.ambient_level = *ambient;
  if (noise) cfg.channel.noise_sigma = *noise;

  if (attack_kind) {
    AttackerProfile profile = AttackerProfile::Default(*attack_kind);
    auto& c = profile.capabilities;
    for (const auto& [name, value] : capability_overrides) {
      if (name == "holds_stolen_credential") c.holds_stolen_credential = value;
      if (name == "has_los_emitter") c.has_los_emitter = value;
      if (name == "can_record_los") c.can_record_los = value;
      if (name == "can_block_camera") c.can_block_camera = value;
    }
    cfg.attack = profile;
  } else if (!capability_overrides.empty()) {
    return absl::InvalidArgumentError(
        "attack capabilities given without attack.profile");
  }
  if (export_set) cfg.export_clips = export_spec;

  if (auto s = cfg.Validate(); !s.ok()) return s;
  return cfg;
}

absl::StatusOr<ScenarioConfig> LoadScenarioConfig(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot read ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenarioConfig(buffer.str());
}

double MetricsReport::AcceptanceRate() const {
  int tokens = 0;
  for (const auto& r : records) tokens += r.token ? 1 : 0;
  return records.empty() ? 0.0 : static_cast<double>(tokens) / records.size();
}

double MetricsReport::DecodeAccuracy() const {
  int decoded = 0;
  int correct = 0;
  for (const auto& r : records) {
    if (!r.decoded()) continue;
    ++decoded;
    correct += r.decode_correct() ? 1 : 0;
  }
  return decoded == 0 ? 0.0 : static_cast<double>(correct) / decoded;
}

double MetricsReport::MeanDecodeLatency() const {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : records) {
    if (!r.decoded()) continue;
    sum += r.decode_latency_s;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

std::string MetricsReport::MetricsCsvHeader() {
  return "trial,seed,role,vehicle_id,challenge_class,decoded_class,score,"
         "alignment_s,decode_latency_s,outcome,reason";
}

std::string MetricsReport::MetricsCsv() const {
  std::string out = MetricsCsvHeader() + "\n";
  for (const auto& r : records) {
    absl::StrAppendFormat(&out, "%d,%d,%s,%s,%d,%d,%.6f,%.6f,%.6f,%s,%s\n",
                          r.trial, r.seed, r.role, r.vehicle_id,
                          r.challenge_class, r.decoded_class, r.score,
                          r.alignment_s, r.decode_latency_s,
                          r.token ? "token" : "rejected", ReasonName(r.reason));
  }
  return out;
}

std::string MetricsReport::SummaryCsv() const {
  std::string out = "key,value\n";
  absl::StrAppendFormat(&out, "scenario,%s\nmode,%s\nmaster_seed,%d\n",
                        scenario, mode, master_seed);
  absl::StrAppendFormat(&out, "sessions,%d\n", records.size());
  absl::StrAppendFormat(&out, "acceptance_rate,%.6f\n", AcceptanceRate());
  absl::StrAppendFormat(&out, "decode_accuracy,%.6f\n", DecodeAccuracy());
  absl::StrAppendFormat(&out, "mean_decode_latency_s,%.6f\n",
                        MeanDecodeLatency());
  std::array<int, kNumValidClasses + 1> seen{};
  std::array<int, kNumValidClasses + 1> right{};
  for (const auto& r : records) {
    if (!r.decoded() || r.challenge_class < 1 ||
        r.challenge_class > kNumValidClasses) {
      continue;
    }
    ++seen[r.challenge_class];
    right[r.challenge_class] += r.decode_correct() ? 1 : 0;
  }
  for (int c = 1; c <= kNumValidClasses; ++c) {
    if (seen[c] == 0) {
      absl::StrAppendFormat(&out, "class_%02d_accuracy,\n", c);
    } else {
      absl::StrAppendFormat(&out, "class_%02d_accuracy,%.6f\n", c,
                            static_cast<double>(right[c]) / seen[c]);
    }
  }
  std::map<std::string, int> reasons = CountReasons(records);
  for (RejectReason r :
       {RejectReason::kUnknownVehicle, RejectReason::kExpired,
        RejectReason::kBadTag, RejectReason::kLockedOut,
        RejectReason::kWrongClass, RejectReason::kLate,
        RejectReason::kMalformed, RejectReason::kNoResponse}) {
    const std::string name(ReasonName(r));
    absl::StrAppendFormat(&out, "rejected_%s,%d\n", name, reasons[name]);
  }
  return out;
}

absl::StatusOr<MetricsReport> RunScenario(const ScenarioConfig& config) {
  if (auto s = config.Validate(); !s.ok()) return s;
  MetricsReport report;
  report.scenario = config.name;
  report.master_seed = config.master_seed;

  if (config.attack) {
    auto campaign = RunAttackScenario(config, *config.attack);
    if (!campaign.ok()) return campaign.status();
    report.mode = campaign->profile;
    report.records = std::move(campaign->records);
    return report;
  }

  report.mode = "sessions";
  const Deployment deployment = MakeDeployment(kFleetSize, config.master_seed);
  report.records.resize(config.trials);
  ParallelFor(config.trials, [&](size_t index) {
    const int t = static_cast<int>(index);
    const uint64_t seed = DeriveSeed(config.master_seed, t);
    const VehicleCredential& cred =
        deployment.credentials[t % deployment.credentials.size()];
    VehicleAgent vehicle = VehicleAgent::Honest(cred);
    vehicle.reaction_delay_s = config.reaction_delay_s;
    RsuConfig rsu_config = config.rsu;
    if (config.sweep_classes) rsu_config.class_sweep = t;
    Rsu rsu(rsu_config);
    const AuthSession session = RunSession(vehicle, rsu, deployment.ra,
                                           config.channel, config.timing, seed);
    report.records[t] = ToRecord(session, t, seed, "vehicle", cred.vehicle_id);
  });
  return report;
}

absl::Status WriteReport(const MetricsReport& report,
                         const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "transcripts", ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", out_dir.string(), ": ", ec.message()));
  }
  auto write = [](const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    out << data;
    return out ? absl::OkStatus()
               : absl::PermissionDeniedError(
                     absl::StrCat("cannot write ", path.string()));
  };
  if (auto s = write(out_dir / "metrics.csv", report.MetricsCsv()); !s.ok()) {
    return s;
  }
  if (auto s = write(out_dir / "summary.csv", report.SummaryCsv()); !s.ok()) {
    return s;
  }
  for (const auto& r : report.records) {
    const std::string file =
        absl::StrFormat("trial_%06d_%s_%s.tsv", r.trial, r.role, r.vehicle_id);
    if (auto s = write(out_dir / "transcripts" / file, r.transcript); !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<CampaignResult> RunAttackScenario(
    const ScenarioConfig& config, const AttackerProfile& profile) {
  if (auto s = config.Validate(); !s.ok()) return s;
  AttackEnvironment env =
      MakeAttackEnvironment(config.channel, config.timing, config.master_seed);
  env.rsu = config.rsu;
  return RunCampaign(profile, env, config.trials, config.master_seed);
}

absl::StatusOr<int> ExportDataset(const ScenarioConfig& config,
                                  const std::filesystem::path& out_dir) {
  if (auto s = config.Validate(); !s.ok()) return s;
  if (!config.export_clips) {
    return absl::FailedPreconditionError("config has no export.* section");
  }
  const ExportSpec& spec = *config.export_clips;
  const int total = kLabelCount * spec.count_per_class;
  std::vector<absl::Status> statuses(total);
  ParallelFor(total, [&](size_t index) {
    const int code = static_cast<int>(index) / spec.count_per_class + 1;
    const int clip = static_cast<int>(index) % spec.count_per_class;
    const uint64_t seed = DeriveSeed(config.master_seed, index);
    ChannelParams params = config.channel;
    params.seed = seed;
    const EmissionSchedule schedule =
        ClipSchedule(code, config.timing.flash_s, seed);
    auto trace = SampleTrace(schedule, params, spec.capture_s);
    if (!trace.ok()) {
      statuses[index] = trace.status();
      return;
    }
    ClipManifest manifest;
    manifest.fps = params.fps;
    manifest.flash_s = config.timing.flash_s;
    manifest.class_code = code;
    manifest.seed = seed;
    manifest.distance_m = params.distance_m;
    manifest.mirror_view = params.mirror_view;
    const auto dir = out_dir / "clips" / absl::StrFormat("class_%02d", code) /
                     absl::StrFormat("clip_%03d", clip);
    statuses[index] = WriteClip(dir, *trace, manifest, params.ambient_level);
  });
  for (const auto& s : statuses) {
    if (!s.ok()) return s;
  }
  return total;
}

}  // namespace flashauth
