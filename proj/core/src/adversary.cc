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

#include "flashauth/adversary.h"

#include <cmath>
#include <memory>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "flashauth/parallel.h"
#include "flashauth/rng.h"

namespace flashauth {
namespace {

constexpr int kFleetSize = 8;
constexpr double kLaneWidthM = 3.5;
constexpr int kObstructionSceneSize = 3;

// Seed streams within a trial.
constexpr uint64_t kRecordStream = 0;
constexpr uint64_t kAttackStream = 1;
constexpr uint64_t kGuessStream = 2;

const VehicleCredential& Victim(const AttackEnvironment& env) {
  return env.deployment.credentials.front();
}

VehicleAgent Impostor(const AttackerProfile& profile,
                      const AttackEnvironment& env) {
  VehicleAgent agent;
  agent.claimed_id = Victim(env).vehicle_id;
  if (profile.capabilities.holds_stolen_credential) {
    agent.credential = Victim(env);
  }
  agent.has_los_emitter = profile.capabilities.has_los_emitter;
  return agent;
}

}  // namespace

absl::string_view AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kRemoteImpersonator:
      return "remote";
    case AttackKind::kProximityReplayer:
      return "replay";
    case AttackKind::kUniformGuesser:
      return "guess";
    case AttackKind::kCameraObstructor:
      return "obstruct";
  }
  return "?";
}

absl::StatusOr<AttackKind> ParseAttackKind(absl::string_view name) {
  for (AttackKind k :
       {AttackKind::kRemoteImpersonator, AttackKind::kProximityReplayer,
        AttackKind::kUniformGuesser, AttackKind::kCameraObstructor}) {
    if (AttackKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown attack profile '", name,
      "' (expected remote, replay, guess or obstruct)"));
}

AttackerProfile AttackerProfile::Default(AttackKind kind) {
  AttackerProfile p;
  p.kind = kind;
  auto& c = p.capabilities;
  switch (kind) {
    case AttackKind::kRemoteImpersonator:
      c.holds_stolen_credential = true;
      break;
    case AttackKind::kProximityReplayer:
      c.holds_stolen_credential = true;
      c.has_los_emitter = true;
      c.can_record_los = true;
      break;
    case AttackKind::kUniformGuesser:
      c.holds_stolen_credential = true;
      c.has_los_emitter = true;
      break;
    case AttackKind::kCameraObstructor:
      c.can_block_camera = true;
      break;
  }
  return p;
}

absl::Status AttackerProfile::Validate() const {
  const auto& c = capabilities;
  switch (kind) {
    case AttackKind::kRemoteImpersonator:
      if (c.has_los_emitter) {
        return absl::InvalidArgumentError(
            "a remote impersonator has no LOS emitter");
      }
      break;
    case AttackKind::kProximityReplayer:
      if (!c.can_record_los || !c.has_los_emitter) {
        return absl::InvalidArgumentError(
            "a proximity replayer must record and emit LOS");
      }
      break;
    case AttackKind::kUniformGuesser:
      if (!c.has_los_emitter) {
        return absl::InvalidArgumentError("a guesser needs an LOS emitter");
      }
      break;
    case AttackKind::kCameraObstructor:
      if (!c.can_block_camera) {
        return absl::InvalidArgumentError(
            "an obstructor must be able to block the camera");
      }
      break;
  }
  return absl::OkStatus();
}

AttackEnvironment MakeAttackEnvironment(const ChannelParams& channel,
                                        const TimingParams& timing,
                                        uint64_t seed) {
  return AttackEnvironment{MakeDeployment(kFleetSize, seed), channel, timing,
                           RsuConfig{}};
}

AuthSession AttackRemote(const AttackerProfile& profile,
                         const AttackEnvironment& env, uint64_t seed) {
  VehicleAgent agent = Impostor(profile, env);
  agent.has_los_emitter = false;
  Rsu rsu(env.rsu);
  return RunSession(agent, rsu, env.deployment.ra, env.channel, env.timing,
                    seed);
}

absl::StatusOr<RecordedResponse> RecordHonestResponse(
    const AttackEnvironment& env, uint64_t seed) {
  auto seen = std::make_shared<RecordedResponse>();
  VehicleAgent victim = VehicleAgent::Honest(Victim(env));
  const double delay = victim.reaction_delay_s;
  victim.responder = [seen, delay](const Challenge& ch, double receipt,
                                   double flash_s) {
    EmissionSchedule s = VehicleRespond(ch, flash_s, receipt, delay);
    seen->symbols = s.Symbols();
    seen->offset_after_receipt_s = s.StartTime() - receipt;
    seen->challenge = ch;
    return s;
  };
  Rsu rsu(env.rsu);
  AuthSession session = RunSession(victim, rsu, env.deployment.ra,
                                   env.channel, env.timing, seed);
  if (seen->symbols.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "honest session produced no LOS response (",
        ReasonName(session.reason()), ")"));
  }
  seen->honest_session = std::move(session);
  return *seen;
}

AuthSession AttackReplay(const AttackerProfile& profile,
                         const RecordedResponse& recorded,
                         const AttackEnvironment& env, uint64_t seed,
                         bool reuse_challenge) {
  VehicleAgent agent = Impostor(profile, env);
  agent.responder = [recorded](const Challenge&, double receipt,
                               double flash_s) {
    return BuildSchedule(recorded.symbols, flash_s,
                         receipt + recorded.offset_after_receipt_s);
  };
  RsuConfig config = env.rsu;
  if (reuse_challenge) config.enforce_fresh_challenges = false;
  Rsu rsu(config);
  if (reuse_challenge) rsu.ReuseChallenge(recorded.challenge);
  return RunSession(agent, rsu, env.deployment.ra, env.channel, env.timing,
                    seed);
}

AuthSession AttackGuess(const AttackerProfile& profile,
                        const AttackEnvironment& env, uint64_t seed) {
  VehicleAgent agent = Impostor(profile, env);
  const int guess = static_cast<int>(
      CounterRng(seed).Bits(kGuessStream, 0) % kNumValidClasses) + 1;
  const double delay = agent.reaction_delay_s;
  agent.responder = [guess, delay](const Challenge&, double receipt,
                                   double flash_s) {
    return BuildSchedule(*EncodeClass(guess), flash_s, receipt + delay);
  };
  Rsu rsu(env.rsu);
  return RunSession(agent, rsu, env.deployment.ra, env.channel, env.timing,
                    seed);
}

std::vector<AuthSession> AttackObstruct(
    const AttackerProfile& profile, const AttackEnvironment& env,
    int vehicle_count, const std::set<std::string>& victims, uint64_t seed) {
  std::vector<VehicleAgent> vehicles;
  for (int i = 0; i < vehicle_count; ++i) {
    VehicleAgent v = VehicleAgent::Honest(env.deployment.credentials.at(i));
    v.lane_offset_m = i * kLaneWidthM;
    vehicles.push_back(std::move(v));
  }
  Rsu rsu(env.rsu);
  const std::set<std::string> blocked =
      profile.capabilities.can_block_camera ? victims
                                            : std::set<std::string>{};
  return RunSceneSessions(vehicles, rsu, env.deployment.ra, env.channel,
                          env.timing, seed, blocked);
}

SessionRecord ToRecord(const AuthSession& session, int trial, uint64_t seed,
                       std::string role, std::string vehicle_id) {
  SessionRecord r;
  r.trial = trial;
  r.seed = seed;
  r.role = std::move(role);
  r.vehicle_id = std::move(vehicle_id);
  r.state = session.state();
  r.reason = session.reason();
  r.token = session.token().has_value();
  if (session.challenge()) {
    r.challenge_class = session.challenge()->label.code();
    if (session.decode()) {
      r.decoded_class = session.decode()->label.code();
      r.score = session.decode()->score;
      r.alignment_s = session.decode()->slot_alignment_s;
      r.decode_latency_s =
          session.decode_completed_at() - session.challenge()->issued_at;
    }
  }
  r.transcript = session.transcript().Serialize();
  return r;
}

std::string CampaignResult::CsvHeader() {
  return "profile,trials,successes,rate,ci_low,ci_high";
}

std::string CampaignResult::ToCsvRow() const {
  return absl::StrFormat("%s,%d,%d,%.6f,%.6f,%.6f", profile, trials, successes,
                         rate, ci_low, ci_high);
}

std::pair<double, double> WilsonInterval(int successes, int trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = trials;
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half =
      z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

absl::StatusOr<CampaignResult> RunCampaign(const AttackerProfile& profile,
                                           const AttackEnvironment& env,
                                           int trials, uint64_t master_seed) {
  if (absl::Status s = profile.Validate(); !s.ok()) return s;
  if (trials < 0) return absl::InvalidArgumentError("negative trial count");

  // Per trial: sessions to keep for audit, and whether the attacker won.
  struct Trial {
    std::vector<SessionRecord> records;
    bool success = false;
    absl::Status status;
  };
  std::vector<Trial> results(trials);
  ParallelFor(trials, [&](size_t index) {
    const int t = static_cast<int>(index);
    const uint64_t seed = DeriveSeed(master_seed, t);
    const std::string& victim = Victim(env).vehicle_id;
    Trial& trial = results[t];
    switch (profile.kind) {
      case AttackKind::kRemoteImpersonator: {
        AuthSession s = AttackRemote(profile, env, seed);
        trial.success = s.token().has_value();
        trial.records.push_back(ToRecord(s, t, seed, "attacker", victim));
        break;
      }
      case AttackKind::kProximityReplayer: {
        auto recorded =
            RecordHonestResponse(env, DeriveSeed(seed, kRecordStream));
        if (!recorded.ok()) {
          trial.status = recorded.status();
          return;
        }
        trial.records.push_back(ToRecord(recorded->honest_session, t,
                                         DeriveSeed(seed, kRecordStream),
                                         "recorded_victim", victim));
        const uint64_t attack_seed = DeriveSeed(seed, kAttackStream);
        AuthSession s = AttackReplay(profile, *recorded, env, attack_seed);
        trial.success = s.token().has_value();
        trial.records.push_back(
            ToRecord(s, t, attack_seed, "attacker", victim));
        break;
      }
      case AttackKind::kUniformGuesser: {
        AuthSession s = AttackGuess(profile, env, seed);
        trial.success = s.token().has_value();
        trial.records.push_back(ToRecord(s, t, seed, "attacker", victim));
        break;
      }
      case AttackKind::kCameraObstructor: {
        auto sessions =
            AttackObstruct(profile, env, kObstructionSceneSize, {victim}, seed);
        trial.success = sessions.front().token().has_value();
        for (size_t i = 0; i < sessions.size(); ++i) {
          trial.records.push_back(
              ToRecord(sessions[i], t, seed, i == 0 ? "victim" : "bystander",
                       env.deployment.credentials[i].vehicle_id));
        }
        break;
      }
    }
  });

  CampaignResult result;
  result.profile = std::string(AttackKindName(profile.kind));
  result.trials = trials;
  for (auto& trial : results) {
    if (!trial.status.ok()) return trial.status;
    result.successes += trial.success ? 1 : 0;
    for (auto& r : trial.records) result.records.push_back(std::move(r));
  }
  result.rate = trials > 0 ? static_cast<double>(result.successes) / trials
                           : 0.0;
  std::tie(result.ci_low, result.ci_high) =
      WilsonInterval(result.successes, trials);
  return result;
}

}  // namespace flashauth
