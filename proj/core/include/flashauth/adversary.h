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

#ifndef FLASHAUTH_ADVERSARY_H_
#define FLASHAUTH_ADVERSARY_H_

// Attack harness. Each attacker is a VehicleAgent with a particular
// credential situation and LOS behaviour, run through the unmodified
// protocol, so measured success rates are what the protocol allows.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "flashauth/protocol.h"

namespace flashauth {

enum class AttackKind {
  kRemoteImpersonator,
  kProximityReplayer,
  kUniformGuesser,
  kCameraObstructor,
};

absl::string_view AttackKindName(AttackKind kind);
absl::StatusOr<AttackKind> ParseAttackKind(absl::string_view name);

struct AttackerCapabilities {
  bool holds_stolen_credential = false;
  bool has_los_emitter = false;
  bool can_record_los = false;
  bool can_block_camera = false;
};

struct AttackerProfile {
  AttackKind kind = AttackKind::kRemoteImpersonator;
  AttackerCapabilities capabilities;

  // The canonical capability set for `kind`.
  static AttackerProfile Default(AttackKind kind);
  absl::Status Validate() const;
};

// Everything an attack runs against: the RA with its enrolled fleet, the
// channel and timing, and the RSU configuration each session starts from.
struct AttackEnvironment {
  Deployment deployment;
  ChannelParams channel;
  TimingParams timing;
  RsuConfig rsu;
};

AttackEnvironment MakeAttackEnvironment(const ChannelParams& channel,
                                        const TimingParams& timing,
                                        uint64_t seed);

// Remote impersonation of the first enrolled vehicle: optionally holding its
// stolen credential, never able to flash.
AuthSession AttackRemote(const AttackerProfile& profile,
                         const AttackEnvironment& env, uint64_t seed);

// A recorded honest response: what the victim flashed and when, relative to
// its challenge receipt.
struct RecordedResponse {
  std::vector<Symbol> symbols;
  double offset_after_receipt_s = 0.0;
  Challenge challenge;
  AuthSession honest_session;
};

// Runs an honest session of the victim and records its LOS response.
absl::StatusOr<RecordedResponse> RecordHonestResponse(
    const AttackEnvironment& env, uint64_t seed);

// Replays `recorded` against a fresh challenge. With `reuse_challenge` the
// RSU is configured to re-issue the recorded challenge (freshness disabled).
AuthSession AttackReplay(const AttackerProfile& profile,
                         const RecordedResponse& recorded,
                         const AttackEnvironment& env, uint64_t seed,
                         bool reuse_challenge = false);

// Flashes a uniformly chosen valid class regardless of the challenge.
AuthSession AttackGuess(const AttackerProfile& profile,
                        const AttackEnvironment& env, uint64_t seed);

// Honest victim plus bystanders in separate lanes; the attacker blocks the
// camera's view of the victims in `victims`.
std::vector<AuthSession> AttackObstruct(
    const AttackerProfile& profile, const AttackEnvironment& env,
    int vehicle_count, const std::set<std::string>& victims, uint64_t seed);

// Flattened outcome of one session, as written to metrics rows.
struct SessionRecord {
  int trial = 0;
  uint64_t seed = 0;
  std::string role;
  std::string vehicle_id;
  SessionState state = SessionState::kInit;
  RejectReason reason = RejectReason::kNone;
  bool token = false;
  int challenge_class = 0;  // 0 when no challenge was issued
  int decoded_class = 0;    // 0 when nothing was decoded
  double score = 0.0;
  double alignment_s = 0.0;
  double decode_latency_s = 0.0;
  std::string transcript;

  bool decoded() const { return decoded_class != 0; }
  bool decode_correct() const {
    return decoded() && decoded_class == challenge_class;
  }
};

SessionRecord ToRecord(const AuthSession& session, int trial, uint64_t seed,
                       std::string role, std::string vehicle_id);

struct CampaignResult {
  std::string profile;
  int trials = 0;
  int successes = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<SessionRecord> records;

  static std::string CsvHeader();
  std::string ToCsvRow() const;
};

// Wilson score interval for a binomial proportion.
std::pair<double, double> WilsonInterval(int successes, int trials,
                                         double z = 1.959963984540054);

// `trials` independent attack sessions, each against fresh RSU state, seeded
// DeriveSeed(master_seed, trial). Success = a token was issued. For the
// obstructor, one trial is one scene and success counts victim tokens.
absl::StatusOr<CampaignResult> RunCampaign(const AttackerProfile& profile,
                                           const AttackEnvironment& env,
                                           int trials, uint64_t master_seed);

}  // namespace flashauth

#endif  // FLASHAUTH_ADVERSARY_H_
