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

#ifndef FLASHAUTH_PROTOCOL_H_
#define FLASHAUTH_PROTOCOL_H_

// Three-phase vehicle authentication over two channels.
//
//   NLOS   vehicle -> RA      credential proof (keyed-hash, stands in for PKI)
//          RA -> RSU          verdict
//   LOS    RSU -> vehicle     challenge: nonce + class 1..27 (NLOS link)
//          vehicle ~> camera  headlight flashes of the class's security frame
//   Check  RSU -> RA          decoded label and completion time
//          RA -> vehicle      token iff label matches and decode beat deadline
//
// All times are seconds on a per-session clock that starts when the vehicle
// presents its credential.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "flashauth/frame_codec.h"
#include "flashauth/keyed_hash.h"
#include "flashauth/occ_channel.h"
#include "flashauth/reference_decoder.h"
#include "flashauth/timing.h"

namespace flashauth {

class RegistrationAuthority;
class Rsu;

enum class SessionState {
  kInit,
  kNlosVerified,
  kChallengeIssued,
  kDecoded,
  kTokenIssued,
  kRejected,
};

enum class RejectReason {
  kNone,
  kUnknownVehicle,
  kExpired,
  kBadTag,
  kLockedOut,
  kWrongClass,
  kLate,
  kMalformed,
  kNoResponse,
};

absl::string_view StateName(SessionState s);
absl::string_view ReasonName(RejectReason r);

bool IsLegalTransition(SessionState from, SessionState to);

struct VehicleCredential {
  std::string vehicle_id;
  Key256 secret{};
  double valid_from = 0.0;
  double valid_until = 0.0;
};

// What the vehicle sends over NLOS: identity, time, and a tag proving
// possession of the credential secret.
struct CredentialProof {
  std::string vehicle_id;
  double timestamp = 0.0;
  Tag256 tag{};
};

CredentialProof PresentCredential(const VehicleCredential& credential,
                                  double now);

using Nonce128 = std::array<uint8_t, 16>;

struct Challenge {
  Nonce128 id{};
  ClassLabel label = ClassLabel::AllZero();
  double issued_at = 0.0;
  double deadline = 0.0;
  std::string target_vehicle;

  std::string IdHex() const { return ToHex(id); }
};

struct AuthToken {
  std::string token_id;
  std::string vehicle_id;
  double issued_at = 0.0;
  double expires_at = 0.0;
  Tag256 tag{};

  // The fields covered by the tag, in canonical text form.
  std::string SignedFields() const;
};

struct TranscriptEntry {
  double timestamp = 0.0;
  std::string sender;
  std::string receiver;
  std::string kind;
  std::string payload;
};

class Transcript {
 public:
  void Append(double timestamp, std::string sender, std::string receiver,
              std::string kind, std::string payload);

  const std::vector<TranscriptEntry>& entries() const { return entries_; }

  // One line per message: timestamp, sender, receiver, kind, payload,
  // tab-separated. Payloads are space-separated key=value pairs.
  std::string Serialize() const;
  static absl::StatusOr<Transcript> Parse(absl::string_view text);

 private:
  std::vector<TranscriptEntry> entries_;
};

class AuthSession {
 public:
  SessionState state() const { return state_; }
  RejectReason reason() const { return reason_; }
  const Transcript& transcript() const { return transcript_; }
  Transcript& transcript() { return transcript_; }
  const std::optional<AuthToken>& token() const { return token_; }
  const std::optional<Challenge>& challenge() const { return challenge_; }
  const std::optional<DecodeResult>& decode() const { return decode_; }
  double decode_completed_at() const { return decode_completed_at_; }
  bool terminal() const {
    return state_ == SessionState::kTokenIssued ||
           state_ == SessionState::kRejected;
  }

  // Fails on transitions outside the session state machine.
  absl::Status Advance(SessionState next);
  void Reject(RejectReason reason);

 private:
  friend class RegistrationAuthority;
  friend class Rsu;
  friend absl::Status RecordDecode(AuthSession&, const DecodeResult&, double);
  friend absl::Status CheckPhase(AuthSession&, const RegistrationAuthority&,
                                 Rsu&, std::mt19937_64&);

  SessionState state_ = SessionState::kInit;
  RejectReason reason_ = RejectReason::kNone;
  Transcript transcript_;
  std::optional<Challenge> challenge_;
  std::optional<DecodeResult> decode_;
  double decode_completed_at_ = 0.0;
  std::optional<AuthToken> token_;
};

class RegistrationAuthority {
 public:
  explicit RegistrationAuthority(const Key256& token_key,
                                 double token_lifetime_s = 300.0)
      : token_key_(token_key), token_lifetime_s_(token_lifetime_s) {}

  void Enroll(const VehicleCredential& credential);

  RejectReason VerifyCredential(const CredentialProof& proof,
                                double now) const;
  AuthToken IssueToken(const std::string& vehicle_id, double now,
                       std::mt19937_64& rng) const;
  bool VerifyToken(const AuthToken& token) const;

 private:
  Key256 token_key_;
  double token_lifetime_s_;
  std::map<std::string, VehicleCredential> records_;
};

struct RsuConfig {
  // One-way NLOS message latency.
  double nlos_latency_s = 0.02;
  // Failed LOS attempts per vehicle before further sessions are refused;
  // zero disables the lockout.
  int lockout_threshold = 3;
  // When false, a challenge queued with ReuseChallenge() is re-issued. Only
  // for demonstrating why freshness matters.
  bool enforce_fresh_challenges = true;
  // Draw classes as (sweep_offset + session index) % 27 + 1 instead of
  // uniformly; test rigs use it to cover every class evenly.
  std::optional<int> class_sweep;
  DecoderOptions decoder;
};

class Rsu {
 public:
  explicit Rsu(RsuConfig config = {}) : config_(std::move(config)) {}

  const RsuConfig& config() const { return config_; }

  absl::StatusOr<Challenge> IssueChallenge(AuthSession& session,
                                           const std::string& vehicle_id,
                                           std::mt19937_64& rng,
                                           const TimingParams& timing,
                                           double now);

  bool IsLockedOut(const std::string& vehicle_id) const;
  void RecordOutcome(const std::string& vehicle_id, bool success);
  void ReuseChallenge(const Challenge& challenge) { reuse_ = challenge; }
  const std::set<Nonce128>& issued() const { return issued_; }

 private:
  RsuConfig config_;
  std::set<Nonce128> issued_;
  std::map<std::string, int> failures_;
  std::optional<Challenge> reuse_;
};

// A vehicle as the protocol sees it. The responder decides what the
// headlights flash after receiving a challenge; the default is the honest
// encoding. Attackers substitute their own.
struct VehicleAgent {
  using Responder = std::function<EmissionSchedule(
      const Challenge& challenge, double receipt_time, double flash_s)>;

  std::optional<VehicleCredential> credential;
  std::string claimed_id;
  bool has_los_emitter = true;
  double reaction_delay_s = 0.3;
  double lane_offset_m = 0.0;
  Responder responder;

  static VehicleAgent Honest(const VehicleCredential& credential);
};

// NLOS phase. Moves the session to NlosVerified or Rejected and returns the
// time at which the RA verdict reaches the RSU.
absl::StatusOr<double> NlosAuthenticate(AuthSession& session,
                                        const VehicleAgent& vehicle,
                                        const RegistrationAuthority& ra,
                                        const Rsu& rsu, double now);

// The honest response: the challenge's frame starting after the vehicle's
// reaction delay.
EmissionSchedule VehicleRespond(const Challenge& challenge, double flash_s,
                                double receipt_time, double reaction_delay_s);

// Records the RSU's decode of the LOS capture (ChallengeIssued -> Decoded).
absl::Status RecordDecode(AuthSession& session, const DecodeResult& result,
                          double completed_at);

// Check phase: token iff the decoded label equals the challenge class and the
// decode completed before the deadline.
absl::Status CheckPhase(AuthSession& session, const RegistrationAuthority& ra,
                        Rsu& rsu, std::mt19937_64& rng);

// Time at which decoding of a capture finishes: end of the located frame (or
// the whole capture when none was found) plus computation time.
double DecodeCompletion(const Challenge& challenge, const DecodeResult& result,
                        double capture_s, const TimingParams& timing);

// End-to-end session over simulated channels; deterministic in `seed`.
AuthSession RunSession(const VehicleAgent& vehicle, Rsu& rsu,
                       const RegistrationAuthority& ra,
                       const ChannelParams& channel,
                       const TimingParams& timing, uint64_t seed);

// Concurrent sessions for vehicles sharing one camera view. Vehicles listed
// in `obstructed` have their ROI replaced by an ambient-only capture.
std::vector<AuthSession> RunSceneSessions(
    const std::vector<VehicleAgent>& vehicles, Rsu& rsu,
    const RegistrationAuthority& ra, const ChannelParams& channel,
    const TimingParams& timing, uint64_t seed,
    const std::set<std::string>& obstructed = {});

// Replays a serialized transcript against the state machine and checks token
// soundness: a token appears iff the credential verified, the decoded label
// equals the challenge class, and decoding completed before the deadline.
struct TranscriptAudit {
  SessionState final_state = SessionState::kInit;
  bool token_issued = false;
  std::string challenge_id;
};
absl::StatusOr<TranscriptAudit> AuditTranscript(const Transcript& transcript);

// Demo deployment: an RA with `count` enrolled vehicles "veh-000"...,
// secrets derived from `seed`, valid over [0, 1e9).
struct Deployment {
  RegistrationAuthority ra;
  std::vector<VehicleCredential> credentials;
};
Deployment MakeDeployment(int count, uint64_t seed);

}  // namespace flashauth

#endif  // FLASHAUTH_PROTOCOL_H_
