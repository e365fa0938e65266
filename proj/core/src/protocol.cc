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

#include "flashauth/protocol.h"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "flashauth/rng.h"

namespace flashauth {
namespace {

constexpr char kVehicle[] = "V";
constexpr char kRsu[] = "RSU";
constexpr char kRa[] = "RA";

// Seed streams within a session.
constexpr uint64_t kProtocolStream = 1;
constexpr uint64_t kChannelStream = 2;

std::string Exact(double v) { return absl::StrFormat("%.17g", v); }

std::string CredentialMessage(const std::string& id, double timestamp) {
  return absl::StrCat("nlos-credential|", id, "|", Exact(timestamp));
}

Nonce128 DrawNonce(std::mt19937_64& rng) {
  Nonce128 id;
  for (int half = 0; half < 2; ++half) {
    uint64_t word = rng();
    for (int b = 0; b < 8; ++b) {
      id[half * 8 + b] = static_cast<uint8_t>(word >> (8 * b));
    }
  }
  return id;
}

Key256 DeriveKey(uint64_t seed, uint64_t stream) {
  Key256 key;
  for (int w = 0; w < 4; ++w) {
    const uint64_t word = DeriveSeed(DeriveSeed(seed, stream), w);
    for (int b = 0; b < 8; ++b) {
      key[w * 8 + b] = static_cast<uint8_t>(word >> (8 * b));
    }
  }
  return key;
}

std::map<std::string, std::string> ParsePayload(absl::string_view payload) {
  std::map<std::string, std::string> fields;
  for (absl::string_view part :
       absl::StrSplit(payload, ' ', absl::SkipEmpty())) {
    std::pair<std::string, std::string> kv = absl::StrSplit(
        part, absl::MaxSplits('=', 1));
    fields[kv.first] = kv.second;
  }
  return fields;
}

absl::StatusOr<double> FieldDouble(
    const std::map<std::string, std::string>& fields, const std::string& key) {
  auto it = fields.find(key);
  double v = 0.0;
  if (it == fields.end() || !absl::SimpleAtod(it->second, &v)) {
    return absl::InvalidArgumentError(absl::StrCat("missing field ", key));
  }
  return v;
}

absl::StatusOr<int> FieldInt(const std::map<std::string, std::string>& fields,
                             const std::string& key) {
  auto it = fields.find(key);
  int v = 0;
  if (it == fields.end() || !absl::SimpleAtoi(it->second, &v)) {
    return absl::InvalidArgumentError(absl::StrCat("missing field ", key));
  }
  return v;
}

RejectReason ReasonForLabel(const ClassLabel& label) {
  switch (label.kind()) {
    case ClassLabel::Kind::kAllZero:
      return RejectReason::kNoResponse;
    case ClassLabel::Kind::kRandomFlash:
      return RejectReason::kMalformed;
    case ClassLabel::Kind::kValid:
      return RejectReason::kWrongClass;
  }
  return RejectReason::kMalformed;
}

EmissionSchedule ClipToWindow(const EmissionSchedule& schedule,
                              double window_s) {
  EmissionSchedule out;
  out.slot_duration_s = schedule.slot_duration_s;
  for (const auto& slot : schedule.slots) {
    if (slot.start_s < window_s) out.slots.push_back(slot);
  }
  return out;
}

EmissionSchedule Respond(const VehicleAgent& vehicle,
                         const Challenge& challenge, double receipt,
                         double flash_s) {
  if (!vehicle.has_los_emitter) return EmissionSchedule{{}, flash_s};
  if (vehicle.responder) return vehicle.responder(challenge, receipt, flash_s);
  return VehicleRespond(challenge, flash_s, receipt, vehicle.reaction_delay_s);
}

void LogResponse(AuthSession& session, const EmissionSchedule& schedule,
                 double receipt) {
  if (schedule.empty()) {
    session.transcript().Append(receipt, kVehicle, kRsu, "los_response",
                                "pattern=none");
    return;
  }
  session.transcript().Append(
      schedule.StartTime(), kVehicle, kRsu, "los_response",
      absl::StrCat("pattern=", FormatSymbols(schedule.Symbols()),
                   " start=", Exact(schedule.StartTime())));
}

// Samples `trace` into a decode, records it and runs the check phase.
void FinishSession(AuthSession& session, const LuminanceTrace& trace,
                   const ChannelParams& channel, const TimingParams& timing,
                   double capture_s, const RegistrationAuthority& ra, Rsu& rsu,
                   std::mt19937_64& rng) {
  const Challenge& challenge = *session.challenge();
  const DecodeResult result = Decode(trace, timing.flash_s,
                                     channel.mirror_view, rsu.config().decoder);
  const double completed =
      DecodeCompletion(challenge, result, capture_s, timing);
  if (RecordDecode(session, result, completed).ok()) {
    CheckPhase(session, ra, rsu, rng).IgnoreError();
  }
}

}  // namespace

absl::string_view StateName(SessionState s) {
  switch (s) {
    case SessionState::kInit:
      return "init";
    case SessionState::kNlosVerified:
      return "nlos_verified";
    case SessionState::kChallengeIssued:
      return "challenge_issued";
    case SessionState::kDecoded:
      return "decoded";
    case SessionState::kTokenIssued:
      return "token_issued";
    case SessionState::kRejected:
      return "rejected";
  }
  return "?";
}

absl::string_view ReasonName(RejectReason r) {
  switch (r) {
    case RejectReason::kNone:
      return "none";
    case RejectReason::kUnknownVehicle:
      return "unknown_vehicle";
    case RejectReason::kExpired:
      return "expired";
    case RejectReason::kBadTag:
      return "bad_tag";
    case RejectReason::kLockedOut:
      return "locked_out";
    case RejectReason::kWrongClass:
      return "wrong_class";
    case RejectReason::kLate:
      return "late";
    case RejectReason::kMalformed:
      return "malformed";
    case RejectReason::kNoResponse:
      return "no_response";
  }
  return "?";
}

bool IsLegalTransition(SessionState from, SessionState to) {
  using S = SessionState;
  if (from == S::kTokenIssued || from == S::kRejected) return false;
  if (to == S::kRejected) return true;
  switch (from) {
    case S::kInit:
      return to == S::kNlosVerified;
    case S::kNlosVerified:
      return to == S::kChallengeIssued;
    case S::kChallengeIssued:
      return to == S::kDecoded;
    case S::kDecoded:
      return to == S::kTokenIssued;
    default:
      return false;
  }
}

CredentialProof PresentCredential(const VehicleCredential& credential,
                                  double now) {
  CredentialProof proof;
  proof.vehicle_id = credential.vehicle_id;
  proof.timestamp = now;
  proof.tag = KeyedHash(credential.secret,
                        CredentialMessage(credential.vehicle_id, now));
  return proof;
}

std::string AuthToken::SignedFields() const {
  return absl::StrCat("token|", token_id, "|", vehicle_id, "|",
                      Exact(issued_at), "|", Exact(expires_at));
}

void Transcript::Append(double timestamp, std::string sender,
                        std::string receiver, std::string kind,
                        std::string payload) {
  entries_.push_back({timestamp, std::move(sender), std::move(receiver),
                      std::move(kind), std::move(payload)});
}

std::string Transcript::Serialize() const {
  std::string out;
  for (const auto& e : entries_) {
    absl::StrAppendFormat(&out, "%.6f\t%s\t%s\t%s\t%s\n", e.timestamp,
                          e.sender, e.receiver, e.kind, e.payload);
  }
  return out;
}

absl::StatusOr<Transcript> Transcript::Parse(absl::string_view text) {
  Transcript t;
  for (absl::string_view line : absl::StrSplit(text, '\n', absl::SkipEmpty())) {
    std::vector<absl::string_view> cols = absl::StrSplit(line, '\t');
    double ts = 0.0;
    if (cols.size() != 5 || !absl::SimpleAtod(cols[0], &ts)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed transcript line: ", line));
    }
    t.Append(ts, std::string(cols[1]), std::string(cols[2]),
             std::string(cols[3]), std::string(cols[4]));
  }
  return t;
}

absl::Status AuthSession::Advance(SessionState next) {
  if (!IsLegalTransition(state_, next)) {
    return absl::FailedPreconditionError(
        absl::StrCat("illegal transition ", StateName(state_), " -> ",
                     StateName(next)));
  }
  state_ = next;
  return absl::OkStatus();
}

void AuthSession::Reject(RejectReason reason) {
  if (terminal()) return;
  state_ = SessionState::kRejected;
  reason_ = reason;
}

void RegistrationAuthority::Enroll(const VehicleCredential& credential) {
  records_[credential.vehicle_id] = credential;
}

RejectReason RegistrationAuthority::VerifyCredential(
    const CredentialProof& proof, double now) const {
  auto it = records_.find(proof.vehicle_id);
  if (it == records_.end()) return RejectReason::kUnknownVehicle;
  const VehicleCredential& record = it->second;
  if (now < record.valid_from || now > record.valid_until) {
    return RejectReason::kExpired;
  }
  const Tag256 expected = KeyedHash(
      record.secret, CredentialMessage(proof.vehicle_id, proof.timestamp));
  if (!TagsEqual(expected, proof.tag)) return RejectReason::kBadTag;
  return RejectReason::kNone;
}

AuthToken RegistrationAuthority::IssueToken(const std::string& vehicle_id,
                                            double now,
                                            std::mt19937_64& rng) const {
  AuthToken token;
  token.token_id = ToHex(DrawNonce(rng));
  token.vehicle_id = vehicle_id;
  token.issued_at = now;
  token.expires_at = now + token_lifetime_s_;
  token.tag = KeyedHash(token_key_, token.SignedFields());
  return token;
}

bool RegistrationAuthority::VerifyToken(const AuthToken& token) const {
  return TagsEqual(KeyedHash(token_key_, token.SignedFields()), token.tag);
}

absl::StatusOr<Challenge> Rsu::IssueChallenge(AuthSession& session,
                                              const std::string& vehicle_id,
                                              std::mt19937_64& rng,
                                              const TimingParams& timing,
                                              double now) {
  if (session.state() != SessionState::kNlosVerified) {
    return absl::FailedPreconditionError(absl::StrCat(
        "challenge requires nlos_verified, session is ",
        StateName(session.state())));
  }
  auto window = AuthWindow(timing.distance_m, timing.speed_mps);
  if (!window.ok()) return window.status();

  Challenge ch;
  ch.target_vehicle = vehicle_id;
  ch.issued_at = now;
  ch.deadline = now + *window;
  std::uniform_int_distribution<int> pick(1, kNumValidClasses);
  const int drawn = pick(rng);
  Nonce128 nonce = DrawNonce(rng);
  if (reuse_ && !config_.enforce_fresh_challenges) {
    ch.id = reuse_->id;
    ch.label = reuse_->label;
    reuse_.reset();
  } else {
    while (issued_.contains(nonce)) nonce = DrawNonce(rng);
    ch.id = nonce;
    if (config_.class_sweep) {
      const int n = static_cast<int>(issued_.size()) + *config_.class_sweep;
      ch.label = *ClassLabel::Valid(n % kNumValidClasses + 1);
    } else {
      ch.label = *ClassLabel::Valid(drawn);
    }
  }
  issued_.insert(ch.id);

  if (absl::Status s = session.Advance(SessionState::kChallengeIssued);
      !s.ok()) {
    return s;
  }
  session.challenge_ = ch;
  session.transcript().Append(
      now, kRsu, kVehicle, "challenge",
      absl::StrCat("id=", ch.IdHex(), " class=", ch.label.code(),
                   " issued=", Exact(ch.issued_at),
                   " deadline=", Exact(ch.deadline)));
  return ch;
}

bool Rsu::IsLockedOut(const std::string& vehicle_id) const {
  if (config_.lockout_threshold <= 0) return false;
  auto it = failures_.find(vehicle_id);
  return it != failures_.end() && it->second >= config_.lockout_threshold;
}

void Rsu::RecordOutcome(const std::string& vehicle_id, bool success) {
  if (success) {
    failures_.erase(vehicle_id);
  } else {
    ++failures_[vehicle_id];
  }
}

VehicleAgent VehicleAgent::Honest(const VehicleCredential& credential) {
  VehicleAgent v;
  v.credential = credential;
  v.claimed_id = credential.vehicle_id;
  return v;
}

absl::StatusOr<double> NlosAuthenticate(AuthSession& session,
                                        const VehicleAgent& vehicle,
                                        const RegistrationAuthority& ra,
                                        const Rsu& rsu, double now) {
  if (session.state() != SessionState::kInit) {
    return absl::FailedPreconditionError("NLOS phase requires init");
  }
  const double latency = rsu.config().nlos_latency_s;
  CredentialProof proof;
  if (vehicle.credential) {
    proof = PresentCredential(*vehicle.credential, now);
  }
  proof.vehicle_id = vehicle.claimed_id;
  session.transcript().Append(
      now, kVehicle, kRa, "credential",
      absl::StrCat("vehicle=", proof.vehicle_id, " ts=", Exact(now)));

  const double verdict_time = now + latency;
  RejectReason reason = ra.VerifyCredential(proof, verdict_time);
  if (reason == RejectReason::kNone && rsu.IsLockedOut(proof.vehicle_id)) {
    reason = RejectReason::kLockedOut;
  }
  if (reason != RejectReason::kNone) {
    session.transcript().Append(
        verdict_time, kRa, kRsu, "nlos_verdict",
        absl::StrCat("vehicle=", proof.vehicle_id,
                     " result=", ReasonName(reason)));
    session.transcript().Append(verdict_time, kRa, kVehicle, "reject",
                                absl::StrCat("reason=", ReasonName(reason)));
    session.Reject(reason);
    return verdict_time;
  }
  session.transcript().Append(
      verdict_time, kRa, kRsu, "nlos_verdict",
      absl::StrCat("vehicle=", proof.vehicle_id, " result=ok"));
  if (absl::Status s = session.Advance(SessionState::kNlosVerified); !s.ok()) {
    return s;
  }
  return verdict_time;
}

EmissionSchedule VehicleRespond(const Challenge& challenge, double flash_s,
                                double receipt_time,
                                double reaction_delay_s) {
  return BuildSchedule(EncodeClass(challenge.label), flash_s,
                       receipt_time + reaction_delay_s);
}

absl::Status RecordDecode(AuthSession& session, const DecodeResult& result,
                          double completed_at) {
  if (!session.challenge()) {
    return absl::FailedPreconditionError("no challenge outstanding");
  }
  if (absl::Status s = session.Advance(SessionState::kDecoded); !s.ok()) {
    return s;
  }
  session.decode_ = result;
  session.decode_completed_at_ = completed_at;
  session.transcript().Append(
      completed_at, kRsu, kRa, "decode_report",
      absl::StrCat("challenge=", session.challenge()->IdHex(),
                   " label=", result.label.code(),
                   " completed=", Exact(completed_at),
                   " score=", absl::StrFormat("%.6f", result.score)));
  return absl::OkStatus();
}

absl::Status CheckPhase(AuthSession& session, const RegistrationAuthority& ra,
                        Rsu& rsu, std::mt19937_64& rng) {
  if (session.state() != SessionState::kDecoded || !session.decode()) {
    return absl::FailedPreconditionError("check phase requires decoded");
  }
  const Challenge& ch = *session.challenge();
  const ClassLabel& got = session.decode()->label;
  const double completed = session.decode_completed_at();
  const double reply_time = completed + rsu.config().nlos_latency_s;

  RejectReason reason = RejectReason::kNone;
  if (got != ch.label) {
    reason = ReasonForLabel(got);
  } else if (!(completed < ch.deadline)) {
    reason = RejectReason::kLate;
  }
  rsu.RecordOutcome(ch.target_vehicle, reason == RejectReason::kNone);
  if (reason != RejectReason::kNone) {
    session.transcript().Append(reply_time, kRa, kVehicle, "reject",
                                absl::StrCat("reason=", ReasonName(reason)));
    session.Reject(reason);
    return absl::OkStatus();
  }
  AuthToken token = ra.IssueToken(ch.target_vehicle, reply_time, rng);
  if (absl::Status s = session.Advance(SessionState::kTokenIssued); !s.ok()) {
    return s;
  }
  session.transcript().Append(
      reply_time, kRa, kVehicle, "token",
      absl::StrCat("token=", token.token_id,
                   " expires=", Exact(token.expires_at)));
  session.token_ = std::move(token);
  return absl::OkStatus();
}

double DecodeCompletion(const Challenge& challenge, const DecodeResult& result,
                        double capture_s, const TimingParams& timing) {
  const double end =
      result.preamble_found
          ? result.slot_alignment_s + kFrameSymbols * timing.flash_s
          : capture_s;
  return challenge.issued_at + end + timing.compute_s;
}

AuthSession RunSession(const VehicleAgent& vehicle, Rsu& rsu,
                       const RegistrationAuthority& ra,
                       const ChannelParams& channel,
                       const TimingParams& timing, uint64_t seed) {
  AuthSession session;
  auto verdict_time = NlosAuthenticate(session, vehicle, ra, rsu, 0.0);
  if (!verdict_time.ok() || session.terminal()) return session;

  std::mt19937_64 rng(DeriveSeed(seed, kProtocolStream));
  auto challenge = rsu.IssueChallenge(session, vehicle.claimed_id, rng, timing,
                                      *verdict_time);
  if (!challenge.ok()) {
    session.Reject(RejectReason::kMalformed);
    return session;
  }
  const double receipt = challenge->issued_at + rsu.config().nlos_latency_s;
  const EmissionSchedule schedule =
      Respond(vehicle, *challenge, receipt, timing.flash_s);
  LogResponse(session, schedule, receipt);

  const double capture_s = challenge->deadline - challenge->issued_at;
  ChannelParams params = channel;
  params.seed = DeriveSeed(seed, kChannelStream);
  auto trace = SampleTrace(
      ClipToWindow(schedule.Shifted(-challenge->issued_at), capture_s), params,
      capture_s);
  if (!trace.ok()) {
    session.transcript().Append(receipt, kRsu, kVehicle, "reject",
                                "reason=malformed");
    session.Reject(RejectReason::kMalformed);
    return session;
  }
  FinishSession(session, *trace, params, timing, capture_s, ra, rsu, rng);
  return session;
}

std::vector<AuthSession> RunSceneSessions(
    const std::vector<VehicleAgent>& vehicles, Rsu& rsu,
    const RegistrationAuthority& ra, const ChannelParams& channel,
    const TimingParams& timing, uint64_t seed,
    const std::set<std::string>& obstructed) {
  std::vector<AuthSession> sessions(vehicles.size());
  std::vector<std::mt19937_64> rngs;
  for (size_t i = 0; i < vehicles.size(); ++i) {
    rngs.emplace_back(DeriveSeed(DeriveSeed(seed, kProtocolStream), i));
  }

  ChannelParams params = channel;
  params.seed = DeriveSeed(seed, kChannelStream);
  auto window = AuthWindow(timing.distance_m, timing.speed_mps);
  const double capture_s = window.ok() ? *window : 0.0;

  Scene scene;
  for (size_t i = 0; i < vehicles.size(); ++i) {
    const VehicleAgent& vehicle = vehicles[i];
    SceneEmitter emitter;
    emitter.vehicle_id = vehicle.claimed_id;
    emitter.lane_offset_m = vehicle.lane_offset_m;
    emitter.distance_m = channel.distance_m;
    emitter.schedule.slot_duration_s = timing.flash_s;

    AuthSession& session = sessions[i];
    auto verdict = NlosAuthenticate(session, vehicle, ra, rsu, 0.0);
    if (verdict.ok() && !session.terminal()) {
      auto challenge = rsu.IssueChallenge(session, vehicle.claimed_id, rngs[i],
                                          timing, *verdict);
      if (challenge.ok()) {
        const double receipt =
            challenge->issued_at + rsu.config().nlos_latency_s;
        const EmissionSchedule schedule =
            Respond(vehicle, *challenge, receipt, timing.flash_s);
        LogResponse(session, schedule, receipt);
        emitter.schedule = ClipToWindow(
            schedule.Shifted(-challenge->issued_at), capture_s);
      } else {
        session.Reject(RejectReason::kMalformed);
      }
    }
    scene.emitters.push_back(std::move(emitter));
  }

  auto rois = ExtractRois(scene, params, capture_s);
  for (size_t i = 0; i < vehicles.size(); ++i) {
    AuthSession& session = sessions[i];
    if (session.state() != SessionState::kChallengeIssued) continue;
    if (!rois.ok()) {
      session.Reject(RejectReason::kMalformed);
      continue;
    }
    const std::string& id = vehicles[i].claimed_id;
    LuminanceTrace trace = rois->at(id);
    if (obstructed.contains(id)) {
      const EmissionSchedule dark{{}, timing.flash_s};
      trace = *SampleTrace(dark, RoiParams(scene, params, i), capture_s);
    }
    FinishSession(session, trace, params, timing, capture_s, ra, rsu,
                  rngs[i]);
  }
  return sessions;
}

absl::StatusOr<TranscriptAudit> AuditTranscript(const Transcript& transcript) {
  TranscriptAudit audit;
  SessionState state = SessionState::kInit;
  bool verified = false;
  bool decoded = false;
  int challenge_class = -1;
  int label = -2;
  double deadline = 0.0;
  double completed = 0.0;

  auto advance = [&](SessionState next, const TranscriptEntry& e) {
    if (!IsLegalTransition(state, next)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "illegal transition ", StateName(state), " -> ", StateName(next),
          " at '", e.kind, "'"));
    }
    state = next;
    return absl::OkStatus();
  };

  for (const auto& e : transcript.entries()) {
    const auto fields = ParsePayload(e.payload);
    if (e.kind == "credential" || e.kind == "los_response") {
      continue;
    } else if (e.kind == "nlos_verdict") {
      auto it = fields.find("result");
      if (it == fields.end()) return absl::InvalidArgumentError("no result");
      if (it->second == "ok") {
        if (auto s = advance(SessionState::kNlosVerified, e); !s.ok()) return s;
        verified = true;
      }
    } else if (e.kind == "challenge") {
      if (auto s = advance(SessionState::kChallengeIssued, e); !s.ok()) {
        return s;
      }
      auto cls = FieldInt(fields, "class");
      auto dl = FieldDouble(fields, "deadline");
      if (!cls.ok()) return cls.status();
      if (!dl.ok()) return dl.status();
      challenge_class = *cls;
      deadline = *dl;
      audit.challenge_id = fields.count("id") ? fields.at("id") : "";
    } else if (e.kind == "decode_report") {
      if (auto s = advance(SessionState::kDecoded, e); !s.ok()) return s;
      auto lab = FieldInt(fields, "label");
      auto done = FieldDouble(fields, "completed");
      if (!lab.ok()) return lab.status();
      if (!done.ok()) return done.status();
      if (fields.count("challenge") == 0 ||
          fields.at("challenge") != audit.challenge_id) {
        return absl::InvalidArgumentError("decode report for wrong challenge");
      }
      label = *lab;
      completed = *done;
      decoded = true;
    } else if (e.kind == "token") {
      if (auto s = advance(SessionState::kTokenIssued, e); !s.ok()) return s;
      audit.token_issued = true;
    } else if (e.kind == "reject") {
      if (auto s = advance(SessionState::kRejected, e); !s.ok()) return s;
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown message kind ", e.kind));
    }
  }
  if (state != SessionState::kTokenIssued && state != SessionState::kRejected) {
    return absl::FailedPreconditionError(
        absl::StrCat("transcript ends in non-terminal state ",
                     StateName(state)));
  }
  const bool deserved =
      verified && decoded && label == challenge_class && completed < deadline;
  if (audit.token_issued != deserved) {
    return absl::FailedPreconditionError(absl::StrCat(
        "token soundness violated: token=", audit.token_issued,
        " verified=", verified, " label=", label, " class=", challenge_class,
        " completed=", completed, " deadline=", deadline));
  }
  audit.final_state = state;
  return audit;
}

Deployment MakeDeployment(int count, uint64_t seed) {
  Deployment d{RegistrationAuthority(DeriveKey(seed, 0)), {}};
  for (int i = 0; i < count; ++i) {
    VehicleCredential c;
    c.vehicle_id = absl::StrFormat("veh-%03d", i);
    c.secret = DeriveKey(seed, 1 + i);
    c.valid_from = 0.0;
    c.valid_until = 1e9;
    d.ra.Enroll(c);
    d.credentials.push_back(c);
  }
  return d;
}

}  // namespace flashauth
