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

#include "flashauth/occ_channel.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "flashauth/rng.h"

namespace flashauth {
namespace {

// Purpose streams for the counter-based generator.
constexpr uint64_t kJitterStream = 1;
constexpr uint64_t kNoiseLeftStream = 2;
constexpr uint64_t kNoiseRightStream = 3;
constexpr uint64_t kDropStream = 4;

constexpr double kRelTol = 1e-9;

double Overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

double JitterOffset(const ChannelParams& p) {
  if (p.jitter_sigma_s <= 0) return 0.0;
  return p.jitter_sigma_s * CounterRng(p.seed).Normal(kJitterStream, 0);
}

// Shared by SampleTrace and ExtractRois so a single-emitter scene reproduces
// SampleTrace exactly.
LuminanceTrace Render(const EmissionSchedule& schedule, const ChannelParams& p,
                      int frame_count, const std::vector<double>* extra) {
  const CounterRng rng(p.seed);
  const OnFractions on =
      IntegrateExposure(schedule, p.fps, p.exposure_s, p.guard_width_s,
                        JitterOffset(p), frame_count);
  const double on_lum = p.OnLuminance();
  LuminanceTrace trace;
  trace.fps = p.fps;
  trace.frames.resize(frame_count);
  for (int k = 0; k < frame_count; ++k) {
    TraceFrame& f = trace.frames[k];
    f.timestamp_s = k / p.fps;
    const double base = p.ambient_level + (extra ? (*extra)[k] : 0.0);
    double left = on.left[k] * on_lum + base;
    double right = on.right[k] * on_lum + base;
    if (p.noise_sigma > 0) {
      left += p.noise_sigma * rng.Normal(kNoiseLeftStream, k);
      right += p.noise_sigma * rng.Normal(kNoiseRightStream, k);
    }
    f.left = std::clamp(left, 0.0, 1.0);
    f.right = std::clamp(right, 0.0, 1.0);
    if (p.frame_drop_prob > 0 &&
        rng.Uniform(kDropStream, k) < p.frame_drop_prob) {
      f.dropped = true;
      f.left = 0.0;
      f.right = 0.0;
    }
    if (p.mirror_view) std::swap(f.left, f.right);
  }
  return trace;
}

}  // namespace

ChannelParams ChannelParams::ForFps(double fps) {
  ChannelParams p;
  const double exposure = 1.0 / fps;
  p.SetTiming(fps, 0.6 * exposure, 0.3 * exposure);
  return p;
}

void ChannelParams::SetTiming(double new_fps, double pw_s, double pw_g) {
  fps = new_fps;
  exposure_s = 1.0 / new_fps;
  pulse_width_s = pw_s;
  guard_width_s = pw_g;
  duty_cycle_min = pw_s / exposure_s;
}

double ChannelParams::OnLuminance() const {
  const double ratio = reference_distance_m / distance_m;
  return std::min(1.0, reference_luminance * ratio * ratio);
}

std::vector<std::string> ValidateParams(const ChannelParams& p) {
  std::vector<std::string> violations;
  if (!(p.fps > 0)) {
    violations.push_back("fps > 0");
  } else if (!(std::abs(p.exposure_s - 1.0 / p.fps) <=
               kRelTol * (1.0 / p.fps))) {
    violations.push_back("T_e = 1/fps");
  }
  if (!(p.pulse_width_s < p.exposure_s)) violations.push_back("PW_s < T_e");
  if (!(p.pulse_width_s + p.guard_width_s < p.exposure_s)) {
    violations.push_back("PW_s + PW_g < T_e");
  }
  const double dc = p.exposure_s > 0 ? p.pulse_width_s / p.exposure_s : -1;
  if (!(std::abs(p.duty_cycle_min - dc) <= kRelTol * std::max(1.0, dc) &&
        p.duty_cycle_min > 0 && p.duty_cycle_min < 1)) {
    violations.push_back("DC_min = PW_s/T_e in (0,1)");
  }
  if (!(p.guard_width_s >= 0)) violations.push_back("PW_g >= 0");
  if (!(p.distance_m > 0)) violations.push_back("distance_m > 0");
  if (!(p.ambient_level >= 0 && p.ambient_level <= 1)) {
    violations.push_back("ambient_level in [0,1]");
  }
  if (!(p.noise_sigma >= 0)) violations.push_back("noise_sigma >= 0");
  if (!(p.jitter_sigma_s >= 0)) violations.push_back("jitter_sigma >= 0");
  if (!(p.frame_drop_prob >= 0 && p.frame_drop_prob <= 1)) {
    violations.push_back("frame_drop_prob in [0,1]");
  }
  if (!(p.reference_luminance >= 0 && p.reference_distance_m > 0)) {
    violations.push_back("reference photometry");
  }
  return violations;
}

absl::Status CheckParams(const ChannelParams& p) {
  const auto violations = ValidateParams(p);
  if (violations.empty()) return absl::OkStatus();
  return absl::InvalidArgumentError(
      absl::StrCat("channel constraint violated: ",
                   absl::StrJoin(violations, "; ")));
}

double EmissionSchedule::StartTime() const {
  return slots.empty() ? 0.0 : slots.front().start_s;
}

double EmissionSchedule::EndTime() const {
  return slots.empty() ? 0.0 : slots.back().start_s + slot_duration_s;
}

EmissionSchedule EmissionSchedule::Shifted(double dt) const {
  EmissionSchedule out = *this;
  for (auto& slot : out.slots) slot.start_s += dt;
  return out;
}

double EmissionSchedule::TransmitInstant(size_t i, double pulse_width_s,
                                         double guard_width_s) const {
  const double next_start = slots[i].start_s + slot_duration_s;
  return next_start - (pulse_width_s + guard_width_s);
}

std::vector<Symbol> EmissionSchedule::Symbols() const {
  std::vector<Symbol> out;
  out.reserve(slots.size());
  for (const auto& slot : slots) out.push_back(slot.symbol);
  return out;
}

EmissionSchedule BuildSchedule(const SecurityFrame& frame, double flash_s,
                               double start_s) {
  const auto& seq = frame.symbols();
  return BuildSchedule(std::vector<Symbol>(seq.begin(), seq.end()), flash_s,
                       start_s);
}

EmissionSchedule BuildSchedule(const std::vector<Symbol>& symbols,
                               double flash_s, double start_s) {
  EmissionSchedule schedule;
  schedule.slot_duration_s = flash_s;
  schedule.slots.reserve(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    schedule.slots.push_back({start_s + i * flash_s, symbols[i]});
  }
  return schedule;
}

std::string LuminanceTrace::Serialize() const {
  std::string out = absl::StrFormat("fps=%.17g frames=%d\n", fps,
                                    frames.size());
  for (const auto& f : frames) {
    absl::StrAppendFormat(&out, "%.17g %.17g %.17g %d\n", f.timestamp_s,
                          f.left, f.right, f.dropped ? 1 : 0);
  }
  return out;
}

int CaptureFrameCount(double capture_duration_s, double fps) {
  return static_cast<int>(std::floor(capture_duration_s * fps + 1e-9));
}

OnFractions IntegrateExposure(const EmissionSchedule& schedule, double fps,
                              double exposure_s, double guard_width_s,
                              double jitter_offset_s, int frame_count) {
  OnFractions on;
  on.left.assign(frame_count, 0.0);
  on.right.assign(frame_count, 0.0);
  const double on_time =
      std::max(0.0, schedule.slot_duration_s - guard_width_s);
  for (const auto& slot : schedule.slots) {
    if (slot.symbol == kDark) continue;
    const double t0 = slot.start_s + jitter_offset_s;
    const double t1 = t0 + on_time;
    const int first = std::max(0, static_cast<int>(std::floor(
                                      (t0 - exposure_s) * fps)));
    const int last =
        std::min(frame_count - 1, static_cast<int>(std::ceil(t1 * fps)));
    for (int k = first; k <= last; ++k) {
      const double e0 = k / fps;
      const double frac = Overlap(e0, e0 + exposure_s, t0, t1) / exposure_s;
      if (slot.symbol.left) on.left[k] += frac;
      if (slot.symbol.right) on.right[k] += frac;
    }
  }
  for (int k = 0; k < frame_count; ++k) {
    on.left[k] = std::min(on.left[k], 1.0);
    on.right[k] = std::min(on.right[k], 1.0);
  }
  return on;
}

absl::StatusOr<LuminanceTrace> SampleTrace(const EmissionSchedule& schedule,
                                           const ChannelParams& p,
                                           double capture_duration_s) {
  if (absl::Status s = CheckParams(p); !s.ok()) return s;
  if (capture_duration_s < schedule.Span()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "capture of ", capture_duration_s, " s is shorter than the ",
        schedule.Span(), " s schedule"));
  }
  return Render(schedule, p, CaptureFrameCount(capture_duration_s, p.fps),
                nullptr);
}

ChannelParams RoiParams(const Scene& scene, const ChannelParams& p,
                        size_t index) {
  ChannelParams roi = p;
  roi.distance_m =
      std::hypot(scene.emitters[index].distance_m, scene.camera_height_m);
  roi.seed = index == 0 ? p.seed : DeriveSeed(p.seed, index);
  return roi;
}

absl::StatusOr<std::map<std::string, LuminanceTrace>> ExtractRois(
    const Scene& scene, const ChannelParams& p, double capture_duration_s,
    const LeakageModel& leakage) {
  if (absl::Status s = CheckParams(p); !s.ok()) return s;
  const auto& emitters = scene.emitters;
  std::set<std::string> ids;
  for (size_t i = 0; i < emitters.size(); ++i) {
    if (!ids.insert(emitters[i].vehicle_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate vehicle id ", emitters[i].vehicle_id));
    }
    if (capture_duration_s < emitters[i].schedule.Span()) {
      return absl::InvalidArgumentError(
          absl::StrCat("capture shorter than schedule of ",
                       emitters[i].vehicle_id));
    }
    for (size_t j = 0; j < i; ++j) {
      const double sep =
          std::abs(emitters[i].lane_offset_m - emitters[j].lane_offset_m);
      if (sep < leakage.min_separation_m) {
        return absl::FailedPreconditionError(absl::StrCat(
            "ambiguous ROIs: ", emitters[j].vehicle_id, " and ",
            emitters[i].vehicle_id, " are ", sep, " m apart"));
      }
    }
  }

  const int frame_count = CaptureFrameCount(capture_duration_s, p.fps);
  // Mean emitted luminance of each vehicle as seen by the camera.
  std::vector<std::vector<double>> emitted(emitters.size());
  for (size_t j = 0; j < emitters.size(); ++j) {
    const ChannelParams roi = RoiParams(scene, p, j);
    const OnFractions on =
        IntegrateExposure(emitters[j].schedule, roi.fps, roi.exposure_s,
                          roi.guard_width_s, JitterOffset(roi), frame_count);
    const double lum = roi.OnLuminance();
    emitted[j].resize(frame_count);
    for (int k = 0; k < frame_count; ++k) {
      emitted[j][k] = 0.5 * (on.left[k] + on.right[k]) * lum;
    }
  }

  std::map<std::string, LuminanceTrace> rois;
  for (size_t i = 0; i < emitters.size(); ++i) {
    std::vector<double> extra(frame_count, 0.0);
    for (size_t j = 0; j < emitters.size(); ++j) {
      if (j == i) continue;
      const double sep =
          std::abs(emitters[i].lane_offset_m - emitters[j].lane_offset_m);
      const double coeff =
          std::min(leakage.ceiling, leakage.gain_m2 / (sep * sep));
      for (int k = 0; k < frame_count; ++k) extra[k] += coeff * emitted[j][k];
    }
    rois.emplace(emitters[i].vehicle_id,
                 Render(emitters[i].schedule, RoiParams(scene, p, i),
                        frame_count, &extra));
  }
  return rois;
}

}  // namespace flashauth
