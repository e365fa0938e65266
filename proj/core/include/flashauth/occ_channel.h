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

#ifndef FLASHAUTH_OCC_CHANNEL_H_
#define FLASHAUTH_OCC_CHANNEL_H_

// Simulated line-of-sight optical camera channel.
//
// Emitters follow an EmissionSchedule of two-headlight symbols. The camera
// samples at `fps` with exposure T_e = 1/fps; each frame integrates the
// emitter's on-time over its exposure window (box filter), scaled by an
// inverse-square distance law, plus ambient light and Gaussian sensor noise.
//
// Randomness is counter-based: (seed, purpose, frame index) determines every
// draw, so a trace is reproducible bit for bit and independent of the order
// in which traces are generated.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "flashauth/frame_codec.h"

namespace flashauth {

struct ChannelParams {
  double fps = 30.0;
  double exposure_s = 1.0 / 30.0;     // T_e
  double pulse_width_s = 0.020;       // PW_s
  double guard_width_s = 0.010;       // PW_g
  double duty_cycle_min = 0.6;        // DC_min = PW_s / T_e
  double distance_m = 25.0;
  double ambient_level = 0.1;
  double noise_sigma = 0.0;
  double jitter_sigma_s = 0.0;
  double frame_drop_prob = 0.0;
  bool mirror_view = false;
  uint64_t seed = 0;

  // Inverse-square photometry: on-luminance = min(1, L0 * (d0 / d)^2).
  double reference_luminance = 1.0;
  double reference_distance_m = 25.0;

  // Consistent parameters for `fps`: T_e = 1/fps, PW_s = 0.6 T_e,
  // PW_g = 0.3 T_e.
  static ChannelParams ForFps(double fps);
  // Recomputes T_e and DC_min from fps and PW_s.
  void SetTiming(double fps, double pulse_width_s, double guard_width_s);

  double OnLuminance() const;
};

// Every violated constraint, by name. Empty means the parameters are usable.
// The four channel-model constraints are reported as
//   "T_e = 1/fps", "PW_s < T_e", "PW_s + PW_g < T_e", "DC_min = PW_s/T_e in (0,1)"
// and physical sanity checks under their own names.
std::vector<std::string> ValidateParams(const ChannelParams& p);
absl::Status CheckParams(const ChannelParams& p);

struct EmissionSlot {
  double start_s = 0.0;
  Symbol symbol;
};

struct EmissionSchedule {
  std::vector<EmissionSlot> slots;
  double slot_duration_s = 0.0;

  bool empty() const { return slots.empty(); }
  double StartTime() const;
  double EndTime() const;
  double Span() const { return slots.size() * slot_duration_s; }
  EmissionSchedule Shifted(double dt) const;
  // Latest instant a pulse may start within slot i and still be followed by
  // its guard before slot i+1: T_i = st_{i+1} - (PW_s + PW_g).
  double TransmitInstant(size_t i, double pulse_width_s,
                         double guard_width_s) const;
  std::vector<Symbol> Symbols() const;
};

EmissionSchedule BuildSchedule(const SecurityFrame& frame, double flash_s,
                               double start_s);
// Arbitrary symbol runs, e.g. non-conforming "random flash" patterns.
EmissionSchedule BuildSchedule(const std::vector<Symbol>& symbols,
                               double flash_s, double start_s);

struct TraceFrame {
  double timestamp_s = 0.0;
  double left = 0.0;
  double right = 0.0;
  bool dropped = false;
};

struct LuminanceTrace {
  double fps = 30.0;
  std::vector<TraceFrame> frames;

  double FramePeriod() const { return 1.0 / fps; }
  double Duration() const { return frames.size() / fps; }
  // One line per frame, full double precision. Equal strings imply equal
  // traces.
  std::string Serialize() const;
};

absl::StatusOr<LuminanceTrace> SampleTrace(const EmissionSchedule& schedule,
                                           const ChannelParams& p,
                                           double capture_duration_s);

// Noise-free fraction of each camera frame's exposure during which the
// left/right emitter is on. Exposed for tests and for the decoder oracle.
struct OnFractions {
  std::vector<double> left;
  std::vector<double> right;
};
OnFractions IntegrateExposure(const EmissionSchedule& schedule, double fps,
                              double exposure_s, double guard_width_s,
                              double jitter_offset_s, int frame_count);

int CaptureFrameCount(double capture_duration_s, double fps);

struct SceneEmitter {
  std::string vehicle_id;
  double lane_offset_m = 0.0;
  double distance_m = 25.0;
  EmissionSchedule schedule;
};

struct Scene {
  std::vector<SceneEmitter> emitters;
  double camera_height_m = 0.0;
};

struct LeakageModel {
  // Leakage coefficient = min(ceiling, gain / separation^2).
  double gain_m2 = 0.05;
  double ceiling = 0.05;
  // Lateral separations below this cannot be split into distinct ROIs.
  double min_separation_m = 1.0;
};

// Channel parameters the ROI of emitter `index` is sampled with: the slant
// range to the camera, and a per-ROI seed (emitter 0 keeps p.seed).
ChannelParams RoiParams(const Scene& scene, const ChannelParams& p,
                        size_t index);

absl::StatusOr<std::map<std::string, LuminanceTrace>> ExtractRois(
    const Scene& scene, const ChannelParams& p, double capture_duration_s,
    const LeakageModel& leakage = {});

}  // namespace flashauth

#endif  // FLASHAUTH_OCC_CHANNEL_H_
