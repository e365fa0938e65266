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

#ifndef FLASHAUTH_TIMING_H_
#define FLASHAUTH_TIMING_H_

// Authentication time budget for a vehicle approaching the RSU camera.
//
//   T_auth    = d / v                 time before the vehicle passes the camera
//   T_latency = n * t_f + t_c         bit-serial response latency
//   n_max     = floor((d/v - t_c) / t_f)
//
// The physical emission is two bits per flash, so a frame of n bits occupies
// (n/2) * t_f on the road. Feasibility gating keeps the conservative
// bit-serial latency.

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace flashauth {

// Default computation time; never given a value by the scheme itself.
inline constexpr double kDefaultComputeTimeS = 0.1;
inline constexpr double kDefaultFlashDurationS = 0.15;

struct TimingParams {
  double distance_m = 25.0;
  double speed_mps = 8.3;
  double flash_s = kDefaultFlashDurationS;
  double compute_s = kDefaultComputeTimeS;
  int bits = 14;

  absl::Status Validate() const;
};

absl::StatusOr<double> AuthWindow(double distance_m, double speed_mps);

double Latency(int bits, double flash_s, double compute_s);

absl::StatusOr<int> MaxBits(double distance_m, double speed_mps,
                            double compute_s, double flash_s);

absl::StatusOr<double> FlashScheduleDuration(int bits, double flash_s);

}  // namespace flashauth

#endif  // FLASHAUTH_TIMING_H_
