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

#include "flashauth/timing.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace flashauth {

absl::Status TimingParams::Validate() const {
  if (!(distance_m > 0)) return absl::InvalidArgumentError("d must be > 0");
  if (!(speed_mps > 0)) return absl::InvalidArgumentError("v must be > 0");
  if (!(flash_s > 0)) return absl::InvalidArgumentError("t_f must be > 0");
  if (!(compute_s >= 0)) return absl::InvalidArgumentError("t_c must be >= 0");
  if (bits <= 0 || bits % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("n must be positive and even, got ", bits));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> AuthWindow(double distance_m, double speed_mps) {
  if (!(speed_mps > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("speed must be positive, got ", speed_mps));
  }
  return distance_m / speed_mps;
}

double Latency(int bits, double flash_s, double compute_s) {
  return bits * flash_s + compute_s;
}

absl::StatusOr<int> MaxBits(double distance_m, double speed_mps,
                            double compute_s, double flash_s) {
  auto window = AuthWindow(distance_m, speed_mps);
  if (!window.ok()) return window.status();
  if (!(flash_s > 0)) return absl::InvalidArgumentError("t_f must be > 0");
  if (*window <= compute_s) {
    return absl::FailedPreconditionError(absl::StrCat(
        "infeasible: T_auth ", *window, " s does not exceed t_c ", compute_s,
        " s"));
  }
  int n = static_cast<int>(std::floor((*window - compute_s) / flash_s));
  // Guard against floor() landing one past the boundary through rounding.
  while (n > 0 && Latency(n, flash_s, compute_s) > *window) --n;
  while (Latency(n + 1, flash_s, compute_s) <= *window) ++n;
  return n;
}

absl::StatusOr<double> FlashScheduleDuration(int bits, double flash_s) {
  if (bits < 0 || bits % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("bit count must be even, got ", bits));
  }
  return (bits / 2) * flash_s;
}

}  // namespace flashauth
