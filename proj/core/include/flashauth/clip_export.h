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

#ifndef FLASHAUTH_CLIP_EXPORT_H_
#define FLASHAUTH_CLIP_EXPORT_H_

// Synthetic video clips for training a learned LOS decoder.
//
// A clip is a directory holding frame_0000.pgm, frame_0001.pgm, ... (binary
// PGM "P5", maxval 255) and manifest.txt with key=value lines. Each frame is
// a dark background at the ambient level with two discs, left and right
// emitter, whose grey level is the trace luminance of that frame.

#include <cstdint>
#include <filesystem>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "flashauth/occ_channel.h"

namespace flashauth {

struct ClipGeometry {
  int width = 64;
  int height = 64;
  int disc_radius = 6;
};

struct ClipManifest {
  double fps = 30.0;
  double flash_s = 0.15;
  int class_code = 0;
  uint64_t seed = 0;
  double distance_m = 25.0;
  bool mirror_view = false;
  int frame_count = 0;
  int width = 64;
  int height = 64;

  // Keys: fps, t_f, class, seed, distance_m, mirror_view, frames, width,
  // height; one per line in that order.
  std::string Serialize() const;
  static absl::StatusOr<ClipManifest> Parse(absl::string_view text);
};

// One frame as PGM bytes.
std::string RenderPgm(const TraceFrame& frame, double background,
                      const ClipGeometry& geometry = {});

absl::Status WriteClip(const std::filesystem::path& dir,
                       const LuminanceTrace& trace, ClipManifest manifest,
                       double background, const ClipGeometry& geometry = {});

}  // namespace flashauth

#endif  // FLASHAUTH_CLIP_EXPORT_H_
