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

#include "flashauth/clip_export.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace flashauth {
namespace {

uint8_t Grey(double level) {
  return static_cast<uint8_t>(std::lround(std::clamp(level, 0.0, 1.0) * 255));
}

absl::Status WriteFile(const std::filesystem::path& path,
                       absl::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path.string()));
  }
  return absl::OkStatus();
}

}  // namespace

std::string ClipManifest::Serialize() const {
  return absl::StrFormat(
      "fps=%.17g\nt_f=%.17g\nclass=%d\nseed=%d\ndistance_m=%.17g\n"
      "mirror_view=%d\nframes=%d\nwidth=%d\nheight=%d\n",
      fps, flash_s, class_code, seed, distance_m, mirror_view ? 1 : 0,
      frame_count, width, height);
}

absl::StatusOr<ClipManifest> ClipManifest::Parse(absl::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  for (absl::string_view line : absl::StrSplit(text, '\n', absl::SkipEmpty())) {
    std::pair<absl::string_view, absl::string_view> p =
        absl::StrSplit(line, absl::MaxSplits('=', 1));
    kv[std::string(absl::StripAsciiWhitespace(p.first))] =
        std::string(absl::StripAsciiWhitespace(p.second));
  }
  ClipManifest m;
  int mirror = 0;
  const bool ok = kv.count("fps") && absl::SimpleAtod(kv["fps"], &m.fps) &&
                  kv.count("t_f") && absl::SimpleAtod(kv["t_f"], &m.flash_s) &&
                  kv.count("class") &&
                  absl::SimpleAtoi(kv["class"], &m.class_code) &&
                  kv.count("seed") && absl::SimpleAtoi(kv["seed"], &m.seed) &&
                  kv.count("distance_m") &&
                  absl::SimpleAtod(kv["distance_m"], &m.distance_m) &&
                  kv.count("mirror_view") &&
                  absl::SimpleAtoi(kv["mirror_view"], &mirror) &&
                  kv.count("frames") &&
                  absl::SimpleAtoi(kv["frames"], &m.frame_count) &&
                  kv.count("width") && absl::SimpleAtoi(kv["width"], &m.width) &&
                  kv.count("height") &&
                  absl::SimpleAtoi(kv["height"], &m.height);
  if (!ok) return absl::InvalidArgumentError("incomplete clip manifest");
  m.mirror_view = mirror != 0;
  return m;
}

std::string RenderPgm(const TraceFrame& frame, double background,
                      const ClipGeometry& g) {
  std::string out = absl::StrFormat("P5\n%d %d\n255\n", g.width, g.height);
  const size_t header = out.size();
  out.resize(header + static_cast<size_t>(g.width) * g.height, Grey(background));
  const double cy = 0.5 * (g.height - 1);
  const std::array<std::pair<double, uint8_t>, 2> discs = {
      std::pair{0.3 * (g.width - 1), Grey(frame.left)},
      std::pair{0.7 * (g.width - 1), Grey(frame.right)}};
  const double r2 = static_cast<double>(g.disc_radius) * g.disc_radius;
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      for (const auto& [cx, level] : discs) {
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r2) {
          out[header + static_cast<size_t>(y) * g.width + x] =
              static_cast<char>(level);
        }
      }
    }
  }
  return out;
}

absl::Status WriteClip(const std::filesystem::path& dir,
                       const LuminanceTrace& trace, ClipManifest manifest,
                       double background, const ClipGeometry& geometry) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  manifest.frame_count = static_cast<int>(trace.frames.size());
  manifest.width = geometry.width;
  manifest.height = geometry.height;
  // A dropped frame repeats the last delivered one, as a video container would.
  TraceFrame last{0.0, background, background, false};
  for (size_t k = 0; k < trace.frames.size(); ++k) {
    const TraceFrame& f = trace.frames[k];
    if (!f.dropped) last = f;
    const auto path = dir / absl::StrFormat("frame_%04d.pgm", k);
    if (auto s = WriteFile(path, RenderPgm(last, background, geometry));
        !s.ok()) {
      return s;
    }
  }
  return WriteFile(dir / "manifest.txt", manifest.Serialize());
}

}  // namespace flashauth
