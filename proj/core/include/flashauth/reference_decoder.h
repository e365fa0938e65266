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

#ifndef FLASHAUTH_REFERENCE_DECODER_H_
#define FLASHAUTH_REFERENCE_DECODER_H_

// Classical LOS verifier: recovers the security frame from a luminance trace
// by slot-aligned thresholding.
//
//   1. Two-means threshold over all observed luminances; a trace whose
//      clusters are not separated beyond the sensor noise is all-off.
//   2. Preamble search: scan alignments at quarter-frame steps over the first
//      part of the trace; an alignment is a candidate when its first two
//      slots read 11-00, and candidates are ranked by how well all seven
//      slots match the frame structure.
//   3. Per-slot trimmed means against the threshold give the symbols, which
//      are mirror-corrected and classified by DecodeSymbols().

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flashauth/frame_codec.h"
#include "flashauth/occ_channel.h"

namespace flashauth {

struct DecoderOptions {
  // Minimum luminance gap between the two clusters for any light to count.
  double all_off_epsilon = 0.05;
  // The cluster gap must also exceed this multiple of the estimated noise.
  double noise_gap_factor = 4.0;
  // Preamble alignments are searched over this leading fraction of the trace.
  double search_fraction = 0.4;
  // Alignment step as a fraction of the frame period.
  double step_fraction = 0.25;
};

struct ThresholdEstimate {
  double threshold = 0.0;
  double low_mean = 0.0;
  double high_mean = 0.0;
  double noise_sigma = 0.0;
  bool all_off = true;
};

ThresholdEstimate EstimateThreshold(const LuminanceTrace& trace,
                                    const DecoderOptions& options = {});

// Estimated schedule start, or nullopt when no alignment reads as a preamble.
std::optional<double> FindPreamble(const LuminanceTrace& trace,
                                   double flash_s,
                                   const DecoderOptions& options = {});

struct DecodeResult {
  ClassLabel label = ClassLabel::AllZero();
  // Correlation between slot luminances and the symbol reading, in [-1, 1].
  double score = 0.0;
  double slot_alignment_s = 0.0;
  // Camera-view symbols, before mirror correction.
  SymbolSequence per_slot_symbols{};
  bool preamble_found = false;

  static std::string CsvHeader();
  std::string ToCsvRow() const;
};

DecodeResult Decode(const LuminanceTrace& trace, double flash_s,
                    bool mirror_view, const DecoderOptions& options = {});

// Score assigned to the all-zero template: a class must correlate more
// strongly than this to be preferred over "no light".
inline constexpr double kAllZeroTemplateScore = 0.7;

// Exhaustive oracle: Pearson correlation of the raw trace against the ideal
// sampled template of every class (and all-zero), maximised over alignments.
// Sorted by descending score.
std::vector<std::pair<ClassLabel, double>> TemplateCorrelate(
    const LuminanceTrace& trace, double flash_s,
    double search_fraction = 0.4);

}  // namespace flashauth

#endif  // FLASHAUTH_REFERENCE_DECODER_H_
